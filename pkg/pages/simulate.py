import streamlit as st
import pandas as pd

from stablefit.config import DEFAULTS, get_default_seed
from stablefit.errors import StableFitError
from stablefit.estimate_multi import spectral_model_on_grid
from stablefit.gof import describe
from stablefit.simulate import sample_mv, sample_uni
from stablefit.stable_core import Param, StableParams


@st.cache_data(show_spinner=False)
def _univariate(alpha, beta, sigma, delta, param, n, seed):
    params = StableParams(alpha, beta, sigma, delta, Param(param))
    return pd.DataFrame({"x": sample_uni(params, n, seed)})


@st.cache_data(show_spinner=False)
def _spectral(alpha, d, L, weights, n, seed):
    model = spectral_model_on_grid(alpha, d, L, list(weights))
    data = sample_mv(model, n, seed).data
    return pd.DataFrame(data, columns=[f"x{j + 1}" for j in range(d)])


def _parse_weights(text, L):
    if not text.strip():
        return tuple([1.0 / L] * L)
    return tuple(float(w) for w in text.replace(";", ",").split(","))


def show_simulation():
    """Sampler page: univariate CMS or spectral random vectors"""
    st.header("🎲 Simulação de Amostras Estáveis")

    try:
        default_seed = get_default_seed()
    except StableFitError as e:
        st.error(f"❌ {str(e)}")
        default_seed = DEFAULTS["seed"]

    mode = st.radio("Tipo", ["Univariada", "Multivariada (medida espectral)"], horizontal=True)

    col1, col2 = st.columns(2)
    with col1:
        n = int(st.number_input("Tamanho da amostra", min_value=1, value=DEFAULTS["n"], step=100))
    with col2:
        seed = int(st.number_input("Semente", min_value=0, value=default_seed, step=1))

    try:
        if mode == "Univariada":
            col1, col2, col3, col4, col5 = st.columns(5)
            with col1:
                alpha = st.number_input("α", min_value=0.1, max_value=2.0, value=1.5, step=0.1)
            with col2:
                beta = st.number_input("β", min_value=-1.0, max_value=1.0, value=0.0, step=0.1)
            with col3:
                sigma = st.number_input("σ", min_value=0.001, value=1.0, step=0.1)
            with col4:
                delta = st.number_input("δ", value=0.0, step=0.1)
            with col5:
                param = st.selectbox("Parametrização", [p.value for p in Param])
            frame = _univariate(alpha, beta, sigma, delta, param, n, seed)
        else:
            col1, col2, col3 = st.columns(3)
            with col1:
                alpha = st.number_input("α", min_value=0.1, max_value=2.0, value=1.3, step=0.1, key="mv_alpha")
            with col2:
                d = int(st.selectbox("Dimensão d", [1, 2, 3], index=1))
            with col3:
                L = 2 if d == 1 else int(st.number_input("Pontos L", min_value=2, max_value=64,
                                                         value=DEFAULTS["grid_size"][d]))
            weights = _parse_weights(st.text_input("Pesos γ (separados por vírgula, vazio = iguais)"), L)
            frame = _spectral(alpha, d, L, weights, n, seed)
    except StableFitError as e:
        st.error(f"❌ {e.category}: {str(e)}")
        return
    except ValueError as e:
        st.error(f"❌ Valor inválido: {str(e)}")
        return

    st.success(f"✅ {len(frame)} observações geradas")
    summary = pd.DataFrame({column: describe(frame[column]) for column in frame.columns})
    st.dataframe(summary, use_container_width=True)
    with st.expander("📋 Ver amostra"):
        st.dataframe(frame.head(200), use_container_width=True, hide_index=True)

    st.download_button(
        label="📄 Baixar amostra (CSV)",
        data=frame.to_csv(index=False),
        file_name=f"amostra_estavel_seed{seed}.csv",
        mime="text/csv",
        use_container_width=True,
    )
