import streamlit as st
import numpy as np
import pandas as pd

from stablefit.config import DEFAULTS
from stablefit.errors import StableFitError
from stablefit.estimate_multi import fit_spectral
from stablefit.returns_data import RETURN_KINDS, column_values, to_returns
from stablefit.stable_core import Param
from pages.upload import RETURN_LABELS, load_uploaded_frame


@st.cache_data(show_spinner=False)
def _fit(data, L):
    fit = fit_spectral(data, L)
    marginals = pd.DataFrame(
        [dict(coordinate=j + 1, **m.params(Param.ZERO).as_dict()) for j, m in enumerate(fit.marginals)]
    )
    return fit.as_dict(), marginals


def show_spectral_fit():
    """Spectral measure estimation page"""
    st.header("🧭 Estimação da Medida Espectral")
    st.markdown("**Escolha de 1 a 3 colunas. O índice α e o deslocamento vêm dos ajustes marginais; os pesos γ da função característica empírica.**")

    uploaded_file = st.file_uploader("Arquivo com as séries", type=["csv", "xlsx", "xls"], key="spectral_upload")
    if uploaded_file is None:
        st.info("💡 Para duas ações (ex.: preços de fechamento ajustado), use log-retornos e L = 12")
        return

    df, error = load_uploaded_frame(uploaded_file)
    if error:
        st.error(f"❌ {error}")
        return

    columns = st.multiselect("Colunas (1 a 3)", list(df.columns), max_selections=3)
    col1, col2 = st.columns(2)
    with col1:
        kind = st.selectbox("Transformação", RETURN_KINDS, index=2, format_func=lambda k: RETURN_LABELS[k],
                            key="spectral_kind")
    with col2:
        d = max(1, len(columns))
        if d == 1:
            L = 2
            st.number_input("Número de pontos L", value=2, disabled=True)
        else:
            L = int(st.number_input("Número de pontos L", min_value=2, max_value=64,
                                    value=DEFAULTS["grid_size"][d], step=1))

    if not st.button("🚀 Estimar", use_container_width=True, type="primary"):
        return
    if not columns:
        st.warning("⚠️ Selecione pelo menos uma coluna")
        return

    try:
        data = np.column_stack([column_values(df, c)[1] for c in columns])
        data = to_returns(data, kind)
        with st.spinner("Estimando medida espectral..."):
            result, marginals = _fit(data, L)
    except StableFitError as e:
        st.error(f"❌ {e.category}: {str(e)}")
        return

    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric(label="α estimado", value=f"{result['alpha']:.4f}")
    with col2:
        st.metric(label="Massa total", value=f"{sum(result['weights']):.4g}")
    with col3:
        st.metric(label="Método", value=result["method"])

    st.subheader("📍 Pesos nos pontos da esfera")
    points = pd.DataFrame(result["points"], columns=[f"s{j + 1}" for j in range(result["d"])])
    points.insert(0, "l", np.arange(1, result["L"] + 1))
    points["gamma"] = result["weights"]
    st.dataframe(points, use_container_width=True, hide_index=True)

    st.subheader("📐 Ajustes marginais (S0)")
    st.dataframe(marginals, use_container_width=True, hide_index=True)
    st.caption(f"Deslocamento estimado: {np.round(result['shift'], 6).tolist()}")

    st.download_button(
        label="📄 Baixar pesos (CSV)",
        data=points.to_csv(index=False),
        file_name=f'medida_espectral_{pd.Timestamp.now().strftime("%Y%m%d_%H%M%S")}.csv',
        mime="text/csv",
        use_container_width=True,
    )
