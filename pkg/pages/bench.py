import streamlit as st
import pandas as pd

from stablefit import bench
from stablefit.config import DEFAULTS, get_default_seed, get_default_threads
from stablefit.errors import StableFitError
from stablefit.estimate_multi import spectral_model_on_grid
from stablefit.stable_core import Param, StableParams

ESTIMATOR_LABELS = {
    bench.Estimator.HYBRID.value: "🎯 Híbrido",
    bench.Estimator.KW.value: "📐 Kogon-Williams",
    bench.Estimator.SPECTRAL_ECF.value: "🧭 Medida espectral (ECF)",
}


@st.cache_data(show_spinner=False)
def _run(estimator, model_args, n, replicates, seed, sweep_name, sweep_values):
    if estimator == bench.Estimator.SPECTRAL_ECF.value:
        model = spectral_model_on_grid(*model_args)
    else:
        model = StableParams(*model_args)
    config = bench.McConfig(model, n, replicates, seed, estimator)
    threads = get_default_threads()
    if sweep_values:
        results = bench.run_sweep(config, sweep_name, sweep_values, threads)
    else:
        results = [bench.run_mc(config, threads)]
    return bench.metrics_rows(results)


def show_bench():
    """Monte-Carlo experiment page"""
    st.header("🧪 Experimentos de Monte Carlo")
    st.markdown("**Média, desvio padrão, MSE e RMSE de cada estimador sobre réplicas com sementes independentes.**")

    estimator = st.radio("Estimador", list(ESTIMATOR_LABELS), format_func=lambda e: ESTIMATOR_LABELS[e],
                         horizontal=True)

    try:
        default_seed = get_default_seed()
    except StableFitError as e:
        st.error(f"❌ {str(e)}")
        default_seed = DEFAULTS["seed"]

    col1, col2, col3 = st.columns(3)
    with col1:
        n = int(st.number_input("Tamanho da amostra", min_value=DEFAULTS["min_sample_size"],
                                value=DEFAULTS["n"], step=100))
    with col2:
        replicates = int(st.number_input("Réplicas", min_value=1, value=50, step=10))
    with col3:
        seed = int(st.number_input("Semente", min_value=0, value=default_seed, step=1))

    if estimator == bench.Estimator.SPECTRAL_ECF.value:
        col1, col2, col3 = st.columns(3)
        with col1:
            alpha = st.number_input("α", min_value=0.1, max_value=2.0, value=1.3, step=0.1)
        with col2:
            d = int(st.selectbox("Dimensão d", [1, 2, 3], index=1))
        with col3:
            L = 2 if d == 1 else int(st.number_input("Pontos L", min_value=2, max_value=64,
                                                     value=DEFAULTS["grid_size"][d]))
        model_args = (alpha, d, L, tuple([1.0 / L] * L))
        sweepable = ["", "alpha", "n"]
    else:
        col1, col2, col3, col4 = st.columns(4)
        with col1:
            alpha = st.number_input("α", min_value=0.1, max_value=2.0, value=1.2, step=0.1)
        with col2:
            beta = st.number_input("β", min_value=-1.0, max_value=1.0, value=0.0, step=0.1)
        with col3:
            sigma = st.number_input("σ", min_value=0.001, value=1.0, step=0.1)
        with col4:
            delta = st.number_input("δ", value=0.0, step=0.1)
        model_args = (alpha, beta, sigma, delta, Param.ZERO)
        sweepable = [""] + list(bench.SWEEPABLE)

    col1, col2 = st.columns(2)
    with col1:
        sweep_name = st.selectbox("Variar parâmetro (opcional)", sweepable)
    with col2:
        sweep_text = st.text_input("Valores (separados por vírgula)", value="0.8, 1.2, 1.6" if sweep_name == "alpha" else "")

    if not st.button("🚀 Executar", use_container_width=True, type="primary"):
        return

    try:
        sweep_values = tuple(float(v) for v in sweep_text.split(",") if v.strip()) if sweep_name else ()
        with st.spinner(f"Executando {replicates} réplicas..."):
            rows = _run(estimator, model_args, n, replicates, seed, sweep_name, sweep_values)
    except StableFitError as e:
        st.error(f"❌ {e.category}: {str(e)}")
        return
    except ValueError as e:
        st.error(f"❌ Valor inválido: {str(e)}")
        return

    table = bench.rows_frame(rows)
    invalid = table.loc[~table["valid"].astype(bool)]
    if invalid.empty:
        st.success("✅ Todas as execuções válidas")
    else:
        st.warning(f"⚠️ {invalid['model'].nunique()} execução(ões) com mais de {DEFAULTS['max_failure_fraction']:.0%} de falhas")

    st.dataframe(table, use_container_width=True, hide_index=True)

    st.subheader("📥 Exportar Dados")
    stamp = pd.Timestamp.now().strftime("%Y%m%d_%H%M%S")
    col1, col2, col3 = st.columns(3)
    with col1:
        st.download_button("📄 Baixar como CSV", data=bench.emit_rows(rows, "csv"),
                           file_name=f"monte_carlo_{stamp}.csv", mime="text/csv", use_container_width=True)
    with col2:
        st.download_button("🧾 Baixar como JSON", data=bench.emit_rows(rows, "json"),
                           file_name=f"monte_carlo_{stamp}.json", mime="application/json",
                           use_container_width=True)
    with col3:
        try:
            st.download_button("📊 Baixar como Excel", data=bench.emit_excel(rows),
                               file_name=f"monte_carlo_{stamp}.xlsx", mime="application/vnd.ms-excel",
                               use_container_width=True)
        except ImportError:
            st.warning("⚠️ xlsxwriter não instalado. Use o download em CSV.")
