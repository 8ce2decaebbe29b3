import streamlit as st
import pandas as pd

from stablefit.errors import StableFitError
from stablefit.estimate_uni import UniEstimator
from stablefit.gof import cdf_plot_data, describe, goodness_of_fit, reports_frame
from stablefit.returns_data import RETURN_KINDS, read_price_frame, returns_series
from stablefit.stable_core import Param
from stablefit.column_mapping import default_price_column

ESTIMATOR_LABELS = {
    UniEstimator.HYBRID.value: "🎯 Híbrido",
    UniEstimator.KW.value: "📐 Kogon-Williams",
    UniEstimator.GAUSSIAN.value: "🔔 Normal (α = 2)",
}
RETURN_LABELS = {"log": "Log-retornos", "simple": "Retornos simples", "none": "Usar valores como estão"}


def load_uploaded_frame(uploaded_file, has_header=True):
    """Read an uploaded CSV/Excel price file, returning (df, error message or None)"""
    try:
        df = read_price_frame(uploaded_file, has_header, filename=uploaded_file.name)
        return df, None
    except StableFitError as e:
        return None, str(e)
    except Exception as e:
        return None, f"Erro ao ler arquivo: {str(e)}"


@st.cache_data(show_spinner=False)
def _goodness_of_fit_table(values, estimators, param):
    reports = [goodness_of_fit(values, which, Param(param)) for which in estimators]
    return reports_frame(reports), [r.params for r in reports]


@st.cache_data(show_spinner=False)
def _plot_table(values, _params, key):
    return cdf_plot_data(values, _params)


def show_returns_fit():
    """Fit stable laws to a return series and run the K-S test"""
    st.header("📁 Ajuste de Lei Estável a Retornos")
    st.markdown("**Envie um arquivo de preços (CSV ou Excel). A coluna de fechamento ajustado é escolhida automaticamente.**")

    uploaded_file = st.file_uploader("Arquivo de preços", type=["csv", "xlsx", "xls"])
    if uploaded_file is None:
        st.info("💡 Formatos aceitos: exportações do Yahoo Finance, planilhas com coluna 'Adj Close' ou 'Fechamento Ajustado'")
        return

    has_header = st.checkbox("Primeira linha é cabeçalho", value=True)
    df, error = load_uploaded_frame(uploaded_file, has_header)
    if error:
        st.error(f"❌ {error}")
        return

    st.success(f"✅ {len(df)} linhas carregadas")
    with st.expander("📋 Ver dados carregados"):
        st.dataframe(df.head(50), use_container_width=True, hide_index=True)

    columns = list(df.columns)
    default_col = default_price_column(df) if has_header else columns[0]

    col1, col2, col3 = st.columns(3)
    with col1:
        column = st.selectbox("Coluna de preços", columns, index=columns.index(default_col))
    with col2:
        kind = st.selectbox("Transformação", RETURN_KINDS, format_func=lambda k: RETURN_LABELS[k])
    with col3:
        param = st.radio("Parametrização", [p.value for p in Param], horizontal=True,
                         format_func=lambda p: "S0 (contínua)" if p == "zero" else "S1 (clássica)")

    estimators = st.multiselect(
        "Estimadores",
        list(ESTIMATOR_LABELS),
        default=list(ESTIMATOR_LABELS),
        format_func=lambda e: ESTIMATOR_LABELS[e],
    )

    if not st.button("🚀 Ajustar", use_container_width=True, type="primary"):
        return
    if not estimators:
        st.warning("⚠️ Selecione pelo menos um estimador")
        return

    try:
        series = returns_series(df, column, has_header, kind, uploaded_file.name)
        values = series.values
        with st.spinner("Ajustando e calculando Kolmogorov-Smirnov..."):
            table, fitted = _goodness_of_fit_table(values, tuple(estimators), param)
    except StableFitError as e:
        st.error(f"❌ {e.category}: {str(e)}")
        return

    st.subheader("📊 Estatísticas Descritivas")
    stats = describe(values)
    cols = st.columns(5)
    for col, (label, key) in zip(cols, [("Média", "mean"), ("Desvio", "sd"), ("Mediana", "median"),
                                        ("Assimetria", "skew"), ("Curtose", "kurtosis")]):
        with col:
            st.metric(label=label, value=f"{stats[key]:.5g}")

    st.subheader("🎯 Estimativas e Teste K-S")
    st.dataframe(table, use_container_width=True, hide_index=True)

    best = table.loc[table["p_value"].idxmax()]
    st.success(f"✅ Melhor ajuste: {ESTIMATOR_LABELS[best['estimator']]} (D = {best['ks_d']:.6f}, p = {best['p_value']:.4f})")

    st.subheader("📥 Exportar Dados")
    col1, col2 = st.columns(2)
    with col1:
        st.download_button(
            label="📄 Baixar estimativas (CSV)",
            data=table.to_csv(index=False),
            file_name=f'estimativas_{pd.Timestamp.now().strftime("%Y%m%d_%H%M%S")}.csv',
            mime="text/csv",
            use_container_width=True,
        )
    with col2:
        try:
            plot = _plot_table(values, fitted[0], str(fitted[0].as_dict()))
            st.download_button(
                label="📈 Baixar CDF empírica x modelo (CSV)",
                data=plot.to_csv(index=False),
                file_name=f'cdf_{estimators[0]}_{pd.Timestamp.now().strftime("%Y%m%d_%H%M%S")}.csv',
                mime="text/csv",
                use_container_width=True,
            )
        except StableFitError as e:
            st.error(f"❌ {str(e)}")

