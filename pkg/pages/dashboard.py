import streamlit as st

from stablefit.config import DEFAULTS, get_default_seed


def _nav_card(column, title, body, target):
    with column:
        st.markdown(f"### {title}\n{body}")
        if st.button("🚀 Acessar", use_container_width=True, key=f"home_{target}"):
            st.session_state.current_page = target
            st.rerun()


def show_dashboard():
    """Main dashboard page"""
    st.title("📈 STABLEFIT")
    st.markdown("### Estimação de distribuições α-estáveis")

    col1, col2 = st.columns(2)
    _nav_card(
        col1,
        "📁 Ajuste de Retornos",
        """
        Envie um arquivo de preços (CSV ou Excel) e ajuste uma lei estável aos retornos.

        **Recursos:**
        - 🎯 Estimador híbrido (regressão na função característica)
        - 📐 Estimativa inicial Kogon-Williams
        - 🔔 Comparação com a Normal
        - 📊 Teste de Kolmogorov-Smirnov
        """,
        "upload",
    )
    _nav_card(
        col2,
        "🧭 Medida Espectral",
        """
        Estime o índice α, o deslocamento e os pesos da medida espectral discreta
        de dados em 1, 2 ou 3 dimensões.
        """,
        "spectral",
    )

    col3, col4 = st.columns(2)
    _nav_card(
        col3,
        "🎲 Simulação",
        "Gere amostras reprodutíveis (Chambers-Mallows-Stuck e vetores com medida espectral discreta).",
        "simulate",
    )
    _nav_card(
        col4,
        "🧪 Monte Carlo",
        "Reproduza tabelas de média, desvio padrão, MSE e RMSE dos estimadores.",
        "bench",
    )

    st.divider()

    st.subheader("⚙️ Configuração Padrão")
    col1, col2, col3, col4 = st.columns(4)
    try:
        seed = get_default_seed()
    except Exception as e:
        st.error(f"❌ {str(e)}")
        seed = DEFAULTS["seed"]

    with col1:
        st.metric(label="🌱 Semente", value=str(seed))
    with col2:
        st.metric(label="📏 Tamanho da amostra", value=DEFAULTS["n"])
    with col3:
        st.metric(label="🔁 Réplicas", value=DEFAULTS["replicates"])
    with col4:
        st.metric(label="⚠️ Falhas toleradas", value=f"{DEFAULTS['max_failure_fraction']:.0%}")

    st.divider()
    st.markdown("""
    <div style='text-align: center; color: #666;'>
        <p>🚀 Desenvolvido com Streamlit | 🧮 numpy, scipy e pandas | 💻 Também disponível via <code>python -m stablefit</code></p>
    </div>
    """, unsafe_allow_html=True)
