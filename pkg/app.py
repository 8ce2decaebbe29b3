import streamlit as st
import sys
import os

st.set_page_config(page_title="Stablefit - Leis Estáveis", page_icon="📈", layout="wide")

# Add project root to path so `stablefit` and `pages` import from anywhere
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

PAGES = [
    ("home", "🏠 Dashboard"),
    ("upload", "📁 Ajuste de Retornos"),
    ("spectral", "🧭 Medida Espectral"),
    ("simulate", "🎲 Simulação"),
    ("bench", "🧪 Monte Carlo"),
]


def main():
    """Main app router with lazy loading for performance"""

    # Initialize session state
    if "current_page" not in st.session_state:
        st.session_state.current_page = "home"

    # Sidebar navigation
    with st.sidebar:
        st.title("📈 MENU PRINCIPAL")

        for key, label in PAGES:
            if st.button(label, use_container_width=True, key=f"nav_{key}"):
                st.session_state.current_page = key
                st.rerun()

        st.divider()
        st.caption("Estimação de leis α-estáveis univariadas e multivariadas")

    # Route to appropriate page with lazy loading
    page = st.session_state.current_page

    try:
        if page == "home":
            from pages.dashboard import show_dashboard
            show_dashboard()
        elif page == "upload":
            from pages.upload import show_returns_fit
            show_returns_fit()
        elif page == "spectral":
            from pages.spectral import show_spectral_fit
            show_spectral_fit()
        elif page == "simulate":
            from pages.simulate import show_simulation
            show_simulation()
        elif page == "bench":
            from pages.bench import show_bench
            show_bench()
        else:
            st.error(f"Página '{page}' não encontrada!")

    except ImportError as e:
        st.error(f"❌ Erro ao carregar página: {str(e)}")
        st.info("💡 Verifique se todas as dependências do requirements.txt estão instaladas")


if __name__ == "__main__":
    main()
