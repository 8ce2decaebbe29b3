# Pages package for modular Streamlit app 