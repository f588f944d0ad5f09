import streamlit as st
from dotenv import load_dotenv
from pydantic import ValidationError

from agents.report_agent import ReportAgent
from agents.verification_agent import VerificationAgent
from core.errors import PentagonError
from core.report_schema import RunConfig
from core.settings import load_settings

# Load .env at startup
load_dotenv()

# -----------------------------
# Page Config
# -----------------------------
st.set_page_config(
    page_title="Pentagon Verifier",
    layout="wide"
)

st.markdown("""
<style>
    /* Monospace report blocks */
    .stCodeBlock {
        border-radius: 8px;
        border: 1px solid #333;
    }

    [data-testid="stMetricValue"] {
        font-size: 2rem;
        font-weight: 600;
    }
</style>
""", unsafe_allow_html=True)


# -----------------------------
# Helper Functions
# -----------------------------
def run_command(config: RunConfig):
    """
    Run one command and render it

    Returns:
        (status, text report, structured document)
    """
    agent = VerificationAgent(config)
    status, report = agent.run()
    renderer = ReportAgent()
    text = renderer.render_text(report, agent.timings if config.timings else None)
    structured = renderer.render_structured(agent.document(report))
    return status, text, structured


def status_label(status: int) -> str:
    return "✅ Verified" if status == 0 else "❌ Identity fails"


# -----------------------------
# Title
# -----------------------------
st.title("🔺 Pentagon Verifier")
st.markdown("""
### Grassmann weights f, g, h on the 2→3 Pachner move

**verify:** residual of the pentagon equation (exact proof or modular sampling)
**coeff:** one monomial on either side
**crosscheck:** Gaussian representations, the minor rule and the vertex relabelings
**crosscheck:** Gaussian representations and the minor rule
""")

try:
    settings = load_settings()
except PentagonError as e:
    st.error(f"❌ {e}")
    st.stop()

# -----------------------------
# Input Section
# -----------------------------
st.header("⚙️ Configuration")

col1, col2, col3 = st.columns(3)

with col1:
    command = st.selectbox("Command", ["verify", "coeff", "show", "crosscheck", "explore"], key="command")
    weight = st.selectbox("Weight", ["f", "g", "h", "composite"], key="weight")

with col2:
    mode = st.radio("Mode", ["modp", "symbolic"], horizontal=True, key="mode")
    trials = st.number_input("Trials", min_value=1, value=settings.trials, key="trials")
    seed = st.number_input("Seed", min_value=0, value=settings.seed, key="seed")

with col3:
    lam = st.text_input("λ", value="sym", key="lam")
    mu = st.text_input("μ", value="sym", key="mu")
    zeta = st.text_input("ζ (optional)", value="", placeholder="0,1,2,3,4", key="zeta")

monomial = side = tet = show_object = grid = None
both = False
if command == "coeff":
    monomial = st.text_input("Monomial", value="124,125,135", key="monomial")
    side = st.radio("Side", ["lhs", "rhs"], horizontal=True, key="side")
    both = st.checkbox("Both sides", key="both")
elif command == "show":
    show_object = st.selectbox("Object", ["weight", "matrix-A", "matrix-lhs", "matrix-rhs", "form"], key="object")
    tet = st.text_input("Tetrahedron", value="1234", key="tet")
elif command == "explore":
    grid = st.text_input("Grid", value="0:sym;sym:0", key="grid")

timings = st.checkbox("Include timings", key="timings")

# -----------------------------
# Run Button
# -----------------------------
if st.button("▶️ Run", type="primary", use_container_width=True):
    try:
        config = RunConfig(
            command=command,
            weight=weight,
            mode=mode,
            prime=settings.prime,
            trials=int(trials),
            seed=int(seed),
            lam=lam,
            mu=mu,
            zeta=zeta.strip() or None,
            monomial=monomial,
            side=side or "lhs",
            both=both,
            tet=tet or "1234",
            show_object=show_object,
            grid=grid,
            timings=timings,
        )
    except ValidationError as e:
        st.error(f"❌ Invalid configuration: {e}")
        st.stop()

    try:
        with st.spinner(f"Running {command}..."):
            status, text, structured = run_command(config)
    except (PentagonError, ValueError, ZeroDivisionError) as e:
        st.error(f"❌ {e}")
        st.stop()

    st.metric("Result", status_label(status))

    tab1, tab2 = st.tabs(["📄 Report", "🧾 Structured"])
    with tab1:
        st.code(text, language="text")
    with tab2:
        st.code(structured, language="json")

    st.download_button(
        label="📥 Download report (JSON)",
        data=structured,
        file_name=f"pentagon_{command}_{weight}.json",
        mime="application/json",
        use_container_width=True
    )
