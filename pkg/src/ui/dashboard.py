# src/ui/dashboard.py

import json

import numpy as np
import pandas as pd
import streamlit as st

from src.boolean_cube.majority import majority, majority_level1_report
from src.boolean_cube.walsh import BooleanFunction, degree, sup_norm_boolean
from src.index_sets.certificates import surprise_certificate
from src.index_sets.multi_index import FamilyKind, count_exact
from src.ksz_lab.trials import ksz_constant_sweep
from src.multipliers.bracket import Space, sidon_estimate
from src.reports.cli import run
from src.storage.sqlite_manager import SQLiteManager
from src.utils.errors import WorkbenchError
from src.utils.logger import get_logger

logger = get_logger(__name__)

VERDICT_EMOJI = {
    "verified": "✅",
    "inconclusive": "🟡",
    "counterexample": "🔴",
    "member": "🟢",
    "non-member": "⚪",
    "error": "❌",
}


class WorkbenchDashboard:
    def __init__(self):
        self.db = SQLiteManager()
        self._init_state()

    def _init_state(self):
        defaults = {
            "seed": 0,
            "budget": 1,
            "quick": True,
            "verdict_filter": "all",
            "run_filter": "all",
            "is_running": False,
            "last_exit": None,
            "sweep": None,
        }
        for k, v in defaults.items():
            if k not in st.session_state:
                st.session_state[k] = v

    # ---------------- Sidebar ----------------
    def render_sidebar(self):
        st.sidebar.markdown("### 🧮 Run Controls")
        st.session_state.seed = st.sidebar.number_input("Seed", min_value=0, value=int(st.session_state.seed), step=1)
        st.session_state.budget = st.sidebar.number_input("Budget units", min_value=1, max_value=64, value=int(st.session_state.budget))
        st.session_state.quick = st.sidebar.checkbox("Quick parameters", value=st.session_state.quick)

        counts = self.db.get_verdict_counts()
        col1, col2, col3 = st.sidebar.columns(3)
        col1.metric("✅", counts.get("verified", 0))
        col2.metric("🟡", counts.get("inconclusive", 0))
        col3.metric("🔴", counts.get("counterexample", 0))

        last_run = self.db.get_run_metadata("last_run_id")
        if last_run:
            st.sidebar.caption(f"Last run: {last_run[:8]} (seed {self.db.get_run_metadata('last_seed')})")

        if st.session_state.is_running:
            st.sidebar.button("⏳ Running...", disabled=True, use_container_width=True)
        elif st.sidebar.button("▶ Run verify-all", use_container_width=True, type="primary"):
            self.run_verify_all()

        if st.session_state.last_exit is not None:
            status = {0: "success", 1: "counterexample found", 2: "usage error", 3: "internal failure"}
            st.sidebar.info(f"Last exit: {st.session_state.last_exit} ({status.get(st.session_state.last_exit, '?')})")

    def run_verify_all(self):
        st.session_state.is_running = True
        argv = ["verify-all", "--seed", str(st.session_state.seed), "--budget", str(st.session_state.budget), "--out", str(self.db.db_path.with_suffix(".jsonl"))]
        if st.session_state.quick:
            argv.append("--quick")
        try:
            with st.spinner("Running every registered check..."):
                st.session_state.last_exit = run(argv)
        finally:
            st.session_state.is_running = False
        st.rerun()

    # ---------------- Tabs ----------------
    def render_reports(self):
        run_ids = self.db.get_run_ids()
        col1, col2 = st.columns(2)
        verdict = col1.selectbox("Verdict", ["all", "verified", "inconclusive", "counterexample", "member", "non-member", "error"], key="verdict_filter")
        run_id = col2.selectbox("Run", ["all"] + run_ids, key="run_filter")
        rows = self.db.get_reports(
            verdict=None if verdict == "all" else verdict,
            run_id=None if run_id == "all" else run_id,
        )
        if not rows:
            st.info("No stored reports yet. Run verify-all from the sidebar or the CLI.")
            return
        table = pd.DataFrame(
            [
                {
                    "": VERDICT_EMOJI.get(r["verdict"], ""),
                    "check": r["check_id"],
                    "verdict": r["verdict"],
                    "space": r["payload"].get("space"),
                    "lhs": r["payload"].get("lhs"),
                    "constant": r["payload"].get("constant"),
                    "lower": r["payload"].get("bracket_lower"),
                    "upper": r["payload"].get("bracket_upper"),
                    "anchor": r["anchor"],
                    "run": r["run_id"][:8],
                }
                for r in rows
            ]
        )
        st.dataframe(table, use_container_width=True, hide_index=True)
        with st.expander("Raw entry"):
            pick = st.number_input("Row", min_value=0, max_value=len(rows) - 1, value=0)
            st.code(json.dumps(rows[int(pick)]["payload"], indent=2, sort_keys=True), language="json")

    def render_counts(self):
        col1, col2, col3 = st.columns(3)
        kind = col1.selectbox("Family", [k.value for k in FamilyKind])
        m = col2.number_input("m", min_value=0, max_value=60, value=2)
        n = col3.number_input("n", min_value=1, max_value=60, value=3)
        st.metric("Cardinality", f"{count_exact(kind, int(m), int(n)):,}")
        if kind == FamilyKind.LAMBDA_LE.value and m >= 1:
            cert = surprise_certificate(int(m), int(n))
            st.markdown(
                f"**Certificate:** {float(cert.lower):.6f} ≤ |Λ|^(1/2m) = {float(cert.mid):.6f} ≤ {float(cert.upper):.6f}"
            )

    def render_sidon(self):
        col1, col2, col3, col4 = st.columns(4)
        space_kind = col1.selectbox("Space", ["torus", "boolean"])
        m = col2.number_input("Degree m", min_value=1, max_value=8, value=2)
        n = col3.number_input("Variables n", min_value=1, max_value=16, value=4)
        p = col4.number_input("Target p", min_value=1.0, max_value=4.0, value=1.0, step=0.1)
        homogeneous = st.checkbox("Homogeneous", value=True)
        if st.button("Estimate χ_p"):
            try:
                space = Space.boolean(int(n), int(m), homogeneous) if space_kind == "boolean" else Space.torus(int(m), int(n), homogeneous)
                with st.spinner("Searching candidates..."):
                    est = sidon_estimate(space, float(p), int(st.session_state.budget), int(st.session_state.seed))
                st.json(est.to_dict())
            except WorkbenchError as e:
                logger.error(f"❌ Sidon estimate failed: {e}")
                st.error(str(e))

    def render_ksz(self):
        col1, col2, col3 = st.columns(3)
        ms = col1.multiselect("m values", list(range(1, 9)), default=[1, 2])
        ns = col2.multiselect("n values", [1, 2, 3], default=[1, 2])
        trials = col3.number_input("Trials per cell", min_value=1, max_value=5000, value=50)
        if st.button("Run sweep") and ms and ns:
            try:
                with st.spinner("Sampling random-sign polynomials..."):
                    st.session_state.sweep = ksz_constant_sweep(ms, ns, int(trials), int(st.session_state.seed))
            except WorkbenchError as e:
                logger.error(f"❌ KSZ sweep failed: {e}")
                st.error(str(e))
        frame = st.session_state.sweep
        if frame is not None:
            st.dataframe(frame, use_container_width=True, hide_index=True)
            st.download_button("⬇ Download CSV", frame.to_csv(index=False), file_name="ksz_sweep.csv", mime="text/csv")

    def render_walsh(self):
        source = st.radio("Function", ["Majority", "Custom truth table"], horizontal=True)
        try:
            if source == "Majority":
                N = st.select_slider("N (odd)", options=list(range(1, 16, 2)), value=5)
                f = majority(N)
                report = majority_level1_report(N)
                st.caption(f"Level-1 coefficient {report.exact} ≈ {float(report.exact):.6f}; √(2/π)/√N = {report.asymptotic:.6f}")
            else:
                text = st.text_area("Values, one per vertex (length 2^N)", "1 1 1 -1")
                f = BooleanFunction.from_truth_table(np.array(text.split(), dtype=float))
        except (WorkbenchError, ValueError) as e:
            st.error(str(e))
            return
        col1, col2 = st.columns(2)
        col1.metric("Degree", degree(f))
        col2.metric("sup |f|", f"{sup_norm_boolean(f):.6g}")
        st.markdown("**Level weights** Σ_{|S|=k} f̂(S)²")
        st.bar_chart(pd.DataFrame({"weight": f.level_weights()}, index=pd.Index(range(f.N + 1), name="k")))
        st.markdown("**Walsh coefficients**")
        st.bar_chart(pd.DataFrame({"coefficient": f.walsh}, index=pd.Index(range(1 << f.N), name="mask")))

    def render(self):
        st.set_page_config(page_title="🧮 Multiplier Workbench", layout="wide", initial_sidebar_state="expanded")
        st.markdown(
            """
            <div style='text-align: center; padding: 1rem 0; margin-bottom: 2rem;'>
                <h1 style='color: #1f77b4; margin: 0;'>🧮 Multiplier Workbench</h1>
                <p style='color: #666; margin: 0.5rem 0;'>Sidon constants, multiplier brackets, random-sign sups and Walsh spectra</p>
            </div>
            """,
            unsafe_allow_html=True,
        )
        self.render_sidebar()
        tabs = st.tabs(["📋 Reports", "🔢 Counts & certificates", "📐 Sidon constants", "🎲 KSZ lab", "📊 Walsh spectrum"])
        renderers = [self.render_reports, self.render_counts, self.render_sidon, self.render_ksz, self.render_walsh]
        for tab, renderer in zip(tabs, renderers):
            with tab:
                try:
                    renderer()
                except WorkbenchError as e:
                    logger.error(f"❌ {e}")
                    st.error(str(e))


def render_dashboard():
    WorkbenchDashboard().render()


if __name__ == "__main__":
    render_dashboard()
