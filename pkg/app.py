import json
import os
import sys
import traceback

import pandas as pd
import streamlit as st

# Add the project root to the path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from models.limits import EngineLimits
from parsers.report_io import CertificateStore, check_to_dict, gap_report_to_dict, report_document
from solver.conjectures import footnote_grid, verify_proposition1, verify_proposition2

st.set_page_config(
    page_title="Stable Kneser Lab",
    layout="wide",
    initial_sidebar_state="expanded"
)


def gap_rows_frame(rows):
    """Flatten gap report dicts (from a saved document) into a table"""
    return pd.DataFrame([
        {
            "sample": row.get("sample", ""),
            "family": row["family"],
            "n": row["ground_size"],
            "members": row["member_count"],
            "part": row["part_size"],
            "r": row["r"],
            "variant": row["variant"],
            "lhs": row["lhs"]["chi"],
            "cd": row["cd"]["cd"],
            "rhs": row["rhs"],
            "verdict": row["verdict"],
            "expected": row.get("expected") or "",
        }
        for row in rows
    ])


def checks_frame(report):
    return pd.DataFrame(report["checks"])


def show_document(document):
    kind = document["kind"]
    report = document["report"]
    st.caption(f"schema {document['schema']} · kind {kind} · {len(document['certificates'])} stored certificate(s)")

    if kind == "scan":
        summary = report["summary"]
        cols = st.columns(4)
        cols[0].metric("Samples", summary["samples"])
        cols[1].metric("Reports", summary["reports"])
        cols[2].metric("Violated", summary["violated"])
        cols[3].metric("Skipped", summary["skipped"])
        if report["reports"]:
            st.dataframe(gap_rows_frame(report["reports"]), use_container_width=True)
        if report["skips"]:
            st.subheader("Skipped samples")
            st.dataframe(pd.DataFrame(report["skips"]), use_container_width=True)
    elif kind == "footnote":
        st.dataframe(gap_rows_frame(report), use_container_width=True)
    elif kind == "gap":
        cols = st.columns(3)
        cols[0].metric("chi of part", report["lhs"]["chi"])
        cols[1].metric("ceil(cd / (r-1))", report["rhs"])
        cols[2].metric("Verdict", report["verdict"])
        st.write(f"**Removed ({report['cd']['label_kind']}):** {report['cd']['removed']}")
    elif kind in ("prop1", "prop2"):
        st.metric("Result", "Passed" if report["passed"] else "Failed")
        st.dataframe(checks_frame(report), use_container_width=True)
        st.json(report["values"])
    else:
        st.json(report)

    with st.expander("Certificates"):
        st.json(document["certificates"])


with st.sidebar:
    st.header("Stable Kneser Lab")
    source = st.selectbox("Source", ["Upload report JSON", "Proposition 1", "Proposition 2", "Footnote grid"])
    time_budget = st.number_input("Time budget (s)", min_value=1.0, max_value=600.0, value=60.0)
    if source == "Proposition 1":
        r = st.slider("r", 2, 4, 3)
        k = st.slider("k", 1, 3, 2)
    elif source == "Proposition 2":
        r = st.slider("r", 2, 3, 2)
    elif source == "Footnote grid":
        r = st.slider("r", 2, 4, 3)
        n_max = st.slider("n max", 3, 13, 10)
        include_multiples = st.checkbox("Include multiples of r", value=False)

if source == "Upload report JSON":
    uploaded_file = st.sidebar.file_uploader("Report document", type=["json"])
    if uploaded_file is not None:
        try:
            st.session_state["document"] = json.loads(uploaded_file.getvalue().decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            st.sidebar.error(f"Not a JSON report: {e}")
elif st.sidebar.button("Run", type="primary", use_container_width=True):
    limits = EngineLimits(time_budget_seconds=time_budget)
    store = CertificateStore()
    with st.spinner("Computing exact values..."):
        try:
            if source == "Proposition 1":
                report = verify_proposition1(r, k, limits)
                document = report_document("prop1", check_to_dict(report, store), store)
            elif source == "Proposition 2":
                report = verify_proposition2(r, limits)
                document = report_document("prop2", check_to_dict(report, store), store)
            else:
                reports = footnote_grid(r, n_max, limits, include_multiples=include_multiples)
                document = report_document("footnote", [gap_report_to_dict(rep, store) for rep in reports], store)
            st.session_state["document"] = document
        except Exception as e:
            st.error(f"An error occurred during the computation: {e}")
            st.code(traceback.format_exc())

st.title("Generalized Kneser Hypergraphs: Exact Values")

if "document" in st.session_state:
    show_document(st.session_state["document"])
else:
    st.info("Use the sidebar to load a report or run a check.")
