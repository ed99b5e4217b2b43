"""
Report documents (schema 1) with certificates stored by content hash, plus
aligned-column summaries.
"""
import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from models.certificates import ChiResult, ColoringCertificate, DefectResult, RefutationRecord
from models.reports import (REPORT_SCHEMA_VERSION, CheckReport, EqualityReport, GapReport, RemarkReport,
                            ScanResult)

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "schemas" / "report.schema.json"


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


class CertificateStore:
    """Content-addressed sidecar store: equal certificates share one entry"""

    def __init__(self):
        self._items: Dict[str, dict] = {}

    def put(self, payload: dict) -> str:
        digest = hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()
        self._items.setdefault(digest, payload)
        return digest

    def get(self, digest: str) -> dict:
        return self._items[digest]

    def __len__(self) -> int:
        return len(self._items)

    def to_dict(self) -> Dict[str, dict]:
        return {key: self._items[key] for key in sorted(self._items)}


def coloring_payload(cert: ColoringCertificate) -> dict:
    return {"type": "coloring", "colors": list(cert.colors), "num_colors": cert.num_colors}


def chi_to_dict(result: ChiResult, store: CertificateStore) -> dict:
    data = {"chi": result.chi, "refuted_below": result.refuted_below, "method": result.method,
            "certificate": None}
    if result.certificate is not None:
        data["certificate"] = store.put(coloring_payload(result.certificate))
    return data


def defect_to_dict(result: DefectResult) -> dict:
    """The DefectResult document: {cd, removed, coloring, r, refuted_sizes} plus search counters"""
    return {
        "cd": result.cd,
        "removed": list(result.removed_labels),
        "label_kind": result.label_kind,
        "removed_indices": list(result.certificate.removed),
        "coloring": list(result.certificate.coloring.colors),
        "r": result.certificate.r,
        "refuted_sizes": list(result.refuted_sizes),
        "candidates_tested": result.candidates_tested,
        "candidates_pruned": result.candidates_pruned,
    }


def defect_reference(result: DefectResult, store: CertificateStore) -> dict:
    payload = {"type": "defect", **defect_to_dict(result)}
    for key in ("candidates_tested", "candidates_pruned"):
        payload.pop(key)
    return {"cd": result.cd, "removed": list(result.removed_labels), "label_kind": result.label_kind,
            "refuted_sizes": list(result.refuted_sizes), "certificate": store.put(payload)}


def refutation_to_dict(record: RefutationRecord) -> dict:
    return {
        "r": record.r,
        "b": record.b,
        "refuted": record.refuted,
        "refuted_per_size": {str(size): count for size, count in sorted(record.refuted_per_size.items())},
        "total_refuted": record.total_refuted,
        "by_obstruction": record.by_obstruction,
        "by_search": record.by_search,
        "counterwitness": list(record.counterwitness) if record.counterwitness is not None else None,
        "obstructions": [list(ob) for ob in record.obstructions],
        "memo_hits": record.memo_hits,
    }


def gap_report_to_dict(report: GapReport, store: CertificateStore) -> dict:
    return {
        "family": report.family,
        "ground_size": report.ground_size,
        "member_count": report.member_count,
        "part_size": report.part_size,
        "r": report.r,
        "variant": report.variant.value,
        "lhs": chi_to_dict(report.lhs, store),
        "rhs": report.rhs,
        "cd": defect_reference(report.defect, store),
        "verdict": report.verdict.value,
        "expected": report.expected.value if report.expected is not None else None,
        "note": report.note,
    }


def equality_to_dict(report: EqualityReport, store: CertificateStore) -> dict:
    return {
        "name": report.name,
        "n": report.n,
        "k": report.k,
        "r": report.r,
        "vertex_count": report.vertex_count,
        "edge_count": report.edge_count,
        "chi": chi_to_dict(report.chi, store),
        "expected": report.expected,
        "comparison": report.comparison.value,
    }


def check_to_dict(report: CheckReport, store: CertificateStore) -> dict:
    return {
        "name": report.name,
        "params": dict(report.params),
        "passed": report.passed,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
        "values": dict(report.values),
        "chi": chi_to_dict(report.chi, store) if report.chi is not None else None,
        "cd": defect_reference(report.defect, store) if report.defect is not None else None,
        "refutation": refutation_to_dict(report.refutation) if report.refutation is not None else None,
    }


def remark_to_dict(report: RemarkReport, store: CertificateStore) -> dict:
    return {
        "family": report.family,
        "r": report.r,
        "chi_stable": chi_to_dict(report.chi_stable, store),
        "chi_almost": chi_to_dict(report.chi_almost, store),
        "difference": report.difference,
        "extended": store.put(coloring_payload(report.extended)),
        "extension_verified": report.extension_verified,
        "extension_colors": report.extension_colors,
        "rhs": report.rhs,
        "stable_slack": report.stable_slack,
        "weak_holds": report.weak_holds,
        "passed": report.passed,
    }


def scan_to_dict(result: ScanResult, store: CertificateStore) -> dict:
    params = result.params
    return {
        "params": {
            "ground_size_range": list(params.ground_size_range),
            "member_count_range": list(params.member_count_range),
            "member_size_range": list(params.member_size_range),
            "r_range": list(params.r_range),
            "samples": params.samples,
            "seed": params.seed,
        },
        "reports": [
            {"sample": index, **gap_report_to_dict(rep, store)}
            for index, rep in zip(result.sample_indices, result.reports)
        ],
        "skips": [{"sample": s.sample_index, "family": s.family, "r": s.r, "reason": s.reason}
                  for s in result.skips],
        "summary": result.summary(),
    }


def report_document(kind: str, report: Any, store: CertificateStore) -> dict:
    """Top-level JSON document: schema version, kind, body and the certificate store"""
    return {"schema": REPORT_SCHEMA_VERSION, "kind": kind, "report": report, "certificates": store.to_dict()}


def dump_document(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def load_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))


def validate_document(document: dict) -> None:
    """Raise jsonschema.ValidationError when the document breaks the shipped schema"""
    import jsonschema
    jsonschema.validate(instance=document, schema=load_schema())


def summary_frame(reports: Sequence[GapReport], sample_indices: Optional[List[int]] = None) -> pd.DataFrame:
    """One row per gap report"""
    rows = []
    for pos, rep in enumerate(reports):
        row = {
            "family": rep.family,
            "n": rep.ground_size,
            "members": rep.member_count,
            "part": rep.part_size,
            "r": rep.r,
            "variant": rep.variant.value,
            "lhs": rep.lhs.chi,
            "cd": rep.defect.cd,
            "rhs": rep.rhs,
            "verdict": rep.verdict.value,
        }
        if sample_indices is not None:
            row = {"sample": sample_indices[pos], **row}
        if any(r.expected is not None for r in reports):
            row["expected"] = rep.expected.value if rep.expected is not None else ""
        rows.append(row)
    return pd.DataFrame(rows)


def summary_text(reports: Sequence[GapReport], sample_indices: Optional[List[int]] = None) -> str:
    """Aligned-column text table; empty input gives a header-only line"""
    frame = summary_frame(reports, sample_indices)
    if frame.empty:
        return "no reports\n"
    return frame.to_string(index=False) + "\n"
