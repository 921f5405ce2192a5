"""CSV and JSON serialization of bound tables and verification reports.

Numbers are written with 12 significant digits, so the output depends only on
the inputs. JSON documents carry ``"schema_version": 1`` and a ``"rows"``
array; their JSON Schemas are ``BOUNDS_SCHEMA``, ``VERIFY_SCHEMA``,
``EIG_SCHEMA`` and ``SCAN_SCHEMA``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, TextIO

from .bounds import BoundReport
from .harness import BoundSweep, Crossover, VerificationCase, WidthScan
from .prolate import ConcentrationEigenSolution

SCHEMA_VERSION = 1
SIGNIFICANT_DIGITS = 12

BOUND_COLUMNS = (
    "gamma",
    "alpha",
    "beta",
    "lambda0",
    "c_max",
    "bound_mu",
    "bound_deutsch",
    "bound_beckner",
    "beckner_valid",
    "best_ab",
    "best_qp",
)

VERIFY_COLUMNS = (
    "case",
    "state",
    "gamma",
    "delta_x",
    "delta_p",
    "alpha",
    "beta",
    "H_q",
    "H_p",
    "H_A",
    "H_B",
    "bound_mu",
    "bound_deutsch",
    "bound_beckner",
    "beckner_valid",
    "best_ab",
    "best_qp",
    "min_slack",
    "single_bin_max",
    "single_bin_limit",
    "captured_A",
    "captured_B",
    "reliable",
    "passed",
)


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return format(float(value), f".{SIGNIFICANT_DIGITS}g")
    return str(value)


def rounded(value: float | None) -> float | None:
    """The float that :func:`fmt` writes."""
    if value is None:
        return None
    return float(fmt(float(value)))


def _parse_bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"expected true/false, got {text!r}")
    return text == "true"


# -- bound tables ------------------------------------------------------------------


def bound_row(report: BoundReport) -> dict:
    """Row with the Beckner value kept even when invalid; ``beckner_valid`` says whether it counts."""
    return {
        "gamma": rounded(report.gamma),
        "alpha": rounded(report.alpha),
        "beta": rounded(report.beta),
        "lambda0": rounded(report.lambda0),
        "c_max": rounded(report.c_max),
        "bound_mu": rounded(report.bound_mu),
        "bound_deutsch": rounded(report.bound_deutsch),
        "bound_beckner": rounded(report.bound_beckner_raw),
        "beckner_valid": report.beckner_valid,
        "best_ab": rounded(report.best_ab),
        "best_qp": rounded(report.best_qp),
    }


def rounded_report(report: BoundReport) -> BoundReport:
    """The report as it reads back from CSV or JSON."""
    return report_from_row(bound_row(report))


def report_from_row(row: dict) -> BoundReport:
    return BoundReport(
        gamma=float(row["gamma"]),
        alpha=float(row["alpha"]),
        beta=float(row["beta"]),
        lambda0=float(row["lambda0"]),
        c_max=float(row["c_max"]),
        bound_mu=float(row["bound_mu"]),
        bound_deutsch=float(row["bound_deutsch"]),
        bound_beckner_raw=float(row["bound_beckner"]),
        beckner_valid=row["beckner_valid"] if isinstance(row["beckner_valid"], bool) else _parse_bool(row["beckner_valid"]),
        best_ab=float(row["best_ab"]),
        best_qp=float(row["best_qp"]),
    )


def write_bounds_csv(reports: Iterable[BoundReport], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BOUND_COLUMNS)
    for report in reports:
        row = bound_row(report)
        writer.writerow([fmt(row[c]) for c in BOUND_COLUMNS])


def read_bounds_csv(stream: TextIO) -> list[BoundReport]:
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != BOUND_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [report_from_row(row) for row in reader]


def crossover_dict(c: Crossover) -> dict:
    return {
        "alpha": rounded(c.alpha),
        "kind": c.kind,
        "gamma": rounded(c.gamma),
        "beckner_value": rounded(c.beckner_value),
        "other_value": rounded(c.other_value),
    }


def bounds_document(sweep: BoundSweep) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "bounds",
        "columns": list(BOUND_COLUMNS),
        "rows": [bound_row(r) for r in sweep.reports],
        "crossovers": [crossover_dict(c) for c in sweep.crossovers],
    }


def read_bounds_json(stream: TextIO) -> list[BoundReport]:
    doc = json.load(stream)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')!r}")
    return [report_from_row(row) for row in doc["rows"]]


# -- eigenvalue ----------------------------------------------------------------------


def eig_document(sol: ConcentrationEigenSolution) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "eig",
        "rows": [
            {
                "gamma": rounded(sol.gamma),
                "nodes": sol.node_count,
                "lambda0": rounded(sol.lambda0),
                "deficit": rounded(sol.deficit),
                "c_max": rounded(sol.c_max),
                "convergence_delta": rounded(sol.convergence_delta),
                "converged": sol.converged,
                "asymptote_ratio": rounded(sol.asymptote_ratio),
                "precision_digits": sol.precision_digits,
                "spectrum_head": [rounded(v) for v in sol.spectrum_head],
            }
        ],
    }


# -- verification ----------------------------------------------------------------------


def _state_label(descriptor: dict) -> str:
    if not descriptor:
        return ""
    parts = [str(descriptor.get("name", "state"))]
    for key, value in descriptor.items():
        if key != "name":
            parts.append(f"{key}={fmt(value)}")
    return " ".join(parts)


def verify_row(index: int, case: VerificationCase) -> dict:
    b = case.bounds
    return {
        "case": index,
        "state": _state_label(case.descriptor),
        "gamma": rounded(case.gamma),
        "delta_x": rounded(case.scheme.delta_x),
        "delta_p": rounded(case.scheme.delta_p),
        "alpha": rounded(case.orders.alpha),
        "beta": rounded(case.orders.beta),
        "H_q": rounded(case.entropies["H_q"]),
        "H_p": rounded(case.entropies["H_p"]),
        "H_A": rounded(case.entropies.get("H_A")),
        "H_B": rounded(case.entropies.get("H_B")),
        "bound_mu": rounded(b.bound_mu),
        "bound_deutsch": rounded(b.bound_deutsch),
        "bound_beckner": rounded(b.bound_beckner_raw),
        "beckner_valid": b.beckner_valid,
        "best_ab": rounded(b.best_ab),
        "best_qp": rounded(b.best_qp),
        "min_slack": rounded(case.min_slack),
        "single_bin_max": rounded(case.single_bin_max),
        "single_bin_limit": rounded(case.single_bin_limit),
        "captured_A": rounded(case.captured_mass.get("A")),
        "captured_B": rounded(case.captured_mass.get("B")),
        "reliable": case.reliable,
        "passed": case.passed,
    }


def verify_document(cases: list[VerificationCase]) -> dict:
    rows = []
    for i, case in enumerate(cases):
        row = verify_row(i, case)
        row["descriptor"] = {k: (rounded(v) if isinstance(v, float) else v) for k, v in case.descriptor.items()}
        row["slacks"] = {k: rounded(v) for k, v in case.slacks.items()}
        rows.append(row)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verify",
        "passed": all(c.passed for c in cases),
        "rows": rows,
    }


def write_verify_csv(cases: list[VerificationCase], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(VERIFY_COLUMNS)
    for i, case in enumerate(cases):
        row = verify_row(i, case)
        writer.writerow([fmt(row[c]) for c in VERIFY_COLUMNS])


# -- width scan ----------------------------------------------------------------------------


def scan_document(scan: WidthScan) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "scan",
        "gamma": rounded(scan.gamma),
        "alpha": rounded(scan.orders.alpha),
        "beta": rounded(scan.orders.beta),
        "bound": rounded(scan.bound),
        "minimum": rounded(scan.minimum),
        "gap": rounded(scan.gap),
        "passed": scan.passed,
        "rows": [{"width": rounded(w), "entropy_sum": rounded(s)} for w, s in zip(scan.widths, scan.entropy_sums)],
    }


def write_scan_csv(scan: WidthScan, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("width", "entropy_sum", "bound"))
    for w, s in zip(scan.widths, scan.entropy_sums):
        writer.writerow((fmt(w), fmt(s), fmt(scan.bound)))


def _json_safe(value):
    # the min-entropy order alpha = inf is written as the string "inf"
    if isinstance(value, float) and math.isinf(value) and value > 0:
        return "inf"
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def dumps(doc: dict) -> str:
    return json.dumps(_json_safe(doc), indent=2, allow_nan=False) + "\n"


def csv_text(writer, *args) -> str:
    buf = io.StringIO()
    writer(*args, buf)
    return buf.getvalue()


# -- schemas ----------------------------------------------------------------------------------

_NUMBER = {"type": "number"}
_NULLABLE_NUMBER = {"type": ["number", "null"]}
_ORDER = {"anyOf": [_NUMBER, {"const": "inf"}]}

BOUNDS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "kind", "rows", "crossovers"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"const": "bounds"},
        "columns": {"type": "array", "items": {"enum": list(BOUND_COLUMNS)}},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": list(BOUND_COLUMNS),
                "additionalProperties": False,
                "properties": {
                    **{c: _NUMBER for c in BOUND_COLUMNS if c != "beckner_valid"},
                    "alpha": _ORDER,
                    "beckner_valid": {"type": "boolean"},
                },
            },
        },
        "crossovers": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["alpha", "kind", "gamma"],
                "properties": {
                    "alpha": _ORDER,
                    "kind": {"enum": ["ab", "qp"]},
                    "gamma": _NULLABLE_NUMBER,
                    "beckner_value": _NULLABLE_NUMBER,
                    "other_value": _NULLABLE_NUMBER,
                },
            },
        },
    },
}

EIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "kind", "rows"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"const": "eig"},
        "rows": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["gamma", "nodes", "lambda0", "deficit", "c_max", "convergence_delta", "converged"],
                "properties": {
                    "gamma": _NUMBER,
                    "nodes": {"type": "integer"},
                    "lambda0": _NUMBER,
                    "deficit": _NUMBER,
                    "c_max": _NUMBER,
                    "convergence_delta": _NUMBER,
                    "converged": {"type": "boolean"},
                    "asymptote_ratio": _NUMBER,
                    "precision_digits": {"type": ["integer", "null"]},
                    "spectrum_head": {"type": "array", "items": _NUMBER},
                },
            },
        },
    },
}

VERIFY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "kind", "passed", "rows"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"const": "verify"},
        "passed": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": list(VERIFY_COLUMNS) + ["slacks", "descriptor"],
                "properties": {
                    **{c: _NULLABLE_NUMBER for c in VERIFY_COLUMNS},
                    "alpha": _ORDER,
                    "case": {"type": "integer"},
                    "state": {"type": "string"},
                    "beckner_valid": {"type": "boolean"},
                    "reliable": {"type": "boolean"},
                    "passed": {"type": "boolean"},
                    "slacks": {"type": "object", "additionalProperties": _NUMBER},
                    "descriptor": {"type": "object"},
                },
            },
        },
    },
}

SCAN_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "kind", "gamma", "alpha", "bound", "minimum", "gap", "passed", "rows"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"const": "scan"},
        "gamma": _NUMBER,
        "alpha": _ORDER,
        "beta": _NUMBER,
        "bound": _NUMBER,
        "minimum": _NUMBER,
        "gap": _NUMBER,
        "passed": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["width", "entropy_sum"],
                "properties": {"width": _NUMBER, "entropy_sum": _NUMBER},
            },
        },
    },
}

