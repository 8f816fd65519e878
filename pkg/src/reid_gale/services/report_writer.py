"""Deterministic serialization of Gale reports and side tables."""

import logging
from pathlib import Path

import orjson

from reid_gale.errors import OutputError
from reid_gale.services.matrix_io import matrix_to_csv, matrix_to_json
from reid_gale.types.bundles import DegreeMatrix
from reid_gale.types.fan import CrepantFan
from reid_gale.types.report import GaleReport, SignClass
from reid_gale.types.surfaces import EulerTable

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2


def _trichotomy_dict(report: GaleReport) -> dict:
    rows = report.kt_rows
    plus, zero, minus, incoherent = {}, {}, {}, {}
    for c in report.trichotomy.columns:
        key = str(c.label)
        if c.sign is SignClass.PLUS:
            plus[key] = [{"row": rows[r], "entry": x} for r, x in sorted(c.entries.items())]
        elif c.sign is SignClass.MINUS:
            minus[key] = {rows[r]: m for r, m in sorted(c.multiplicities.items())}
        elif c.sign is SignClass.INCOHERENT:
            incoherent[key] = {rows[r]: x for r, x in sorted(c.entries.items())}
        else:
            zero[key] = _zero_entry(report, c.label)
    return {"plus": plus, "zero": zero, "minus": minus, "incoherent": incoherent}


def _zero_entry(report: GaleReport, label) -> dict:
    support = report.case0.get(label)
    if support is None:
        return {}
    if report.mode == "matrix":
        return {"lt_row": list(support)}
    names = report.point_labels
    exact, candidates = support
    return {
        "supports": [[names[u], names[v]] for u, v in exact],
        "degree_one": [[names[u], names[v]] for u, v in candidates],
    }


def _markings_dict(report: GaleReport) -> dict | None:
    marks = report.markings
    if marks is None:
        return None
    names = report.point_labels
    return {
        "points": {names[p]: list(chars) for p, chars in marks.points.items()},
        "segments": [
            {
                "wall": [names[u], names[v]],
                "character": chi,
                "degree_one": list(marks.degree_one.get((u, v), ())),
            }
            for (u, v), chi in sorted(marks.segments.items())
        ],
    }


def _cht_dict(report: GaleReport) -> dict | None:
    cht = report.cht_check
    if cht is None:
        return None
    names = report.point_labels
    return {
        "pass": cht.passed,
        "checked": len(cht.entries),
        "failures": [
            {"character": e.character, "point": names[e.point], "kt": e.kt_entry, "N": e.predicted}
            for e in cht.failures
        ],
    }


def report_to_dict(report: GaleReport) -> dict:
    return {
        "mode": report.mode,
        "group": report.group.to_dict() if report.group else None,
        "labels": [str(x) for x in report.labels],
        "ns_rank": report.ns_rank,
        "reid_basis": list(report.reid_basis) if report.reid_basis is not None else None,
        "L": matrix_to_json(report.L),
        "Lt": matrix_to_json(report.Lt),
        "K": matrix_to_json(report.K),
        "Kt": matrix_to_json(report.Kt),
        "kt_rows": list(report.kt_rows),
        "thetas": [list(t.coefficients) for t in report.thetas],
        "sign_coherent": report.sign_coherent,
        "trichotomy": _trichotomy_dict(report),
        "markings": _markings_dict(report),
        "cht_check": _cht_dict(report),
        "exactness": report.exactness.to_dict(),
        "diagnostics": [d.to_dict() for d in report.diagnostics],
    }


def dumps_report(report: GaleReport) -> bytes:
    """Byte-stable JSON body: sorted keys, no timestamps."""
    return orjson.dumps(report_to_dict(report), option=JSON_OPTIONS) + b"\n"


def write_output(path: str | Path, data: str | bytes) -> Path:
    """Write one output file. Raises OutputError when the path is unwritable."""
    path = Path(path)
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        path.write_bytes(data)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror or e}", path=str(path)) from None
    return path


def write_report(report: GaleReport, path: str | Path, fmt: str = "json") -> list[Path]:
    """Write the report; CSV writes Kt to `path` and L beside it."""
    path = Path(path)
    if fmt == "csv":
        l_path = path.with_suffix(".L.csv")
        labels = [str(x) for x in report.labels]
        write_output(path, matrix_to_csv(report.Kt))
        write_output(l_path, matrix_to_csv(report.L))
        logger.debug("Wrote Kt to %s and L to %s (columns %s)", path, l_path, ",".join(labels))
        return [path, l_path]
    return [write_output(path, dumps_report(report))]


def degrees_csv(fan: CrepantFan, degrees: DegreeMatrix) -> str:
    rows = [f"{u}-{v}:{fan.point_label(u)}|{fan.point_label(v)}" for u, v in degrees.walls]
    return matrix_to_csv(degrees.matrix, row_labels=rows, col_labels=degrees.characters)


def euler_csv(fan: CrepantFan, euler: EulerTable) -> str:
    rows = [fan.point_label(p) for p in euler.points]
    return matrix_to_csv(euler.matrix, row_labels=rows, col_labels=range(fan.r))


def error_body(error) -> bytes:
    return orjson.dumps({"error": error.to_dict()}, option=JSON_OPTIONS) + b"\n"
