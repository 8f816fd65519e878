"""Matrix exchange formats: integer CSV (row per line) and JSON {"rows","cols","data"}."""

import csv
import io
import logging
import re
from pathlib import Path
from typing import Sequence

import orjson

from reid_gale.errors import SchemaError
from reid_gale.types.matrices import ZMatrix

logger = logging.getLogger(__name__)

INTEGER = re.compile(r"^[+-]?\d+$")


def _parse_int(token: str, where: str) -> int:
    token = token.strip()
    if not INTEGER.match(token):
        raise SchemaError(f"{where}: not an integer: {token!r}", token=token)
    return int(token)


def parse_csv(text: str, name: str = "<csv>") -> ZMatrix:
    """Rows of comma-separated integers; blank lines and '#' comments skipped."""
    rows = []
    for line_num, fields in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not fields or all(not f.strip() for f in fields) or fields[0].lstrip().startswith("#"):
            continue
        rows.append([_parse_int(f, f"{name} line {line_num}") for f in fields])
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise SchemaError(f"{name}: rows have different lengths")
    return ZMatrix.from_rows(rows)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_json(data: bytes | str, name: str = "<json>") -> ZMatrix:
    try:
        raw = orjson.loads(data)
    except orjson.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON in {name}: {e}") from None
    if not isinstance(raw, dict) or not {"rows", "cols", "data"} <= raw.keys():
        raise SchemaError(f"{name}: expected an object with rows, cols and data")
    m, n, rows = raw["rows"], raw["cols"], raw["data"]
    if not (_is_int(m) and _is_int(n) and isinstance(rows, list)):
        raise SchemaError(f"{name}: rows and cols must be integers, data a list")
    if len(rows) != m or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise SchemaError(f"{name}: data does not have shape {m}x{n}", rows=m, cols=n)
    for i, r in enumerate(rows):
        for x in r:
            if not _is_int(x):
                raise SchemaError(f"{name}: row {i} holds a non-integer {x!r}", row=i)
    return ZMatrix.from_rows(rows, n)


def read_matrix(path: str | Path) -> ZMatrix:
    """Read a matrix, choosing the format by file suffix (.json, otherwise CSV)."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        raise SchemaError(f"matrix file not found: {path}", path=str(path)) from None
    except OSError as e:
        raise SchemaError(f"cannot read matrix file {path}: {e.strerror or e}", path=str(path)) from None
    if path.suffix.lower() == ".json":
        matrix = parse_json(data, path.name)
    else:
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise SchemaError(f"{path.name}: not UTF-8 text at byte {e.start}", path=str(path)) from None
        matrix = parse_csv(text, path.name)
    logger.debug("Read %dx%d matrix from %s", matrix.rows, matrix.cols, path.name)
    return matrix


def parse_int_list(text: str, what: str = "list") -> list[int]:
    return [_parse_int(t, what) for t in text.split(",") if t.strip()]


def matrix_to_json(matrix: ZMatrix) -> dict:
    return {"rows": matrix.rows, "cols": matrix.cols, "data": matrix.to_lists()}


def matrix_to_csv(
    matrix: ZMatrix,
    row_labels: Sequence[str] | None = None,
    col_labels: Sequence[str] | None = None,
) -> str:
    """CSV text; labels, when given, become a header row and a first column."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if col_labels is not None:
        writer.writerow(([""] if row_labels is not None else []) + [str(c) for c in col_labels])
    for i, row in enumerate(matrix.data):
        prefix = [row_labels[i]] if row_labels is not None else []
        writer.writerow(prefix + [str(x) for x in row])
    return out.getvalue()


def write_matrix_csv(path: str | Path, matrix: ZMatrix, **labels) -> None:
    Path(path).write_text(matrix_to_csv(matrix, **labels), encoding="utf-8")
