"""File formats: function tables, polynomial specs, Cayley tables, subsets,
and code-assignment files."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .energy import GroupSpec
from .functable import FunctionTable
from .gf import FieldPoly, FieldSpec


class InputFormatError(ValueError):
    """Malformed input file."""


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text()


def load_function_table(source, fmt: str | None = None) -> FunctionTable:
    """Load a FunctionTable from JSON ({"domain_size": n, "values": [...]})
    or two-column CSV rows x,f(x) with x = 0..n-1 each appearing once."""
    text = _read_text(source)
    if fmt is None:
        name = str(source) if not hasattr(source, "read") else ""
        if name.endswith(".json"):
            fmt = "json"
        elif name.endswith(".csv"):
            fmt = "csv"
        else:
            fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict) or "domain_size" not in obj or "values" not in obj:
            raise InputFormatError('JSON table needs keys "domain_size" and "values"')
        try:
            return FunctionTable(int(obj["domain_size"]), tuple(int(v) for v in obj["values"]))
        except (TypeError, ValueError) as exc:
            raise InputFormatError(str(exc)) from exc
    return _function_table_from_csv(text)


def _function_table_from_csv(text: str) -> FunctionTable:
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]
    if rows and not _is_int_row(rows[0]):
        rows = rows[1:]  # tolerate a header line
    if not rows:
        raise InputFormatError("CSV table has no data rows")
    seen: dict[int, int] = {}
    for row in rows:
        if len(row) != 2 or not _is_int_row(row):
            raise InputFormatError(f"expected two integer columns, got {row!r}")
        x, fx = int(row[0]), int(row[1])
        if x in seen:
            raise InputFormatError(f"domain point {x} appears twice")
        seen[x] = fx
    n = len(seen)
    if sorted(seen) != list(range(n)):
        raise InputFormatError("domain points must be exactly 0..n-1")
    return FunctionTable(n, tuple(seen[x] for x in range(n)))


def _is_int_row(row) -> bool:
    try:
        for cell in row:
            int(cell)
        return True
    except ValueError:
        return False


def save_function_table(table: FunctionTable, path) -> None:
    payload = {"domain_size": table.domain_size, "values": list(table.values)}
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def function_table_to_dict(table: FunctionTable) -> dict:
    return {"domain_size": table.domain_size, "values": list(table.values)}


def parse_poly_spec(obj: dict) -> FieldPoly:
    """Polynomial spec: {"p": 3, "k": 2, "modulus": [...], "coeffs": [...]}
    with the modulus optional (canonical used when absent) and little-endian
    including its leading 1."""
    if not isinstance(obj, dict):
        raise InputFormatError("polynomial spec must be a JSON object")
    try:
        p = int(obj["p"])
        k = int(obj.get("k", 1))
        coeffs = [int(c) for c in obj["coeffs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f'polynomial spec needs integer "p" and "coeffs": {exc}') from exc
    modulus = obj.get("modulus")
    if modulus is not None:
        modulus = [int(c) for c in modulus]
    try:
        spec = FieldSpec(p, k, modulus)
        return FieldPoly(spec, coeffs)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def load_poly(source: str) -> FieldPoly:
    """Polynomial spec from a file path or an inline JSON object string."""
    text = source if source.lstrip().startswith("{") else Path(source).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid polynomial spec JSON: {exc}") from exc
    return parse_poly_spec(obj)


def load_cayley_csv(source) -> GroupSpec:
    """Group from an n x n CSV of element indices (row i, column j holds i*j)."""
    text = _read_text(source)
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]
    try:
        table = [[int(c) for c in row] for row in rows]
    except ValueError as exc:
        raise InputFormatError(f"Cayley table entries must be integers: {exc}") from exc
    return GroupSpec.from_cayley(table)


def load_subset(source: str) -> list[int]:
    """Subset as a JSON index array, from a file path or inline string."""
    text = source if source.lstrip().startswith("[") else Path(source).read_text()
    try:
        arr = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid subset JSON: {exc}") from exc
    if not isinstance(arr, list) or any(not isinstance(x, int) for x in arr):
        raise InputFormatError("subset must be a JSON array of integers")
    return arr


def load_code_assignment(source) -> tuple[FunctionTable, list[str], list[str]]:
    """Code-assignment CSV of (codeword, message) rows.

    Returns the assignment as a FunctionTable (messages relabelled to dense
    integers in first-seen order) plus the codeword and message label lists.
    """
    text = _read_text(source)
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]
    if not rows:
        raise InputFormatError("code assignment has no rows")
    codewords: list[str] = []
    seen_codewords = set()
    messages: list[str] = []
    message_ids: dict[str, int] = {}
    values = []
    for row in rows:
        if len(row) != 2:
            raise InputFormatError(f"expected codeword,message rows, got {row!r}")
        codeword, message = row[0].strip(), row[1].strip()
        if codeword in seen_codewords:
            raise InputFormatError(f"duplicate codeword {codeword!r}")
        seen_codewords.add(codeword)
        codewords.append(codeword)
        if message not in message_ids:
            message_ids[message] = len(messages)
            messages.append(message)
        values.append(message_ids[message])
    return FunctionTable(len(codewords), tuple(values)), codewords, messages
