"""
Readers and writers for every external format: Cayley tables (text grid,
JSON, JSONL streams), families (JSON) and window sets (run-length text and
raw little-endian bitset).
"""
import json
import os
import re
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from src.core.errors import FormatError, TableFormatError
from src.core.semigroup import CayleyTable
from src.core.setfam import Family
from src.natwin.window import WindowSet
from src.utils.log import get_logger

logger = get_logger("LOADER")

PathLike = Union[str, Path]

_RANGE = re.compile(r"^\s*(\d+)\s*(?:-\s*(\d+)\s*)?$")
_HEADER = np.dtype("<u8")


def _require(path: PathLike) -> Path:
    path = Path(path)
    if not os.path.exists(path):
        raise FileNotFoundError(f"Input file not found at {path}")
    return path


# --- TABLES ---

def parse_table(text: str) -> CayleyTable:
    """
    Rows of integers separated by spaces or commas; blank lines and '#' comments are ignored.
    A leading line holding only n is a header: exactly n rows must follow it.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in re.split(r"[\s,]+", line) if tok])
        except ValueError:
            raise TableFormatError(f"line {lineno}: non-integer entry in {line!r}") from None
    if not rows:
        raise TableFormatError("table is empty")
    if len(rows[0]) == 1 and len(rows) > 1:
        n, rows = rows[0][0], rows[1:]
        if n < 1 or len(rows) != n:
            raise TableFormatError(f"header says n={n}, found {len(rows)} rows")
    return CayleyTable.from_rows(rows)


def _rows_of(record) -> list:
    if isinstance(record, dict):
        rows = record.get("table", record.get("rows"))
        if "n" in record and isinstance(rows, list) and record["n"] != len(rows):
            raise TableFormatError(f"record says n={record['n']}, found {len(rows)} rows")
    else:
        rows = record
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise TableFormatError("expected a list of rows")
    return rows


def load_table(path: PathLike) -> CayleyTable:
    path = _require(path)
    logger.info(f"Loading table from {path}...")
    text = path.read_text()
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise TableFormatError(f"{path}: invalid JSON ({e.msg})") from None
        try:
            return CayleyTable.from_rows(_rows_of(data))
        except TableFormatError as e:
            raise TableFormatError(f"{path}: {e}") from None
    return parse_table(text)


def table_record(table: CayleyTable) -> dict:
    return {"n": table.n, "table": [list(row) for row in table.rows]}


def save_tables_jsonl(tables: Iterable[CayleyTable], path: PathLike) -> int:
    count = 0
    with open(path, "w") as f:
        for table in tables:
            f.write(json.dumps(table_record(table), sort_keys=True) + "\n")
            count += 1
    logger.info(f"Wrote {count} tables to {path}")
    return count


def load_tables_jsonl(path: PathLike) -> list[CayleyTable]:
    """One {"n": .., "table": [[..]]} record per line; "rows" is accepted for "table"."""
    path = _require(path)
    tables = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise TableFormatError(f"{path}:{lineno}: invalid JSON ({e.msg})") from None
        if not isinstance(record, dict):
            raise TableFormatError(f"{path}:{lineno}: expected {{\"n\": .., \"table\": [..]}}")
        try:
            tables.append(CayleyTable.from_rows(_rows_of(record)))
        except TableFormatError as e:
            raise TableFormatError(f"{path}:{lineno}: {e}") from None
    logger.info(f"Loaded {len(tables)} tables.")
    return tables


# --- FAMILIES ---

def load_family(path: PathLike, n: int) -> Family:
    """A JSON list of element lists, or {"n": .., "members": [..]}; elements are 0-based."""
    path = _require(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e.msg})") from None
    if isinstance(data, dict):
        if "members" not in data:
            raise FormatError(f"{path}: missing 'members'")
        if "n" in data and data["n"] != n:
            raise FormatError(f"{path}: family is on {data['n']} points, table has {n}")
        data = data["members"]
    if not isinstance(data, list) or not all(isinstance(s, list) for s in data):
        raise FormatError(f"{path}: expected a list of element lists")
    try:
        return Family.from_sets(n, data)
    except (TypeError, ValueError) as e:
        raise FormatError(f"{path}: {e}") from None


# --- WINDOW SETS ---

def format_rle(W: WindowSet) -> str:
    runs = ",".join(f"{a}-{b}" for a, b in W.runs())
    return f"{W.horizon}; {runs}" if runs else f"{W.horizon};"


def parse_rle(text: str) -> WindowSet:
    """'N; a1-b1,a2-b2,...' with 1-based inclusive ranges; a bare 'k' means k-k."""
    head, sep, body = text.strip().partition(";")
    if not sep or not head.strip().isdigit():
        raise FormatError(f"run-length header must be 'N;', got {text[:40]!r}")
    N = int(head)
    ranges = []
    for part in filter(None, (p.strip() for p in body.split(","))):
        m = _RANGE.match(part)
        if not m:
            raise FormatError(f"bad range {part!r}")
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) else a
        if not 1 <= a <= b <= N:
            raise FormatError(f"range {part!r} outside [1, {N}]")
        ranges.append((a, b))
    return WindowSet.from_ranges(N, ranges)


def to_bytes(W: WindowSet) -> bytes:
    header = np.array([W.horizon], dtype=_HEADER).tobytes()
    return header + np.packbits(W.bits, bitorder="little").tobytes()


def from_bytes(data: bytes) -> WindowSet:
    if len(data) < _HEADER.itemsize:
        raise FormatError("bitset file shorter than its 8-byte header")
    N = int(np.frombuffer(data[:_HEADER.itemsize], dtype=_HEADER)[0])
    payload = np.frombuffer(data[_HEADER.itemsize:], dtype=np.uint8)
    if N < 1 or payload.size != (N + 7) // 8:
        raise FormatError(f"bitset payload has {payload.size} bytes, header says N={N}")
    bits = np.unpackbits(payload, bitorder="little")
    if bits[N:].any():
        raise FormatError("bitset has members beyond its horizon")
    return WindowSet(N, bits[:N].astype(bool))


def load_window(path: PathLike) -> WindowSet:
    path = _require(path)
    logger.info(f"Loading window set from {path}...")
    if path.suffix == ".bin":
        return from_bytes(path.read_bytes())
    if path.suffix in (".rle", ".txt"):
        return parse_rle(path.read_text())
    raise FormatError(f"unknown window format {path.suffix!r} (expected .rle or .bin)")


def save_window(W: WindowSet, path: PathLike) -> None:
    path = Path(path)
    if path.suffix == ".bin":
        path.write_bytes(to_bytes(W))
    elif path.suffix in (".rle", ".txt"):
        path.write_text(format_rle(W) + "\n")
    else:
        raise FormatError(f"unknown window format {path.suffix!r} (expected .rle or .bin)")
