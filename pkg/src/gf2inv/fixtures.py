"""Reading and writing the matrix fixture file.

Format: blocks introduced by ``MATRIX <name> <rows>x<cols>`` followed by
rows of space separated 0/1 entries. ``#`` starts a comment line.
"""

from __future__ import annotations

import hashlib
from importlib import resources
from pathlib import Path

from .gf2core import BitMatrix

REQUIRED_NAMES = (
    "A3", "B3", "C3",
    "DW_A", "DW_B", "DW_C",
    "DWp_A", "DWp_B",
    "DWd_A", "DWd_B",
    "OMEGA", "P_SPLIT",
)
# all required matrices are square of this size
REQUIRED_SIZE = {name: 3 if name.endswith("3") else 6 if name.startswith("DWd") else 7 for name in REQUIRED_NAMES}


class FixtureError(Exception):
    """Raised for unreadable or malformed fixture files."""


def default_fixture_path() -> Path:
    return Path(str(resources.files("gf2inv").joinpath("data/matrices.txt")))


def parse_fixture(text: str) -> dict[str, BitMatrix]:
    mats: dict[str, BitMatrix] = {}
    lines = [ln.strip() for ln in text.splitlines()]
    i = 0
    while i < len(lines):
        ln = lines[i]
        i += 1
        if not ln or ln.startswith("#"):
            continue
        head = ln.split()
        if head[0] != "MATRIX" or len(head) != 3:
            raise FixtureError(f"line {i}: expected 'MATRIX <name> <r>x<c>', got {ln!r}")
        name = head[1]
        try:
            r, c = (int(x) for x in head[2].lower().split("x"))
        except ValueError:
            raise FixtureError(f"line {i}: bad shape {head[2]!r}") from None
        rows = []
        while len(rows) < r:
            if i >= len(lines):
                raise FixtureError(f"matrix {name}: expected {r} rows, file ended")
            row = lines[i]
            i += 1
            if not row or row.startswith("#"):
                continue
            entries = row.split()
            if len(entries) != c or any(e not in ("0", "1") for e in entries):
                raise FixtureError(f"line {i}: matrix {name} row must hold {c} entries 0/1")
            rows.append([int(e) for e in entries])
        if name in mats:
            raise FixtureError(f"duplicate matrix {name}")
        mats[name] = BitMatrix.from_rows(rows)
    return mats


def format_fixture(mats: dict[str, BitMatrix]) -> str:
    out = []
    for name, m in mats.items():
        out.append(f"MATRIX {name} {m.nrows}x{m.ncols}")
        out.extend(" ".join(str(b) for b in row) for row in m.to_rows())
        out.append("")
    return "\n".join(out)


def load_fixture(path: str | Path | None = None) -> tuple[dict[str, BitMatrix], str]:
    """Return the matrices and the SHA-256 of the file contents."""
    p = Path(path) if path is not None else default_fixture_path()
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise FixtureError(f"cannot read fixture {p}: {exc}") from exc
    try:
        mats = parse_fixture(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise FixtureError(f"fixture {p} is not UTF-8 text") from exc
    missing = [n for n in REQUIRED_NAMES if n not in mats]
    if missing:
        raise FixtureError(f"fixture {p} lacks matrices: {', '.join(missing)}")
    for name, n in REQUIRED_SIZE.items():
        if mats[name].shape != (n, n):
            raise FixtureError(f"fixture {p}: matrix {name} must be {n}x{n}, got {mats[name].nrows}x{mats[name].ncols}")
    return mats, hashlib.sha256(raw).hexdigest()
