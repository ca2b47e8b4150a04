"""Bundled interval datasets and CSV input/output.

CSV layout: UTF-8, a header row, comma separators, ``#`` comment lines.
Each interval variable is a pair of columns ``<name>_lo`` and
``<name>_hi`` in any order; the regressand is ``y`` unless another name is
given. Reading accepts LF or CRLF line endings and writing emits LF.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import (
    EmptyInput,
    FlippedBounds,
    MissingPair,
    ParseError,
    UnknownDataset,
)
from .interval import IntervalDataset

# (x_lo, x_hi, y_lo, y_hi), five observations each.
_SETS = {
    "set-1": ((0.6, 1.4, 2.4, 3.6, 5.0), (0.95, 1.92, 3.13, 4.45, 5.95),
              (1.0, 1.01, 1.02, 1.03, 1.04), (2.0, 3.01, 4.02, 5.03, 6.04)),
    "set-2": ((0.6, 1.4, 2.4, 3.6, 5.0), (0.65, 1.44, 2.46, 3.61, 5.03),
              (1.0, 1.01, 1.02, 1.03, 1.04), (2.0, 3.01, 4.02, 5.03, 6.04)),
    "set-3": ((4.4, 3.4, 4.8, 6.4, 8.1), (4.7, 3.8, 5.3, 6.7, 8.5),
              (3.8, 5.8, 7.5, 5.4, 6.8), (4.2, 6.3, 7.8, 5.8, 7.3)),
    "set-4": ((3.7, 3.4, 4.8, 7.9, 8.1), (4.0, 3.8, 5.3, 8.2, 8.5),
              (5.5, 5.8, 7.5, 6.5, 6.8), (5.9, 6.3, 7.8, 6.9, 7.3)),
    "set-5": ((5.4, 5.6, 5.3, 5.5, 5.7), (5.7, 6.0, 5.8, 5.8, 6.1),
              (6.4, 6.1, 6.6, 6.6, 6.3), (6.8, 6.6, 6.9, 7.0, 6.8)),
    "set-6": ((1.2, 2.6, 3.8, 5.0, 7.6), (2.4, 4.2, 5.6, 7.8, 9.4),
              (4.8, 3.6, 7.6, 2.6, 5.0), (6.8, 5.8, 9.5, 4.5, 7.6)),
    "set-7": ((1.2, 2.0, 3.8, 5.8, 7.4), (2.4, 3.6, 5.6, 8.6, 9.2),
              (4.8, 3.3, 7.6, 4.2, 4.8), (6.8, 5.5, 9.5, 6.1, 7.4)),
    "set-8": ((5.3, 5.5, 4.9, 5.1, 6.2), (6.5, 7.1, 6.7, 7.9, 8.0),
              (6.2, 5.2, 6.5, 5.7, 5.9), (8.2, 7.4, 8.4, 7.6, 8.5)),
    "set-9": ((2.8, 3.9, 1.1, 5.3, 7.7), (5.4, 5.1, 3.2, 5.6, 9.3),
              (6.4, 4.4, 2.4, 1.8, 3.2), (9.2, 5.8, 4.6, 2.3, 5.0)),
    "set-10": ((4.8, 4.8, 4.2, 5.0, 6.1), (6.4, 5.1, 5.4, 7.6, 8.2),
               (5.4, 4.0, 4.4, 3.6, 4.8), (7.2, 4.5, 5.8, 6.4, 7.0)),
    "set-11": ((6.1, 5.6, 5.4, 5.2, 5.0), (6.4, 6.8, 7.0, 7.3, 7.6),
               (4.7, 4.3, 4.1, 3.9, 3.6), (5.2, 5.7, 5.9, 6.1, 6.4)),
    "set-12": ((4.4, 4.6, 4.3, 6.5, 6.7), (4.7, 5.1, 4.7, 7.2, 7.3),
               (5.4, 5.1, 7.6, 7.6, 5.3), (5.8, 5.8, 7.9, 8.2, 5.8)),
}

_NOTES = {
    "set-1": "skinny X, puffy Y with widths growing along X",
    "set-2": "near-degenerate X, puffy Y",
    "set-12": "small set used to demonstrate the Box-Cox fallback",
}


@dataclass(frozen=True)
class BundledDataset:
    id: str
    data: IntervalDataset
    note: str = "synthetic sensitivity-analysis set"


def bundled_ids():
    """Ids of the bundled datasets in numeric order."""
    return tuple(_SETS)


def bundled(id) -> BundledDataset:
    key = str(id).strip().lower()
    if key not in _SETS:
        raise UnknownDataset(f"unknown dataset {id!r}; choose one of {', '.join(_SETS)}")
    x_lo, x_hi, y_lo, y_hi = _SETS[key]
    ds = IntervalDataset(np.array(x_lo)[:, None], np.array(x_hi)[:, None],
                         np.array(y_lo), np.array(y_hi), names=("x",), target="y")
    return BundledDataset(key, ds, _NOTES.get(key, BundledDataset.note))


def load_bundled(id) -> IntervalDataset:
    """Return bundled dataset ``id`` (``"set-1"`` to ``"set-12"``)."""
    return bundled(id).data


def _suffix(name):
    for s in ("_lo", "_hi"):
        if name.endswith(s) and len(name) > len(s):
            return name[: -len(s)], s[1:]
    return None, None


def parse_csv(text, target="y", source="<string>") -> IntervalDataset:
    """Parse CSV text into an :class:`IntervalDataset`.

    Raises
    ------
    ParseError
        Malformed header or field, reported with 1-based line and column.
    MissingPair
        A ``_lo`` column without its ``_hi`` partner or the reverse.
    FlippedBounds
        A pair with ``lo > hi``; ``row`` is the 0-based observation index.
    EmptyInput
        No data rows.
    """
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise EmptyInput(f"{source}: no header row")
    head_no, head = lines[0]
    header = [h.strip() for h in next(csv.reader([head]))]
    pairs = {}
    for col, name in enumerate(header):
        base, side = _suffix(name)
        if base is None:
            raise ParseError(f"{source}: column {name!r} lacks a _lo/_hi suffix", head_no, col + 1)
        if side in pairs.setdefault(base, {}):
            raise ParseError(f"{source}: duplicate column {name!r}", head_no, col + 1)
        pairs[base][side] = col
    for base, sides in pairs.items():
        if len(sides) != 2:
            have, want = next(iter(sides)), ("hi" if "lo" in sides else "lo")
            raise MissingPair(f"{source}: column {base}_{have} has no matching {base}_{want}")
    if target not in pairs:
        raise MissingPair(f"{source}: regressand columns {target}_lo/{target}_hi not found")
    names = tuple(b for b in pairs if b != target)
    if not names:
        raise ParseError(f"{source}: no regressor columns", head_no, 1)

    rows = []
    for line_no, ln in lines[1:]:
        fields = next(csv.reader([ln]))
        if len(fields) != len(header):
            raise ParseError(f"{source}: expected {len(header)} fields, got {len(fields)}",
                             line_no, min(len(fields), len(header)) + 1)
        vals = []
        for col, f in enumerate(fields):
            try:
                v = float(f)
            except ValueError:
                raise ParseError(f"{source}: not a number: {f.strip()!r}", line_no, col + 1) from None
            if not math.isfinite(v):
                raise ParseError(f"{source}: non-finite value {f.strip()!r}", line_no, col + 1)
            vals.append(v)
        rows.append(vals)
    if not rows:
        raise EmptyInput(f"{source}: no data rows")
    a = np.array(rows)
    for base in (*names, target):
        bad = np.flatnonzero(a[:, pairs[base]["lo"]] > a[:, pairs[base]["hi"]])
        if bad.size:
            raise FlippedBounds(f"{source}: {base}_lo > {base}_hi in observation {bad[0]}", row=int(bad[0]))
    x_lo = a[:, [pairs[b]["lo"] for b in names]]
    x_hi = a[:, [pairs[b]["hi"] for b in names]]
    return IntervalDataset(x_lo, x_hi, a[:, pairs[target]["lo"]], a[:, pairs[target]["hi"]],
                           names=names, target=target)


def read_csv(path, target="y") -> IntervalDataset:
    """Read an interval dataset from ``path``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    return parse_csv(text, target=target, source=str(path))


def format_csv(ds: IntervalDataset) -> str:
    cols = [*ds.names, ds.target]
    buf = io.StringIO()
    buf.write(",".join(f"{c}_lo,{c}_hi" for c in cols) + "\n")
    for i in range(ds.n):
        vals = []
        for j in range(ds.p):
            vals += [ds.x_lo[i, j], ds.x_hi[i, j]]
        vals += [ds.y_lo[i], ds.y_hi[i]]
        buf.write(",".join(repr(float(v)) for v in vals) + "\n")
    return buf.getvalue()


def write_csv(ds: IntervalDataset, path):
    """Write ``ds`` to ``path`` with shortest round-tripping float literals."""
    Path(path).write_text(format_csv(ds), encoding="utf-8", newline="\n")
