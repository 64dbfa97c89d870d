"""Read and write series as two-column ``t,y`` CSV files."""
from __future__ import annotations

import csv
import io
import sys

import numpy as np

from .core import SampledSeries
from .errors import InvalidSeries

__all__ = ["read_series", "write_series"]


def read_series(path, rescale: bool = False) -> SampledSeries:
    """Parse a ``t,y`` CSV (``-`` reads stdin).

    Rows must be sorted by ``t`` with no repeats. With ``rescale`` the time
    axis is mapped affinely onto [0, 1] first, which leaves every index
    unchanged.
    """
    if str(path) == "-":
        return _parse(sys.stdin, "<stdin>", rescale)
    with open(path, newline="") as fh:
        return _parse(fh, str(path), rescale)


def _parse(fh, name, rescale):
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["t", "y"]:
        raise InvalidSeries(f"{name}: expected header 't,y', got {header!r}")
    t, y = [], []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise InvalidSeries(f"{name}:{lineno}: expected 2 fields, got {len(row)}")
        try:
            t.append(float(row[0]))
            y.append(float(row[1]))
        except ValueError:
            raise InvalidSeries(f"{name}:{lineno}: not a number: {row!r}") from None
    t = np.array(t)
    y = np.array(y)
    if t.size >= 2:
        step = np.diff(t)
        if (step == 0).any():
            k = int(np.flatnonzero(step == 0)[0])
            raise InvalidSeries(f"{name}: duplicate t={t[k]!r} (data rows {k + 1} and {k + 2})")
        if (step < 0).any():
            raise InvalidSeries(f"{name}: rows must be sorted by t")
        if rescale:
            t = (t - t[0]) / (t[-1] - t[0])
            t[-1] = 1.0
    return SampledSeries(t, y)


def write_series(series: SampledSeries, path) -> None:
    """Write ``series`` with shortest round-trip float formatting."""
    buf = io.StringIO()
    buf.write("t,y\n")
    for a, b in zip(series.t.tolist(), series.y.tolist()):
        buf.write(f"{a!r},{b!r}\n")
    if str(path) == "-":
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w") as fh:
            fh.write(buf.getvalue())
