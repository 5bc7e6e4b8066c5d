"""Bundled cross-algorithm results table for the ranking pipeline.

The package ships a frozen CSV of published final-value statistics for
eleven optimizers on the fifteen benchmark functions at D=1000.  A sha256
sidecar guards against silent edits; loaders verify it before parsing.
"""

from __future__ import annotations

import csv
import hashlib
import io
from functools import lru_cache
from importlib import resources

import numpy as np

from .ranking import MedianMatrix

METRICS = ("best", "median", "worst", "mean", "stddev")
FUNCTION_LABELS = tuple(f"F{i}" for i in range(1, 16))

_DATA_PACKAGE = "lsgo_hybrid.data"
_CSV_NAME = "reference_results.csv"
_HASH_NAME = "reference_results.sha256"


def _read_bundled(name: str) -> bytes:
    return resources.files(_DATA_PACKAGE).joinpath(name).read_bytes()


@lru_cache(maxsize=1)
def _load() -> tuple[tuple[str, ...], dict[tuple[str, str], np.ndarray]]:
    raw = _read_bundled(_CSV_NAME)
    expected = _read_bundled(_HASH_NAME).decode("ascii").strip()
    actual = hashlib.sha256(raw).hexdigest()
    if actual != expected:
        raise RuntimeError(
            f"bundled results table is corrupt: sha256 {actual} != {expected}"
        )

    rows = list(csv.reader(io.StringIO(raw.decode("ascii"))))
    header = rows[0]
    if header[:2] != ["algorithm", "metric"] or tuple(header[2:]) != FUNCTION_LABELS:
        raise RuntimeError("bundled results table has an unexpected header")

    table: dict[tuple[str, str], np.ndarray] = {}
    order: list[str] = []
    for row in rows[1:]:
        if not row:
            continue
        name, metric = row[0], row[1]
        if metric not in METRICS:
            raise RuntimeError(f"unknown metric {metric!r} in bundled table")
        if name not in order:
            order.append(name)
        key = (name, metric)
        if key in table:
            raise RuntimeError(f"duplicate row {key} in bundled table")
        table[key] = np.array([float(v) for v in row[2:]], dtype=float)

    for name in order:
        for metric in METRICS:
            if (name, metric) not in table:
                raise RuntimeError(f"bundled table is missing {(name, metric)}")
    return tuple(order), table


def reference_algorithms() -> tuple[str, ...]:
    """Algorithm names in the bundled table, file order."""
    return _load()[0]


def reference_values(metric: str) -> MedianMatrix:
    """One metric as a rows=algorithms, columns=functions matrix."""
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    order, table = _load()
    values = np.vstack([table[(name, metric)] for name in order])
    return MedianMatrix(list(order), list(FUNCTION_LABELS), values)


def reference_median_matrix() -> MedianMatrix:
    """The median-of-25-runs matrix driving every ranking in the suite."""
    return reference_values("median")
