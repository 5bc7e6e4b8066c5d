"""Rank tables, first-place counts and race-style scoring.

Everything here works on a median matrix: one row per algorithm, one column
per benchmark function, lower values better.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Points awarded by finishing position (1st..10th; anything later scores 0).
F1_POINTS = {1: 25, 2: 18, 3: 15, 4: 12, 5: 10, 6: 8, 7: 6, 8: 4, 9: 2, 10: 1}

# Function groups scored separately: separable, separable-tail, no-tail,
# overlapping, non-separable.
DEFAULT_GROUPS = (
    ("F1", "F2", "F3"),
    ("F4", "F5", "F6", "F7"),
    ("F8", "F9", "F10", "F11"),
    ("F12", "F13", "F14"),
    ("F15",),
)


@dataclass
class MedianMatrix:
    """Median final values: rows = algorithms, columns = functions."""

    algorithms: list[str]
    functions: list[str]
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        expected = (len(self.algorithms), len(self.functions))
        if self.values.shape != expected:
            raise ValueError(
                f"value matrix shape {self.values.shape} does not match "
                f"{len(self.algorithms)} algorithms x {len(self.functions)} functions"
            )
        if not np.isfinite(self.values).all():
            raise ValueError("median matrix contains non-finite entries")


def rank_column(values, tie_mode: str = "competition") -> np.ndarray:
    """Ranks of one column, 1 = smallest.

    competition: ties share the lowest position ("1224" style).
    average: ties share the mean of their occupied positions.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1:
        raise ValueError("rank_column expects a 1-d array")
    if v.size == 0:
        raise ValueError("cannot rank an empty column")
    less = (v[:, None] > v[None, :]).sum(axis=1).astype(float)
    if tie_mode == "competition":
        return less + 1.0
    if tie_mode == "average":
        equal = (v[:, None] == v[None, :]).sum(axis=1)
        return less + (equal + 1.0) / 2.0
    raise ValueError(f"unknown tie_mode {tie_mode!r}")


def rank_matrix(matrix: MedianMatrix, tie_mode: str = "competition") -> np.ndarray:
    """Per-function ranks of every algorithm (same shape as the values)."""
    return np.column_stack([
        rank_column(matrix.values[:, j], tie_mode)
        for j in range(len(matrix.functions))
    ])


def nbest(ranks: np.ndarray) -> np.ndarray:
    """Number of first places per algorithm (row) across functions."""
    return (np.asarray(ranks) == 1).sum(axis=1)


def points_for_rank(rank: int) -> int:
    return F1_POINTS.get(int(rank), 0)


def f1_scores(ranks: np.ndarray, functions: list[str],
              groups: tuple = DEFAULT_GROUPS):
    """Race-style points per function group plus group ranks.

    Returns (scores, group_ranks), both (n_algorithms, n_groups); group
    ranks order the scores descending with competition ties.
    """
    ranks = np.asarray(ranks)
    col = {f: j for j, f in enumerate(functions)}
    missing = [f for g in groups for f in g if f not in col]
    if missing:
        raise ValueError(f"groups reference unknown functions: {missing}")
    n_alg = ranks.shape[0]
    if not groups:
        empty = np.zeros((n_alg, 0), dtype=int)
        return empty, empty.copy()
    scores = np.zeros((n_alg, len(groups)), dtype=int)
    for gi, group in enumerate(groups):
        for f in group:
            for i in range(n_alg):
                scores[i, gi] += points_for_rank(ranks[i, col[f]])
    group_ranks = np.column_stack([
        rank_column(-scores[:, gi].astype(float), "competition")
        for gi in range(len(groups))
    ]).astype(int)
    return scores, group_ranks
