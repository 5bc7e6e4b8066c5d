"""Differential evolution phase with pool-style worst replacement.

Classic rand/1/bin candidate construction (best/1/bin optional), but
selection follows the shared-pool rule: a candidate replaces the pool's
current worst member on strict improvement instead of competing with its
own parent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .population import Population

_STRATEGIES = ("rand1bin", "best1bin")
_BOUND_RETRIES = 10


@dataclass
class DeParams:
    max_iterations: int = 100
    cr: float = 0.9
    f: float = 0.5
    strategy: str = "rand1bin"

    def validate(self):
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")
        if not 0.0 <= self.cr <= 1.0:
            raise ValueError(f"cr must lie in [0, 1], got {self.cr}")
        if not 0.0 <= self.f <= 2.0:
            raise ValueError(f"f must lie in [0, 2], got {self.f}")
        if self.strategy not in _STRATEGIES:
            raise ValueError(f"strategy must be one of {_STRATEGIES}")


def select_indices(pool_size: int, rng) -> tuple[int, int, int, int]:
    """Four pairwise-distinct indices (target, then three donors)."""
    if pool_size < 4:
        raise ValueError("differential evolution needs a pool of at least 4")
    x = int(rng.integers(pool_size))
    a = x
    while a == x:
        a = int(rng.integers(pool_size))
    b = a
    while b in (x, a):
        b = int(rng.integers(pool_size))
    c = b
    while c in (x, a, b):
        c = int(rng.integers(pool_size))
    return x, a, b, c


def mutate_crossover(pop: Population, x: int, a: int, b: int, c: int,
                     params: DeParams, bounds, rng) -> np.ndarray:
    """Build one trial vector for target x from donors a, b, c.

    Binomial crossover with a guaranteed coordinate; a mutant coordinate
    that lands outside the box gets its crossover decision redrawn up to 10
    times (a redraw may fall back to the in-bounds parent coordinate) and
    is clamped after that.
    """
    lo, hi = bounds
    d = pop.dimension
    current = pop.x[x]
    base = pop.x[pop.best_index] if params.strategy == "best1bin" else pop.x[a]
    mutant = base + params.f * (pop.x[b] - pop.x[c])

    i_rand = int(rng.integers(d))
    cross = rng.random(d) < params.cr
    cross[i_rand] = True
    v = np.where(cross, mutant, current)

    out = cross & ((v < lo) | (v > hi))
    for _ in range(_BOUND_RETRIES):
        if not out.any():
            break
        # the mutant value is deterministic given the donors, so only a
        # crossover redraw that picks the parent coordinate can repair it
        fall_back = out & (rng.random(d) >= params.cr)
        fall_back[i_rand] = False
        v = np.where(fall_back, current, v)
        out &= ~fall_back
    if out.any():
        np.clip(v, lo, hi, out=v)
    return v


def de_run(pop: Population, params: DeParams, objective, rng,
           max_candidates: int | None = None,
           bounds: tuple[float, float] | None = None) -> int:
    """Run sweeps of len(pop) candidate constructions each.

    Every candidate costs exactly one evaluation; `max_candidates` caps the
    total (for exact budget accounting) and cuts the last sweep short.
    `bounds` defaults to the objective's own `bounds` attribute.
    Returns the number of evaluations spent.
    """
    params.validate()
    budget = params.max_iterations * len(pop)
    if max_candidates is not None:
        budget = min(budget, max_candidates)
    if bounds is None:
        bounds = objective.bounds
    spent = 0
    while spent < budget:
        for _ in range(min(len(pop), budget - spent)):
            x, a, b, c = select_indices(len(pop), rng)
            v = mutate_crossover(pop, x, a, b, c, params, bounds, rng)
            pop.offer(v, objective(v))
            spent += 1
    return spent
