"""Benchmark instance generation and evaluation.

Fifteen function ids cover five structural families:

  F1-F3    fully separable       one unrotated block over all coordinates
  F4-F7    partially separable   rotated blocks plus a separable tail
  F8-F11   partially separable   rotated blocks covering all coordinates
  F12-F14  overlapping chains    adjacent blocks share coordinates
  F15      fully non-separable   one rotated block over all coordinates

Instances are self-generated from (function_id, dimension, seed) alone and
are bit-identical across calls with the same triple. Every instance knows a
preimage of its optimum, and evaluating there gives a value <= 1e-6.
"""

from __future__ import annotations

import base64
import copy
import json
from dataclasses import dataclass, field

import numpy as np

from .functions import _DISPATCH, BOUNDS, eval_base
from .transforms import (
    Block,
    TransformPipeline,
    conditioning_weights,
    oscillate,
    random_orthogonal,
    skew,
)

_DESCRIPTOR_FORMAT = "lsgo-hybrid-instance/1"

# Canonical block-size proportions; literal sizes at dimension 1000 for the
# tailed family (550 non-separable coordinates plus a 450-coordinate tail).
_CANON = (50, 50, 25, 25, 100, 100, 200)
_MIN_SIZE = 5
_MIN_DIMENSION = 10

# Fraction of the dimension covered by the non-separable blocks when a
# separable tail is present (550 of 1000).
_TAIL_SPLIT = 0.55


@dataclass(frozen=True)
class _FunctionSpec:
    base: str
    family: str
    rotated: bool
    irregularity: bool
    asymmetry_beta: float
    conditioning_alpha: float


def _spec(base, family, rotated=True, irregularity=True, beta=0.2, alpha=10.0):
    return _FunctionSpec(base, family, rotated, irregularity, beta, alpha)


# The conforming Rosenbrock chain stays unrotated with identity conditioning
# and the conflicting chain drops the irregularity/asymmetry maps: both
# choices keep an exact, consistent optimum preimage across the shared
# coordinates (see each family's construction below).
_FUNCTIONS = {
    "F1": _spec("elliptic", "separable", rotated=False),
    "F2": _spec("rastrigin", "separable", rotated=False),
    "F3": _spec("ackley", "separable", rotated=False),
    "F4": _spec("elliptic", "partial_tail"),
    "F5": _spec("rastrigin", "partial_tail"),
    "F6": _spec("ackley", "partial_tail"),
    "F7": _spec("schwefel_12", "partial_tail"),
    "F8": _spec("elliptic", "partial"),
    "F9": _spec("rastrigin", "partial"),
    "F10": _spec("ackley", "partial"),
    "F11": _spec("schwefel_12", "partial"),
    "F12": _spec("rosenbrock", "overlap_conforming", rotated=False, alpha=1.0),
    "F13": _spec("schwefel_12", "overlap_conforming"),
    "F14": _spec("schwefel_12", "overlap_conflicting", irregularity=False, beta=0.0),
    "F15": _spec("schwefel_12", "nonseparable"),
}

FUNCTION_IDS = tuple(_FUNCTIONS)
_FID_INDEX = {fid: i + 1 for i, fid in enumerate(FUNCTION_IDS)}


# -- layout ------------------------------------------------------------------


def _largest_remainder(total: int, weights) -> np.ndarray:
    """Integer allocation of `total` proportional to weights, exact sum."""
    w = np.asarray(weights, dtype=float)
    quota = total * w / w.sum()
    sizes = np.floor(quota).astype(int)
    leftover = total - int(sizes.sum())
    order = np.argsort(-(quota - sizes), kind="stable")
    sizes[order[:leftover]] += 1
    return sizes


def _enforce_min(sizes: np.ndarray, min_size: int) -> np.ndarray:
    """Raise undersized blocks to min_size, taking the slack from the largest."""
    sizes = sizes.copy()
    for i in range(sizes.size):
        while sizes[i] < min_size:
            j = int(np.argmax(sizes))
            move = min(min_size - sizes[i], sizes[j] - min_size)
            if move <= 0:
                raise ValueError("dimension too small for the block layout")
            sizes[j] -= move
            sizes[i] += move
    return sizes


def _block_sizes(span: int, n: int) -> np.ndarray:
    return _enforce_min(_largest_remainder(span, _CANON[:n]), _MIN_SIZE)


def _layout(family: str, d: int):
    """Return (list of (start, size), tail (start, size) or None, overlap)."""
    if family in ("separable", "nonseparable"):
        return [(0, d)], None, 0
    if family == "partial_tail":
        span = int(_TAIL_SPLIT * d + 0.5)
        n = min(len(_CANON), span // _MIN_SIZE)
        if n < 1:
            raise ValueError(f"dimension {d} leaves no room for a rotated block")
        sizes = _block_sizes(span, n)
        starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
        tail = (span, d - span) if d > span else None
        return list(zip(starts.tolist(), sizes.tolist())), tail, 0
    if family == "partial":
        n = min(len(_CANON), d // _MIN_SIZE)
        sizes = _block_sizes(d, n)
        starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
        return list(zip(starts.tolist(), sizes.tolist())), None, 0
    if family in ("overlap_conforming", "overlap_conflicting"):
        n = min(len(_CANON), max(2, d // _MIN_SIZE))
        overlap = max(1, (d // n) // 10)
        while n > 2 and _MIN_SIZE * n > d + (n - 1) * overlap:
            n -= 1
            overlap = max(1, (d // n) // 10)
        sizes = _block_sizes(d + (n - 1) * overlap, n)
        if overlap >= int(sizes.min()):
            raise ValueError("dimension too small for overlapping blocks")
        subs = []
        start = 0
        for s in sizes.tolist():
            subs.append((start, s))
            start += s - overlap
        if subs[-1][0] + subs[-1][1] != d:
            raise ValueError("overlap layout failed to close on the dimension")
        return subs, None, overlap
    raise ValueError(f"unknown family {family!r}")


# -- instance ----------------------------------------------------------------


@dataclass
class Subcomponent:
    """One block of the decision vector with its own weight and transforms."""

    start: int
    size: int
    base: str
    rotated: bool
    weight: float
    rotation: np.ndarray | None = None
    local_shift: np.ndarray | None = None
    _fn: object = field(default=None, repr=False)
    _cond: np.ndarray | None = field(default=None, repr=False)

    @property
    def stop(self) -> int:
        return self.start + self.size


class BenchmarkInstance:
    """A concrete, seeded objective function with box bounds.

    Use :func:`make_instance` to build one. `evaluate` counts every call in
    `eval_count`; callers are trusted to stay inside `bounds`.
    """

    def __init__(self, function_id, dimension, seed, shift, permutation,
                 subcomponents, tail, irregularity, asymmetry_beta,
                 conditioning_alpha):
        fspec = _FUNCTIONS[function_id]
        self.function_id = function_id
        self.dimension = int(dimension)
        self.seed = int(seed)
        self.base = fspec.base
        self.family = fspec.family
        half = BOUNDS[fspec.base]
        self.bounds = (-half, half)
        self.shift = shift
        self.permutation = np.asarray(permutation, dtype=np.intp)
        self.subcomponents = subcomponents
        self.tail = tail
        self.irregularity = bool(irregularity)
        self.asymmetry_beta = float(asymmetry_beta)
        self.conditioning_alpha = float(conditioning_alpha)
        self.eval_count = 0
        self._offset = 0.0
        self._prepare()
        self._optimum = self._solve_optimum()

    # construction helpers

    def _prepare(self):
        cond_cache: dict[int, np.ndarray] = {}
        parts = list(self.subcomponents) + ([self.tail] if self.tail else [])
        for sub in parts:
            sub._fn = _DISPATCH[sub.base]
            if self.conditioning_alpha != 1.0:
                cond = cond_cache.get(sub.size)
                if cond is None:
                    cond = conditioning_weights(sub.size, self.conditioning_alpha)
                    cond_cache[sub.size] = cond
                sub._cond = cond

    def _solve_optimum(self) -> np.ndarray:
        d = self.dimension
        if self.family == "overlap_conflicting":
            y = self._conflict_least_squares()
            # conflicting targets can push the compromise point outside the
            # box; the solution is linear in the local shifts, so one common
            # shrink factor pins the exact optimum inside the central band
            cap = 0.8 * self.bounds[1]
            peak = float(np.max(np.abs(y)))
            if peak > cap:
                factor = cap / peak
                for sub in self.subcomponents:
                    sub.local_shift = sub.local_shift * factor
                y = self._conflict_least_squares()
        else:
            # zero is a fixed point of every map, so the preimage of the
            # all-zeros target is the shift itself; the Rosenbrock chain's
            # all-ones target is likewise fixed by the oscillation and skew
            # maps at every index, giving shift + 1 on every coordinate.
            target = 1.0 if self.base == "rosenbrock" else 0.0
            y = np.full(d, target)
        x = np.empty(d)
        x[self.permutation] = y
        if self.shift is not None:
            x = x + self.shift
        lo, hi = self.bounds
        if (x < lo).any() or (x > hi).any():
            raise ValueError("optimum preimage escaped the bounds")
        if self.family == "overlap_conflicting":
            self._offset = 0.0
            self._offset = self._evaluate_raw(x)
        return x

    def _conflict_least_squares(self) -> np.ndarray:
        """Exact minimiser of the conflicting chain in permuted coordinates.

        With the pointwise maps off, each block j contributes
        w_j * ||L C R (y_j - o_j)||^2, a convex quadratic, so the global
        minimum of the sum is a stacked linear least-squares problem.
        """
        d = self.dimension
        rows = sum(s.size for s in self.subcomponents)
        m = np.zeros((rows, d))
        t = np.zeros(rows)
        r0 = 0
        for sub in self.subcomponents:
            a = np.tril(np.ones((sub.size, sub.size)))  # prefix sums
            if sub._cond is not None:
                a = a * sub._cond[np.newaxis, :]
            if sub.rotation is not None:
                a = a @ sub.rotation
            a = a * np.sqrt(sub.weight)
            m[r0 : r0 + sub.size, sub.start : sub.stop] = a
            t[r0 : r0 + sub.size] = a @ sub.local_shift
            r0 += sub.size
        y, *_ = np.linalg.lstsq(m, t, rcond=None)
        return y

    # evaluation

    def _transform(self, v: np.ndarray, sub: Subcomponent) -> np.ndarray:
        if sub.local_shift is not None:
            v = v - sub.local_shift
        if sub.rotation is not None:
            v = sub.rotation @ v
        if self.irregularity:
            v = oscillate(v)
        if self.asymmetry_beta:
            v = skew(v, self.asymmetry_beta)
        if sub._cond is not None:
            v = sub._cond * v
        return v

    def _evaluate_raw(self, x: np.ndarray) -> float:
        y = x - self.shift if self.shift is not None else x
        y = y[self.permutation]
        total = 0.0
        for sub in self.subcomponents:
            z = self._transform(y[sub.start : sub.stop], sub)
            total += sub.weight * sub._fn(z)
        if self.tail is not None:
            z = self._transform(y[self.tail.start : self.tail.stop], self.tail)
            total += self.tail._fn(z)
        return total - self._offset

    def evaluate(self, x) -> float:
        """Objective value at x; increments eval_count by one."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(
                f"expected a vector of length {self.dimension}, got shape {x.shape}"
            )
        self.eval_count += 1
        return self._evaluate_raw(x)

    __call__ = evaluate

    @property
    def optimum_preimage(self) -> np.ndarray:
        """A point where the instance attains (up to 1e-6) its minimum."""
        return self._optimum.copy()

    def pipeline(self) -> TransformPipeline:
        """The instance's x -> z mapping, for the non-overlapping families."""
        if self.family.startswith("overlap"):
            raise ValueError(
                "overlapping blocks have no single whole-vector transform; "
                "evaluate() transforms each block independently"
            )
        blocks = [Block(s.start, s.size, s.rotation) for s in self.subcomponents]
        if self.tail is not None:
            blocks.append(Block(self.tail.start, self.tail.size, None))
        return TransformPipeline(
            shift=self.shift,
            permutation=self.permutation,
            blocks=tuple(blocks),
            irregularity=self.irregularity,
            asymmetry_beta=self.asymmetry_beta,
            conditioning_alpha=self.conditioning_alpha,
        )

    def fresh_copy(self) -> "BenchmarkInstance":
        """Independent copy with its own zeroed evaluation counter."""
        dup = copy.deepcopy(self)
        dup.eval_count = 0
        return dup

    # serialisation

    def to_descriptor(self) -> dict:
        subs = []
        for s in self.subcomponents:
            subs.append({
                "start": s.start,
                "size": s.size,
                "rotated": s.rotated,
                "weight": s.weight,
                "shift": _encode(s.local_shift) if s.local_shift is not None else None,
            })
        return {
            "format": _DESCRIPTOR_FORMAT,
            "function_id": self.function_id,
            "dimension": self.dimension,
            "seed": self.seed,
            "bounds": list(self.bounds),
            "base": self.base,
            "family": self.family,
            "irregularity": self.irregularity,
            "asymmetry_beta": self.asymmetry_beta,
            "conditioning_alpha": self.conditioning_alpha,
            "permutation": _encode(self.permutation.astype(np.int64)),
            "shift": _encode(self.shift) if self.shift is not None else None,
            "subcomponents": subs,
            "tail": (
                {"start": self.tail.start, "size": self.tail.size}
                if self.tail is not None
                else None
            ),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_descriptor(), **kwargs)


def _encode(a: np.ndarray) -> str:
    return base64.b64encode(np.ascontiguousarray(a).tobytes()).decode("ascii")


def _decode(s: str, dtype) -> np.ndarray:
    return np.frombuffer(base64.b64decode(s.encode("ascii")), dtype=dtype).copy()


def _seed_u64(seed: int) -> int:
    return int(seed) & 0xFFFFFFFFFFFFFFFF


def _streams(function_id: str, dimension: int, seed: int):
    root = np.random.SeedSequence(
        [_seed_u64(seed), _FID_INDEX[function_id], int(dimension)]
    )
    main_ss, rot_ss = root.spawn(2)
    return np.random.default_rng(main_ss), rot_ss


def _rotations_for(subs, rot_ss):
    rng = np.random.default_rng(rot_ss)
    for sub in subs:
        if sub.rotated:
            sub.rotation = random_orthogonal(sub.size, rng)


def make_instance(function_id: str, dimension: int, seed: int) -> BenchmarkInstance:
    """Generate the benchmark instance for (function_id, dimension, seed).

    Draw order from the seeded stream is fixed: permutation, shift(s), block
    weights; rotations come from a separate child stream so descriptors can
    regenerate them without replaying the rest.
    """
    if function_id not in _FUNCTIONS:
        raise ValueError(
            f"unknown function id {function_id!r}; expected F1..F{len(_FUNCTIONS)}"
        )
    dimension = int(dimension)
    if dimension < _MIN_DIMENSION:
        raise ValueError(f"dimension must be at least {_MIN_DIMENSION}")
    fspec = _FUNCTIONS[function_id]
    sub_layout, tail_layout, _ = _layout(fspec.family, dimension)
    rng, rot_ss = _streams(function_id, dimension, seed)

    perm = rng.permutation(dimension)
    half = BOUNDS[fspec.base]
    conflicting = fspec.family == "overlap_conflicting"
    if conflicting:
        # per-block shifts in the central half of the box; their
        # disagreements on shared coordinates are the point of this family
        shift = None
        local_shifts = [
            (rng.random(size) - 0.5) * half for (_start, size) in sub_layout
        ]
    else:
        # central 80% keeps shift + 1 (Rosenbrock target) strictly inside
        shift = (rng.random(dimension) - 0.5) * (1.6 * half)
        local_shifts = [None] * len(sub_layout)

    if len(sub_layout) > 1:
        weights = 10.0 ** rng.standard_normal(len(sub_layout))
    else:
        weights = np.ones(1)

    subs = [
        Subcomponent(start, size, fspec.base, fspec.rotated, float(w), None, ls)
        for (start, size), w, ls in zip(sub_layout, weights, local_shifts)
    ]
    _rotations_for(subs, rot_ss)
    tail = None
    if tail_layout is not None:
        tail = Subcomponent(tail_layout[0], tail_layout[1], fspec.base, False, 1.0)

    return BenchmarkInstance(
        function_id, dimension, seed, shift, perm, subs, tail,
        fspec.irregularity, fspec.asymmetry_beta, fspec.conditioning_alpha,
    )


def from_descriptor(desc: dict) -> BenchmarkInstance:
    """Rebuild an instance from its descriptor dict.

    Shift, permutation, layout and weights come from the descriptor itself;
    rotations are regenerated from the recorded seed.
    """
    if desc.get("format") != _DESCRIPTOR_FORMAT:
        raise ValueError(f"unrecognised descriptor format {desc.get('format')!r}")
    function_id = desc["function_id"]
    if function_id not in _FUNCTIONS:
        raise ValueError(f"unknown function id {function_id!r}")
    fspec = _FUNCTIONS[function_id]
    dimension = int(desc["dimension"])
    perm = _decode(desc["permutation"], np.int64).astype(np.intp)
    if sorted(perm.tolist()) != list(range(dimension)):
        raise ValueError("descriptor permutation is not a bijection")
    shift = _decode(desc["shift"], np.float64) if desc["shift"] is not None else None
    subs = []
    for entry in desc["subcomponents"]:
        local = (
            _decode(entry["shift"], np.float64)
            if entry.get("shift") is not None
            else None
        )
        subs.append(
            Subcomponent(
                int(entry["start"]), int(entry["size"]), fspec.base,
                bool(entry["rotated"]), float(entry["weight"]), None, local,
            )
        )
    _, rot_ss = _streams(function_id, dimension, int(desc["seed"]))
    _rotations_for(subs, rot_ss)
    tail = None
    if desc.get("tail") is not None:
        tail = Subcomponent(
            int(desc["tail"]["start"]), int(desc["tail"]["size"]),
            fspec.base, False, 1.0,
        )
    return BenchmarkInstance(
        function_id, dimension, int(desc["seed"]), shift, perm, subs, tail,
        desc["irregularity"], desc["asymmetry_beta"], desc["conditioning_alpha"],
    )


def from_json(text: str) -> BenchmarkInstance:
    return from_descriptor(json.loads(text))
