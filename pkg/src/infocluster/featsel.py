"""Information-theoretic feature selection.

The objective is ``f(B) = I(Y; X_B)`` over feature subsets ``B``. Besides the
size-constrained problem, the relaxation ``max_B f(B) - gamma |B|`` is solved
for a single ``gamma`` and parametrically (the principal partition) across
all ``gamma``. Feature subsets are frozensets of the model's variable indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .clustering import MAX_BRUTEFORCE
from .combinatorics import MAX_ENUMERATION, MAX_GROUND
from .envelope import Line, lower_envelope
from .errors import BadSize, GroundTooLarge, ModelError, UnknownVariable
from .sources import SourceModel, is_mutually_independent
from .submodular import Scalar, SetFunction, check_submodular


class FeatureProblem:
    """A dependent variable ``Y`` and candidate features ``U`` of one model."""

    def __init__(self, model: SourceModel, dependent: int | str, features: Sequence[int | str] | None = None):
        self.model = model
        (self.dependent,) = model.indices([dependent])
        if features is None:
            self.features = tuple(i for i in range(model.n) if i != self.dependent)
        else:
            self.features = tuple(next(iter(model.indices([f]))) for f in features)
        if self.dependent in self.features:
            raise ModelError("the dependent variable cannot also be a feature")
        if len(set(self.features)) != len(self.features):
            raise ModelError("duplicate features")
        if not self.features:
            raise ModelError("at least one feature is required")
        if len(self.features) > MAX_GROUND - 1:
            raise GroundTooLarge(f"at most {MAX_GROUND - 1} features")
        self._f: SetFunction | None = None
        self._independent: bool | None = None

    @property
    def m(self) -> int:
        return len(self.features)

    @property
    def exact(self) -> bool:
        return self.model.exact

    def objective_table(self) -> SetFunction:
        """``f`` as a dense function over local feature masks."""
        if self._f is None:
            sub = self.model.set_function().restrict([self.dependent, *self.features])
            local = np.arange(1 << self.m, dtype=np.int64) << 1
            v = sub.values
            self._f = SetFunction(v[1] + v[local] - v[local | 1], sub.scale)
        return self._f

    def local_mask(self, subset) -> int:
        idx = self.model.indices(subset)
        pos = {g: j for j, g in enumerate(self.features)}
        mask = 0
        for i in idx:
            if i not in pos:
                raise UnknownVariable(f"{self.model.variables[i]} is not a feature")
            mask |= 1 << pos[i]
        return mask

    def to_subset(self, mask: int) -> frozenset[int]:
        return frozenset(g for j, g in enumerate(self.features) if (mask >> j) & 1)

    def features_independent(self) -> bool:
        if self._independent is None:
            self._independent = is_mutually_independent(self.model, [[i] for i in self.features])
        return self._independent


def objective(problem: FeatureProblem, subset) -> Scalar:
    """``I(Y; X_B)``; zero on the empty set."""
    return problem.objective_table().at(problem.local_mask(subset))


def penalized(problem: FeatureProblem, subset, gamma) -> Scalar:
    f = problem.objective_table()
    mask = problem.local_mask(subset)
    return f.at(mask) - f.coerce(gamma) * bin(mask).count("1")


@dataclass(frozen=True)
class RelaxResult:
    gamma: Scalar
    value: Scalar
    minimal: frozenset[int]
    maximal: frozenset[int]
    optimizers: tuple[frozenset[int], ...] | None = None


def _sort_sets(sets: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted(sets, key=lambda s: (len(s), sorted(s))))


def _penalized_table(problem: FeatureProblem, gamma) -> tuple[SetFunction, np.ndarray, Scalar]:
    f = problem.objective_table()
    gamma = f.coerce(gamma)
    if f.exact:
        f = f.rescaled(gamma.denominator)
    sizes = kernels.subset_sum(np.ones(problem.m, dtype=np.int64))
    return f, f.values - f.raw(gamma) * sizes, gamma


def relax_optimize(problem: FeatureProblem, gamma, family: bool | None = None) -> RelaxResult:
    """Maximize ``f(B) - gamma |B|`` by scanning all feature subsets.

    ``minimal``/``maximal`` are the intersection and union of all maximizers.
    The full maximizer family is listed when ``|U| <= 12`` (or on request).
    """
    f, g, gamma = _penalized_table(problem, gamma)
    best = g.max()
    hits = np.flatnonzero(g >= best - f.tol)
    lo = int(np.bitwise_and.reduce(hits))
    hi = int(np.bitwise_or.reduce(hits))
    value = Fraction(int(best), f.scale) if f.exact else float(best)
    if family is None:
        family = problem.m <= MAX_ENUMERATION
    opts = _sort_sets(problem.to_subset(int(m)) for m in hits) if family else None
    return RelaxResult(gamma, value, problem.to_subset(lo), problem.to_subset(hi), opts)


def size_constrained(problem: FeatureProblem, k: int) -> tuple[Scalar, tuple[frozenset[int], ...]]:
    """Largest ``I(Y; X_B)`` over ``|B| = k`` and every subset attaining it."""
    if not 0 <= k <= problem.m:
        raise BadSize(f"k={k} outside 0..{problem.m}")
    f = problem.objective_table()
    sizes = kernels.subset_sum(np.ones(problem.m, dtype=np.int64))
    cand = np.flatnonzero(sizes == k)
    vals = f.values[cand]
    best = vals.max()
    hits = cand[vals >= best - f.tol]
    return f.at(int(cand[np.argmax(vals)])), _sort_sets(problem.to_subset(int(m)) for m in hits)


@dataclass(frozen=True)
class Region:
    """Closed interval ``[lo, hi]`` (``None`` = unbounded) of one optimal line."""

    lo: Scalar | None
    hi: Scalar | None
    minimal: frozenset[int]
    maximal: frozenset[int]
    optimizers: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class PpResult:
    breakpoints: tuple[Scalar, ...]
    values: tuple[Scalar, ...]
    regions: tuple[Region, ...]
    at_breakpoints: tuple[RelaxResult, ...]
    lines: tuple[tuple[Scalar, int], ...] = field(repr=False, default=())

    def value(self, gamma) -> Scalar:
        """``f*(gamma)`` as the upper envelope of the region lines."""
        return max(c - s * gamma for c, s in self.lines)

    def maximal_chain(self) -> list[frozenset[int]]:
        return [r.maximal for r in self.regions]


def pp(problem: FeatureProblem) -> PpResult:
    """Breakpoints of ``f*`` and the optimizer families region by region."""
    if problem.m > MAX_ENUMERATION:
        raise GroundTooLarge(f"principal partition is capped at {MAX_ENUMERATION} features")
    f = problem.objective_table()
    full = (1 << problem.m) - 1

    sizes = kernels.subset_sum(np.ones(problem.m, dtype=np.int64))

    # lower envelope of -f_gamma: lines -f(B) + |B| gamma; ties go to the
    # smallest optimizer, which is the one optimal just right of gamma
    def oracle(g):
        ft, pen, _ = _penalized_table(problem, g)
        best = pen.max()
        hits = np.flatnonzero(pen >= best - ft.tol)
        b = int(hits[np.argmin(sizes[hits])])
        value = Fraction(int(best), ft.scale) if ft.exact else float(best)
        return -value, Line(-f.at(b), int(sizes[b]), problem.to_subset(b))

    left = Line(-f.at(full), problem.m, problem.to_subset(full))
    right = Line(f.coerce(0), 0, frozenset())
    breaks, lines = lower_envelope(oracle, left, right, f.exact)

    reps: list[Scalar] = []
    for j in range(len(lines)):
        lo = breaks[j - 1] if j > 0 else None
        hi = breaks[j] if j < len(breaks) else None
        if lo is None and hi is None:
            reps.append(f.coerce(0))
        elif lo is None:
            reps.append(hi - 1)
        elif hi is None:
            reps.append(lo + 1)
        else:
            reps.append((lo + hi) / 2)
    regions = []
    for j, g in enumerate(reps):
        r = relax_optimize(problem, g, family=True)
        lo = breaks[j - 1] if j > 0 else None
        hi = breaks[j] if j < len(breaks) else None
        regions.append(Region(lo, hi, r.minimal, r.maximal, r.optimizers))
    at_bps = tuple(relax_optimize(problem, g, family=True) for g in breaks)
    return PpResult(
        tuple(breaks),
        tuple(r.value for r in at_bps),
        tuple(regions),
        at_bps,
        tuple((-l.intercept, l.slope) for l in lines),
    )


@dataclass(frozen=True)
class LinkReport:
    gamma: Scalar
    entries: tuple[tuple[frozenset[int], bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.entries)

    @property
    def witnesses(self) -> list[frozenset[int]]:
        return [b for b, ok in self.entries if not ok]


def check_lagrangian_link(problem: FeatureProblem, gamma) -> LinkReport:
    """Every relaxed optimizer must also be a best subset of its own size."""
    r = relax_optimize(problem, gamma)
    family = r.optimizers if r.optimizers is not None else _sort_sets({r.minimal, r.maximal})
    entries = []
    for b in family:
        _, best = size_constrained(problem, len(b))
        entries.append((b, b in best))
    return LinkReport(r.gamma, tuple(entries))


def check_supermodular_objective(problem: FeatureProblem) -> bool | None:
    """Supermodularity of ``f``; ``None`` when the features are not independent."""
    if not problem.features_independent():
        return None
    if problem.m > MAX_BRUTEFORCE:
        raise GroundTooLarge(f"pairwise check is capped at {MAX_BRUTEFORCE} features")
    f = problem.objective_table()
    return not check_submodular(SetFunction(-f.values, f.scale))
