"""Info-clustering: Dilworth truncation, the principal sequence of partitions,
multivariate mutual information and (extended) cluster sets.

All functions accept a :class:`~infocluster.sources.SourceModel` or a bare
entropy :class:`~infocluster.submodular.SetFunction`; subsets are element
indices (names are accepted when a model is given).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Union

import numpy as np

from . import kernels
from .combinatorics import (
    MAX_ENUMERATION,
    MAX_GROUND,
    Partition,
    from_mask,
    partition_meet,
    to_mask,
)
from .envelope import Line, first_breakpoint, lower_envelope
from .errors import FloatEqualityAmbiguous, GroundTooLarge, NoUniqueFinest, SubsetTooSmall
from .sources import SourceModel
from .submodular import TOL, Scalar, SetFunction, partition_value, residual

MAX_BRUTEFORCE = 10

Model = Union[SourceModel, SetFunction]


def _function(model: Model) -> SetFunction:
    return model if isinstance(model, SetFunction) else model.set_function()


def _indices(model: Model, subset) -> frozenset[int]:
    if isinstance(model, SourceModel):
        return model.indices(subset)
    return frozenset(int(i) for i in subset)


@lru_cache(maxsize=16)
def _rgs(m: int) -> np.ndarray:
    table = kernels.rgs_table(m)
    table.flags.writeable = False
    return table


def _as_scalar(h: SetFunction, raw) -> Scalar:
    return Fraction(int(raw), h.scale) if h.exact else float(raw)


@dataclass(frozen=True)
class DtResult:
    gamma: Scalar
    value: Scalar
    finest: Partition
    method: str = "incremental"


def _dt(h: SetFunction, gamma) -> DtResult:
    hg = residual(h, gamma)
    x = np.zeros(h.n, dtype=hg.values.dtype)
    blocks: list[int] = []
    for u in range(h.n):
        best, lo, _ = kernels.sfm_scan(hg.values, x, (1 << (u + 1)) - 1, 1 << u, hg.tol)
        x[u] = best
        fused = int(lo)
        keep = []
        for b in blocks:
            if b & fused:
                fused |= b
            else:
                keep.append(b)
        blocks = keep + [fused]
    return DtResult(hg.gamma, _as_scalar(hg, x.sum()), Partition.from_masks(blocks, range(h.n)))


def dilworth_truncation(model: Model, gamma) -> DtResult:
    """Minimum over partitions of ``sum_C [H(C) - gamma]`` and the finest minimizer.

    Elements are added one at a time; each step solves a brute-force SFM for
    the new coordinate of a maximal vector below the residual function, and
    fuses the blocks met by the minimal tight set.
    """
    h = _function(model)
    if h.n > MAX_GROUND:
        raise GroundTooLarge(f"n={h.n} exceeds {MAX_GROUND}")
    return _dt(h, gamma)


@dataclass(frozen=True)
class DtBruteForce:
    gamma: Scalar
    value: Scalar
    optimal: tuple[Partition, ...]
    finest: Partition


def dilworth_truncation_bruteforce(model: Model, gamma) -> DtBruteForce:
    """Enumerate every partition; return all minimizers and their meet."""
    h = _function(model)
    if h.n > MAX_BRUTEFORCE:
        raise GroundTooLarge(f"brute force is capped at {MAX_BRUTEFORCE} elements")
    hg = residual(h, gamma)
    rgs = _rgs(h.n)
    sums, _ = kernels.partition_sums(rgs, np.arange(h.n, dtype=np.int64), hg.values)
    best = sums.min()
    optimal = tuple(Partition.from_labels(rgs[i], range(h.n)) for i in np.flatnonzero(sums <= best + hg.tol))
    finest = reduce(partition_meet, optimal)
    fv = sum(hg.values[m] for m in finest.masks)
    if fv > best + hg.tol:
        if hg.exact:  # pragma: no cover - lattice property of submodular h
            raise AssertionError("meet of optimal partitions is not optimal; entropy not submodular?")
        raise NoUniqueFinest(f"optimal partitions at gamma={hg.gamma} do not have an optimal meet within tolerance")
    return DtBruteForce(hg.gamma, _as_scalar(hg, best), optimal, finest)


def _partition_line(h: SetFunction, p: Partition) -> Line:
    return Line(partition_value(h, p), -len(p), p)


@dataclass(frozen=True)
class PspResult:
    """Critical values ``g_1 < ... < g_k`` and partitions ``P_0 > ... > P_k``.

    ``partitions[j]`` is the finest optimal partition on ``(g_j, g_{j+1})``
    (with ``g_0 = -inf``, ``g_{k+1} = +inf``), and also at ``g_j`` itself.
    """

    critical_values: tuple[Scalar, ...]
    partitions: tuple[Partition, ...]
    intercepts: tuple[Scalar, ...]

    def interval_index(self, gamma) -> int:
        return sum(1 for g in self.critical_values if g <= gamma)

    def partition_at(self, gamma) -> Partition:
        return self.partitions[self.interval_index(gamma)]

    def value(self, gamma) -> Scalar:
        """The truncation value, as the lower envelope of the chain's lines."""
        return min(c - len(p) * gamma for c, p in zip(self.intercepts, self.partitions))


def _psp(h: SetFunction) -> PspResult:
    ground = range(h.n)

    def oracle(g):
        dt = _dt(h, g)
        return dt.value, _partition_line(h, dt.finest)

    left = _partition_line(h, Partition.trivial(ground))
    right = _partition_line(h, Partition.singletons(ground))
    breaks, lines = lower_envelope(oracle, left, right, h.exact)
    return PspResult(tuple(breaks), tuple(l.label for l in lines), tuple(l.intercept for l in lines))


def psp(model: Model) -> PspResult:
    """Principal sequence of partitions via parametric line intersection."""
    h = _function(model)
    if h.n > MAX_GROUND:
        raise GroundTooLarge(f"n={h.n} exceeds {MAX_GROUND}")
    return _psp(h)


def _mmi(h: SetFunction, elements: list[int]) -> Scalar:
    if len(elements) == 2:
        i, j = elements
        return h.at(1 << i) + h.at(1 << j) - h.at((1 << i) | (1 << j))
    sub = h.restrict(elements)
    ground = range(sub.n)

    def oracle(g):
        dt = _dt(sub, g)
        return dt.value, _partition_line(sub, dt.finest)

    left = _partition_line(sub, Partition.trivial(ground))
    right = _partition_line(sub, Partition.singletons(ground))
    return first_breakpoint(oracle, left, right, sub.exact)


def mmi(model: Model, subset) -> Scalar:
    """Multivariate mutual information: first critical value of the PSP on ``subset``."""
    b = sorted(_indices(model, subset))
    if len(b) < 2:
        raise SubsetTooSmall("MMI needs at least two variables")
    return _mmi(_function(model), b)


def mmi_bruteforce(model: Model, subset) -> tuple[Scalar, Partition]:
    """MMI by direct minimization over all partitions with at least two blocks."""
    b = sorted(_indices(model, subset))
    if len(b) < 2:
        raise SubsetTooSmall("MMI needs at least two variables")
    if len(b) > MAX_BRUTEFORCE:
        raise GroundTooLarge(f"brute force is capped at {MAX_BRUTEFORCE} elements")
    h = _function(model)
    rgs = _rgs(len(b))
    sums, nblocks = kernels.partition_sums(rgs, np.array(b, dtype=np.int64), h.values)
    joint = h.values[to_mask(b)]
    best = None
    arg = -1
    for k in range(2, len(b) + 1):
        idx = np.flatnonzero(nblocks == k)
        i = idx[np.argmin(sums[idx])]
        if h.exact:
            val = Fraction(int(sums[i] - joint), h.scale * (k - 1))
        else:
            val = float(sums[i] - joint) / (k - 1)
        if best is None or val < best - (0 if h.exact else TOL):
            best, arg = val, i
    return best, Partition.from_labels(rgs[arg], b)


@dataclass(frozen=True)
class ClusterSet:
    gamma: Scalar
    clusters: frozenset[frozenset[int]]
    extended: bool = False

    def __iter__(self):
        return iter(sorted(self.clusters, key=lambda c: (-len(c), sorted(c))))

    def __len__(self) -> int:
        return len(self.clusters)

    def __contains__(self, item: object) -> bool:
        return frozenset(item) in self.clusters  # type: ignore[arg-type]


def clusters(model: Model, gamma) -> ClusterSet:
    """Non-singleton blocks of the finest optimal partition at ``gamma``."""
    dt = dilworth_truncation(model, gamma)
    return ClusterSet(dt.gamma, frozenset(dt.finest.non_singletons()))


def _consistent(b: int, others: Iterable[int]) -> bool:
    return all(not (b & o) or (o & ~b) == 0 for o in others)


def extended_clusters(model: Model, gamma) -> ClusterSet:
    """Clusters plus every set of MMI exactly ``gamma`` that splits no cluster.

    A candidate ``B`` (``|B| > 1``) joins when each current cluster is either
    disjoint from it or contained in it, and its MMI equals ``gamma``.
    """
    h = _function(model)
    base = clusters(h, gamma)
    g = base.gamma
    cl = [to_mask(c) for c in base.clusters]
    extra = set()
    for b in range(1, 1 << h.n):
        if b & (b - 1) == 0 or b in cl or not _consistent(b, cl):
            continue
        value = _mmi(h, sorted(from_mask(b)))
        if h.exact:
            hit = value == g
        else:
            if abs(value - g) < TOL:
                raise FloatEqualityAmbiguous(f"MMI of {sorted(from_mask(b))} is within tolerance of gamma={g}")
            hit = False
        if hit:
            extra.add(from_mask(b))
    return ClusterSet(g, base.clusters | extra, extended=True)


def extended_clusters_bruteforce(model: Model, gamma) -> ClusterSet:
    """Non-singleton blocks of every optimal partition at ``gamma``."""
    dt = dilworth_truncation_bruteforce(model, gamma)
    found = frozenset(b for p in dt.optimal for b in p.non_singletons())
    return ClusterSet(dt.gamma, found, extended=True)
