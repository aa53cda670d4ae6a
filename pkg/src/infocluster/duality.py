"""Feature selection versus clustering of the lifted model.

The lifted model puts the dependent variable at index 0 and the features at
``1..m`` in declaration order. With mutually independent features, ``B`` is a
relaxed feature-selection optimizer at ``gamma`` exactly when ``{0} | B`` is a
block of some optimal partition of the lifted Dilworth truncation. The checks
here evaluate both directions by brute force and report any failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .clustering import dilworth_truncation_bruteforce, psp
from .combinatorics import Partition, is_block_partition
from .errors import PreconditionViolated
from .featsel import FeatureProblem, pp, relax_optimize
from .sources import SourceModel
from .submodular import Scalar


def lift(problem: FeatureProblem) -> SourceModel:
    """Model over ``{0} | U``: ``Z_0 = Y`` and ``Z_j`` the ``j``-th feature."""
    return problem.model.restrict([problem.dependent, *problem.features])


def _lifted(problem: FeatureProblem, subset: frozenset[int]) -> frozenset[int]:
    pos = {g: j + 1 for j, g in enumerate(problem.features)}
    return frozenset(pos[i] for i in subset)


@dataclass(frozen=True)
class BlockReport:
    gamma: Scalar
    partitions: tuple[Partition, ...]
    violations: tuple[Partition, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def selections(self) -> list[frozenset[int]]:
        """``B`` for each optimal block partition ``{0} | B``."""
        return [p.block_of(0) - {0} for p in self.partitions if p not in self.violations]


def check_block_structure(problem: FeatureProblem, gamma) -> BlockReport:
    """For ``gamma > 0`` every optimal lifted partition is ``{0} | B`` plus singletons."""
    lifted = lift(problem)
    g = lifted.set_function().coerce(gamma)
    if g <= 0:
        raise PreconditionViolated("block structure needs gamma > 0")
    if not problem.features_independent():
        raise PreconditionViolated("block structure needs mutually independent features")
    dt = dilworth_truncation_bruteforce(lifted, g)
    bad = tuple(p for p in dt.optimal if not is_block_partition(p, 0))
    return BlockReport(dt.gamma, dt.optimal, bad)


@dataclass(frozen=True)
class DualityReport:
    """Both directions of the correspondence at one ``gamma``.

    ``forward`` pairs each relaxed optimizer ``B`` (lifted indices) with
    whether ``{0} | B`` is a block of some optimal partition; ``backward``
    pairs each such block containing 0 with whether ``block - {0}`` is a
    relaxed optimizer.
    """

    gamma: Scalar
    forward: tuple[tuple[frozenset[int], bool], ...]
    backward: tuple[tuple[frozenset[int], bool], ...]
    independent: bool

    @property
    def forward_ok(self) -> bool:
        return all(ok for _, ok in self.forward)

    @property
    def backward_ok(self) -> bool:
        return all(ok for _, ok in self.backward)

    @property
    def passed(self) -> bool:
        return self.forward_ok and self.backward_ok

    @property
    def forward_witnesses(self) -> list[frozenset[int]]:
        return [b for b, ok in self.forward if not ok]

    @property
    def backward_witnesses(self) -> list[frozenset[int]]:
        return [b for b, ok in self.backward if not ok]


def _key(s: frozenset[int]):
    return (len(s), sorted(s))


def verify_duality(problem: FeatureProblem, gamma) -> DualityReport:
    lifted = lift(problem)
    dt = dilworth_truncation_bruteforce(lifted, gamma)
    blocks = {p.block_of(0) for p in dt.optimal}
    relax = relax_optimize(problem, dt.gamma, family=True)
    selected = {_lifted(problem, b) for b in relax.optimizers}
    forward = tuple((b, (b | {0}) in blocks) for b in sorted(selected, key=_key))
    backward = tuple((c, (c - {0}) in selected) for c in sorted(blocks, key=_key))
    return DualityReport(dt.gamma, forward, backward, problem.features_independent())


def sweep_points(problem: FeatureProblem) -> list[Scalar]:
    """Every PSP and PP breakpoint, 0, midpoints between them, and one point
    beyond each end (the left one negative)."""
    lifted = lift(problem)
    h = lifted.set_function()
    pts = {h.coerce(0), *psp(lifted).critical_values, *pp(problem).breakpoints}
    pts = sorted(pts)
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return sorted({pts[0] - 1, *pts, *mids, pts[-1] + 1})


def sweep_duality(problem: FeatureProblem, gammas: Sequence | None = None) -> list[DualityReport]:
    return [verify_duality(problem, g) for g in (sweep_points(problem) if gammas is None else gammas)]
