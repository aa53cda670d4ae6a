"""Dense set functions, residual shifts, submodularity checks and brute-force SFM.

A :class:`SetFunction` stores one value per subset mask of an ``n``-element
ground set. Exact functions hold int64 numerators over a common positive
denominator ``scale``; inexact ones hold float64 values and ``scale is None``.
Kernels only ever see the raw arrays, so exact arithmetic stays exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Union

import numpy as np

from . import kernels
from .combinatorics import MAX_ENUMERATION, MAX_GROUND, Partition, from_mask, to_mask
from .errors import GroundMismatch, GroundTooLarge, ScaleOverflow

Scalar = Union[Fraction, float]

#: Absolute tolerance for every float comparison in the library.
TOL = 1e-9

_INT_LIMIT = 1 << 56


def as_scalar(x: object) -> Fraction:
    """Parse ``x`` as an exact rational: ints, Fractions, ``"p/q"`` or decimal strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, float, str)):
        try:
            return Fraction(x.strip() if isinstance(x, str) else x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {x!r}") from exc
    raise TypeError(f"cannot interpret {type(x).__name__} as a scalar")


def fmt_scalar(x: Scalar) -> str:
    """``Fraction(7, 3) -> "7/3"``; floats print with repr precision."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def _check_range(values: np.ndarray, n: int) -> None:
    if values.size and int(np.abs(values).max()) * (n + 1) >= _INT_LIMIT:
        raise ScaleOverflow("scaled values too large for exact int64 kernels")


class SetFunction:
    """Total map from subsets of ``range(n)`` to scalars, stored densely."""

    def __init__(self, values: np.ndarray, scale: int | None = None):
        values = np.asarray(values)
        n = int(values.size).bit_length() - 1
        if values.ndim != 1 or values.size != 1 << n:
            raise ValueError("values must be a flat array of length 2**n")
        if n > MAX_GROUND:
            raise GroundTooLarge(f"{n} elements exceeds the cap of {MAX_GROUND}")
        if scale is None:
            values = values.astype(np.float64, copy=False)
        else:
            if scale <= 0:
                raise ValueError("scale must be positive")
            values = values.astype(np.int64, copy=False)
            _check_range(values, n)
        self.values = values
        self.scale = scale
        self.n = n
        values.flags.writeable = False

    @classmethod
    def from_callable(cls, n: int, fn, exact: bool = True) -> SetFunction:
        raw = [fn(from_mask(m)) for m in range(1 << n)]
        if not exact:
            return cls(np.array([float(v) for v in raw]), None)
        fr = [as_scalar(v) for v in raw]
        scale = lcm(*(v.denominator for v in fr)) if fr else 1
        return cls(np.array([int(v * scale) for v in fr], dtype=object).astype(np.int64), scale)

    @property
    def exact(self) -> bool:
        return self.scale is not None

    @property
    def tol(self):
        return 0 if self.exact else TOL

    def at(self, mask: int) -> Scalar:
        v = self.values[mask]
        return Fraction(int(v), self.scale) if self.exact else float(v)

    def __call__(self, subset: Iterable[int]) -> Scalar:
        mask = to_mask(subset)
        if mask >> self.n:
            raise GroundMismatch(f"{sorted(subset)} outside ground of size {self.n}")
        return self.at(mask)

    def coerce(self, x: object) -> Scalar:
        """Bring a threshold into this function's arithmetic."""
        if self.exact:
            return as_scalar(x)
        return float(x)  # type: ignore[arg-type]

    def rescaled(self, extra: int) -> SetFunction:
        """Same function with a denominator that is a multiple of ``extra``."""
        if not self.exact:
            return self
        new = lcm(self.scale, extra)
        if new == self.scale:
            return self
        if (new // self.scale) * int(np.abs(self.values).max(initial=0)) * (self.n + 1) >= _INT_LIMIT:
            raise ScaleOverflow("common denominator too large for exact kernels")
        return SetFunction(self.values * (new // self.scale), new)

    def raw(self, x: Scalar):
        """Kernel-level representation of a scalar; must be representable."""
        if not self.exact:
            return float(x)
        y = Fraction(x) * self.scale
        if y.denominator != 1:
            raise ValueError(f"{x} not representable with scale {self.scale}; rescale first")
        return int(y.numerator)

    def restrict(self, elements: Iterable[int]) -> SetFunction:
        """Function on ``range(k)`` where local ``j`` is ``elements[j]``."""
        elements = list(elements)
        if any(e < 0 or e >= self.n for e in elements):
            raise GroundMismatch(f"{elements} outside ground of size {self.n}")
        idx = kernels.subset_or(np.array([1 << e for e in elements], dtype=np.int64))
        return SetFunction(self.values[idx], self.scale)

    def __repr__(self) -> str:
        kind = f"scale={self.scale}" if self.exact else "float"
        return f"SetFunction(n={self.n}, {kind})"


class ResidualFunction(SetFunction):
    """``B -> base(B) - gamma`` for every ``B``, the empty set included."""

    def __init__(self, base: SetFunction, gamma: Scalar):
        gamma = base.coerce(gamma)
        if base.exact:
            base = base.rescaled(gamma.denominator)
        super().__init__(base.values - base.raw(gamma), base.scale)
        self.base = base
        self.gamma = gamma


def residual(h: SetFunction, gamma: object) -> ResidualFunction:
    return ResidualFunction(h, gamma)


def check_submodular(h: SetFunction) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Pairs ``(B1, B2)`` with ``h(B1) + h(B2) < h(B1 | B2) + h(B1 & B2)``."""
    if h.n > MAX_ENUMERATION:
        raise GroundTooLarge(f"pairwise check is capped at {MAX_ENUMERATION} elements")
    v = h.values
    masks = np.arange(1 << h.n, dtype=np.int64)
    bad = []
    for a in range(1 << h.n):
        gap = v[a] + v - v[a | masks] - v[a & masks]
        # comparable pairs are equalities; a < b avoids reporting twice
        for b in np.flatnonzero((gap < -h.tol) & (masks > a)):
            bad.append((from_mask(a), from_mask(int(b))))
    return bad


@dataclass(frozen=True)
class SfmResult:
    value: Scalar
    minimal: frozenset[int]
    maximal: frozenset[int]


def sfm_bruteforce(
    g: SetFunction,
    within: Iterable[int] | None = None,
    must_contain: Iterable[int] = (),
    offset=None,
) -> SfmResult:
    """Minimize ``g(B) - offset(B)`` over ``must_contain <= B <= within``.

    ``offset`` is an optional per-element modular term in ``g``'s raw units.
    Returns the minimum and the smallest and largest minimizers; for a
    submodular ``g`` these are the meet and join of the minimizer lattice.
    """
    within_m = (1 << g.n) - 1 if within is None else to_mask(within)
    must_m = to_mask(must_contain)
    if must_m & ~within_m:
        raise ValueError("must_contain is not inside within")
    if within_m >> g.n:
        raise GroundMismatch("within exceeds the ground set")
    weights = np.zeros(g.n, dtype=g.values.dtype) if offset is None else np.asarray(offset, dtype=g.values.dtype)
    best, lo, hi = kernels.sfm_scan(g.values, weights, within_m, must_m, g.tol)
    if __debug__:
        for m in (lo, hi):
            val = g.values[m] - sum(weights[b] for b in range(g.n) if (m >> b) & 1)
            assert val <= best + g.tol, "minimizers not closed under meet/join; g is not submodular"
    value = Fraction(int(best), g.scale) if g.exact else float(best)
    return SfmResult(value, from_mask(int(lo)), from_mask(int(hi)))


def partition_value(h: SetFunction, p: Partition) -> Scalar:
    """Sum of ``h`` over the blocks of ``p``."""
    if not p.ground <= frozenset(range(h.n)):
        raise GroundMismatch(f"partition ground {sorted(p.ground)} outside function ground")
    total = sum(h.values[m] for m in p.masks)
    return Fraction(int(total), h.scale) if h.exact else float(total)
