"""Breakpoint search on the lower envelope of a finite family of lines.

Used for both parametric problems: the Dilworth truncation value is the
lower envelope of the partition lines ``sum H(C) - |P| gamma``, and the
negated relaxed feature-selection value is the lower envelope of
``-I(Y; X_B) + |B| gamma``. The caller supplies an oracle that, given
``gamma``, returns the envelope value there together with the optimal line of
smallest slope (the one that stays optimal just to the right of ``gamma``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .submodular import TOL, Scalar

SNAP = 1e-7


@dataclass(frozen=True)
class Line:
    intercept: Scalar
    slope: int
    label: Any = None

    def __call__(self, gamma: Scalar) -> Scalar:
        return self.intercept + self.slope * gamma

    def meet(self, other: Line) -> Scalar:
        """Abscissa where two lines of different slope cross."""
        return (other.intercept - self.intercept) / (self.slope - other.slope)


Oracle = Callable[[Scalar], tuple[Scalar, Line]]


def lower_envelope(oracle: Oracle, left: Line, right: Line, exact: bool = True) -> tuple[list[Scalar], list[Line]]:
    """Breakpoints and the lines between them, left to right.

    ``left`` must be optimal as gamma -> -inf and ``right`` as gamma -> +inf.
    Returns ``(breakpoints, lines)`` with ``len(lines) == len(breakpoints) + 1``.
    """
    tol = 0 if exact else TOL
    if left.slope == right.slope:
        return [], [left]

    def search(lo: Line, hi: Line) -> tuple[list[Scalar], list[Line]]:
        g = lo.meet(hi)
        value, mid = oracle(g)
        if value >= lo(g) - tol:
            return [g], [lo, hi]
        b1, l1 = search(lo, mid)
        b2, l2 = search(mid, hi)
        return b1 + b2, l1 + l2[1:]

    breaks, lines = search(left, right)
    if not exact:
        breaks, lines = _snap(breaks, lines)
    return breaks, lines


def _snap(breaks: list[Scalar], lines: list[Line]) -> tuple[list[Scalar], list[Line]]:
    if not breaks:
        return breaks, lines
    out_b = [breaks[0]]
    out_l = [lines[0], lines[1]]
    for g, line in zip(breaks[1:], lines[2:]):
        if g - out_b[-1] < SNAP:
            out_l[-1] = line
        else:
            out_b.append(g)
            out_l.append(line)
    return out_b, out_l


def first_breakpoint(oracle: Oracle, left: Line, right: Line, exact: bool = True) -> Scalar | None:
    """Only the leftmost breakpoint; ``None`` if the envelope is a single line."""
    tol = 0 if exact else TOL
    if left.slope == right.slope:
        return None
    hi = right
    while True:
        g = left.meet(hi)
        value, mid = oracle(g)
        if value >= left(g) - tol:
            return g
        hi = mid
