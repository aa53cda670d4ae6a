"""Exact discrete sources and the information measures built on their entropy.

Three backends share the :class:`SourceModel` interface:

* :class:`LinearAtomicSource` -- variables are GF(2) linear combinations of
  independent uniform bits plus independent "atoms" of arbitrary rational
  entropy. Entropy is exact: rank of the combined combinations plus the
  weight of the combined atoms.
* :class:`PmfSource` -- an explicit joint pmf; entropies are floats.
* :class:`EntropyTableSource` -- the entropy function given directly.

Entropies are in bits. Subsets may be given as variable names or indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .combinatorics import MAX_ENUMERATION, GroundSet, to_mask
from .errors import EmptySet, ModelError, OverlappingFamily, UnknownVariable
from .submodular import TOL, Scalar, SetFunction, as_scalar, check_submodular

MAX_BITS = 62


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    fatal: bool = True

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class SourceModel:
    """A finite family of random variables with an entropy oracle.

    Subclasses implement :meth:`_build` returning the dense entropy table.
    The table is built once per instance on first use; concurrent first use
    may build it twice, which is harmless since the result is deterministic.
    """

    exact: bool = True

    def __init__(self, variables: Iterable[str]):
        self.ground = GroundSet(variables)
        self._table: SetFunction | None = None

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ground.names

    @property
    def n(self) -> int:
        return len(self.ground)

    def indices(self, subset: Iterable[int | str] | str) -> frozenset[int]:
        if isinstance(subset, str):
            subset = [subset]
        out = set()
        for x in subset:
            if isinstance(x, str):
                out.add(self.ground.index(x))
            else:
                if not 0 <= int(x) < self.n:
                    raise UnknownVariable(x)
                out.add(int(x))
        return frozenset(out)

    def set_function(self) -> SetFunction:
        if self._table is None:
            self._table = self._build()
        return self._table

    def entropy(self, subset: Iterable[int | str] | str = ()) -> Scalar:
        return self.set_function().at(to_mask(self.indices(subset)))

    def restrict(self, subset: Sequence[int | str]) -> SourceModel:
        """The sub-family ``subset``, in the order given."""
        return SubModel(self, [next(iter(self.indices([x]))) for x in subset])

    def _build(self) -> SetFunction:  # pragma: no cover - abstract
        raise NotImplementedError

    def _violations(self) -> list[Violation]:
        return []


class SubModel(SourceModel):
    """A reordered / restricted view of another model."""

    def __init__(self, base: SourceModel, elements: Sequence[int]):
        if len(set(elements)) != len(elements):
            raise ModelError("duplicate elements in restriction")
        super().__init__(base.variables[i] for i in elements)
        self.base = base
        self.elements = tuple(elements)
        self.exact = base.exact

    def _build(self) -> SetFunction:
        return self.base.set_function().restrict(self.elements)

    def _violations(self) -> list[Violation]:
        return self.base._violations()


def _parse_combo(combo: str | Iterable[str]) -> frozenset[str]:
    if isinstance(combo, str):
        terms = [t.strip() for t in combo.replace("+", "^").split("^")]
    else:
        terms = [str(t).strip() for t in combo]
    if any(not t for t in terms):
        raise ModelError(f"empty term in XOR expression {combo!r}")
    # x ^ x = 0: repeated terms cancel in pairs
    out: set[str] = set()
    for t in terms:
        out ^= {t}
    return frozenset(out)


class LinearAtomicSource(SourceModel):
    """Variables built from uniform bits (XOR-combinable) and weighted atoms.

    ``variables`` maps each id to ``{"bits": [...], "atoms": [...]}`` where each
    bits entry is an XOR expression such as ``"W2^W3^W4"`` (or a list of names)
    and atoms are plain names. Atoms never appear inside XOR expressions.
    """

    def __init__(
        self,
        bits: Sequence[str],
        atoms: Mapping[str, object],
        variables: Mapping[str, Mapping[str, Sequence]],
    ):
        super().__init__(variables.keys())
        self.bits = tuple(bits)
        self.atoms = {str(k): as_scalar(v) for k, v in atoms.items()}
        if len(set(self.bits)) != len(self.bits):
            raise ModelError("duplicate bit names")
        if set(self.bits) & set(self.atoms):
            raise ModelError(f"names declared as both bit and atom: {sorted(set(self.bits) & set(self.atoms))}")
        if len(self.bits) > MAX_BITS or len(self.atoms) > MAX_BITS:
            raise ModelError(f"at most {MAX_BITS} bits and {MAX_BITS} atoms supported")
        self.combos: dict[str, tuple[frozenset[str], ...]] = {}
        self.var_atoms: dict[str, frozenset[str]] = {}
        for name, defn in variables.items():
            extra = set(defn) - {"bits", "atoms"}
            if extra:
                raise ModelError(f"variable {name!r}: unknown keys {sorted(extra)}")
            self.combos[name] = tuple(_parse_combo(c) for c in defn.get("bits", ()))
            self.var_atoms[name] = frozenset(str(a) for a in defn.get("atoms", ()))
        problems = [v for v in self._violations() if v.fatal]
        if problems:
            raise ModelError("; ".join(map(str, problems)))

    def _violations(self) -> list[Violation]:
        out = []
        bitset = set(self.bits)
        for name in self.variables:
            for combo in self.combos[name]:
                for t in sorted(combo - bitset):
                    if t in self.atoms:
                        out.append(Violation("atom-in-xor", f"{name}: atom {t!r} used inside an XOR expression"))
                    else:
                        out.append(Violation("unknown-bit", f"{name}: undeclared bit {t!r}"))
            for a in sorted(self.var_atoms[name] - set(self.atoms)):
                out.append(Violation("unknown-atom", f"{name}: undeclared atom {a!r}"))
        for a, w in self.atoms.items():
            if w <= 0:
                out.append(Violation("atom-weight", f"atom {a!r} has non-positive weight {w}"))
        return out

    def _build(self) -> SetFunction:
        bit_pos = {b: i for i, b in enumerate(self.bits)}
        atom_pos = {a: i for i, a in enumerate(self.atoms)}
        width = max((len(self.combos[v]) for v in self.variables), default=0)
        rows = np.zeros((self.n, max(width, 1)), dtype=np.int64)
        counts = np.zeros(self.n, dtype=np.int64)
        amask = np.zeros(self.n, dtype=np.int64)
        for i, name in enumerate(self.variables):
            for k, combo in enumerate(self.combos[name]):
                rows[i, k] = to_mask(bit_pos[t] for t in combo)
            counts[i] = len(self.combos[name])
            amask[i] = to_mask(atom_pos[a] for a in self.var_atoms[name])
        scale = lcm(1, *(w.denominator for w in self.atoms.values()))
        values = kernels.rank_table(rows, counts, len(self.bits)) * scale
        union = kernels.subset_or(amask)
        for a, w in self.atoms.items():
            values = values + ((union >> atom_pos[a]) & 1) * int(w * scale)
        return SetFunction(values, scale)


class PmfSource(SourceModel):
    """Explicit joint distribution: ``outcomes`` is a list of ``(prob, values)``."""

    exact = False

    def __init__(self, variables: Sequence[str], outcomes: Sequence[tuple[object, Sequence]]):
        super().__init__(variables)
        self.outcomes = []
        for p, vals in outcomes:
            p = p if isinstance(p, float) else as_scalar(p)
            self.outcomes.append((p, tuple(vals)))

    def _violations(self) -> list[Violation]:
        out = []
        for p, vals in self.outcomes:
            if p <= 0:
                out.append(Violation("probability", f"non-positive probability {p}"))
            if len(vals) != self.n:
                out.append(Violation("arity", f"outcome {vals!r} has {len(vals)} values, expected {self.n}"))
        total = sum(p for p, _ in self.outcomes)
        off = abs(float(total) - 1.0) > TOL if isinstance(total, float) else total != 1
        if off:
            out.append(Violation("probability-sum", f"probabilities sum to {total}, not 1"))
        return out

    def _build(self) -> SetFunction:
        bad = [v for v in self._violations() if v.kind == "arity"]
        if bad:
            raise ModelError("; ".join(map(str, bad)))
        probs = np.array([float(p) for p, _ in self.outcomes])
        codes = np.zeros((len(self.outcomes), self.n), dtype=np.int64)
        for j in range(self.n):
            _, codes[:, j] = np.unique(np.array([repr(v[j]) for _, v in self.outcomes]), return_inverse=True)
        values = np.zeros(1 << self.n)
        for mask in range(1, 1 << self.n):
            cols = [j for j in range(self.n) if (mask >> j) & 1]
            _, inv = np.unique(codes[:, cols], axis=0, return_inverse=True)
            marg = np.bincount(inv.ravel(), weights=probs)
            marg = marg[marg > 0]
            values[mask] = -(marg * np.log2(marg)).sum()
        return SetFunction(values, None)


class EntropyTableSource(SourceModel):
    """Entropy given directly for every non-empty subset (``h(empty) = 0``).

    ``table`` maps subsets (iterables of names, or comma-joined strings) to
    rational values.
    """

    def __init__(self, variables: Sequence[str], table: Mapping[object, object]):
        super().__init__(variables)
        self.table: dict[frozenset[int], Fraction] = {}
        for key, val in table.items():
            names = [k.strip() for k in key.split(",")] if isinstance(key, str) else list(key)
            self.table[self.indices(names)] = as_scalar(val)

    def _violations(self) -> list[Violation]:
        out = []
        missing = (1 << self.n) - 1 - len([k for k in self.table if k])
        if missing:
            out.append(Violation("incomplete", f"{missing} non-empty subsets have no entry"))
        if frozenset() in self.table and self.table[frozenset()] != 0:
            out.append(Violation("normalization", "entry for the empty set must be 0"))
        if out or self.n > MAX_ENUMERATION:
            return out
        h = self._build()
        v = h.values
        for m in range(1, 1 << self.n):
            if v[m] < 0:
                out.append(Violation("negative", f"h({self.ground.names_of(_bits(m))}) < 0", fatal=False))
            for b in range(self.n):
                if not (m >> b) & 1 and v[m | (1 << b)] < v[m]:
                    out.append(Violation(
                        "monotonicity",
                        f"h({self.ground.names_of(_bits(m | 1 << b))}) < h({self.ground.names_of(_bits(m))})",
                        fatal=False,
                    ))
        for b1, b2 in check_submodular(h):
            out.append(Violation(
                "submodularity",
                f"violated on B1={self.ground.names_of(b1)}, B2={self.ground.names_of(b2)}",
                fatal=False,
            ))
        return out

    def _build(self) -> SetFunction:
        missing = [m for m in range(1, 1 << self.n) if _bits(m) not in self.table]
        if missing:
            raise ModelError(f"entropy table incomplete: {len(missing)} subsets missing")
        scale = lcm(1, *(v.denominator for v in self.table.values()))
        values = np.zeros(1 << self.n, dtype=np.int64)
        for key, val in self.table.items():
            values[to_mask(key)] = int(val * scale)
        return SetFunction(values, scale)


def _bits(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def validate(model: SourceModel) -> list[Violation]:
    """Everything wrong with ``model``; polymatroid findings are non-fatal."""
    return model._violations()


def _nonempty(model: SourceModel, subset) -> frozenset[int]:
    idx = model.indices(subset)
    if not idx:
        raise EmptySet("subset must be non-empty")
    return idx


def mutual_information(model: SourceModel, a, b) -> Scalar:
    """``H(a) + H(b) - H(a | b)`` for non-empty ``a``, ``b``."""
    a = _nonempty(model, a)
    b = _nonempty(model, b)
    return model.entropy(a) + model.entropy(b) - model.entropy(a | b)


def conditional_entropy(model: SourceModel, a, given) -> Scalar:
    a = model.indices(a)
    b = model.indices(given)
    return model.entropy(a | b) - model.entropy(b)


def is_mutually_independent(model: SourceModel, family: Sequence) -> bool:
    """Whether the entropies of the (disjoint, non-empty) members add up."""
    members = [_nonempty(model, m) for m in family]
    seen: set[int] = set()
    for m in members:
        if seen & m:
            raise OverlappingFamily(f"members overlap on {sorted(seen & m)}")
        seen |= m
    gap = sum(model.entropy(m) for m in members) - model.entropy(seen)
    return gap == 0 if model.exact else abs(gap) <= TOL
