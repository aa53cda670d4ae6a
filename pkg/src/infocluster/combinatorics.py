"""Ground sets, subsets, set partitions and the refinement order.

Subsets are ``frozenset`` objects of element indices at the API level and
``int`` bit masks (bit ``i`` <-> element ``i``) inside the numeric kernels.
Every partition is kept in canonical form: blocks sorted by their smallest
element, which makes equality and hashing structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import EmptyBlock, GroundMismatch, GroundTooLarge, UnknownVariable

MAX_GROUND = 20
MAX_ENUMERATION = 12


class GroundSet:
    """Ordered, duplicate-free collection of variable identifiers."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(str(x) for x in names)
        if not names:
            raise ValueError("ground set must contain at least one element")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate identifiers in {names!r}")
        if len(names) > MAX_GROUND:
            raise GroundTooLarge(f"{len(names)} elements exceeds the cap of {MAX_GROUND}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and other.names == self.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.names)!r})"

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(range(len(self.names)))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def subset(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index(x) for x in names)

    def names_of(self, subset: Iterable[int]) -> list[str]:
        return [self.names[i] for i in sorted(subset)]


def to_mask(subset: Iterable[int]) -> int:
    m = 0
    for i in subset:
        m |= 1 << i
    return m


def from_mask(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def format_set(subset: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(subset)) + "}"


def _ground_of(ground: GroundSet | Iterable[int]) -> frozenset[int]:
    if isinstance(ground, GroundSet):
        return ground.indices
    return frozenset(ground)


@dataclass(frozen=True)
class Partition:
    """A partition of ``ground`` into non-empty disjoint blocks.

    Construct with :meth:`of`; the raw constructor expects canonical input.
    """

    ground: frozenset[int]
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]], ground: GroundSet | Iterable[int] | None = None) -> Partition:
        bl = [frozenset(b) for b in blocks]
        if any(not b for b in bl):
            raise EmptyBlock("partition blocks must be non-empty")
        union: set[int] = set()
        for b in bl:
            if union & b:
                raise ValueError(f"blocks overlap: {sorted(union & b)}")
            union |= b
        g = frozenset(union) if ground is None else _ground_of(ground)
        if union != g:
            raise GroundMismatch(f"blocks cover {sorted(union)}, ground is {sorted(g)}")
        return cls(g, tuple(sorted(bl, key=min)))

    @classmethod
    def from_labels(cls, labels: Sequence[int], elements: Sequence[int]) -> Partition:
        groups: dict[int, list[int]] = {}
        for lab, e in zip(labels, elements):
            groups.setdefault(int(lab), []).append(int(e))
        return cls.of(groups.values(), elements)

    @classmethod
    def from_masks(cls, masks: Iterable[int], ground: GroundSet | Iterable[int] | None = None) -> Partition:
        return cls.of((from_mask(int(m)) for m in masks if m), ground)

    @classmethod
    def trivial(cls, ground: GroundSet | Iterable[int]) -> Partition:
        g = _ground_of(ground)
        return cls(g, (g,))

    @classmethod
    def singletons(cls, ground: GroundSet | Iterable[int]) -> Partition:
        g = _ground_of(ground)
        return cls(g, tuple(frozenset([i]) for i in sorted(g)))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.blocks)

    def __contains__(self, block: object) -> bool:
        return frozenset(block) in self.blocks  # type: ignore[arg-type]

    def __le__(self, other: Partition) -> bool:
        return refines(self, other)

    def __lt__(self, other: Partition) -> bool:
        return self != other and refines(self, other)

    def __str__(self) -> str:
        return "{" + ",".join(format_set(b) for b in self.blocks) + "}"

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(b) for b in self.blocks)

    def non_singletons(self) -> list[frozenset[int]]:
        return [b for b in self.blocks if len(b) > 1]

    def block_of(self, element: int) -> frozenset[int]:
        for b in self.blocks:
            if element in b:
                return b
        raise UnknownVariable(element)


def _check_same(p: Partition, q: Partition) -> None:
    if p.ground != q.ground:
        raise GroundMismatch(f"{sorted(p.ground)} vs {sorted(q.ground)}")


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of ``p`` lies inside some block of ``q``."""
    _check_same(p, q)
    return all(any(b <= c for c in q.blocks) for b in p.blocks)


def partition_meet(p: Partition, q: Partition) -> Partition:
    _check_same(p, q)
    return Partition.of((b & c for b in p.blocks for c in q.blocks if b & c), p.ground)


def partition_join(p: Partition, q: Partition) -> Partition:
    _check_same(p, q)
    # union-find over elements, merging along every block of both partitions
    parent = {i: i for i in p.ground}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for block in p.blocks + q.blocks:
        it = iter(block)
        root = find(next(it))
        for j in it:
            parent[find(j)] = root
    groups: dict[int, set[int]] = {}
    for i in p.ground:
        groups.setdefault(find(i), set()).add(i)
    return Partition.of(groups.values(), p.ground)


def block_partition(block: Iterable[int], ground: GroundSet | Iterable[int]) -> Partition:
    """The partition made of ``block`` plus singletons for everything else."""
    c = frozenset(block)
    if not c:
        raise EmptyBlock("block partition needs a non-empty block")
    g = _ground_of(ground)
    if not c <= g:
        raise GroundMismatch(f"{sorted(c - g)} not in ground")
    return Partition.of([c, *([i] for i in g - c)], g)


def is_block_partition(p: Partition, anchor: int) -> bool:
    """Whether every block of ``p`` not containing ``anchor`` is a singleton."""
    return all(len(b) == 1 for b in p.blocks if anchor not in b)


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``m`` in lexicographic order."""
    if m == 0:
        yield ()
        return
    a = [0] * m
    b = [1] * m  # b[i] = 1 + max(a[:i])
    while True:
        yield tuple(a)
        i = m - 1
        while i > 0 and a[i] == b[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, m):
            a[j] = 0
            b[j] = max(b[j - 1], a[j - 1] + 1)


def enumerate_partitions(ground: GroundSet | Iterable[int]) -> Iterator[Partition]:
    """Every partition of ``ground`` exactly once, in restricted-growth order."""
    elements = sorted(_ground_of(ground))
    if len(elements) > MAX_ENUMERATION:
        raise GroundTooLarge(f"partition enumeration is capped at {MAX_ENUMERATION} elements")
    for rgs in restricted_growth_strings(len(elements)):
        yield Partition.from_labels(rgs, elements)


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]
