"""Finite sets and binary relations between them.

Elements of a finite set are the integers ``0..size-1``.  A relation is
stored as a bit-matrix: one Python int per source element, where bit ``j``
of row ``i`` is set iff ``(i, j)`` is in the relation.  Product sets are
flattened row-major, so the pair ``(i, j)`` of ``X x Y`` has index
``i * |Y| + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class ShapeError(ValueError):
    """Raised when relations with incompatible domains are combined."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class FinSet:
    size: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError(f"set size must be non-negative, got {self.size}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size:
                raise ValueError(f"{len(labels)} labels for a set of size {self.size}")
            if len(set(labels)) != len(labels):
                raise ValueError(f"labels must be distinct: {labels}")

    def label(self, i: int) -> str:
        if self.labels is None:
            return f"x{i}"
        return self.labels[i]

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def __mul__(self, other: FinSet) -> FinSet:
        return FinSet(self.size * other.size)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1


POINT = FinSet(1, ("•",))


def power(x: FinSet, k: int) -> FinSet:
    """The k-fold Cartesian power of ``x``; ``power(x, 0)`` is the point."""
    return FinSet(x.size**k)


@dataclass(frozen=True)
class Relation:
    src: FinSet
    dst: FinSet
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.src.size:
            raise ShapeError(f"{len(rows)} rows for a source of size {self.src.size}")
        limit = self.dst.full
        for i, row in enumerate(rows):
            if row < 0 or row & ~limit:
                raise ShapeError(f"row {i} has targets outside 0..{self.dst.size - 1}")

    @classmethod
    def from_pairs(cls, src: FinSet | int, dst: FinSet | int, pairs: Iterable[tuple[int, int]]) -> Relation:
        src = src if isinstance(src, FinSet) else FinSet(src)
        dst = dst if isinstance(dst, FinSet) else FinSet(dst)
        rows = [0] * src.size
        for i, j in pairs:
            if not (0 <= i < src.size and 0 <= j < dst.size):
                raise ShapeError(f"pair {(i, j)} out of bounds for {src.size}x{dst.size}")
            rows[i] |= 1 << j
        return cls(src, dst, tuple(rows))

    @classmethod
    def empty(cls, src: FinSet, dst: FinSet) -> Relation:
        return cls(src, dst, (0,) * src.size)

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, row in enumerate(self.rows) for j in bits(row))

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        return 0 <= i < self.src.size and bool(self.rows[i] >> j & 1)

    def __len__(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def is_empty(self) -> bool:
        return not any(self.rows)

    def then(self, other: Relation) -> Relation:
        return compose(self, other)

    def to_json(self) -> dict:
        return {
            "src": self.src.size,
            "dst": self.dst.size,
            "pairs": [list(p) for p in self.sorted_pairs()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Relation:
        return cls.from_pairs(obj["src"], obj["dst"], (tuple(p) for p in obj["pairs"]))


@dataclass(frozen=True)
class PowerMap:
    """A relation viewed as a function from ``src`` into subsets of ``dst``."""

    src: FinSet
    dst: FinSet
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        if len(image) != self.src.size:
            raise ShapeError(f"image defined on {len(image)} of {self.src.size} elements")
        for x, m in enumerate(image):
            if m < 0 or m & ~self.dst.full:
                raise ShapeError(f"image of {x} is not a subset of the target")

    def __call__(self, x: int) -> frozenset[int]:
        return frozenset(bits(self.image[x]))

    def compose(self, other: PowerMap) -> PowerMap:
        """Apply ``self`` then ``other``: the image of x is the union of
        ``other(y)`` over ``y`` in ``self(x)``."""
        if self.dst != other.src:
            raise ShapeError(f"cannot compose {self.src.size}->{self.dst.size} with {other.src.size}->{other.dst.size}")
        out = []
        for x in range(self.src.size):
            acc: set[int] = set()
            for y in self(x):
                acc |= other(y)
            out.append(mask_of(acc))
        return PowerMap(self.src, other.dst, tuple(out))


def to_power_map(r: Relation) -> PowerMap:
    return PowerMap(r.src, r.dst, r.rows)


def from_power_map(m: PowerMap) -> Relation:
    return Relation(m.src, m.dst, m.image)


def compose(r: Relation, s: Relation) -> Relation:
    """Diagrammatic composite: first ``r``, then ``s``."""
    if r.dst != s.src:
        raise ShapeError(
            f"cannot compose relation {r.src.size}->{r.dst.size} with {s.src.size}->{s.dst.size}: "
            f"target size {r.dst.size} != source size {s.src.size}"
        )
    srows = s.rows
    out = []
    for row in r.rows:
        acc = 0
        while row:
            low = row & -row
            acc |= srows[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return Relation(r.src, s.dst, tuple(out))


def compose_all(relations: Sequence[Relation]) -> Relation:
    if not relations:
        raise ValueError("nothing to compose")
    out = relations[0]
    for r in relations[1:]:
        out = compose(out, r)
    return out


def identity(x: FinSet | int) -> Relation:
    x = x if isinstance(x, FinSet) else FinSet(x)
    return Relation(x, x, tuple(1 << i for i in range(x.size)))


def product(r: Relation, s: Relation) -> Relation:
    """Cartesian (monoidal) product of relations, flattened row-major."""
    m2 = s.dst.size
    rows = []
    for a_row in r.rows:
        shifted = [0] * len(s.rows)
        for b in bits(a_row):
            off = b * m2
            for c, c_row in enumerate(s.rows):
                shifted[c] |= c_row << off
        rows.extend(shifted)
    return Relation(r.src * s.src, r.dst * s.dst, tuple(rows))


def product_all(relations: Sequence[Relation]) -> Relation:
    out = identity(1)
    for r in relations:
        out = product(out, r)
    return out


def converse(r: Relation) -> Relation:
    rows = [0] * r.dst.size
    for i, row in enumerate(r.rows):
        for j in bits(row):
            rows[j] |= 1 << i
    return Relation(r.dst, r.src, tuple(rows))


def swap(x: FinSet | int) -> Relation:
    """The braiding ``X x X -> X x X``, ``(i, j) -> (j, i)``."""
    n = x.size if isinstance(x, FinSet) else x
    xx = FinSet(n * n)
    return Relation(xx, xx, tuple(1 << (j * n + i) for i in range(n) for j in range(n)))


def subset_as_relation(x: FinSet, subset: int, *, into: bool = True) -> Relation:
    """A subset of ``x`` as a relation ``{•} -> x`` (or ``x -> {•}`` when ``into`` is false)."""
    r = Relation(FinSet(1), x, (subset,))
    return r if into else converse(r)
