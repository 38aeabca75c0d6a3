"""Frobenius objects in Rel on a finite carrier.

Candidate data is a :class:`FrobData`: a carrier ``X``, a unit subset, a
counit subset and a multiplication ``X x X -> P(X)``.  Subsets of ``X`` are
int bitmasks; the multiplication is a flat tuple ``table`` with
``table[x * n + y]`` the mask of the product set of ``x`` and ``y``.

A :class:`FrobObject` can only be built from data satisfying unitality,
associativity and nondegeneracy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .relation import (
    FinSet,
    PowerMap,
    Relation,
    bits,
    mask_of,
    subset_as_relation,
)

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def letter_labels(n: int) -> tuple[str, ...] | None:
    return tuple(LETTERS[:n]) if n <= len(LETTERS) else None


@dataclass(frozen=True)
class FrobData:
    carrier: FinSet
    unit: int
    counit: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.carrier.size
        full = self.carrier.full
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != n * n:
            raise ValueError(f"multiplication table needs {n * n} entries, got {len(table)}")
        if self.unit & ~full or self.unit < 0:
            raise ValueError("unit is not a subset of the carrier")
        if self.counit & ~full or self.counit < 0:
            raise ValueError("counit is not a subset of the carrier")
        for k, m in enumerate(table):
            if m < 0 or m & ~full:
                raise ValueError(f"product of {divmod(k, n)} is not a subset of the carrier")

    @property
    def n(self) -> int:
        return self.carrier.size

    @property
    def mul(self) -> PowerMap:
        return PowerMap(FinSet(self.n * self.n), self.carrier, self.table)

    def product(self, x: int, y: int) -> int:
        return self.table[x * self.n + y]

    @classmethod
    def build(
        cls,
        n: int,
        unit: Iterable[int],
        counit: Iterable[int],
        mul: Sequence[Sequence[Iterable[int]]],
        labels: Sequence[str] | None = None,
    ) -> FrobData:
        """Build from element lists; ``mul[x][y]`` lists the elements of the product."""
        if len(mul) != n or any(len(row) != n for row in mul):
            raise ValueError(f"multiplication table must be {n}x{n}")
        table = tuple(mask_of(mul[x][y]) for x in range(n) for y in range(n))
        return cls(FinSet(n, tuple(labels) if labels is not None else None), mask_of(unit), mask_of(counit), table)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.carrier.label(i) for i in range(self.n))

    def to_json(self) -> dict:
        n = self.n
        return {
            "n": n,
            "labels": list(self.labels()),
            "unit": list(bits(self.unit)),
            "counit": list(bits(self.counit)),
            "mul": [[list(bits(self.table[x * n + y])) for y in range(n)] for x in range(n)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FrobData:
        try:
            n = int(obj["n"])
            labels = obj.get("labels")
            unit, counit, mul = obj["unit"], obj["counit"], obj["mul"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed Frobenius object JSON: {exc}") from None
        for name, subset in (("unit", unit), ("counit", counit)):
            if any(not (0 <= e < n) for e in subset):
                raise ValueError(f"{name} has elements outside 0..{n - 1}")
        for row in mul:
            for entry in row:
                if any(not (0 <= e < n) for e in entry):
                    raise ValueError(f"multiplication entry {entry} outside 0..{n - 1}")
        return cls.build(n, unit, counit, mul, labels)

    def relabel(self, perm: Sequence[int]) -> FrobData:
        """Transport along the bijection ``x -> perm[x]``."""
        return relabel(self, perm)

    def format_table(self) -> str:
        lab = self.labels()
        n = self.n

        def fmt(m: int) -> str:
            return "{" + ",".join(lab[e] for e in bits(m)) + "}" if m else "∅"

        rows = [" ".join(fmt(self.table[x * n + y]) for y in range(n)) for x in range(n)]
        return f"unit={fmt(self.unit)} counit={fmt(self.counit)}\n" + "\n".join(rows)


def relabel(d: FrobData, perm: Sequence[int]) -> FrobData:
    n = d.n

    def move(m: int) -> int:
        out = 0
        while m:
            low = m & -m
            out |= 1 << perm[low.bit_length() - 1]
            m ^= low
        return out

    table = [0] * (n * n)
    for x in range(n):
        for y in range(n):
            table[perm[x] * n + perm[y]] = move(d.table[x * n + y])
    labels = None
    if d.carrier.labels is not None:
        lab = [""] * n
        for x in range(n):
            lab[perm[x]] = d.carrier.labels[x]
        labels = tuple(lab)
    return FrobData(FinSet(n, labels), move(d.unit), move(d.counit), tuple(table))


@dataclass(frozen=True)
class Failure:
    axiom: str
    message: str
    where: tuple = ()

    def __str__(self) -> str:
        return f"{self.axiom}: {self.message}"


@dataclass(frozen=True)
class NondegeneracyWitness:
    alpha_hat: tuple[int, ...]
    alpha_inverse: tuple[int, ...]


def check_unitality(d: FrobData) -> Failure | None:
    """Both unit laws, elementwise: the union of ``x*e`` (resp. ``e*x``)
    over ``e`` in the unit must be exactly ``{x}``."""
    n, t, unit = d.n, d.table, d.unit
    units = list(bits(unit))
    lab = d.labels()
    for x in range(n):
        right = 0
        left = 0
        for e in units:
            right |= t[x * n + e]
            left |= t[e * n + x]
        if right != 1 << x:
            return Failure("unitality", f"right unit law fails at {lab[x]}", (x, "right"))
        if left != 1 << x:
            return Failure("unitality", f"left unit law fails at {lab[x]}", (x, "left"))
    return None


def associator_sides(d: FrobData, x: int, y: int, z: int) -> tuple[int, int]:
    n, t = d.n, d.table
    lhs = 0
    for w in bits(t[x * n + y]):
        lhs |= t[w * n + z]
    rhs = 0
    for w in bits(t[y * n + z]):
        rhs |= t[x * n + w]
    return lhs, rhs


def check_associativity(d: FrobData) -> Failure | None:
    """Return the lexicographically least triple where ``(xy)z != x(yz)``."""
    n, t = d.n, d.table
    for x in range(n):
        xrow = t[x * n : x * n + n]
        for y in range(n):
            xy = xrow[y]
            for z in range(n):
                lhs = 0
                m = xy
                while m:
                    low = m & -m
                    lhs |= t[(low.bit_length() - 1) * n + z]
                    m ^= low
                rhs = 0
                m = t[y * n + z]
                while m:
                    low = m & -m
                    rhs |= xrow[low.bit_length() - 1]
                    m ^= low
                if lhs != rhs:
                    lab = d.labels()
                    return Failure(
                        "associativity",
                        f"({lab[x]}{lab[y]}){lab[z]} != {lab[x]}({lab[y]}{lab[z]})",
                        (x, y, z),
                    )
    return None


def pairing_matrix(d: FrobData) -> list[list[bool]]:
    n, t, eps = d.n, d.table, d.counit
    return [[bool(t[x * n + y] & eps) for y in range(n)] for x in range(n)]


def check_nondegeneracy(d: FrobData) -> NondegeneracyWitness | Failure:
    """Each row and column of ``M[x][y] = (xy meets the counit)`` must hold
    exactly one true entry; the row partners give the witness."""
    n = d.n
    lab = d.labels()
    m = pairing_matrix(d)
    alpha = []
    for x in range(n):
        hits = [y for y in range(n) if m[x][y]]
        if len(hits) != 1:
            return Failure("nondegeneracy", f"row {lab[x]} pairs with the counit {len(hits)} times", ("row", x))
        alpha.append(hits[0])
    for y in range(n):
        count = sum(m[x][y] for x in range(n))
        if count != 1:
            return Failure("nondegeneracy", f"column {lab[y]} pairs with the counit {count} times", ("column", y))
    inverse = [0] * n
    for x, y in enumerate(alpha):
        inverse[y] = x
    return NondegeneracyWitness(tuple(alpha), tuple(inverse))


def is_commutative(d: FrobData) -> bool:
    n, t = d.n, d.table
    return all(t[x * n + y] == t[y * n + x] for x in range(n) for y in range(x + 1, n))


def axiom_failures(d: FrobData) -> list[Failure]:
    """All axiom failures, checked in the order unitality, nondegeneracy, associativity."""
    out = []
    f = check_unitality(d)
    if f is not None:
        out.append(f)
    w = check_nondegeneracy(d)
    if isinstance(w, Failure):
        out.append(w)
    f = check_associativity(d)
    if f is not None:
        out.append(f)
    return out


class AxiomError(ValueError):
    def __init__(self, failures: list[Failure]):
        self.failures = failures
        super().__init__("; ".join(str(f) for f in failures))


class FrobObject:
    """A verified Frobenius object in Rel.

    Construction runs all three axiom checks and raises :class:`AxiomError`
    listing every failure.
    """

    __slots__ = ("data", "alpha", "commutative")

    def __init__(self, data: FrobData):
        failures = axiom_failures(data)
        if failures:
            raise AxiomError(failures)
        witness = check_nondegeneracy(data)
        assert isinstance(witness, NondegeneracyWitness)
        self.data = data
        self.alpha = witness
        self.commutative = is_commutative(data)

    def __repr__(self) -> str:
        return f"FrobObject({self.data.to_json()})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FrobObject) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def carrier(self) -> FinSet:
        return self.data.carrier

    @property
    def unit(self) -> int:
        return self.data.unit

    @property
    def counit(self) -> int:
        return self.data.counit

    @property
    def table(self) -> tuple[int, ...]:
        return self.data.table

    def product(self, x: int, y: int) -> int:
        return self.data.table[x * self.data.n + y]

    def to_json(self) -> dict:
        return self.data.to_json()

    @classmethod
    def from_json(cls, obj: dict) -> FrobObject:
        return cls(FrobData.from_json(obj))

    # structure morphisms as relations

    def unit_relation(self) -> Relation:
        return subset_as_relation(FinSet(self.n), self.unit)

    def counit_relation(self) -> Relation:
        return subset_as_relation(FinSet(self.n), self.counit, into=False)

    def mul_relation(self) -> Relation:
        return Relation(FinSet(self.n * self.n), FinSet(self.n), self.table)

    def comul_relation(self) -> Relation:
        return Relation(FinSet(self.n), FinSet(self.n * self.n), comultiplication(self).image)

    def copairing_relation(self) -> Relation:
        return Relation(FinSet(1), FinSet(self.n * self.n), (copairing(self),))

    def alpha_relation(self) -> Relation:
        return Relation(FinSet(self.n), FinSet(self.n), tuple(1 << y for y in self.alpha.alpha_hat))


def verify(d: FrobData) -> FrobObject:
    return FrobObject(d)


def comultiplication(f: FrobObject) -> PowerMap:
    """``delta(x) = {(alpha(y), z) : z in y*x}`` as subsets of ``X x X``."""
    n = f.n
    alpha = f.alpha.alpha_hat
    image = []
    for x in range(n):
        m = 0
        for y in range(n):
            base = alpha[y] * n
            for z in bits(f.table[y * n + x]):
                m |= 1 << (base + z)
        image.append(m)
    return PowerMap(FinSet(n), FinSet(n * n), tuple(image))


def copairing(f: FrobObject) -> int:
    """The copairing ``delta o eta`` as a bitmask over ``X x X``."""
    delta = comultiplication(f).image
    out = 0
    for e in bits(f.unit):
        out |= delta[e]
    return out


def _as_data(f: FrobObject | FrobData) -> FrobData:
    return f.data if isinstance(f, FrobObject) else f


def is_isomorphism(f: FrobObject | FrobData, g: FrobObject | FrobData, perm: Sequence[int]) -> bool:
    a, b = _as_data(f), _as_data(g)
    r = relabel(a, perm)
    return r.unit == b.unit and r.counit == b.counit and r.table == b.table


def isomorphic(f: FrobObject | FrobData, g: FrobObject | FrobData) -> tuple[int, ...] | None:
    """Search all relabelings for an isomorphism ``f -> g``."""
    a, b = _as_data(f), _as_data(g)
    if a.n != b.n:
        raise ValueError(f"carriers differ in size: {a.n} vs {b.n}")
    if a.unit.bit_count() != b.unit.bit_count() or a.counit.bit_count() != b.counit.bit_count():
        return None
    for perm in itertools.permutations(range(a.n)):
        if is_isomorphism(a, b, perm):
            return perm
    return None


def disjoint_union(f: FrobObject, g: FrobObject) -> FrobObject:
    """Block-diagonal sum; the counit is the union of both counits."""
    n, m = f.n, g.n
    size = n + m
    table = [0] * (size * size)
    for x in range(n):
        for y in range(n):
            table[x * size + y] = f.table[x * n + y]
    for x in range(m):
        for y in range(m):
            table[(n + x) * size + n + y] = g.table[x * m + y] << n
    labels = None
    fl, gl = f.data.labels(), g.data.labels()
    if not set(fl) & set(gl):
        labels = fl + gl
    data = FrobData(
        FinSet(size, labels),
        f.unit | g.unit << n,
        f.counit | g.counit << n,
        tuple(table),
    )
    return FrobObject(data)
