"""Frobenius objects from groups, groupoids and conjugacy classes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .frobenius import FrobData, FrobObject, letter_labels
from .relation import FinSet

UNDEFINED = -1


class GroupError(ValueError):
    pass


class GroupoidError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    cayley: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self) -> None:
        table = tuple(tuple(int(v) for v in row) for row in self.cayley)
        object.__setattr__(self, "cayley", table)
        n = len(table)
        if n == 0:
            raise GroupError("a group needs at least one element")
        if any(len(row) != n for row in table):
            raise GroupError("Cayley table must be square")
        if any(not (0 <= v < n) for row in table for v in row):
            raise GroupError("Cayley table entries out of range")
        ids = [e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))]
        if not ids:
            raise GroupError("no identity element")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupError(f"not associative at {(a, b, c)}")
        e = ids[0]
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if table[x][y] == e]
            if len(ys) != 1 or table[ys[0]][x] != e:
                raise GroupError(f"element {x} has no two-sided inverse")
            inv.append(ys[0])
        object.__setattr__(self, "_identity", e)
        object.__setattr__(self, "_inverse", tuple(inv))

    @property
    def size(self) -> int:
        return len(self.cayley)

    @property
    def identity(self) -> int:
        return self._identity  # type: ignore[attr-defined]

    @property
    def inverse(self) -> tuple[int, ...]:
        return self._inverse  # type: ignore[attr-defined]

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def is_abelian(self) -> bool:
        n = self.size
        return all(self.cayley[a][b] == self.cayley[b][a] for a in range(n) for b in range(n))

    def to_json(self) -> dict:
        return {"size": self.size, "cayley": [list(r) for r in self.cayley], "name": self.name}

    @classmethod
    def from_json(cls, obj: dict) -> FiniteGroup:
        group = cls(tuple(tuple(r) for r in obj["cayley"]), obj.get("name", ""))
        if "size" in obj and obj["size"] != group.size:
            raise GroupError(f"declared size {obj['size']} but table has {group.size} rows")
        return group


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"Z{n}")


def _from_elements(elements: Sequence, op, name: str) -> FiniteGroup:
    index = {g: i for i, g in enumerate(elements)}
    return FiniteGroup(tuple(tuple(index[op(a, b)] for b in elements) for a in elements), name)


def _compose_perm(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def symmetric(n: int) -> FiniteGroup:
    return _from_elements(list(itertools.permutations(range(n))), _compose_perm, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    def even(p: tuple[int, ...]) -> bool:
        inversions = sum(p[i] > p[j] for i in range(n) for j in range(i + 1, n))
        return inversions % 2 == 0

    return _from_elements([p for p in itertools.permutations(range(n)) if even(p)], _compose_perm, f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """The dihedral group of order ``2n``; element ``(i, f)`` is ``r^i s^f``."""
    elements = [(i, f) for f in (0, 1) for i in range(n)]

    def op(a, b):
        i, f = a
        j, g = b
        return ((i + (-j if f else j)) % n, f ^ g)

    return _from_elements(elements, op, f"D{n}")


def quaternion() -> FiniteGroup:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, basis) with basis 0=1,1=i,2=j,3=k
    basis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }  # fmt: skip
    elements = [(s, b) for b in range(4) for s in (1, -1)]

    def op(x, y):
        sign, b = basis[(x[1], y[1])]
        return (x[0] * y[0] * sign, b)

    return _from_elements(elements, op, "Q8")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elements = [(a, b) for a in range(g.size) for b in range(h.size)]
    return _from_elements(elements, lambda x, y: (g.mul(x[0], y[0]), h.mul(x[1], y[1])), f"{g.name}x{h.name}")


def group_by_name(name: str) -> FiniteGroup:
    """Look up ``Z<n>``/``C<n>``, ``S<n>``, ``A<n>``, ``D<n>`` (order 2n), ``Q8``, ``V4``,
    or a product such as ``Z2xZ2``."""
    key = name.strip()
    if "x" in key:
        parts = [group_by_name(p) for p in key.split("x")]
        out = parts[0]
        for p in parts[1:]:
            out = direct_product(out, p)
        return out
    upper = key.upper()
    if upper == "Q8":
        return quaternion()
    if upper == "V4":
        g = direct_product(cyclic(2), cyclic(2))
        return FiniteGroup(g.cayley, "V4")
    kind, digits = upper[:1], upper[1:]
    if not digits.isdigit():
        raise GroupError(f"unknown group name {name!r}")
    k = int(digits)
    if kind in ("Z", "C") and k >= 1:
        return cyclic(k)
    if kind == "S" and 1 <= k <= 5:
        return symmetric(k)
    if kind == "A" and 1 <= k <= 5:
        return alternating(k)
    if kind == "D" and k >= 1:
        return dihedral(k)
    raise GroupError(f"unknown group name {name!r}")


@dataclass(frozen=True)
class FiniteGroupoid:
    """A finite groupoid; ``compose[g][h]`` is ``g . h`` when ``s(g) == t(h)``
    and :data:`UNDEFINED` otherwise."""

    n_objects: int
    source: tuple[int, ...]
    target: tuple[int, ...]
    compose: tuple[tuple[int, ...], ...]
    identities: tuple[int, ...]
    inverses: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        for f in ("source", "target", "identities", "inverses"):
            object.__setattr__(self, f, tuple(getattr(self, f)))
        object.__setattr__(self, "compose", tuple(tuple(r) for r in self.compose))
        self._validate()

    @property
    def n_morphisms(self) -> int:
        return len(self.source)

    def _validate(self) -> None:
        k, m = self.n_objects, self.n_morphisms
        s, t, c, e, inv = self.source, self.target, self.compose, self.identities, self.inverses
        if len(t) != m or len(inv) != m or len(c) != m or any(len(r) != m for r in c):
            raise GroupoidError("morphism tables have inconsistent sizes")
        if len(e) != k:
            raise GroupoidError("need one identity per object")
        if any(not (0 <= v < k) for v in s + t):
            raise GroupoidError("source/target out of range")
        for g in range(m):
            for h in range(m):
                gh = c[g][h]
                if s[g] != t[h]:
                    if gh != UNDEFINED:
                        raise GroupoidError(f"axiom 1: {g}.{h} defined although s({g}) != t({h})")
                    continue
                if not (0 <= gh < m):
                    raise GroupoidError(f"axiom 1: {g}.{h} undefined although composable")
                if s[gh] != s[h] or t[gh] != t[g]:
                    raise GroupoidError(f"axiom 1: wrong source/target for {g}.{h}")
        for g in range(m):
            for h in range(m):
                if s[g] != t[h]:
                    continue
                for l in range(m):
                    if s[h] == t[l] and c[c[g][h]][l] != c[g][c[h][l]]:
                        raise GroupoidError(f"axiom 2: not associative at {(g, h, l)}")
        for x in range(k):
            if s[e[x]] != x or t[e[x]] != x:
                raise GroupoidError(f"axiom 3: identity of object {x} has wrong endpoints")
        for g in range(m):
            if c[g][e[s[g]]] != g or c[e[t[g]]][g] != g:
                raise GroupoidError(f"axiom 3: unit law fails for {g}")
        for g in range(m):
            gi = inv[g]
            if not (0 <= gi < m) or s[gi] != t[g] or t[gi] != s[g]:
                raise GroupoidError(f"axiom 4: inverse of {g} has wrong endpoints")
            if c[g][gi] != e[t[g]] or c[gi][g] != e[s[g]]:
                raise GroupoidError(f"axiom 4: {gi} is not inverse to {g}")

    def mul(self, g: int, h: int) -> int:
        return self.compose[g][h]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "objects": self.n_objects,
            "morphisms": self.n_morphisms,
            "source": list(self.source),
            "target": list(self.target),
            "compose": [[None if v == UNDEFINED else v for v in r] for r in self.compose],
            "identities": list(self.identities),
            "inverses": list(self.inverses),
        }

    @classmethod
    def from_json(cls, obj: dict) -> FiniteGroupoid:
        gpd = cls(
            obj["objects"],
            obj["source"],
            obj["target"],
            [[UNDEFINED if v is None else v for v in r] for r in obj["compose"]],
            obj["identities"],
            obj["inverses"],
            obj.get("name", ""),
        )
        if "morphisms" in obj and obj["morphisms"] != gpd.n_morphisms:
            raise GroupoidError("declared morphism count does not match the tables")
        return gpd


@dataclass(frozen=True)
class Section:
    """A section ``sigma`` of the target map: ``t(sigma(x)) == x``."""

    sigma: tuple[int, ...]

    def check(self, gpd: FiniteGroupoid) -> None:
        if len(self.sigma) != gpd.n_objects:
            raise GroupoidError(f"section must pick one morphism per object, got {len(self.sigma)}")
        for x, g in enumerate(self.sigma):
            if not (0 <= g < gpd.n_morphisms) or gpd.target[g] != x:
                raise GroupoidError(f"section value {g} at object {x} does not have target {x}")

    def is_bisection(self, gpd: FiniteGroupoid) -> bool:
        """Whether ``s o sigma`` permutes the objects."""
        return sorted(gpd.source[g] for g in self.sigma) == list(range(gpd.n_objects))


def group_groupoid(g: FiniteGroup) -> FiniteGroupoid:
    n = g.size
    return FiniteGroupoid(1, (0,) * n, (0,) * n, g.cayley, (g.identity,), g.inverse, g.name)


def trivial_groupoid(k: int) -> FiniteGroupoid:
    comp = tuple(tuple(i if i == j else UNDEFINED for j in range(k)) for i in range(k))
    return FiniteGroupoid(k, tuple(range(k)), tuple(range(k)), comp, tuple(range(k)), tuple(range(k)), f"triv{k}")


def pair_groupoid(k: int) -> FiniteGroupoid:
    """One morphism ``(i, j): j -> i`` for each ordered pair, indexed ``i * k + j``."""
    m = k * k
    src = tuple(idx % k for idx in range(m))
    tgt = tuple(idx // k for idx in range(m))
    comp = tuple(
        tuple((g // k) * k + h % k if src[g] == tgt[h] else UNDEFINED for h in range(m)) for g in range(m)
    )
    ids = tuple(i * k + i for i in range(k))
    inv = tuple((idx % k) * k + idx // k for idx in range(m))
    return FiniteGroupoid(k, src, tgt, comp, ids, inv, f"pair{k}")


def groupoid_sum(a: FiniteGroupoid, b: FiniteGroupoid) -> FiniteGroupoid:
    ma, ka = a.n_morphisms, a.n_objects
    m = ma + b.n_morphisms
    comp = [[UNDEFINED] * m for _ in range(m)]
    for g in range(ma):
        for h in range(ma):
            comp[g][h] = a.compose[g][h]
    for g in range(b.n_morphisms):
        for h in range(b.n_morphisms):
            v = b.compose[g][h]
            comp[ma + g][ma + h] = UNDEFINED if v == UNDEFINED else ma + v
    return FiniteGroupoid(
        ka + b.n_objects,
        a.source + tuple(ka + x for x in b.source),
        a.target + tuple(ka + x for x in b.target),
        comp,
        a.identities + tuple(ma + g for g in b.identities),
        a.inverses + tuple(ma + g for g in b.inverses),
        f"{a.name}+{b.name}",
    )


def groupoid_product(a: FiniteGroupoid, b: FiniteGroupoid) -> FiniteGroupoid:
    mb, kb = b.n_morphisms, b.n_objects
    m = a.n_morphisms * mb
    comp = [[UNDEFINED] * m for _ in range(m)]
    for g, h in itertools.product(range(m), repeat=2):
        ga, gb = divmod(g, mb)
        ha, hb = divmod(h, mb)
        x, y = a.compose[ga][ha], b.compose[gb][hb]
        if x != UNDEFINED and y != UNDEFINED:
            comp[g][h] = x * mb + y
    return FiniteGroupoid(
        a.n_objects * kb,
        tuple(a.source[g // mb] * kb + b.source[g % mb] for g in range(m)),
        tuple(a.target[g // mb] * kb + b.target[g % mb] for g in range(m)),
        comp,
        tuple(a.identities[x // kb] * mb + b.identities[x % kb] for x in range(a.n_objects * kb)),
        tuple(a.inverses[g // mb] * mb + b.inverses[g % mb] for g in range(m)),
        f"{a.name}x{b.name}",
    )


def all_sections(gpd: FiniteGroupoid) -> Iterator[Section]:
    fibres = [[g for g in range(gpd.n_morphisms) if gpd.target[g] == x] for x in range(gpd.n_objects)]
    for choice in itertools.product(*fibres):
        yield Section(tuple(choice))


def groupoid_to_frobenius(gpd: FiniteGroupoid, twist: Section | None = None) -> FrobObject:
    """Unit = identities, product = composition, counit = image of the section
    (the identities when no twist is given)."""
    sigma = twist.sigma if twist is not None else gpd.identities
    if twist is not None:
        twist.check(gpd)
        # columns of the pairing matrix are unique iff s o sigma is a bijection
        if not twist.is_bisection(gpd):
            raise GroupoidError(
                f"section {list(twist.sigma)} is not a bisection (s o sigma does not permute the objects); "
                "the twisted counit would be degenerate"
            )
    m = gpd.n_morphisms
    table = tuple(
        0 if gpd.compose[g][h] == UNDEFINED else 1 << gpd.compose[g][h] for g in range(m) for h in range(m)
    )
    unit = 0
    for g in gpd.identities:
        unit |= 1 << g
    counit = 0
    for g in sigma:
        counit |= 1 << g
    obj = FrobObject(FrobData(FinSet(m, letter_labels(m)), unit, counit, table))
    predicted = tuple(gpd.compose[gpd.inverses[g]][sigma[gpd.target[g]]] for g in range(m))
    if obj.alpha.alpha_hat != predicted:
        raise AssertionError(f"nondegeneracy witness {obj.alpha.alpha_hat} != predicted {predicted}")
    return obj


def group_to_frobenius(grp: FiniteGroup, omega: int) -> FrobObject:
    """The group as a one-object groupoid with counit ``{omega}``."""
    if not (0 <= omega < grp.size):
        raise GroupError(f"counit element {omega} not in a group of order {grp.size}")
    return groupoid_to_frobenius(group_groupoid(grp), Section((omega,)))


def conjugacy_classes(grp: FiniteGroup) -> list[list[int]]:
    """Classes as sorted element lists: the identity class first, the rest by least element."""
    n = grp.size
    seen = [False] * n
    classes = []
    for g in range(n):
        if seen[g]:
            continue
        orbit = sorted({grp.mul(grp.mul(h, g), grp.inverse[h]) for h in range(n)})
        for x in orbit:
            seen[x] = True
        classes.append(orbit)
    classes.sort(key=lambda c: (grp.identity not in c, c[0]))
    return classes


def conjugacy_classes_to_frobenius(grp: FiniteGroup) -> FrobObject:
    classes = conjugacy_classes(grp)
    k = len(classes)
    cls_of = [0] * grp.size
    for i, c in enumerate(classes):
        for g in c:
            cls_of[g] = i
    # inverses of a class must again form a class
    inv_class = []
    for c in classes:
        image = sorted(grp.inverse[g] for g in c)
        j = cls_of[image[0]]
        if image != classes[j]:
            raise AssertionError(f"inverses of class {c} do not form a class")
        inv_class.append(j)
    table = []
    for c1 in classes:
        for c2 in classes:
            m = 0
            for g1 in c1:
                for g2 in c2:
                    m |= 1 << cls_of[grp.mul(g1, g2)]
            table.append(m)
    obj = FrobObject(FrobData(FinSet(k, letter_labels(k)), 1, 1, tuple(table)))
    if obj.alpha.alpha_hat != tuple(inv_class):
        raise AssertionError(f"witness {obj.alpha.alpha_hat} != class inverses {inv_class}")
    return obj


SMALL_GROUPS = (
    "Z1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3", "Z7", "Z8", "Z4xZ2", "Z2xZ2xZ2", "D4", "Q8",
    "Z9", "Z3xZ3", "Z10", "D5", "Z11", "Z12", "Z6xZ2", "D6", "A4",
)  # fmt: skip


def connected_groupoids(size: int) -> Iterator[FiniteGroupoid]:
    """Connected groupoids with ``size`` morphisms built from :data:`SMALL_GROUPS`."""
    for k in range(1, size + 1):
        if size % (k * k):
            continue
        order = size // (k * k)
        for name in SMALL_GROUPS:
            g = group_by_name(name)
            if g.size != order:
                continue
            gg = group_groupoid(g)
            yield gg if k == 1 else groupoid_product(pair_groupoid(k), gg)


def _partitions(n: int, largest: int | None = None) -> Iterator[list[int]]:
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield [part] + rest


def groupoids_of_size(size: int) -> Iterator[FiniteGroupoid]:
    """Groupoids with ``size`` morphisms as sums of connected pieces (may repeat up to isomorphism)."""
    for parts in _partitions(size):
        if not parts:
            continue
        pools = [list(connected_groupoids(p)) for p in parts]
        for combo in itertools.product(*pools):
            out = combo[0]
            for piece in combo[1:]:
                out = groupoid_sum(out, piece)
            yield out


def catalog(n: int) -> Iterator[tuple[str, FrobObject]]:
    """Known constructions landing on ``n`` elements, labelled by recipe."""
    for name in SMALL_GROUPS:
        g = group_by_name(name)
        if g.size == n:
            for omega in range(n):
                yield f"group {g.name}, counit {{{omega}}}", group_to_frobenius(g, omega)
    for gpd in groupoids_of_size(n):
        if gpd.n_objects == 1:
            continue
        for sec in all_sections(gpd):
            if not sec.is_bisection(gpd):
                continue
            twisted = sec.sigma != gpd.identities
            label = f"groupoid {gpd.name}" + (f", section {list(sec.sigma)}" if twisted else "")
            yield label, groupoid_to_frobenius(gpd, sec)
    for name in SMALL_GROUPS:
        g = group_by_name(name)
        if len(conjugacy_classes(g)) == n:
            yield f"conjugacy classes of {g.name}", conjugacy_classes_to_frobenius(g)
    for extra in ("S4", "A5"):
        g = group_by_name(extra)
        if len(conjugacy_classes(g)) == n:
            yield f"conjugacy classes of {g.name}", conjugacy_classes_to_frobenius(g)
