"""Exhaustive classification of Frobenius objects in Rel up to isomorphism.

The search fixes the unit (one representative per size), propagates the
unit laws into a three-valued multiplication table, picks counits up to the
symmetry of what is already forced, branches over the permutation pattern
of the nondegeneracy pairing, and finally runs a depth-first search over
the remaining membership bits with incremental associativity pruning.

Membership bit ``z in x*y`` lives at position ``(x * n + y) * n + z``.  A
search node keeps, per table entry, ``lo`` (elements known to be in) and
``hi`` (elements not yet ruled out); an entry is decided when they agree.
"""

from __future__ import annotations

import itertools
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .frobenius import FrobData, FrobObject, letter_labels, relabel
from .relation import FinSet, bits

DEFAULT_MAX_N = 4


class Contradiction(Exception):
    """A membership bit was forced both in and out."""


class BoundExceeded(ValueError):
    pass


def max_n() -> int:
    value = os.environ.get("FROBREL_MAX_N")
    return int(value) if value else DEFAULT_MAX_N


# -- search nodes ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchNode:
    n: int
    unit: int
    counit: int | None
    lo: tuple[int, ...]
    hi: tuple[int, ...]
    clauses: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def blank(cls, n: int, unit: int) -> SearchNode:
        full = (1 << n) - 1
        return cls(n, unit, None, (0,) * (n * n), (full,) * (n * n))

    def state(self, x: int, y: int, z: int) -> bool | None:
        k = x * self.n + y
        if self.lo[k] >> z & 1:
            return True
        if not self.hi[k] >> z & 1:
            return False
        return None

    def entry(self, x: int, y: int) -> tuple[int, int]:
        k = x * self.n + y
        return self.lo[k], self.hi[k]

    def decided(self) -> bool:
        return self.lo == self.hi

    def undecided_count(self) -> int:
        return sum((h & ~l).bit_count() for l, h in zip(self.lo, self.hi))


def _settle(n: int, lo: list[int], hi: list[int], clauses: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Unit-propagate at-least-one clauses in place; return the clauses still open."""
    open_clauses = list(clauses)
    changed = True
    while changed:
        changed = False
        remaining = []
        for clause in open_clauses:
            alive = []
            satisfied = False
            for p in clause:
                k, z = divmod(p, n)
                if lo[k] >> z & 1:
                    satisfied = True
                    break
                if hi[k] >> z & 1:
                    alive.append(p)
            if satisfied:
                continue
            if not alive:
                raise Contradiction(f"clause {clause} cannot be satisfied")
            if len(alive) == 1:
                k, z = divmod(alive[0], n)
                lo[k] |= 1 << z
                changed = True
                continue
            remaining.append(tuple(alive))
        open_clauses = remaining
    for k in range(n * n):
        if lo[k] & ~hi[k]:
            raise Contradiction(f"entry {divmod(k, n)} forced both ways")
    return open_clauses


def _restrict(node: SearchNode, lo: list[int], hi: list[int], clauses: list[tuple[int, ...]], counit=None) -> SearchNode:
    open_clauses = _settle(node.n, lo, hi, clauses)
    return SearchNode(
        node.n,
        node.unit,
        node.counit if counit is None else counit,
        tuple(lo),
        tuple(hi),
        tuple(open_clauses),
    )


# -- unit ------------------------------------------------------------------------------------


def enumerate_units(n: int) -> list[int]:
    """One unit per size up to relabeling; the empty unit only when ``n == 0``."""
    if n == 0:
        return [0]
    return [(1 << k) - 1 for k in range(1, n + 1)]


def propagate_unitality(node: SearchNode) -> SearchNode:
    """Force every bit implied by the two unit laws.

    For ``e`` in the unit, ``x*e`` and ``e*x`` may only contain ``x``, and
    some ``e`` must put ``x`` in each of them (an at-least-one clause).
    """
    n, unit = node.n, node.unit
    lo, hi = list(node.lo), list(node.hi)
    clauses = list(node.clauses)
    units = list(bits(unit))
    for x in range(n):
        only_x = 1 << x
        for e in units:
            hi[x * n + e] &= only_x
            hi[e * n + x] &= only_x
        clauses.append(tuple((x * n + e) * n + x for e in units))
        clauses.append(tuple((e * n + x) * n + x for e in units))
    return _restrict(node, lo, hi, clauses)


# -- symmetry --------------------------------------------------------------------------------


@lru_cache(maxsize=None)
def permutations(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(n)))


def _move(mask: int, perm: Sequence[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def _node_image(node: SearchNode, perm: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = node.n
    lo = [0] * (n * n)
    hi = [0] * (n * n)
    for x in range(n):
        for y in range(n):
            k = perm[x] * n + perm[y]
            lo[k] = _move(node.lo[x * n + y], perm)
            hi[k] = _move(node.hi[x * n + y], perm)
    return tuple(lo), tuple(hi)


def stabilizer(node: SearchNode) -> list[tuple[int, ...]]:
    """Relabelings fixing the unit, the counit (if chosen) and the forced table."""
    out = []
    for perm in permutations(node.n):
        if _move(node.unit, perm) != node.unit:
            continue
        if node.counit is not None and _move(node.counit, perm) != node.counit:
            continue
        if _node_image(node, perm) == (node.lo, node.hi):
            out.append(perm)
    return out


def enumerate_counits(node: SearchNode) -> list[int]:
    """Counits of the same size as the unit, one per orbit of the node's stabilizer."""
    n = node.n
    size = node.unit.bit_count()
    group = stabilizer(node)
    reps = []
    seen: set[int] = set()
    for combo in itertools.combinations(range(n), size):
        eps = sum(1 << e for e in combo)
        if eps in seen:
            continue
        orbit = {_move(eps, g) for g in group}
        seen |= orbit
        reps.append(min(orbit))
    return sorted(reps)


# -- nondegeneracy ---------------------------------------------------------------------------


def propagate_nondegeneracy(node: SearchNode, counit: int | None = None) -> list[SearchNode]:
    """Branch over the permutation pattern of ``M[x][y] = (x*y meets the counit)``.

    Off-pattern entries lose every counit element; on-pattern entries get an
    at-least-one clause over the counit.  Infeasible patterns are dropped.
    """
    n = node.n
    eps = node.counit if counit is None else counit
    if eps is None:
        raise ValueError("counit not chosen")
    eps_elems = list(bits(eps))
    out = []
    for alpha in permutations(n):
        lo, hi = list(node.lo), list(node.hi)
        clauses = list(node.clauses)
        ok = True
        for x in range(n):
            for y in range(n):
                k = x * n + y
                if alpha[x] == y:
                    clauses.append(tuple(k * n + z for z in eps_elems))
                else:
                    hi[k] &= ~eps
                    if lo[k] & eps:
                        ok = False
        if not ok:
            continue
        try:
            out.append(_restrict(node, lo, hi, clauses, counit=eps))
        except Contradiction:
            continue
    return out


# -- associativity ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def triple_index(n: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """For each table entry, the triples whose associativity check can read it."""
    deps: list[set[tuple[int, int, int]]] = [set() for _ in range(n * n)]
    for x, y, z in itertools.product(range(n), repeat=3):
        t = (x, y, z)
        deps[x * n + y].add(t)
        deps[y * n + z].add(t)
        for w in range(n):
            deps[w * n + z].add(t)
            deps[x * n + w].add(t)
    return tuple(tuple(sorted(d)) for d in deps)


def _union(table: Sequence[int], sel: int, n: int, col: int) -> int:
    acc = 0
    while sel:
        low = sel & -sel
        acc |= table[(low.bit_length() - 1) * n + col]
        sel ^= low
    return acc


def _union_row(table: Sequence[int], sel: int, base: int) -> int:
    acc = 0
    while sel:
        low = sel & -sel
        acc |= table[base + low.bit_length() - 1]
        sel ^= low
    return acc


def _triples_consistent(n: int, lo: Sequence[int], hi: Sequence[int], triples: Iterable[tuple[int, int, int]]) -> bool:
    """Bound check: what one side surely contains, the other side must be able to contain."""
    for x, y, z in triples:
        xy_lo, xy_hi = lo[x * n + y], hi[x * n + y]
        yz_lo, yz_hi = lo[y * n + z], hi[y * n + z]
        base = x * n
        low_l = _union(lo, xy_lo, n, z)
        up_r = _union_row(hi, yz_hi, base)
        if low_l & ~up_r:
            return False
        low_r = _union_row(lo, yz_lo, base)
        up_l = _union(hi, xy_hi, n, z)
        if low_r & ~up_l:
            return False
    return True


class _Search:
    def __init__(self, node: SearchNode):
        self.n = n = node.n
        self.node = node
        self.deps = triple_index(n)
        self.clauses = list(node.clauses)
        self.clause_index: dict[int, list[int]] = {}
        for ci, clause in enumerate(self.clauses):
            for p in clause:
                self.clause_index.setdefault(p, []).append(ci)
        self.lo = list(node.lo)
        self.hi = list(node.hi)
        self.results: list[tuple[int, ...]] = []
        self.nodes = 0

    def _propagate(self, trail: list[tuple[int, int, int]], queue: list[int]) -> bool:
        """Handle newly excluded positions: unit-propagate clauses. Returns False on conflict."""
        n, lo, hi = self.n, self.lo, self.hi
        while queue:
            p = queue.pop()
            for ci in self.clause_index.get(p, ()):
                alive = -1
                count = 0
                sat = False
                for q in self.clauses[ci]:
                    k, z = divmod(q, n)
                    if lo[k] >> z & 1:
                        sat = True
                        break
                    if hi[k] >> z & 1:
                        count += 1
                        alive = q
                if sat:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    k, z = divmod(alive, n)
                    trail.append((k, lo[k], hi[k]))
                    lo[k] |= 1 << z
        return True

    def run(self) -> list[tuple[int, ...]]:
        n = self.n
        order = [p for p in range(n * n * n) if self.hi[p // n] >> (p % n) & 1 and not self.lo[p // n] >> (p % n) & 1]
        all_triples = list(itertools.product(range(n), repeat=3))
        if _triples_consistent(n, self.lo, self.hi, all_triples):
            self._dfs(order, 0)
        return self.results

    def _dfs(self, order: list[int], start: int) -> None:
        self.nodes += 1
        n, lo, hi = self.n, self.lo, self.hi
        i = start
        while i < len(order):
            p = order[i]
            k, z = divmod(p, n)
            if (hi[k] ^ lo[k]) >> z & 1:
                break
            i += 1
        else:
            self.results.append(tuple(lo))
            return
        p = order[i]
        k, z = divmod(p, n)
        bit = 1 << z
        for value in (False, True):
            trail: list[tuple[int, int, int]] = [(k, lo[k], hi[k])]
            if value:
                lo[k] |= bit
                ok = True
            else:
                hi[k] &= ~bit
                ok = self._propagate(trail, [p])
            if ok:
                touched = {entry for entry, _, _ in trail}
                triples: set[tuple[int, int, int]] = set()
                for entry in touched:
                    triples.update(self.deps[entry])
                if _triples_consistent(n, lo, hi, triples):
                    self._dfs(order, i + 1)
            for entry, old_lo, old_hi in reversed(trail):
                lo[entry] = old_lo
                hi[entry] = old_hi


def search_associativity(node: SearchNode) -> list[FrobData]:
    """All completions of ``node`` whose table is associative, in search order."""
    if node.counit is None:
        raise ValueError("counit not chosen")
    search = _Search(node)
    n = node.n
    return [FrobData(FinSet(n, letter_labels(n)), node.unit, node.counit, table) for table in search.run()]


# -- canonical forms -------------------------------------------------------------------------


def encode(d: FrobData) -> int:
    """Bits of unit, counit, then the table in (x, y, z) order; the first bit is most significant."""
    n = d.n
    code = 0
    for x in range(n):
        code = code << 1 | (d.unit >> x & 1)
    for x in range(n):
        code = code << 1 | (d.counit >> x & 1)
    for m in d.table:
        for z in range(n):
            code = code << 1 | (m >> z & 1)
    return code


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    code: int

    def bitstring(self) -> str:
        length = 2 * self.n + self.n**3
        return format(self.code, f"0{length}b") if length else ""


def canonical(d: FrobData | FrobObject) -> tuple[CanonicalForm, FrobData, int]:
    """Least encoding over all relabelings, a representative achieving it,
    and the number of distinct relabelings (the orbit size)."""
    data = d.data if isinstance(d, FrobObject) else d
    best = None
    best_data = None
    images = set()
    for perm in permutations(data.n):
        r = relabel(data, perm)
        c = encode(r)
        images.add(c)
        if best is None or c < best:
            best, best_data = c, r
    assert best_data is not None
    rep = FrobData(FinSet(data.n, letter_labels(data.n)), best_data.unit, best_data.counit, best_data.table)
    return CanonicalForm(data.n, best), rep, len(images)


def canonical_form(d: FrobData | FrobObject) -> CanonicalForm:
    return canonical(d)[0]


# -- census ----------------------------------------------------------------------------------


@dataclass
class CensusEntry:
    form: CanonicalForm
    obj: FrobObject
    orbit_size: int
    annotations: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = self.obj.to_json()
        out["annotations"] = self.annotations
        return out


@dataclass
class Census:
    n: int
    entries: list[CensusEntry]

    @property
    def count(self) -> int:
        return len(self.entries)

    @property
    def labeled_count(self) -> int:
        return sum(e.orbit_size for e in self.entries)

    @property
    def objects(self) -> list[FrobObject]:
        return [e.obj for e in self.entries]

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def work_items(n: int) -> list[SearchNode]:
    """Top-level branches: unit x counit x nondegeneracy pattern, after propagation."""
    items = []
    for unit in enumerate_units(n):
        try:
            node = propagate_unitality(SearchNode.blank(n, unit))
        except Contradiction:
            continue
        for counit in enumerate_counits(node):
            items.extend(propagate_nondegeneracy(node, counit))
    return items


def _solve(node: SearchNode) -> list[tuple[int, FrobData, int]]:
    out = []
    for d in search_associativity(node):
        form, rep, orbit = canonical(d)
        out.append((form.code, rep, orbit))
    return out


def search_all(n: int, jobs: int = 1) -> dict[int, tuple[FrobData, int]]:
    """Canonical code -> (representative, orbit size) for every solution found."""
    items = work_items(n)
    found: dict[int, tuple[FrobData, int]] = {}
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve, items, chunksize=1))
    else:
        results = [_solve(item) for item in items]
    for res in results:
        for code, rep, orbit in res:
            found.setdefault(code, (rep, orbit))
    return found


def classify(n: int, jobs: int = 1, annotate: bool = True, bound: int | None = None) -> Census:
    bound = max_n() if bound is None else bound
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > bound:
        raise BoundExceeded(
            f"n={n} exceeds the classification bound {bound}; set FROBREL_MAX_N to raise it "
            f"(the search grows roughly like 2^(n^3))"
        )
    found = search_all(n, jobs)
    entries = []
    for code in sorted(found):
        rep, orbit = found[code]
        obj = FrobObject(rep)
        entries.append(CensusEntry(CanonicalForm(n, code), obj, orbit))
    census = Census(n, entries)
    if annotate:
        annotate_census(census)
    return census


def annotate_census(census: Census) -> None:
    from .constructors import catalog
    from .tables import rows_for
    from .tqft import partition_function

    recipes: dict[int, list[str]] = {}
    for label, obj in catalog(census.n):
        recipes.setdefault(canonical_form(obj).code, []).append(label)
    reference: dict[int, int] = {}
    for row in rows_for(census.n):
        reference[canonical_form(row.data()).code] = row.case
    for index, entry in enumerate(census.entries, 1):
        # noncommutative entries still get the formal sequence; "commutative" says which
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pf = partition_function(entry.obj)
        entry.annotations = {
            "index": index,
            "commutative": entry.obj.commutative,
            "partition": pf.proposition,
            "constructions": sorted(set(recipes.get(entry.form.code, []))),
            "decomposable": is_decomposable(entry.obj),
            "automorphisms": len(permutations(census.n)) // entry.orbit_size,
        }
        if entry.form.code in reference:
            entry.annotations["reference_case"] = reference[entry.form.code]


def is_decomposable(f: FrobObject | FrobData) -> bool:
    """True when the carrier splits into two nonempty blocks with no cross products."""
    d = f.data if isinstance(f, FrobObject) else f
    n = d.n
    full = (1 << n) - 1
    for a in range(1, full, 2):  # blocks containing element 0
        b = full ^ a
        if not b:
            continue
        ok = True
        for x in range(n):
            for y in range(n):
                m = d.table[x * n + y]
                in_a = (a >> x & 1, a >> y & 1)
                if in_a == (1, 1):
                    ok = not (m & b)
                elif in_a == (0, 0):
                    ok = not (m & a)
                else:
                    ok = not m
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def brute_force(n: int) -> list[FrobData]:
    """Every raw candidate on ``n`` elements that passes the axioms (feasible for n <= 2)."""
    from .frobenius import axiom_failures

    out = []
    full = 1 << n
    for unit in range(full):
        for counit in range(full):
            for entries in itertools.product(range(full), repeat=n * n):
                d = FrobData(FinSet(n), unit, counit, entries)
                if not axiom_failures(d):
                    out.append(d)
    return out


# -- independent completeness checks --------------------------------------------------------


@dataclass(frozen=True)
class SampleReport:
    samples: int
    valid: int
    unmatched: tuple[FrobData, ...]

    @property
    def ok(self) -> bool:
        return not self.unmatched


def random_data(n: int, rng) -> FrobData:
    """Uniformly random raw data: every one of the ``2n + n^3`` bits is a fair coin."""
    full = (1 << n) - 1
    word = rng.getrandbits(2 * n + n**3) if n else 0
    unit, word = word & full, word >> n
    counit, word = word & full, word >> n
    table = []
    for _ in range(n * n):
        table.append(word & full)
        word >>= n
    return FrobData(FinSet(n), unit, counit, tuple(table))


def passes_axioms(d: FrobData) -> bool:
    """Plain checker pipeline, stopping at the first failed axiom."""
    from .frobenius import Failure, check_associativity, check_nondegeneracy, check_unitality

    if check_unitality(d) is not None:
        return False
    if isinstance(check_nondegeneracy(d), Failure):
        return False
    return check_associativity(d) is None


def sample_completeness(census: Census, samples: int, seed: int = 0) -> SampleReport:
    """Filter random raw data through the plain axiom checkers; every survivor must
    canonicalize into the census."""
    import random

    rng = random.Random(seed)
    known = {e.form.code for e in census.entries}
    valid = 0
    unmatched = []
    for _ in range(samples):
        d = random_data(census.n, rng)
        if not passes_axioms(d):
            continue
        valid += 1
        if canonical_form(d).code not in known:
            unmatched.append(d)
    return SampleReport(samples, valid, tuple(unmatched))


def flip_bit(d: FrobData, position: int) -> FrobData:
    """Flip one bit of the raw encoding (unit bits, counit bits, then table bits)."""
    n = d.n
    if position < n:
        return FrobData(FinSet(n), d.unit ^ 1 << position, d.counit, d.table)
    position -= n
    if position < n:
        return FrobData(FinSet(n), d.unit, d.counit ^ 1 << position, d.table)
    position -= n
    k, z = divmod(position, n)
    table = list(d.table)
    table[k] ^= 1 << z
    return FrobData(FinSet(n), d.unit, d.counit, tuple(table))


def neighborhood_check(census: Census, relabelings: bool = True) -> SampleReport:
    """Every valid single-bit mutation of every labeled census member lands in the census.

    Random sampling almost never hits a valid structure for n >= 3, so this
    probes the region right around the known solutions instead.
    """
    n = census.n
    known = {e.form.code for e in census.entries}
    seen: set[int] = set()
    checked = valid = 0
    unmatched = []
    for entry in census.entries:
        for perm in permutations(n) if relabelings else (tuple(range(n)),):
            base = relabel(entry.obj.data, perm)
            for position in range(2 * n + n**3):
                d = flip_bit(base, position)
                code = encode(d)
                if code in seen:
                    continue
                seen.add(code)
                checked += 1
                if not passes_axioms(d):
                    continue
                valid += 1
                if canonical_form(d).code not in known:
                    unmatched.append(d)
    return SampleReport(checked, valid, tuple(unmatched))
