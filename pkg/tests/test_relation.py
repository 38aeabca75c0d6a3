import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobrel.relation import (
    FinSet,
    PowerMap,
    Relation,
    ShapeError,
    bits,
    compose,
    compose_all,
    converse,
    from_power_map,
    identity,
    mask_of,
    power,
    product,
    product_all,
    subset_as_relation,
    swap,
    to_power_map,
)


@st.composite
def relations(draw, src=None, dst=None, max_size=4):
    n = draw(st.integers(0, max_size)) if src is None else src
    m = draw(st.integers(0, max_size)) if dst is None else dst
    rows = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    return Relation(FinSet(n), FinSet(m), tuple(rows))


@st.composite
def composable(draw, count=2):
    sizes = draw(st.lists(st.integers(0, 4), min_size=count + 1, max_size=count + 1))
    return [draw(relations(sizes[i], sizes[i + 1])) for i in range(count)]


def naive_compose(r, s):
    pairs = {(x, z) for (x, y) in r.pairs for (y2, z) in s.pairs if y == y2}
    return Relation.from_pairs(r.src, s.dst, pairs)


def naive_product(r, s):
    n2, m2 = s.src.size, s.dst.size
    pairs = {
        (a * n2 + c, b * m2 + d)
        for (a, b) in r.pairs
        for (c, d) in s.pairs
    }
    return Relation.from_pairs(r.src.size * n2, r.dst.size * m2, pairs)


def test_bits_and_masks():
    assert list(bits(0b101101)) == [0, 2, 3, 5]
    assert mask_of([5, 0, 2, 3]) == 0b101101
    assert list(bits(0)) == []


def test_finset_labels():
    x = FinSet(3, ("a", "b", "c"))
    assert x == FinSet(3)
    assert x.label(1) == "b"
    assert FinSet(2).label(1) == "x1"
    with pytest.raises(ValueError):
        FinSet(2, ("a", "a"))
    with pytest.raises(ValueError):
        FinSet(-1)
    assert power(FinSet(3), 0).size == 1
    assert power(FinSet(3), 2).size == 9


def test_compose_on_three_element_example():
    x = FinSet(3)
    r = Relation.from_pairs(x, x, [(0, 1), (1, 2)])
    s = Relation.from_pairs(x, x, [(1, 0), (2, 2)])
    assert compose(r, s).sorted_pairs() == [(0, 0), (1, 2)]


def test_compose_shape_error_names_both_sizes():
    r = Relation.empty(FinSet(2), FinSet(3))
    s = Relation.empty(FinSet(4), FinSet(1))
    with pytest.raises(ShapeError, match="3.*4"):
        compose(r, s)


def test_json_round_trip():
    r = Relation.from_pairs(2, 3, [(1, 2), (0, 0)])
    payload = r.to_json()
    assert payload == {"src": 2, "dst": 3, "pairs": [[0, 0], [1, 2]]}
    assert Relation.from_json(payload) == r


def test_point_relations():
    x = FinSet(3)
    into = subset_as_relation(x, 0b101)
    out = subset_as_relation(x, 0b100, into=False)
    assert compose(into, out).sorted_pairs() == [(0, 0)]
    assert compose(into, subset_as_relation(x, 0b010, into=False)).is_empty()


def test_swap_is_an_involution():
    for n in range(4):
        s = swap(n)
        assert compose(s, s) == identity(n * n)


@settings(max_examples=200)
@given(composable(2))
def test_compose_matches_naive_join(rs):
    r, s = rs
    assert compose(r, s) == naive_compose(r, s)


@settings(max_examples=200)
@given(composable(3))
def test_compose_is_associative(rs):
    r, s, t = rs
    assert compose(compose(r, s), t) == compose(r, compose(s, t))
    assert compose_all(rs) == compose(r, compose(s, t))


@given(relations())
def test_identity_is_neutral(r):
    assert compose(identity(r.src), r) == r
    assert compose(r, identity(r.dst)) == r


@given(composable(2))
def test_power_map_union_formula_agrees(rs):
    r, s = rs
    via_sets = to_power_map(r).compose(to_power_map(s))
    assert from_power_map(via_sets) == compose(r, s)


@settings(max_examples=200)
@given(relations(max_size=3), relations(max_size=3))
def test_product_matches_naive(r, s):
    assert product(r, s) == naive_product(r, s)


@given(composable(2), composable(2))
def test_interchange_law(left, right):
    (a, b), (c, d) = left, right
    assert compose(product(a, c), product(b, d)) == product(compose(a, b), compose(c, d))


@given(relations(), relations())
def test_converse(r, s):
    assert converse(converse(r)) == r
    if r.dst == s.src:
        assert converse(compose(r, s)) == compose(converse(s), converse(r))


def test_product_with_point_is_neutral():
    r = Relation.from_pairs(2, 3, [(0, 1), (1, 2), (1, 0)])
    assert product_all([r]) == r
    assert product(identity(1), r) == r
    assert product(r, identity(1)) == r


def test_power_map_validates_subsets():
    with pytest.raises(ShapeError):
        PowerMap(FinSet(1), FinSet(2), (0b100,))
    with pytest.raises(ShapeError):
        PowerMap(FinSet(2), FinSet(2), (0,))
    pm = PowerMap(FinSet(2), FinSet(3), (0b011, 0))
    assert pm(0) == frozenset({0, 1})
    assert pm(1) == frozenset()
