import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobrel.constructors import (
    SMALL_GROUPS,
    UNDEFINED,
    FiniteGroup,
    FiniteGroupoid,
    GroupError,
    GroupoidError,
    Section,
    all_sections,
    catalog,
    conjugacy_classes,
    conjugacy_classes_to_frobenius,
    cyclic,
    dihedral,
    direct_product,
    group_by_name,
    group_groupoid,
    group_to_frobenius,
    groupoid_product,
    groupoid_sum,
    groupoid_to_frobenius,
    pair_groupoid,
    quaternion,
    symmetric,
    trivial_groupoid,
)
from frobrel.frobenius import FrobData, axiom_failures, check_nondegeneracy, disjoint_union, isomorphic
from frobrel.relation import FinSet, bits
from frobrel.tables import row


def raw_groupoid_data(gpd, sigma):
    """Unit, counit and product written straight from the groupoid tables."""
    m = gpd.n_morphisms
    table = tuple(
        0 if gpd.compose[g][h] == UNDEFINED else 1 << gpd.compose[g][h] for g in range(m) for h in range(m)
    )
    unit = sum(1 << g for g in gpd.identities)
    counit = sum(1 << g for g in set(sigma))
    return FrobData(FinSet(m), unit, counit, table)


# -- groups ------------------------------------------------------------------------------------


def test_group_validation():
    with pytest.raises(GroupError, match="identity"):
        FiniteGroup(((1, 0), (0, 0)))
    with pytest.raises(GroupError, match="square"):
        FiniteGroup(((0, 1), (1,)))
    with pytest.raises(GroupError):
        FiniteGroup(((0, 1, 2), (1, 1, 0), (2, 0, 1)))
    with pytest.raises(GroupError):
        FiniteGroup(())


def test_builtin_groups():
    assert cyclic(5).is_abelian()
    assert symmetric(3).size == 6 and not symmetric(3).is_abelian()
    assert symmetric(4).size == 24
    assert dihedral(4).size == 8 and not dihedral(4).is_abelian()
    q = quaternion()
    assert q.size == 8 and not q.is_abelian()
    # exactly one element of order two in Q8
    assert sum(1 for g in range(8) if g != q.identity and q.mul(g, g) == q.identity) == 1
    assert group_by_name("Z2xZ2").size == 4
    assert group_by_name("V4").is_abelian()
    with pytest.raises(GroupError):
        group_by_name("W7")


def test_group_json_round_trip():
    g = symmetric(3)
    payload = g.to_json()
    assert payload["size"] == 6 and payload["name"] == "S3"
    assert FiniteGroup.from_json(payload) == g
    with pytest.raises(GroupError):
        FiniteGroup.from_json({**payload, "size": 5})


@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_every_counit_choice_gives_a_frobenius_object(name):
    g = group_by_name(name)
    for omega in range(g.size):
        f = group_to_frobenius(g, omega)
        assert f.commutative == g.is_abelian()
        # the pairing partner of x is the y with x * y = omega
        expected = tuple(g.mul(g.inverse[x], omega) for x in range(g.size))
        assert f.alpha.alpha_hat == expected


def test_group_counit_out_of_range():
    with pytest.raises(GroupError):
        group_to_frobenius(cyclic(3), 3)


def test_small_groups_match_reference_cases():
    assert isomorphic(group_to_frobenius(cyclic(2), 0), row(2, 1).data()) is not None
    assert isomorphic(group_to_frobenius(cyclic(2), 1), row(2, 3).data()) is not None
    assert isomorphic(group_to_frobenius(cyclic(3), 0), row(3, 10).data()) is not None
    assert isomorphic(group_to_frobenius(cyclic(3), 1), row(3, 17).data()) is not None
    assert isomorphic(group_to_frobenius(cyclic(3), 2), row(3, 17).data()) is not None
    trivial = group_to_frobenius(cyclic(1), 0)
    assert trivial.n == 1 and trivial.table == (1,)


# -- groupoids ---------------------------------------------------------------------------------


def test_groupoid_validation_messages():
    good = pair_groupoid(2)
    bad = [list(r) for r in good.compose]
    g, h = next((g, h) for g in range(4) for h in range(4) if good.source[g] != good.target[h])
    bad[g][h] = 0
    with pytest.raises(GroupoidError, match="axiom 1"):
        FiniteGroupoid(2, good.source, good.target, bad, good.identities, good.inverses)
    with pytest.raises(GroupoidError, match="axiom 4"):
        FiniteGroupoid(2, good.source, good.target, good.compose, good.identities, (0, 1, 2, 3))
    with pytest.raises(GroupoidError, match="identity"):
        FiniteGroupoid(2, good.source, good.target, good.compose, (0,), good.inverses)


def test_groupoid_json_round_trip():
    gpd = groupoid_sum(pair_groupoid(2), group_groupoid(cyclic(2)))
    payload = gpd.to_json()
    assert payload["morphisms"] == 6
    assert any(v is None for r in payload["compose"] for v in r)
    assert FiniteGroupoid.from_json(payload) == gpd


def test_trivial_groupoids_match_reference_cases():
    assert isomorphic(groupoid_to_frobenius(trivial_groupoid(2)), row(2, 5).data()) is not None
    assert isomorphic(groupoid_to_frobenius(trivial_groupoid(3)), row(3, 25).data()) is not None


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_pair_groupoids_with_every_section(k):
    gpd = pair_groupoid(k)
    sections = list(all_sections(gpd))
    assert len(sections) == k**k
    bisections = 0
    for sec in sections:
        raw = raw_groupoid_data(gpd, sec.sigma)
        if sec.is_bisection(gpd):
            bisections += 1
            f = groupoid_to_frobenius(gpd, sec)
            assert f.data.table == raw.table and f.counit == raw.counit
            for g in range(gpd.n_morphisms):
                assert f.alpha.alpha_hat[g] == gpd.compose[gpd.inverses[g]][sec.sigma[gpd.target[g]]]
        else:
            # some object is hit twice by s o sigma, so a column of the pairing repeats
            failures = axiom_failures(raw)
            assert [f.axiom for f in failures] == ["nondegeneracy"]
            with pytest.raises(GroupoidError, match="bisection"):
                groupoid_to_frobenius(gpd, sec)
    assert bisections == len(list(itertools.permutations(range(k))))


def test_section_must_hit_the_right_targets():
    gpd = pair_groupoid(2)
    with pytest.raises(GroupoidError):
        groupoid_to_frobenius(gpd, Section((2, 0)))
    with pytest.raises(GroupoidError):
        groupoid_to_frobenius(gpd, Section((0,)))


def test_groupoid_product_and_sum_sizes():
    prod = groupoid_product(pair_groupoid(2), group_groupoid(cyclic(3)))
    assert prod.n_objects == 2 and prod.n_morphisms == 12
    f = groupoid_to_frobenius(prod)
    assert f.n == 12
    total = groupoid_sum(trivial_groupoid(1), pair_groupoid(2))
    assert total.n_objects == 3 and total.n_morphisms == 5


# -- conjugacy classes -------------------------------------------------------------------------


def test_conjugacy_class_order():
    classes = conjugacy_classes(symmetric(3))
    assert classes[0] == [symmetric(3).identity]
    assert sorted(len(c) for c in classes) == [1, 2, 3]
    assert [c[0] for c in classes[1:]] == sorted(c[0] for c in classes[1:])


def test_conjugacy_classes_of_s3_match_reference_case():
    f = conjugacy_classes_to_frobenius(symmetric(3))
    assert f.n == 3 and f.commutative
    assert isomorphic(f, row(3, 3).data()) is not None


def test_quaternion_classes():
    q = quaternion()
    f = conjugacy_classes_to_frobenius(q)
    assert f.n == 5
    classes = conjugacy_classes(q)
    sizes = [len(c) for c in classes]
    assert sorted(sizes) == [1, 1, 2, 2, 2]
    # a two-element class squares onto both central classes
    k = sizes.index(2)
    assert len(list(bits(f.product(k, k)))) == 2


@pytest.mark.parametrize("name", SMALL_GROUPS + ("S4", "A5"))
def test_conjugacy_objects_verify(name):
    g = group_by_name(name)
    f = conjugacy_classes_to_frobenius(g)
    assert f.commutative
    assert len(f.alpha.alpha_hat) == len(conjugacy_classes(g))
    if g.is_abelian():
        assert isomorphic(f, group_to_frobenius(g, g.identity)) is not None


# -- disjoint unions and the catalogue ---------------------------------------------------------


def test_trivial_plus_two_element_cases():
    trivial = groupoid_to_frobenius(trivial_groupoid(1))
    for two, three in ((1, 21), (2, 22), (3, 23), (4, 24)):
        assert isomorphic(disjoint_union(trivial, row(2, two).obj()), row(3, three).data()) is not None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_catalog_entries_are_valid(n):
    entries = list(catalog(n))
    assert entries
    for label, f in entries:
        assert f.n == n, label
        assert not axiom_failures(f.data)
        assert check_nondegeneracy(f.data).alpha_hat == f.alpha.alpha_hat


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL_GROUPS[:10]), st.sampled_from(SMALL_GROUPS[:6]))
def test_direct_product_of_groups(a, b):
    g, h = group_by_name(a), group_by_name(b)
    p = direct_product(g, h)
    assert p.size == g.size * h.size
    assert p.is_abelian() == (g.is_abelian() and h.is_abelian())
