import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobrel.diagram import (
    ARITY,
    EQUATIONS,
    Diagram,
    DiagramArityError,
    DiagramError,
    DiagramSyntaxError,
    Generator,
    equal_diagrams,
    evaluate,
    genus_word,
    parse,
)
from frobrel.relation import Relation, compose, identity
from frobrel.tables import ALL_ROWS, row
from frobrel.tqft import partition_function


def test_sphere_word():
    d = parse("eta ; eps")
    assert (d.in_arity, d.out_arity) == (0, 0)
    assert len(d.layers) == 2


def test_arity_error_carries_layer_and_counts():
    with pytest.raises(DiagramArityError) as info:
        parse("mu ; mu")
    err = info.value
    assert (err.layer, err.expected, err.actual) == (2, 2, 1)


def test_syntax_errors():
    with pytest.raises(DiagramSyntaxError, match="unknown token 'nu'"):
        parse("mu ; nu")
    with pytest.raises(DiagramSyntaxError):
        parse("mu ;")
    with pytest.raises(DiagramSyntaxError):
        parse("(id * beta ; mu")
    with pytest.raises(DiagramSyntaxError):
        parse("id $ id")
    with pytest.raises(DiagramError):
        Generator("nu")


def test_parenthesised_and_whitespace_insensitive():
    a = parse("(id * beta) ; (mu * id) ; (eps * id)")
    b = parse("id*beta;mu*id;eps*id")
    assert a == b
    assert (a.in_arity, a.out_arity) == (1, 1)


def test_left_snake_is_identity_on_every_reference_object():
    for r in ALL_ROWS:
        f = r.obj()
        assert evaluate("(id * beta) ; (mu * id) ; (eps * id)", f) == identity(f.n)


def test_torus_and_sphere_values():
    f = row(2, 3).obj()
    assert evaluate("eta ; delta ; mu ; eps", f).sorted_pairs() == [(0, 0)]
    assert evaluate("eta ; eps", f).is_empty()
    assert evaluate("eta ; eps", row(3, 13).obj()).is_empty()


def test_generators_evaluate_to_structure_relations():
    f = row(3, 17).obj()
    assert evaluate("mu", f) == f.mul_relation()
    assert evaluate("alpha", f).sorted_pairs() == [(0, 1), (1, 0), (2, 2)]
    assert evaluate("swap ; swap", f) == identity(9)
    # the pairing eps o mu holds exactly on the pairs (x, alpha(x))
    n = f.n
    pairs = evaluate("mu ; eps", f).sorted_pairs()
    assert pairs == sorted((x * n + f.alpha.alpha_hat[x], 0) for x in range(n))


def test_equal_diagrams_rejects_mismatched_arity():
    with pytest.raises(DiagramArityError):
        equal_diagrams("mu", "id", row(2, 1).obj())


@pytest.mark.parametrize("r", ALL_ROWS, ids=lambda r: r.fixture_name)
@pytest.mark.parametrize("name,lhs,rhs", EQUATIONS, ids=[e[0] for e in EQUATIONS])
def test_equations_hold(r, name, lhs, rhs):
    assert equal_diagrams(lhs, rhs, r.obj()), name


@pytest.mark.parametrize("r", ALL_ROWS, ids=lambda r: r.fixture_name)
def test_genus_words_agree_with_partition_function(r):
    f = r.obj()
    pf = partition_function(f)
    for g in range(5):
        assert (not evaluate(genus_word(g), f).is_empty()) == pf.value(g)


def test_commutativity_as_a_diagram():
    assert equal_diagrams("swap ; mu", "mu", row(3, 5).obj())


def test_evaluate_agrees_with_explicit_composition():
    f = row(3, 14).obj()
    expected = compose(compose(f.unit_relation(), f.comul_relation()), f.mul_relation())
    assert evaluate("eta ; delta ; mu", f) == expected
    assert isinstance(expected, Relation)


@st.composite
def diagrams(draw):
    """Random well-typed words built layer by layer, at most three wires wide."""
    layers = []
    wires = draw(st.integers(0, 2))
    for _ in range(draw(st.integers(1, 4))):
        layer = []
        remaining = wires
        while remaining or not layer:
            options = sorted(k for k, (i, o) in ARITY.items() if 0 < i <= remaining or (i == 0 and not layer))
            kind = draw(st.sampled_from(options))
            layer.append(Generator(kind))
            remaining -= ARITY[kind][0]
        out = sum(g.arity[1] for g in layer)
        if out > 3 and layers:
            break
        layers.append(tuple(layer))
        wires = out
    return Diagram(tuple(layers))


@settings(max_examples=200, deadline=None)
@given(diagrams())
def test_render_parse_round_trip(d):
    assert parse(d.render()) == d


@settings(max_examples=60, deadline=None)
@given(diagrams(), st.sampled_from([r for r in ALL_ROWS if r.n == 2]))
def test_evaluation_has_the_declared_shape(d, r):
    f = r.obj()
    rel = evaluate(d, f)
    assert rel.src.size == f.n**d.in_arity
    assert rel.dst.size == f.n**d.out_arity
