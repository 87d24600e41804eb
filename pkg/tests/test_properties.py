import math

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from wreathvar.constructions import (Cyclic, Dihedral, DirectProduct, Quaternion8, Symmetric,
                                     Wreath, build, product_expr)
from wreathvar.dsl import parse_group_expr, parse_word
from wreathvar.group import compose, invert, perm_from_cycles, subgroup_generated
from wreathvar.isomorphism import are_isomorphic
from wreathvar.structure import abelian_invariants, exponent
from wreathvar.variety import Verdict, decide_criterion
from wreathvar.words import evaluate, reduce

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

syllables = st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3)), max_size=8)
small_groups = st.sampled_from(["S(3)", "D(4)", "Q8", "A(4)", "C(6)", "D(5)", "C(2) X C(2)"])


@SETTINGS
@given(syllables, syllables)
def test_reduce_is_confluent(a, b):
    left = reduce(list(reduce(a, 3).syllables) + b, 3)
    assert left == reduce(a + b, 3)
    assert reduce(list(reduce(a, 3).syllables), 3) == reduce(a, 3)


@SETTINGS
@given(syllables, syllables, small_groups, st.data())
def test_evaluation_is_a_homomorphism(a, b, text, data):
    G = build(text)
    idx = data.draw(st.lists(st.integers(0, G.order - 1), min_size=3, max_size=3))
    tup = tuple(G.element(i) for i in idx)
    u, v = reduce(a, 3), reduce(b, 3)
    assert evaluate(G, u * v, tup) == compose(evaluate(G, u, tup), evaluate(G, v, tup))
    assert evaluate(G, u.inverse(), tup) == invert(evaluate(G, u, tup))


@SETTINGS
@given(st.integers(2, 60), st.integers(2, 60))
def test_cyclic_pairs(m, n):
    v = decide_criterion(build(f"C({m})"), build(f"C({n})"))
    assert (v.verdict is Verdict.EQUAL) == (math.gcd(m, n) == 1)


@SETTINGS
@given(st.lists(st.sampled_from([2, 3, 4, 5, 8, 9]), min_size=1, max_size=3))
def test_abelian_reconstruction(orders):
    G = build(product_expr(*(Cyclic(q) for q in orders)))
    inv = abelian_invariants(G)
    assert inv.order == G.order and inv.exponent == exponent(G)
    R = build(product_expr(*(Cyclic(q) for q in inv.cyclic_orders)))
    assert are_isomorphic(R, G)


leaf = st.one_of(st.builds(Cyclic, st.integers(1, 6)), st.builds(Dihedral, st.integers(3, 5)),
                 st.just(Quaternion8()), st.builds(Symmetric, st.integers(2, 4)))
exprs = st.recursive(leaf, lambda inner: st.one_of(st.builds(DirectProduct, inner, inner),
                                                   st.builds(Wreath, inner, inner)), max_leaves=4)


@SETTINGS
@given(exprs)
def test_expression_roundtrip(e):
    assert parse_group_expr(str(e)) == e
    spaced = str(e).replace("(", " ( ").replace(",", " , ").replace(")", " ) ")
    assert parse_group_expr(spaced) == e


word_atoms = st.sampled_from(["x1", "x2", "x3", "x1^-1", "x2^3", "1"])
word_text = st.recursive(word_atoms, lambda inner: st.one_of(
    st.builds(lambda a, b: f"[{a},{b}]", inner, inner),
    st.builds(lambda a, b: f"{a} {b}", inner, inner),
    st.builds(lambda a: f"({a})^-2", inner)), max_leaves=5)


@SETTINGS
@given(word_text)
def test_word_text_roundtrip(text):
    w = parse_word(text)
    again = parse_word(str(w))
    assert again.syllables == w.syllables


@SETTINGS
@given(st.lists(st.lists(st.integers(0, 4), min_size=2, max_size=5, unique=True),
                min_size=1, max_size=3))
def test_generated_subgroups_divide(cycles):
    G = build("S(5)")
    gens = [perm_from_cycles(5, [c]) for c in cycles]
    H = subgroup_generated(G, gens)
    assert G.order % H.size == 0
    for a in H.elements:
        for b in gens:
            assert compose(a, b) in H
