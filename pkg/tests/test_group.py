import math

import numpy as np
import pytest

from wreathvar.constructions import build, dihedral, symmetric
from wreathvar.errors import ClosureExceedsCap, ForeignElement
from wreathvar.group import (center, commutator_subgroup, compose, cycles_of, derived_subgroup,
                             direct_product, element_order, generate_group, intersection, invert,
                             is_normal, join, normal_closure, perm_from_cycles, perm_order,
                             quotient_group, subgroup_generated)
from wreathvar.structure import exponent

from conftest import brute_subgroup_from


def test_generate_small():
    assert generate_group([perm_from_cycles(3, [(1, 2, 3)], one_based=True)]).order == 3
    D = generate_group([perm_from_cycles(4, [(1, 2, 3, 4)], one_based=True),
                        perm_from_cycles(4, [(1, 3)], one_based=True)])
    assert D.order == 8
    from wreathvar.isomorphism import are_isomorphic
    assert are_isomorphic(D, dihedral(4))


def test_closure_cap():
    with pytest.raises(ClosureExceedsCap):
        generate_group([perm_from_cycles(7, [(0, 1, 2, 3, 4, 5, 6)])], cap=5)


def test_identity_is_index_zero():
    G = symmetric(4)
    assert G.element(0) == tuple(range(4))
    assert G.index(G.identity) == 0


def test_perm_helpers():
    a = perm_from_cycles(5, [(0, 1), (2, 3, 4)])
    assert perm_order(a) == 6
    assert compose(a, invert(a)) == tuple(range(5))
    assert cycles_of(a) == [(0, 1), (2, 3, 4)]


def test_product_convention():
    # (a*b) applies a first
    G = symmetric(3)
    for i in range(G.order):
        for j in range(G.order):
            assert G.element(G.mul(i, j)) == compose(G.element(i), G.element(j))


def test_subgroup_generated_examples():
    D = dihedral(4)
    rot = D.index((1, 2, 3, 0))
    assert subgroup_generated(D, [D.element(rot)]).size == 4
    assert subgroup_generated(D, []).size == 1
    assert subgroup_generated(D, D.elements).size == 8


def test_normal_closure_examples():
    S = symmetric(3)
    t = perm_from_cycles(3, [(0, 1)])
    assert normal_closure(S, [t]).size == 6
    D = dihedral(4)
    z = (2, 3, 0, 1)
    N = normal_closure(D, [z])
    assert N.size == 2 and N == center(D)


def test_commutators():
    assert derived_subgroup(build("C(6) X C(2)")).size == 1
    D = dihedral(4)
    assert derived_subgroup(D) == center(D)
    assert derived_subgroup(symmetric(3)).size == 3


def test_commutator_subgroup_matches_brute_force():
    for text in ("D(4)", "S(4)", "Q8 X C(3)", "A(4)"):
        G = build(text)
        comms = {G.mul(G.mul(G.inverse_indices[a], G.inverse_indices[b]), G.mul(a, b))
                 for a in range(G.order) for b in range(G.order)}
        expect = brute_subgroup_from(G, comms)
        assert np.array_equal(derived_subgroup(G).indices, expect), text


def test_quotients():
    D = dihedral(4)
    assert quotient_group(D, D.whole).order == 1
    Q = quotient_group(D, center(D))
    assert Q.order == 4 and exponent(Q) == 2


def test_direct_product_examples():
    for a, b, order, e in (("C(2)", "C(3)", 6, 6), ("C(2)", "C(2)", 4, 2)):
        P = direct_product(build(a), build(b))
        assert (P.order, exponent(P)) == (order, e)
    assert direct_product(dihedral(4), build("C(3)")).order == 24


def test_element_order_examples():
    S5 = symmetric(5)
    assert element_order(S5, S5.identity) == 1
    assert element_order(S5, perm_from_cycles(5, [(0, 1), (2, 3, 4)])) == 6
    C4 = build("C(4)")
    assert element_order(C4, (1, 2, 3, 0)) == 4


def test_foreign_element():
    with pytest.raises(ForeignElement):
        dihedral(4).index((1, 0, 2, 3))


def test_join_and_intersection():
    G = symmetric(4)
    a = subgroup_generated(G, [perm_from_cycles(4, [(0, 1)])])
    b = subgroup_generated(G, [perm_from_cycles(4, [(2, 3)])])
    assert join(G, a, b).size == 4
    assert intersection(G, a, b).size == 1


def test_lagrange_and_quotient_orders(small_catalog):
    from wreathvar.subgroups import enumerate_subgroups
    for G in small_catalog:
        for S in enumerate_subgroups(G):
            assert G.order % S.size == 0
            if is_normal(G, S):
                assert quotient_group(G, S).order * S.size == G.order


def test_normal_closure_is_normal(small_catalog):
    for G in small_catalog:
        for i in range(0, G.order, max(1, G.order // 5)):
            N = normal_closure(G, [G.element(i)])
            assert subgroup_generated(G, [G.element(i)]).issubset(N)
            assert is_normal(G, N)


def test_element_orders_divide(small_catalog):
    for G in small_catalog:
        assert all(G.order % int(o) == 0 for o in G.element_orders)
        assert math.lcm(*map(int, G.element_orders)) == exponent(G)


def test_commutator_subgroup_general_pair():
    G = symmetric(4)
    V = normal_closure(G, [perm_from_cycles(4, [(0, 1), (2, 3)])])
    assert V.size == 4
    assert commutator_subgroup(G, V, G.whole) == V
