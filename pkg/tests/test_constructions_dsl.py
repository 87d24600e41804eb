import numpy as np
import pytest

from wreathvar.constructions import (Cyclic, DirectProduct, Heis, PermExpr, Wreath, build,
                                     catalog_exprs, cyclic, dihedral, elementary_abelian,
                                     free_nilpotent_class2, quaternion8, wreath_product)
from wreathvar.dsl import parse_group_expr, parse_word
from wreathvar.errors import BadParameter, ClosureExceedsCap, ParseError
from wreathvar.group import trivial_group
from wreathvar.isomorphism import are_isomorphic
from wreathvar.structure import exponent, nilpotency_class


def test_wreath_orders():
    assert build("Wr(C(2),C(3))").order == 24
    assert build("Wr(Heis(2,3),C(2))").order == 27 ** 2 * 2
    assert are_isomorphic(build("Wr(C(2),C(2))"), dihedral(4))


def test_wreath_cap():
    with pytest.raises(ClosureExceedsCap):
        build("Wr(D(4),C(3) X C(3))")


def test_named_groups():
    assert (dihedral(4).order, nilpotency_class(dihedral(4))) == (8, 2)
    Q = quaternion8()
    assert (Q.order, nilpotency_class(Q)) == (8, 2)
    E = elementary_abelian(2, 2)
    assert E.order == 4 and exponent(E) == 2


def test_heis_parameters():
    assert are_isomorphic(free_nilpotent_class2(1, 5), cyclic(5))
    with pytest.raises(BadParameter):
        free_nilpotent_class2(2, 4)
    H = free_nilpotent_class2(3, 3)
    assert H.order == 3 ** 6 and exponent(H) == 3 and nilpotency_class(H) == 2


def test_heis_universality():
    # any images of two generators in a class-2 group of exponent 3 satisfy
    # the defining relations, checked through the words that vanish in Heis(2,3)
    from wreathvar.words import is_law, EXHAUSTIVE
    H = free_nilpotent_class2(2, 3)
    for w in ("x1^3", "[[x1,x2],x1]", "[[x1,x2],x2]", "[x1,x2]^3"):
        assert is_law(H, parse_word(w), EXHAUSTIVE).is_law
    for target in ("C(3) X C(3)", "Heis(2,3)", "C(3)"):
        T = build(target)
        for w in ("x1^3", "[[x1,x2],x1]", "[[x1,x2],x2]"):
            assert is_law(T, parse_word(w), EXHAUSTIVE).is_law


def test_wreath_with_trivial():
    A = build("S(3)")
    assert are_isomorphic(wreath_product(A, trivial_group()), A)
    assert are_isomorphic(wreath_product(trivial_group(), build("C(4)")), build("C(4)"))


def test_build_is_deterministic():
    from wreathvar.constructions import _build_uncached
    e = parse_group_expr("Wr(C(3),C(2)) X Q8")
    a, b = _build_uncached(e, 2**20), _build_uncached(e, 2**20)
    assert np.array_equal(a.rows, b.rows)


def test_parse_examples():
    assert parse_group_expr("C(6)") == Cyclic(6)
    assert parse_group_expr("Wr(Heis(2,3), C(2) X C(2))") == \
        Wreath(Heis(2, 3), DirectProduct(Cyclic(2), Cyclic(2)))
    with pytest.raises(ParseError) as info:
        parse_group_expr("C(")
    assert info.value.position == 2


def test_parse_perm():
    e = parse_group_expr("Perm(5; (1 2 3)(4 5), (1 2))")
    assert e == PermExpr(5, (((1, 2, 3), (4, 5)), ((1, 2),)))
    assert build(e).order == 12  # S3 x C2 on the blocks {1,2,3}, {4,5}


def test_product_left_associative():
    e = parse_group_expr("C(2) X C(3) X C(4)")
    assert e == DirectProduct(DirectProduct(Cyclic(2), Cyclic(3)), Cyclic(4))


@pytest.mark.parametrize("bad,pos", [("C(2", 3), ("Wr(C(2))", 7), ("C(2) X", 6), ("Z(3)", 0),
                                     ("C(2) C(3)", 5)])
def test_parse_errors(bad, pos):
    with pytest.raises(ParseError) as info:
        parse_group_expr(bad)
    assert info.value.position == pos


def test_roundtrip_catalog():
    for e in catalog_exprs(100):
        assert parse_group_expr(str(e)) == e


def test_word_parse():
    w = parse_word("[[x1,x2],x3]")
    assert str(w) == "[[x1,x2],x3]" and len(w.syllables) == 10
    assert parse_word("[x1,x2,x3]") == w
    assert parse_word("x1^2 x1^3").syllables == ((0, 5),)
    assert parse_word("x1 x1^-1").syllables == ()
    with pytest.raises(ParseError):
        parse_word("x1^")
