"""Concrete groups: catalog families, direct and wreath products, and the
relatively free class-2 nilpotent groups ``Heis(r, m)``.

Groups are described by small immutable expression trees (``GroupExpr``)
whose ``str`` is the DSL text accepted by :func:`wreathvar.dsl.parse_group_expr`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from sympy import isprime
from sympy.utilities.iterables import partitions

from .errors import BadParameter, ClosureExceedsCap
from .group import (DEFAULT_CAP, FiniteGroup, cycles_of, direct_product, generate_group,
                    perm_from_cycles)


# expression tree ----------------------------------------------------------

@dataclass(frozen=True)
class Cyclic:
    n: int

    def __str__(self):
        return f"C({self.n})"


@dataclass(frozen=True)
class Dihedral:
    n: int

    def __str__(self):
        return f"D({self.n})"


@dataclass(frozen=True)
class Quaternion8:
    def __str__(self):
        return "Q8"


@dataclass(frozen=True)
class Symmetric:
    k: int

    def __str__(self):
        return f"S({self.k})"


@dataclass(frozen=True)
class Alternating:
    k: int

    def __str__(self):
        return f"A({self.k})"


@dataclass(frozen=True)
class ElemAbelian:
    p: int
    k: int

    def __str__(self):
        return f"E({self.p},{self.k})"


@dataclass(frozen=True)
class Heis:
    """Relatively free group of rank ``r`` in class-2 nilpotent groups of exponent ``m``."""
    r: int
    m: int

    def __str__(self):
        return f"Heis({self.r},{self.m})"


@dataclass(frozen=True)
class DirectProduct:
    left: GroupExpr
    right: GroupExpr

    def __str__(self):
        right = f"({self.right})" if isinstance(self.right, DirectProduct) else str(self.right)
        return f"{self.left} X {right}"


@dataclass(frozen=True)
class Wreath:
    left: GroupExpr
    right: GroupExpr

    def __str__(self):
        return f"Wr({self.left},{self.right})"


@dataclass(frozen=True)
class PermExpr:
    """Explicit generators; ``generators`` holds 1-based disjoint cycles."""
    degree: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]

    def __str__(self):
        gens = ", ".join("".join("(" + " ".join(map(str, c)) + ")" for c in g) or "()"
                         for g in self.generators)
        return f"Perm({self.degree}; {gens})"


GroupExpr = Union[Cyclic, Dihedral, Quaternion8, Symmetric, Alternating, ElemAbelian, Heis,
                  DirectProduct, Wreath, PermExpr]


def product_expr(*factors: GroupExpr) -> GroupExpr:
    """Left-nested direct product of one or more factors."""
    out = factors[0]
    for f in factors[1:]:
        out = DirectProduct(out, f)
    return out


def power_expr(factor: GroupExpr, c: int) -> GroupExpr:
    return product_expr(*([factor] * c))


# catalog builders ---------------------------------------------------------

def _require(cond: bool, msg: str):
    if not cond:
        raise BadParameter(msg)


def cyclic(n: int) -> FiniteGroup:
    _require(n >= 1, f"C({n}): n must be >= 1")
    return generate_group([tuple((i + 1) % n for i in range(n))])


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    _require(n >= 1, f"D({n}): n must be >= 1")
    if n == 1:
        return generate_group([(1, 0)])
    if n == 2:
        return generate_group([(1, 0, 3, 2), (2, 3, 0, 1)])
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return generate_group([rot, ref])


def quaternion8() -> FiniteGroup:
    # regular action of {±1, ±i, ±j, ±k} by right multiplication
    units = ["1", "i", "j", "k"]
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    index = {e: k for k, e in enumerate(elems)}

    def right(g):
        out = []
        for s, u in elems:
            t, v = mult[(u, g)]
            out.append(index[(s * t, v)])
        return tuple(out)

    return generate_group([right("i"), right("j")])


def symmetric(k: int) -> FiniteGroup:
    _require(k >= 1, f"S({k}): k must be >= 1")
    if k == 1:
        return generate_group([(0,)])
    return generate_group([tuple((i + 1) % k for i in range(k)),
                           perm_from_cycles(k, [(0, 1)])])


def alternating(k: int) -> FiniteGroup:
    _require(k >= 1, f"A({k}): k must be >= 1")
    if k < 3:
        return generate_group([tuple(range(k))])
    return generate_group([perm_from_cycles(k, [(0, 1, i)]) for i in range(2, k)])


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    _require(isprime(p), f"E({p},{k}): p must be prime")
    _require(k >= 1, f"E({p},{k}): k must be >= 1")
    d = p * k
    gens = [perm_from_cycles(d, [tuple(range(j * p, (j + 1) * p))]) for j in range(k)]
    return generate_group(gens)


def free_nilpotent_class2(r: int, m: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Relatively free group of rank ``r`` in class-2 groups of exponent ``m``.

    Elements are pairs ``(a, t)`` with ``a`` in Z_m^r and ``t`` indexed by
    pairs i < j; ``(a,t)(a',t') = (a+a', t+t'+b)`` where ``b[i,j] = a'_i a_j``.
    Realized by the regular action (right multiplication by the generators).
    Odd ``m`` only: for even moduli the bilinear model has the wrong exponent.
    """
    _require(r >= 1, f"Heis({r},{m}): rank must be >= 1")
    _require(m >= 3 and m % 2 == 1, f"Heis({r},{m}): modulus must be odd and >= 3")
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    width = r + len(pairs)
    size = m ** width
    if size > cap:
        raise ClosureExceedsCap(f"Heis({r},{m}) has order {size} > cap {cap}")
    elems = np.array(list(itertools.product(range(m), repeat=width)), dtype=np.int64)
    weights = m ** np.arange(width - 1, -1, -1, dtype=np.int64)
    gens = []
    for i in range(r):
        out = elems.copy()
        out[:, i] += 1
        # right factor e_i contributes a'_i * a_j to coordinate (i, j), j > i
        for col, (pi, pj) in enumerate(pairs):
            if pi == i:
                out[:, r + col] += elems[:, pj]
        out %= m
        gens.append(tuple((out @ weights).tolist()))
    return generate_group(gens, cap=cap)


def wreath_product(A: FiniteGroup, B: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Standard (regular) wreath product ``A wr B`` of degree ``deg(A)*|B|``.

    Point ``x*deg(A) + i`` is point ``i`` of the copy of ``A`` indexed by the
    element of ``B`` with canonical index ``x``; ``B`` permutes the copies by
    right translation.
    """
    size = A.order ** B.order * B.order
    if size > cap:
        raise ClosureExceedsCap(f"wreath product order {size} exceeds cap {cap}")
    dA, nB = A.degree, B.order
    degree = dA * nB
    gens = []
    for a in A.generators:
        gens.append(tuple(a) + tuple(range(dA, degree)))
    for s in B.generator_indices:
        shift = B.mul_idx(np.arange(nB), s)
        gens.append(tuple(int(shift[x]) * dA + i for x in range(nB) for i in range(dA)))
    return generate_group(gens, cap=cap)


# evaluation ---------------------------------------------------------------

def build(expr: GroupExpr | str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """The group denoted by ``expr`` (a GroupExpr or DSL text)."""
    if isinstance(expr, str):
        from .dsl import parse_group_expr
        expr = parse_group_expr(expr)
    return _build(expr, cap)


@lru_cache(maxsize=256)
def _build(expr: GroupExpr, cap: int) -> FiniteGroup:
    G = _build_uncached(expr, cap)
    if G.order > cap:
        raise ClosureExceedsCap(f"{expr} has order {G.order} > cap {cap}")
    G.expr = expr
    return G


def _build_uncached(expr: GroupExpr, cap: int) -> FiniteGroup:
    if isinstance(expr, Cyclic):
        return cyclic(expr.n)
    if isinstance(expr, Dihedral):
        return dihedral(expr.n)
    if isinstance(expr, Quaternion8):
        return quaternion8()
    if isinstance(expr, Symmetric):
        return symmetric(expr.k)
    if isinstance(expr, Alternating):
        return alternating(expr.k)
    if isinstance(expr, ElemAbelian):
        return elementary_abelian(expr.p, expr.k)
    if isinstance(expr, Heis):
        return free_nilpotent_class2(expr.r, expr.m, cap=cap)
    if isinstance(expr, DirectProduct):
        return direct_product(_build(expr.left, cap), _build(expr.right, cap), cap=cap)
    if isinstance(expr, Wreath):
        return wreath_product(_build(expr.left, cap), _build(expr.right, cap), cap=cap)
    if isinstance(expr, PermExpr):
        _require(expr.degree >= 1, "Perm degree must be >= 1")
        try:
            gens = [perm_from_cycles(expr.degree, g, one_based=True) for g in expr.generators]
        except ValueError as exc:
            raise BadParameter(str(exc)) from None
        return generate_group(gens or [tuple(range(expr.degree))], cap=cap)
    raise TypeError(f"not a group expression: {expr!r}")


def perm_expr(G: FiniteGroup) -> PermExpr:
    gens = tuple(tuple(tuple(p + 1 for p in c) for c in cycles_of(g)) for g in G.generators)
    return PermExpr(G.degree, gens)


def expr_of(G: FiniteGroup) -> GroupExpr:
    """The expression ``G`` was built from, or an equivalent ``Perm(...)``."""
    return G.expr if G.expr is not None else perm_expr(G)


# catalogs -----------------------------------------------------------------

def abelian_exprs(max_order: int) -> list[GroupExpr]:
    """One expression per isomorphism class of abelian groups of order <= max_order."""
    from sympy import factorint
    out = [Cyclic(1)]
    for n in range(2, max_order + 1):
        per_prime = []
        for p, a in sorted(factorint(n).items()):
            choices = []
            for part in partitions(a):
                exps = sorted((e for e, k in part.items() for _ in range(k)), reverse=True)
                choices.append([p ** e for e in exps])
            per_prime.append(choices)
        for combo in itertools.product(*per_prime):
            factors = [Cyclic(q) for qs in combo for q in qs]
            out.append(product_expr(*factors))
    return out


_NONABELIAN_EXTRAS = [
    Quaternion8(), Symmetric(3), Symmetric(4), Alternating(4), Alternating(5), Heis(2, 3),
    DirectProduct(Dihedral(4), Cyclic(2)), DirectProduct(Quaternion8(), Cyclic(2)),
    DirectProduct(Dihedral(4), Cyclic(3)), DirectProduct(Quaternion8(), Cyclic(3)),
    DirectProduct(Symmetric(3), Cyclic(3)), DirectProduct(Alternating(4), Cyclic(2)),
    DirectProduct(Symmetric(3), Symmetric(3)), DirectProduct(Heis(2, 3), Cyclic(2)),
    Wreath(Cyclic(2), Cyclic(2)), Wreath(Cyclic(3), Cyclic(2)), Wreath(Cyclic(2), Cyclic(3)),
    Wreath(Cyclic(4), Cyclic(2)), Wreath(Cyclic(2), Cyclic(4)),
    Wreath(Cyclic(2), DirectProduct(Cyclic(2), Cyclic(2))),
]


def catalog_exprs(max_order: int = 100, abelian_max: int | None = None) -> list[GroupExpr]:
    """The standard test catalog: abelian groups, dihedral groups, and a
    handful of small non-abelian constructions, all of order <= max_order."""
    from .group import DEFAULT_CAP as _cap
    out = list(abelian_exprs(abelian_max if abelian_max is not None else max_order))
    out += [Dihedral(n) for n in range(3, max_order // 2 + 1)]
    for e in _NONABELIAN_EXTRAS:
        if _build(e, _cap).order <= max_order:
            out.append(e)
    return out
