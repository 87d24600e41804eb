"""Structural invariants: exponent, lower central series, abelian invariants,
Sylow, Fitting and Frattini subgroups, and the direct-power containment test.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint, primefactors

from .errors import ExponentMismatch, NotAbelian, OrderCapExceeded, TrivialGroupError
from .group import (SUBGROUP_CAP, FiniteGroup, Subgroup, _close, commutator_subgroup,
                    conjugate_subgroup, intersection, join, normalizer, quotient_group)
from .subgroups import enumerate_subgroups, maximal_subgroups


class _Marker(enum.Enum):
    NOT_NILPOTENT = "NotNilpotent"

    def __repr__(self):
        return self.value


NotNilpotent = _Marker.NOT_NILPOTENT


@dataclass(frozen=True)
class AbelianInvariants:
    """p-primary decomposition: ``{p: (a1, a2, ...)}`` with a1 >= a2 >= ..."""

    primary: dict[int, tuple[int, ...]]

    @property
    def order(self) -> int:
        return math.prod(p ** sum(a) for p, a in self.primary.items())

    @property
    def exponent(self) -> int:
        return math.prod(p ** a[0] for p, a in self.primary.items() if a)

    @property
    def cyclic_orders(self) -> list[int]:
        return [p ** e for p in sorted(self.primary) for e in self.primary[p]]

    def __str__(self):
        parts = [f"C{q}" for q in self.cyclic_orders]
        return " x ".join(parts) if parts else "trivial"


@dataclass(frozen=True)
class StructureReport:
    order: int
    exponent: int
    is_abelian: bool
    nilpotency_class: int | _Marker
    lcs_sizes: tuple[int, ...]
    abelian_invariants: AbelianInvariants | None = field(default=None)

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not NotNilpotent

    def to_dict(self) -> dict:
        inv = self.abelian_invariants
        return {
            "order": self.order,
            "exponent": self.exponent,
            "is_abelian": self.is_abelian,
            "nilpotency_class": (None if self.nilpotency_class is NotNilpotent
                                 else self.nilpotency_class),
            "lcs_sizes": list(self.lcs_sizes),
            "abelian_invariants": (None if inv is None
                                   else {str(p): list(a) for p, a in sorted(inv.primary.items())}),
        }

    @classmethod
    def from_dict(cls, d: dict) -> StructureReport:
        inv = d.get("abelian_invariants")
        return cls(
            order=d["order"],
            exponent=d["exponent"],
            is_abelian=d["is_abelian"],
            nilpotency_class=NotNilpotent if d["nilpotency_class"] is None else d["nilpotency_class"],
            lcs_sizes=tuple(d["lcs_sizes"]),
            abelian_invariants=(None if inv is None else
                                AbelianInvariants({int(p): tuple(a) for p, a in inv.items()})),
        )


def exponent(G: FiniteGroup) -> int:
    return int(np.lcm.reduce(G.element_orders))


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    """``[G, [G,G], [[G,G],G], ...]`` until the trivial group or the first repeat."""
    series = [G.whole]
    while series[-1].size > 1:
        nxt = commutator_subgroup(G, series[-1], G.whole)
        series.append(nxt)
        if nxt.size == series[-2].size:
            break
    return series


def nilpotency_class(G: FiniteGroup) -> int | _Marker:
    series = lower_central_series(G)
    if series[-1].size != 1:
        return NotNilpotent
    return len(series) - 1


def _p_elements(G: FiniteGroup, p: int) -> np.ndarray:
    orders = G.element_orders
    ok = np.ones(G.order, dtype=bool)
    rest = orders.copy()
    while True:
        div = (rest % p == 0) & (rest > 1)
        if not div.any():
            break
        rest = np.where(div, rest // p, rest)
    ok &= rest == 1
    return np.flatnonzero(ok)


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup (trivial when p does not divide the order)."""
    target = p ** factorint(G.order).get(p, 0)
    if target == 1:
        return G.trivial
    pel = _p_elements(G, p)
    if pel.size == target:
        # all p-elements fit in one Sylow subgroup: it is normal and unique
        return _close(G, pel.tolist())
    P = G.trivial
    while P.size < target:
        N = normalizer(G, P)
        cand = pel[N.mask[pel] & ~P.mask[pel]]
        P = _close(G, [int(cand[0])], base=P)
    return P


def abelian_invariants(G: FiniteGroup) -> AbelianInvariants:
    """Greedy splitting: a cyclic subgroup of maximal order in an abelian
    p-group is a direct summand, so peel it off and recurse in the quotient."""
    if not G.is_abelian:
        raise NotAbelian("abelian invariants need an abelian group")
    primary: dict[int, tuple[int, ...]] = {}
    for p in primefactors(G.order):
        H = sylow_subgroup(G, p).as_group()
        exps = []
        while H.order > 1:
            g = int(np.argmax(H.element_orders))
            q = int(H.element_orders[g])
            exps.append(round(math.log(q, p)))
            H = quotient_group(H, _close(H, [g]))
        primary[p] = tuple(exps)
    return AbelianInvariants(primary)


def fitting_subgroup(G: FiniteGroup, cap: int = SUBGROUP_CAP) -> Subgroup:
    """Join over p of O_p(G), the core of a Sylow p-subgroup."""
    if G.order > cap:
        raise OrderCapExceeded(f"order {G.order} exceeds cap {cap}")
    F = G.trivial
    for p in primefactors(G.order):
        P = sylow_subgroup(G, p)
        conj = {}
        for g in range(G.order):
            Q = conjugate_subgroup(G, P, g)
            conj.setdefault(Q.key, Q)
        Op = intersection(G, *conj.values())
        F = join(G, F, Op)
    return F


def frattini_subgroup(G: FiniteGroup, cap: int = SUBGROUP_CAP) -> Subgroup:
    if G.order > cap:
        raise OrderCapExceeded(f"order {G.order} exceeds cap {cap}")
    if G.order == 1:
        raise TrivialGroupError("the trivial group has no maximal subgroups")
    return intersection(G, *maximal_subgroups(G, enumerate_subgroups(G, cap)))


def contains_direct_power(B: FiniteGroup, n: int, c: int) -> bool:
    """Whether ``C_n^c`` embeds in the abelian group ``B`` of exponent ``n``.

    True iff, for each prime p | n, the top exponent of the p-primary part
    occurs at least ``c`` times.
    """
    if not B.is_abelian:
        raise NotAbelian("direct-power test needs an abelian group")
    e = exponent(B)
    if n != e:
        raise ExponentMismatch(f"n={n} but exponent is {e}")
    return has_direct_power(abelian_invariants(B), c)


def has_direct_power(inv: AbelianInvariants, c: int) -> bool:
    """Invariant-side half of :func:`contains_direct_power` (n is the exponent)."""
    for seq in inv.primary.values():
        if sum(1 for a in seq if a == seq[0]) < c:
            return False
    return True


def analyze(G: FiniteGroup) -> StructureReport:
    series = lower_central_series(G)
    cls = len(series) - 1 if series[-1].size == 1 else NotNilpotent
    ab = G.is_abelian
    return StructureReport(
        order=G.order,
        exponent=exponent(G),
        is_abelian=ab,
        nilpotency_class=cls,
        lcs_sizes=tuple(H.size for H in series),
        abelian_invariants=abelian_invariants(G) if ab else None,
    )
