"""Isomorphism testing by invariant screening and backtracking."""
from __future__ import annotations

from collections import Counter

import numpy as np

from .errors import OrderCapExceeded
from .group import (ISOMORPHISM_CAP, FiniteGroup, _small_generating_set, center,
                    commutator_subgroup, derived_subgroup)


def _class_sizes(G: FiniteGroup) -> np.ndarray:
    """Conjugacy class size of every element."""
    n = G.order
    allg = np.arange(n)
    if n == 1:
        return np.ones(1, dtype=np.int64)
    sizes = np.empty(n, dtype=np.int64)
    inv = G.inverse_indices
    for x in range(n):
        conj = G.mul_idx(G.mul_idx(inv[allg], x), allg)
        sizes[x] = np.unique(conj).size
    return sizes


def _lcs_sizes(G: FiniteGroup) -> list[int]:
    H = G.whole
    sizes = [H.size]
    while H.size > 1:
        K = commutator_subgroup(G, H, G.whole)
        if K.size == H.size:
            break
        H = K
        sizes.append(H.size)
    return sizes


def _signatures(G: FiniteGroup) -> np.ndarray:
    return G.element_orders * (G.order + 1) + _class_sizes(G)


def invariants(G: FiniteGroup) -> tuple:
    """Cheap isomorphism invariants; equal groups give equal tuples."""
    orders = tuple(sorted(Counter(G.element_orders.tolist()).items()))
    if G.is_abelian:
        return (G.order, True, orders)
    sigs = tuple(sorted(Counter(_signatures(G).tolist()).items()))
    return (G.order, False, orders, center(G).size, derived_subgroup(G).size,
            tuple(_lcs_sizes(G)), sigs)


def _extend(G: FiniteGroup, H: FiniteGroup, gens: list[int], imgs: list[int]) -> dict[int, int] | None:
    """Extend gens -> imgs over <gens>; None if inconsistent or not injective."""
    phi = {0: 0}
    used = {0}
    queue = [0]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        px = phi[x]
        for s, t in zip(gens, imgs):
            y = G.mul(x, s)
            py = H.mul(px, t)
            known = phi.get(y)
            if known is None:
                if py in used:
                    return None
                phi[y] = py
                used.add(py)
                queue.append(y)
            elif known != py:
                return None
    return phi


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, cap: int = ISOMORPHISM_CAP) -> dict[int, int] | None:
    """An isomorphism as an index map G -> H, or None."""
    for X in (G, H):
        if X.order > cap:
            raise OrderCapExceeded(f"order {X.order} exceeds isomorphism cap {cap}")
    if G.order != H.order:
        return None
    if G.order == 1:
        return {0: 0}
    if invariants(G) != invariants(H):
        return None
    sg, sh = _signatures(G), _signatures(H)
    gens = _small_generating_set(G, np.arange(G.order))
    cands = [np.flatnonzero(sh == sg[g]).tolist() for g in gens]

    def search(t: int, imgs: list[int]):
        if t == len(gens):
            phi = _extend(G, H, gens, imgs)
            return phi if phi is not None and len(phi) == G.order else None
        for c in cands[t]:
            trial = imgs + [c]
            if _extend(G, H, gens[:t + 1], trial) is not None:
                found = search(t + 1, trial)
                if found is not None:
                    return found
        return None

    return search(0, [])


def are_isomorphic(G: FiniteGroup, H: FiniteGroup, cap: int = ISOMORPHISM_CAP) -> bool:
    for X in (G, H):
        if X.order > cap:
            raise OrderCapExceeded(f"order {X.order} exceeds isomorphism cap {cap}")
    if G.order != H.order:
        return False
    if G.is_abelian and H.is_abelian:
        # element-order counts determine a finite abelian group
        return invariants(G) == invariants(H)
    return find_isomorphism(G, H, cap) is not None
