"""Subgroup lattice enumeration for small groups."""
from __future__ import annotations

import numpy as np

from .errors import OrderCapExceeded
from .group import SUBGROUP_CAP, FiniteGroup, Subgroup, _close


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    found: list[Subgroup] = []
    # elements already known to generate one of the found subgroups
    covered = np.zeros(G.order, dtype=bool)
    orders = G.element_orders
    for g in range(1, G.order):
        if covered[g]:
            continue
        C = _close(G, [g])
        found.append(C)
        covered[C.indices[orders[C.indices] == orders[g]]] = True
    return sorted(found, key=lambda H: (H.size, H.indices.tolist()))


def enumerate_subgroups(G: FiniteGroup, cap: int = SUBGROUP_CAP) -> list[Subgroup]:
    """All subgroups of ``G``, each once, ordered by size then members.

    Every subgroup is a join of cyclic subgroups, so the lattice is grown
    layer by layer from the cyclic ones.
    """
    if G.order > cap:
        raise OrderCapExceeded(f"order {G.order} exceeds subgroup-enumeration cap {cap}")
    cyclic = cyclic_subgroups(G)
    gens = [C.gens[0] for C in cyclic]
    subs: dict[bytes, Subgroup] = {G.trivial.key: G.trivial}
    for C in cyclic:
        subs[C.key] = C
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for H in frontier:
            if H.size == G.order:
                continue
            for g in gens:
                if H.mask[g]:
                    continue
                K = _close(G, [g], base=H)
                if K.key not in subs:
                    subs[K.key] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(subs.values(), key=lambda H: (H.size, H.indices.tolist()))


def maximal_subgroups(G: FiniteGroup, subs: list[Subgroup] | None = None) -> list[Subgroup]:
    if subs is None:
        subs = enumerate_subgroups(G)
    proper = [H for H in subs if H.size < G.order]
    bits = [int.from_bytes(H.key, "big") for H in proper]
    out = []
    for i, H in enumerate(proper):
        b = bits[i]
        if not any(proper[j].size > H.size and (bits[j] & b) == b for j in range(len(proper))):
            out.append(H)
    return out
