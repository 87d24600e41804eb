"""Finite permutation groups with full element enumeration.

A :class:`FiniteGroup` stores every element as a row of point images, sorted
lexicographically, so element ``0`` is always the identity and iteration order
is canonical.  Elements travel through the public API as plain tuples; the
heavy lifting happens on integer indices into the sorted element list.

Products follow the left-to-right convention: ``(a * b)[i] == b[a[i]]``,
i.e. apply ``a`` first.  Commutators are ``[a, b] = a^-1 b^-1 a b``.
"""
from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ClosureExceedsCap, DegreeMismatch, ForeignElement, NotNormal

DEFAULT_CAP = 2**20
ISOMORPHISM_CAP = 2048
SUBGROUP_CAP = 512
# multiplication tables are materialized only up to this order (order**2 int32)
TABLE_CAP = 2048

Perm = tuple[int, ...]

_HASH_KEYS = np.random.default_rng(0x5EED).integers(
    1, 2**63, size=1 << 16, dtype=np.uint64) | np.uint64(1)


# permutation helpers ------------------------------------------------------

def compose(a: Perm, b: Perm) -> Perm:
    """Product ``a * b``: apply ``a``, then ``b``."""
    return tuple(b[i] for i in a)


def invert(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]], one_based: bool = False) -> Perm:
    img = list(range(degree))
    seen = set()
    shift = 1 if one_based else 0
    for cyc in cycles:
        pts = [p - shift for p in cyc]
        for p in pts:
            if not 0 <= p < degree:
                raise DegreeMismatch(f"point {p + shift} outside 0..{degree - 1 + shift}")
            if p in seen:
                raise ValueError(f"point {p + shift} appears in more than one cycle")
            seen.add(p)
        for k, p in enumerate(pts):
            img[p] = pts[(k + 1) % len(pts)]
    return tuple(img)


def cycles_of(a: Perm) -> list[tuple[int, ...]]:
    """Disjoint-cycle decomposition, fixed points omitted, 0-based."""
    seen = [False] * len(a)
    out = []
    for start in range(len(a)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = a[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = a[j]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def perm_order(a: Perm) -> int:
    return math.lcm(1, *(len(c) for c in cycles_of(a)))


def _check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != degree:
        raise DegreeMismatch(f"expected degree {degree}, got {len(p)}")
    if sorted(p) != list(range(degree)):
        raise ValueError(f"{p} is not a permutation of 0..{degree - 1}")
    return p


def _hash_rows(rows: np.ndarray) -> np.ndarray:
    d = rows.shape[1]
    return rows.astype(np.uint64) @ _HASH_KEYS[:d]


def _compose_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.take_along_axis(b, a.astype(np.intp), axis=1)


def _invert_rows(a: np.ndarray) -> np.ndarray:
    return np.argsort(a, axis=1).astype(a.dtype)


# groups -------------------------------------------------------------------

class FiniteGroup:
    """A fully enumerated permutation group.

    Instances are built by :func:`generate_group` (or constructors that
    enumerate directly) and are immutable afterwards.
    """

    def __init__(self, rows: np.ndarray, generators: Sequence[Perm], expr=None):
        rows = np.ascontiguousarray(rows, dtype=np.uint16)
        rows.setflags(write=False)
        self._rows = rows
        self.degree = rows.shape[1]
        self.order = rows.shape[0]
        self.generators: tuple[Perm, ...] = tuple(tuple(int(x) for x in g) for g in generators)
        # optional GroupExpr this group was built from (set by constructions.build)
        self.expr = expr
        h = _hash_rows(rows)
        self._sorter = np.argsort(h, kind="stable")
        self._sorted_hash = h[self._sorter]
        self._fallback = None
        if self.order > 1 and np.any(self._sorted_hash[1:] == self._sorted_hash[:-1]):
            self._fallback = {r.tobytes(): i for i, r in enumerate(rows)}

    def __repr__(self):
        label = f" {self.expr}" if self.expr is not None else ""
        return f"<FiniteGroup{label} order={self.order} degree={self.degree}>"

    def __len__(self):
        return self.order

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        try:
            self.index(g)
        except (ForeignElement, DegreeMismatch, ValueError):
            return False
        return True

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        return tuple(map(tuple, self._rows.tolist()))

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    def element(self, i: int) -> Perm:
        return tuple(self._rows[i].tolist())

    def indices(self, rows) -> np.ndarray:
        """Vectorized element lookup; raises ForeignElement on a miss."""
        rows = np.asarray(rows)
        if rows.ndim != 2 or rows.shape[1] != self.degree:
            raise DegreeMismatch(f"rows of degree {self.degree} expected")
        if rows.shape[0] == 0:
            return np.zeros(0, dtype=np.intp)
        if self._fallback is not None:
            rows = np.ascontiguousarray(rows, dtype=np.uint16)
            try:
                return np.array([self._fallback[r.tobytes()] for r in rows], dtype=np.intp)
            except KeyError:
                raise ForeignElement("element not in group") from None
        h = _hash_rows(rows)
        pos = np.minimum(np.searchsorted(self._sorted_hash, h), self.order - 1)
        cand = self._sorter[pos]
        ok = (self._sorted_hash[pos] == h) & (self._rows[cand] == rows).all(axis=1)
        if not ok.all():
            bad = rows[int(np.flatnonzero(~ok)[0])]
            raise ForeignElement(f"{tuple(bad.tolist())} is not an element of {self!r}")
        return cand.astype(np.intp)

    def index(self, g) -> int:
        if isinstance(g, (int, np.integer)):
            if not 0 <= g < self.order:
                raise ForeignElement(f"index {g} out of range")
            return int(g)
        g = _check_perm(g, self.degree)
        return int(self.indices(np.array([g]))[0])

    # arithmetic on indices ------------------------------------------------

    @cached_property
    def table(self) -> np.ndarray | None:
        """``table[i, j] == index(elements[i] * elements[j])`` for small groups."""
        if self.order > TABLE_CAP:
            return None
        n = self.order
        gens = self.generator_indices
        right = {s: self._right_mult_column(s) for s in gens}
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n)
        done = np.zeros(n, dtype=bool)
        done[0] = True
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(right[s][x])
                    if not done[y]:
                        # g * y == (g * x) * s
                        table[:, y] = right[s][table[:, x]]
                        done[y] = True
                        nxt.append(y)
            frontier = nxt
        table.setflags(write=False)
        return table

    def _right_mult_column(self, s: int) -> np.ndarray:
        srow = self._rows[s].astype(np.intp)
        return self.indices(srow[self._rows]).astype(np.int32)

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        idx = self.indices(np.array(self.generators, dtype=np.uint16).reshape(-1, self.degree))
        return tuple(dict.fromkeys(int(i) for i in idx if i != 0)) or (0,)

    @cached_property
    def inverse_indices(self) -> np.ndarray:
        out = self.indices(_invert_rows(self._rows))
        out.setflags(write=False)
        return out

    def mul_idx(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.intp)
        b = np.asarray(b, dtype=np.intp)
        t = self.table
        if t is not None:
            return t[a, b].astype(np.intp)
        a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        out = self.indices(_compose_rows(self._rows[a.ravel()], self._rows[b.ravel()]))
        return out.reshape(shape)

    def mul(self, a: int, b: int) -> int:
        t = self.table
        if t is not None:
            return int(t[a, b])
        return int(self.mul_idx([a], [b])[0])

    def pow_idx(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.intp)
        if e < 0:
            a = self.inverse_indices[a]
            e = -e
        result = np.zeros_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul_idx(result, base)
            e >>= 1
            if e:
                base = self.mul_idx(base, base)
        return result

    def conj_idx(self, a, g) -> np.ndarray:
        """``g^-1 a g``."""
        g = np.asarray(g, dtype=np.intp)
        return self.mul_idx(self.mul_idx(self.inverse_indices[g], a), g)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        active = np.arange(1, n)
        cur = active.copy()
        k = 1
        while active.size:
            cur = self.mul_idx(cur, active)
            k += 1
            hit = cur == 0
            orders[active[hit]] = k
            active = active[~hit]
            cur = cur[~hit]
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, np.arange(self.order), self.generator_indices)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, np.array([0]), ())


class Subgroup:
    """A subgroup of ``parent`` stored as a sorted array of element indices."""

    def __init__(self, parent: FiniteGroup, indices, gens: Sequence[int] = ()):
        idx = np.unique(np.asarray(indices, dtype=np.intp))
        idx.setflags(write=False)
        self.parent = parent
        self.indices = idx
        self.gens: tuple[int, ...] = tuple(int(g) for g in gens if g != 0)

    def __repr__(self):
        return f"<Subgroup size={self.size} of {self.parent!r}>"

    @property
    def size(self) -> int:
        return int(self.indices.size)

    def __len__(self):
        return self.size

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.indices.tolist())

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.indices] = True
        m.setflags(write=False)
        return m

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    @property
    def elements(self) -> tuple[Perm, ...]:
        return tuple(self.parent.element(i) for i in self.indices)

    def __contains__(self, g) -> bool:
        try:
            i = self.parent.index(g)
        except (ForeignElement, DegreeMismatch, ValueError):
            return False
        return bool(self.mask[i])

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and np.array_equal(other.indices, self.indices))

    def __hash__(self):
        return hash((id(self.parent), self.key))

    def issubset(self, other: Subgroup) -> bool:
        return bool(other.mask[self.indices].all())

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group on the parent's points."""
        G = self.parent
        rows = G.rows[self.indices]
        gens = [G.element(g) for g in self.gens] or [G.identity]
        return FiniteGroup(rows, gens)


# generation ---------------------------------------------------------------

def generate_group(generators: Sequence[Sequence[int]], cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Enumerate the closure of ``generators`` by breadth-first search.

    Raises ClosureExceedsCap as soon as more than ``cap`` elements are found.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    degree = len(generators[0])
    for g in generators:
        if len(g) != degree:
            raise DegreeMismatch(f"generators of degrees {degree} and {len(g)}")
    gens = [_check_perm(g, degree) for g in generators]
    if degree >= 1 << 16:
        raise ValueError("degree must be below 65536")
    grows = [np.array(g, dtype=np.intp) for g in gens]
    ident = np.arange(degree, dtype=np.uint16)[None, :]
    seen = {ident.tobytes()}
    chunks = [ident]
    frontier = ident
    total = 1
    while frontier.shape[0]:
        cand = np.concatenate([g[frontier] for g in grows]).astype(np.uint16)
        fresh = []
        for k, r in enumerate(cand):
            b = r.tobytes()
            if b not in seen:
                seen.add(b)
                fresh.append(k)
        total += len(fresh)
        if total > cap:
            raise ClosureExceedsCap(f"closure exceeds cap of {cap} elements")
        frontier = cand[fresh]
        if len(fresh):
            chunks.append(frontier)
    rows = np.concatenate(chunks)
    rows = rows[np.lexsort(rows.T[::-1])]
    return FiniteGroup(rows, gens)


def trivial_group(degree: int = 1) -> FiniteGroup:
    return FiniteGroup(np.arange(degree, dtype=np.uint16)[None, :], [tuple(range(degree))])


def _as_indices(G: FiniteGroup, S) -> list[int]:
    if isinstance(S, Subgroup):
        if S.parent is not G:
            raise ForeignElement("subgroup belongs to another group")
        return list(S.gens)
    return [G.index(s) for s in S]


def _close(G: FiniteGroup, gens: Sequence[int], base: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by ``base`` together with ``gens``.

    The result is assembled from right cosets of ``base``; every reached coset
    is closed under right multiplication by all generators.
    """
    gens = [int(g) for g in gens if g != 0]
    if base is None:
        base = G.trivial
    all_gens = list(dict.fromkeys(list(base.gens) + gens))
    mask = base.mask.copy()
    if base.size == 1:
        frontier = np.array([0], dtype=np.intp)
        garr = np.array(all_gens, dtype=np.intp)
        while frontier.size and garr.size:
            ys = np.unique(G.mul_idx(np.repeat(frontier, garr.size), np.tile(garr, frontier.size)))
            ys = ys[~mask[ys]]
            mask[ys] = True
            frontier = ys
    else:
        reps = [0]
        i = 0
        while i < len(reps):
            r = reps[i]
            i += 1
            for s in all_gens:
                y = G.mul(r, s)
                if not mask[y]:
                    mask[G.mul_idx(base.indices, y)] = True
                    reps.append(y)
    return Subgroup(G, np.flatnonzero(mask), all_gens)


def subgroup_generated(G: FiniteGroup, S) -> Subgroup:
    """Smallest subgroup of ``G`` containing the elements ``S``."""
    return _close(G, _as_indices(G, S))


def join(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    return _close(G, K.gens, base=H)


def intersection(G: FiniteGroup, *subs: Subgroup) -> Subgroup:
    mask = np.ones(G.order, dtype=bool)
    for H in subs:
        mask &= H.mask
    idx = np.flatnonzero(mask)
    return Subgroup(G, idx, _small_generating_set(G, idx))


def _small_generating_set(G: FiniteGroup, idx) -> list[int]:
    """Greedy generating set for the subgroup with element indices ``idx``."""
    idx = np.asarray(idx, dtype=np.intp)
    target = idx.size
    order_key = np.argsort(-G.element_orders[idx], kind="stable")
    H = G.trivial
    gens: list[int] = []
    for i in idx[order_key]:
        if H.size == target:
            break
        if not H.mask[i]:
            gens.append(int(i))
            H = _close(G, [int(i)], base=H)
    return gens


def _normal_closure_in(G: FiniteGroup, gens: Sequence[int], conj_by: Sequence[int]) -> Subgroup:
    N = _close(G, gens)
    queue = list(N.gens)
    while queue:
        n = queue.pop()
        for g in conj_by:
            c = int(G.conj_idx(n, g))
            if not N.mask[c]:
                N = _close(G, [c], base=N)
                queue.append(c)
    return N


def normal_closure(G: FiniteGroup, S) -> Subgroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    return _normal_closure_in(G, _as_indices(G, S), G.generator_indices)


def is_normal(G: FiniteGroup, N: Subgroup, within: Subgroup | None = None) -> bool:
    conj_by = (within or G.whole).gens
    for n in N.gens:
        c = G.conj_idx(n, np.array(conj_by, dtype=np.intp))
        if not N.mask[c].all():
            return False
    return True


def commutator_subgroup(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """``[H, K]``: normal closure in ``<H, K>`` of the generator commutators."""
    for X in (H, K):
        if X.parent is not G:
            raise ForeignElement("subgroup belongs to another group")
    hs = np.array(H.gens, dtype=np.intp)
    ks = np.array(K.gens, dtype=np.intp)
    if hs.size == 0 or ks.size == 0:
        return G.trivial
    a = np.repeat(hs, ks.size)
    b = np.tile(ks, hs.size)
    inv = G.inverse_indices
    comms = G.mul_idx(G.mul_idx(inv[a], inv[b]), G.mul_idx(a, b))
    conj_by = list(dict.fromkeys(H.gens + K.gens))
    return _normal_closure_in(G, np.unique(comms).tolist(), conj_by)


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    return commutator_subgroup(G, G.whole, G.whole)


def center(G: FiniteGroup) -> Subgroup:
    gens = np.array(G.generator_indices, dtype=np.intp)
    allx = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for s in gens:
        mask &= G.mul_idx(allx, s) == G.mul_idx(s, allx)
    idx = np.flatnonzero(mask)
    return Subgroup(G, idx, _small_generating_set(G, idx))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    mask = np.ones(G.order, dtype=bool)
    allx = np.arange(G.order)
    for h in H.gens:
        mask &= H.mask[G.conj_idx(h, allx)]
    idx = np.flatnonzero(mask)
    return Subgroup(G, idx, _small_generating_set(G, idx))


def conjugate_subgroup(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    idx = G.conj_idx(H.indices, g)
    gens = G.conj_idx(np.array(H.gens, dtype=np.intp), g).tolist() if H.gens else []
    return Subgroup(G, idx, gens)


def coset_ids(G: FiniteGroup, N: Subgroup) -> tuple[np.ndarray, list[int]]:
    """Label each element by its left coset ``gN``; representatives are the
    lexicographically least members (smallest index)."""
    ids = np.full(G.order, -1, dtype=np.intp)
    reps: list[int] = []
    for g in range(G.order):
        if ids[g] < 0:
            ids[G.mul_idx(g, N.indices)] = len(reps)
            reps.append(g)
    return ids, reps


def quotient_group(G: FiniteGroup, N: Subgroup) -> FiniteGroup:
    """``G/N`` realized by the regular action on cosets."""
    if N.parent is not G:
        raise ForeignElement("subgroup belongs to another group")
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    ids, reps = coset_ids(G, N)
    r = np.array(reps, dtype=np.intp)
    gens = [tuple(ids[G.mul_idx(r, s)].tolist()) for s in G.generator_indices]
    return generate_group(gens, cap=max(len(reps), 1))


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """``G x H`` acting on the disjoint union of the two point sets."""
    n = G.order * H.order
    if n > cap:
        raise ClosureExceedsCap(f"direct product order {n} exceeds cap {cap}")
    dG = G.degree
    left = np.repeat(G.rows, H.order, axis=0)
    right = np.tile(H.rows.astype(np.intp) + dG, (G.order, 1))
    rows = np.concatenate([left, right], axis=1)
    idH = tuple(range(dG, dG + H.degree))
    gens = [g + idH for g in G.generators] + [G.identity + tuple(x + dG for x in h) for h in H.generators]
    return FiniteGroup(rows, gens)


def element_order(G: FiniteGroup, g) -> int:
    return int(G.element_orders[G.index(g)])
