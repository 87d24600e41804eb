"""Free-group words, evaluation in finite groups, Hall basic commutators and
exhaustive or sampled law checking.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import ArityMismatch, ScanCapExceeded
from .group import FiniteGroup, Perm

SCAN_CAP = 10**8
_CHUNK = 1 << 18
_FIRST_CHUNK = 1 << 10  # chunks double up to _CHUNK so early violations stay cheap

Syllable = tuple[int, int]


@dataclass(frozen=True)
class Word:
    """A freely reduced word: ``syllables`` are ``(variable, exponent)`` pairs
    with 0-based variables.  ``label`` is a display form only."""

    syllables: tuple[Syllable, ...]
    rank: int
    label: str | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        for k, (v, e) in enumerate(self.syllables):
            if e == 0:
                raise ValueError("zero exponent in a reduced word")
            if not 0 <= v < self.rank:
                raise ValueError(f"variable x{v + 1} outside rank {self.rank}")
            if k and self.syllables[k - 1][0] == v:
                raise ValueError("adjacent syllables share a variable")

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def is_empty(self) -> bool:
        return not self.syllables

    def inverse(self) -> Word:
        return Word(tuple((v, -e) for v, e in reversed(self.syllables)), self.rank)

    def __mul__(self, other: Word) -> Word:
        return reduce(self.syllables + other.syllables, rank=max(self.rank, other.rank))

    def __str__(self):
        return self.label if self.label is not None else syllable_text(self)


def syllable_text(w: Word) -> str:
    if not w.syllables:
        return "1"
    return " ".join(f"x{v + 1}" if e == 1 else f"x{v + 1}^{e}" for v, e in w.syllables)


def reduce(raw: Sequence[Syllable], rank: int | None = None, label: str | None = None) -> Word:
    """Freely reduce a syllable sequence (stack-based, hence confluent)."""
    stack: list[list[int]] = []
    for v, e in raw:
        v, e = int(v), int(e)
        if e == 0:
            continue
        if stack and stack[-1][0] == v:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([v, e])
    syl = tuple((v, e) for v, e in stack)
    used = max((v for v, _ in syl), default=-1) + 1
    if rank is None:
        rank = used
    return Word(syl, max(rank, used), label)


def variable(i: int) -> Word:
    """The word ``x_i`` (1-based, as printed)."""
    return Word(((i - 1, 1),), i, f"x{i}")


def commutator_word(u: Word, v: Word) -> Word:
    """Reduced ``u^-1 v^-1 u v``."""
    w = reduce(u.inverse().syllables + v.inverse().syllables + u.syllables + v.syllables,
               rank=max(u.rank, v.rank))
    return Word(w.syllables, w.rank, f"[{u},{v}]")


def left_normed(*ws: Word) -> Word:
    out = ws[0]
    for w in ws[1:]:
        out = commutator_word(out, w)
    return out


def power_word(u: Word, e: int) -> Word:
    if e >= 0:
        raw = u.syllables * e
    else:
        raw = u.inverse().syllables * (-e)
    w = reduce(raw, rank=u.rank)
    text = str(u)
    base = text if _is_atom(text) else f"({text})"
    return Word(w.syllables, w.rank, f"{base}^{e}")


def _is_atom(text: str) -> bool:
    """A variable, or a single bracketed commutator."""
    if re.fullmatch(r"x\d+", text):
        return True
    if not text.startswith("["):
        return False
    depth = 0
    for k, ch in enumerate(text):
        depth += {"[": 1, "]": -1}.get(ch, 0)
        if depth == 0:
            return k == len(text) - 1
    return False


# evaluation ---------------------------------------------------------------

def _eval_indices(G: FiniteGroup, w: Word, cols: Sequence[np.ndarray]) -> np.ndarray:
    """Value of ``w`` at tuples given column-wise as element-index arrays."""
    n = len(cols[0]) if cols else 1
    out = np.zeros(n, dtype=np.intp)
    cache: dict[Syllable, np.ndarray] = {}
    for syl in w.syllables:
        val = cache.get(syl)
        if val is None:
            val = cache[syl] = G.pow_idx(cols[syl[0]], syl[1])
        out = G.mul_idx(out, val)
    return out


def evaluate(G: FiniteGroup, w: Word, tup: Sequence[Perm]) -> Perm:
    if len(tup) < w.rank:
        raise ArityMismatch(f"word of rank {w.rank} needs {w.rank} values, got {len(tup)}")
    cols = [np.array([G.index(g)]) for g in tup]
    return G.element(int(_eval_indices(G, w, cols)[0]))


# Hall basis ---------------------------------------------------------------

@dataclass(frozen=True)
class _Basic:
    word: Word
    weight: int
    text: str
    right: _Basic | None  # v for [u, v]; None for generators
    left: _Basic | None


def basic_commutators(rank: int, max_weight: int) -> list[tuple[Word, int]]:
    """Hall basic commutators on x1..x_rank of weight <= max_weight.

    Collection order: by weight, then by printed form.  ``[u, v]`` is basic
    when u, v are basic, u > v, and if ``u = [a, b]`` then ``b <= v``.
    """
    if rank < 1 or max_weight < 1:
        raise ValueError("rank and max_weight must be >= 1")
    by_weight: dict[int, list[_Basic]] = {1: []}
    for i in range(1, rank + 1):
        x = variable(i)
        by_weight[1].append(_Basic(x, 1, str(x), None, None))
    by_weight[1].sort(key=lambda b: b.text)

    def key(b: _Basic):
        return (b.weight, b.text)

    for w in range(2, max_weight + 1):
        found = []
        for wu in range(w - 1, 0, -1):
            wv = w - wu
            if wv > wu:
                continue
            for u in by_weight[wu]:
                for v in by_weight[wv]:
                    if not key(u) > key(v):
                        continue
                    if u.right is not None and key(u.right) > key(v):
                        continue
                    cw = commutator_word(u.word, v.word)
                    found.append(_Basic(cw, w, f"[{u.text},{v.text}]", v, u))
        found.sort(key=lambda b: b.text)
        by_weight[w] = found
    return [(b.word, b.weight) for w in range(1, max_weight + 1) for b in by_weight[w]]


def witt_count(rank: int, weight: int) -> int:
    """Dimension of the degree-``weight`` part of the free Lie algebra."""
    from sympy import divisors
    from sympy.functions.combinatorial.numbers import mobius
    total = sum(int(mobius(d)) * rank ** (weight // d) for d in divisors(weight))
    return total // weight


# enumeration --------------------------------------------------------------

def enumerate_words(rank: int, max_length: int) -> Iterator[Word]:
    """All freely reduced words of length 1..max_length, shortest first.

    Within a length, letters are ordered x1, x1^-1, x2, x2^-1, ...
    """
    if rank < 1 or max_length < 1:
        raise ValueError("rank and max_length must be >= 1")
    letters = [(v, s) for v in range(rank) for s in (1, -1)]

    def extend(prefix: list[Syllable], remaining: int) -> Iterator[tuple[Syllable, ...]]:
        if remaining == 0:
            yield tuple(prefix)
            return
        for a in letters:
            if prefix and prefix[-1][0] == a[0] and prefix[-1][1] == -a[1]:
                continue
            prefix.append(a)
            yield from extend(prefix, remaining - 1)
            prefix.pop()

    for length in range(1, max_length + 1):
        for seq in extend([], length):
            yield reduce(seq)


# law checking -------------------------------------------------------------

class LawStatus(enum.Enum):
    LAW = "law"
    VIOLATED = "violated"
    SAMPLED_NO_VIOLATION = "sampled-no-violation"


@dataclass(frozen=True)
class Sampled:
    count: int
    seed: int = 0


EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class LawCheckResult:
    status: LawStatus
    tuples_checked: int
    violating_tuple: tuple[Perm, ...] | None = None
    mode: str = EXHAUSTIVE
    seed: int | None = None

    @property
    def is_law(self) -> bool:
        return self.status is LawStatus.LAW

    @property
    def violated(self) -> bool:
        return self.status is LawStatus.VIOLATED

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "mode": self.mode,
            "tuples_checked": self.tuples_checked,
            "seed": self.seed,
            "violating_tuple": (None if self.violating_tuple is None
                                else [list(g) for g in self.violating_tuple]),
        }


def _scan_first_violation(G: FiniteGroup, w: Word, start: int, stop: int, k: int) -> int | None:
    lin = np.arange(start, stop, dtype=np.int64)
    cols = np.unravel_index(lin, (G.order,) * k) if k else ()
    vals = _eval_indices(G, w, [c.astype(np.intp) for c in cols]) if k else \
        _eval_indices(G, w, [])
    bad = np.flatnonzero(vals != 0)
    return int(lin[bad[0]]) if bad.size else None


def is_law(G: FiniteGroup, w: Word, mode: str | Sampled = EXHAUSTIVE,
           scan_cap: int = SCAN_CAP) -> LawCheckResult:
    """Check ``w`` on ``G``.

    Exhaustive mode walks all ``|G|^rank`` tuples in lexicographic order and
    reports the first violation.  Sampled mode only ever finds violations.
    """
    k = w.rank
    if isinstance(mode, Sampled):
        rng = np.random.default_rng(mode.seed)
        checked = 0
        step = _FIRST_CHUNK
        while checked < mode.count:
            m = min(step, mode.count - checked)
            step = min(2 * step, _CHUNK)
            cols = [rng.integers(0, G.order, size=m) for _ in range(k)]
            vals = _eval_indices(G, w, cols) if k else np.zeros(m, dtype=np.intp)
            bad = np.flatnonzero(vals != 0)
            if bad.size:
                j = int(bad[0])
                tup = tuple(G.element(int(c[j])) for c in cols)
                return LawCheckResult(LawStatus.VIOLATED, checked + j + 1, tup, "sampled", mode.seed)
            checked += m
        return LawCheckResult(LawStatus.SAMPLED_NO_VIOLATION, checked, None, "sampled", mode.seed)
    if mode != EXHAUSTIVE:
        raise ValueError(f"unknown mode {mode!r}")
    total = G.order ** k
    if total > scan_cap:
        raise ScanCapExceeded(f"{total} tuples exceed scan cap {scan_cap}")
    start = 0
    step = _FIRST_CHUNK
    while start < total:
        stop = min(total, start + step)
        step = min(2 * step, _CHUNK)
        hit = _scan_first_violation(G, w, start, stop, k)
        if hit is not None:
            coords = np.unravel_index(hit, (G.order,) * k)
            tup = tuple(G.element(int(c)) for c in coords)
            return LawCheckResult(LawStatus.VIOLATED, hit + 1, tup)
        start = stop
    return LawCheckResult(LawStatus.LAW, total)
