"""Decisions about varieties generated by wreath products of finite groups.

``decide_criterion(A, B)`` settles whether ``var(A wr B) = var(A) var(B)``
from three checkable conditions:

(a) ``exp A`` and ``exp B`` are coprime;
(b) ``A`` is nilpotent and ``B`` is abelian;
(c) ``B`` contains ``C_n^c`` with ``n = exp B`` and ``c`` the class of ``A``.

Negative verdicts can be corroborated by a :class:`SeparationCertificate`: a
word that is a law of ``A wr B`` (checked on every tuple) but fails in a
witness group that lies in ``var(A) var(B)`` by construction.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterator

import numpy as np
from sympy import factorint, primefactors

from .constructions import (Cyclic, DirectProduct, GroupExpr, Wreath, build, expr_of,
                            power_expr)
from .errors import ClosureExceedsCap, PreconditionFailed, ScanCapExceeded, TrivialGroupError
from .group import DEFAULT_CAP, SUBGROUP_CAP, FiniteGroup, Subgroup, direct_product, is_normal, \
    quotient_group
from .isomorphism import are_isomorphic
from .structure import NotNilpotent, StructureReport, analyze, has_direct_power
from .subgroups import enumerate_subgroups
from .words import (EXHAUSTIVE, SCAN_CAP, LawStatus, Sampled, Word, _eval_indices,
                    basic_commutators, enumerate_words, is_law, left_normed, power_word,
                    variable)


class Verdict(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    TRIVIAL_FACTOR = "TrivialFactor"


@dataclass(frozen=True)
class ConditionA:
    exp_A: int
    exp_B: int
    gcd: int
    passed: bool


@dataclass(frozen=True)
class ConditionB:
    class_A: int | None  # None: A is not nilpotent
    abelian_B: bool
    passed: bool


@dataclass(frozen=True)
class ConditionC:
    required: tuple[int, int]  # (n, c): B must contain C_n^c
    passed: bool


@dataclass(frozen=True)
class CriterionVerdict:
    verdict: Verdict
    cond_a: ConditionA | None
    cond_b: ConditionB | None
    cond_c: ConditionC | None
    reading: str = "wreath"  # "circ" when produced by decide_circ_product

    @property
    def failing(self) -> str | None:
        for name in ("a", "b", "c"):
            cond = getattr(self, f"cond_{name}")
            if cond is not None and not cond.passed:
                return name
        return None

    def to_dict(self) -> dict:
        def part(c):
            return None if c is None else asdict(c)
        d = {"verdict": self.verdict.value, "reading": self.reading,
             "cond_a": part(self.cond_a), "cond_b": part(self.cond_b), "cond_c": part(self.cond_c)}
        if d["cond_c"] is not None:
            d["cond_c"]["required"] = list(self.cond_c.required)
        return d


def _report(G: FiniteGroup | StructureReport) -> StructureReport:
    return G if isinstance(G, StructureReport) else analyze(G)


def decide_from_reports(rep_A: StructureReport, rep_B: StructureReport,
                        reading: str = "wreath") -> CriterionVerdict:
    if rep_A.order == 1 or rep_B.order == 1:
        return CriterionVerdict(Verdict.TRIVIAL_FACTOR, None, None, None, reading)
    m, n = rep_A.exponent, rep_B.exponent
    g = math.gcd(m, n)
    a = ConditionA(m, n, g, g == 1)
    if not a.passed:
        return CriterionVerdict(Verdict.NOT_EQUAL, a, None, None, reading)
    cls = None if rep_A.nilpotency_class is NotNilpotent else rep_A.nilpotency_class
    b = ConditionB(cls, rep_B.is_abelian, cls is not None and rep_B.is_abelian)
    if not b.passed:
        return CriterionVerdict(Verdict.NOT_EQUAL, a, b, None, reading)
    c = ConditionC((n, cls), has_direct_power(rep_B.abelian_invariants, cls))
    return CriterionVerdict(Verdict.EQUAL if c.passed else Verdict.NOT_EQUAL, a, b, c, reading)


def decide_criterion(A, B) -> CriterionVerdict:
    """Whether ``var(A wr B) = var(A) var(B)``; a trivial factor gives TRIVIAL_FACTOR.

    ``A`` and ``B`` may be groups or precomputed structure reports.
    """
    return decide_from_reports(_report(A), _report(B))


def decide_circ_product(A, G) -> CriterionVerdict:
    """Whether ``var(A) o G = var(A) var(G)``: same three conditions, read for the
    variety generated by ``A`` and extensions by ``G``."""
    rA, rG = _report(A), _report(G)
    if rA.order == 1 or rG.order == 1:
        raise TrivialGroupError("both groups must be non-trivial")
    return decide_from_reports(rA, rG, reading="circ")


@dataclass(frozen=True)
class FiniteGeneration:
    holds: bool
    cond_a: ConditionA
    cond_b: ConditionB

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "cond_a": asdict(self.cond_a), "cond_b": asdict(self.cond_b)}


def decide_finite_generation(A, B) -> FiniteGeneration:
    """Whether ``var(A) var(B)`` is generated by some finite group."""
    rA, rB = _report(A), _report(B)
    if rA.order == 1 or rB.order == 1:
        raise TrivialGroupError("both groups must be non-trivial")
    g = math.gcd(rA.exponent, rB.exponent)
    a = ConditionA(rA.exponent, rB.exponent, g, g == 1)
    cls = None if rA.nilpotency_class is NotNilpotent else rA.nilpotency_class
    b = ConditionB(cls, rB.is_abelian, cls is not None and rB.is_abelian)
    return FiniteGeneration(a.passed and b.passed, a, b)


# witnesses ----------------------------------------------------------------

@dataclass
class Witness:
    expr: GroupExpr
    kind: str
    route: str
    group: FiniteGroup | None = None


def canonical_witness_expr(A_expr: GroupExpr, n: int, c: int) -> GroupExpr:
    return Wreath(A_expr, power_expr(Cyclic(n), c))


def canonical_witness(A: FiniteGroup, B: FiniteGroup, cap: int = DEFAULT_CAP) -> Witness:
    """``A wr C_n^c`` for ``n = exp B`` and ``c`` the class of ``A``.

    It lies in ``var(A) var(B)`` and is used when (a) and (b) hold but (c)
    fails.  Raises ClosureExceedsCap when it cannot be enumerated.
    """
    v = decide_criterion(A, B)
    if v.verdict is not Verdict.NOT_EQUAL or v.failing != "c":
        raise PreconditionFailed(
            f"canonical witness needs (a) and (b) to hold and (c) to fail; verdict {v.verdict.value}"
            + (f", failing condition ({v.failing})" if v.failing else ""))
    n, c = v.cond_c.required
    expr = canonical_witness_expr(expr_of(A), n, c)
    kind = (f"A wr C_{n}^{c}: base is a direct power of A, top C_{n}^{c} has exponent "
            f"n = exp B and is abelian, so it lies in var(B)")
    return Witness(expr, kind, "class", build(expr, cap))


def witness_order(A_order: int, n: int, c: int) -> int:
    return A_order ** (n ** c) * n ** c


def _witness_candidates(A: FiniteGroup, B: FiniteGroup, v: CriterionVerdict,
                        law_report: StructureReport | None) -> list[Witness]:
    out = []
    eA, eB = expr_of(A), expr_of(B)
    if v.failing == "a":
        m, n = v.cond_a.exp_A, v.cond_a.exp_B
        for q in primefactors(v.cond_a.gcd):
            qa = q ** factorint(m)[q]
            qb = q ** factorint(n)[q]
            out.append(Witness(Cyclic(qa * qb),
                               f"C_{qa * qb}: extension of C_{qa} (in var A) by C_{qb} (in var B)",
                               "exponent"))
            k = 2
            if law_report is not None and law_report.nilpotency_class is not NotNilpotent:
                k = max(1, -(-law_report.nilpotency_class // (q - 1)))
                while k * (q - 1) + 1 <= law_report.nilpotency_class:
                    k += 1
            out.append(Witness(Wreath(Cyclic(q), power_expr(Cyclic(q), k)),
                               f"C_{q} wr C_{q}^{k}: base is a power of C_{q} (in var A), "
                               f"top C_{q}^{k} lies in var B; class {k * (q - 1) + 1}",
                               "class"))
    elif v.failing == "b":
        out.append(Witness(Wreath(eA, DirectProduct(eB, eB)),
                           "A wr (B x B): extension of a power of A by B x B", "product"))
        p = primefactors(v.cond_a.exp_A)[0]
        out.append(Witness(Wreath(Cyclic(p), DirectProduct(eB, eB)),
                           f"C_{p} wr (B x B): C_{p} embeds in A, B x B lies in var B", "product"))
    elif v.failing == "c":
        n, c = v.cond_c.required
        out.append(Witness(canonical_witness_expr(eA, n, c),
                           f"A wr C_{n}^{c}: base is a direct power of A, top C_{n}^{c} lies in var B",
                           "class"))
    return out


# certificates -------------------------------------------------------------

CERT_VERSION = 1


@dataclass(frozen=True)
class SearchBudget:
    max_arity: int = 3
    max_length: int = 10
    use_hall_basis: bool = True
    sample_count: int = 10**5
    seed: int = 0
    max_words: int = 256
    max_power: int = 2
    scan_cap: int = SCAN_CAP
    witness_cap: int = 2**18  # larger witnesses are recorded in the frontier, not built


@dataclass(frozen=True)
class SeparationCertificate:
    word: Word
    law_group: str
    law_check: dict
    witness_group: str
    violating_tuple: tuple[tuple[int, ...], ...]
    violation_value: tuple[int, ...]
    witness_scan: dict
    witness_kind: str
    route: str

    def to_dict(self) -> dict:
        return {
            "version": CERT_VERSION,
            "kind": "separation-certificate",
            "word": str(self.word),
            "syllables": [[v, e] for v, e in self.word.syllables],
            "rank": self.word.rank,
            "law_side": {"group": self.law_group, "scan": self.law_check},
            "violation_side": {
                "group": self.witness_group,
                "tuple": [list(g) for g in self.violating_tuple],
                "value": list(self.violation_value),
                "scan": self.witness_scan,
            },
            "witness_kind": self.witness_kind,
            "route": self.route,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> SeparationCertificate:
        from .dsl import parse_word
        if d.get("version") != CERT_VERSION:
            raise ValueError(f"unsupported certificate version {d.get('version')!r}")
        w = parse_word(d["word"])
        if [list(s) for s in w.syllables] != d["syllables"] or w.rank != d["rank"]:
            raise ValueError("word text and syllables disagree")
        vs = d["violation_side"]
        return cls(w, d["law_side"]["group"], d["law_side"]["scan"], vs["group"],
                   tuple(tuple(g) for g in vs["tuple"]), tuple(vs["value"]), vs["scan"],
                   d["witness_kind"], d["route"])

    def replay(self, cap: int = DEFAULT_CAP, scan_cap: int = SCAN_CAP) -> bool:
        """Re-run both sides from scratch."""
        from .words import evaluate
        L = build(self.law_group, cap)
        res = is_law(L, self.word, EXHAUSTIVE, scan_cap)
        if not res.is_law or res.tuples_checked != self.law_check.get("tuples_checked"):
            return False
        W = build(self.witness_group, cap)
        if len(self.violating_tuple) < self.word.rank:
            return False
        if not all(g in W for g in self.violating_tuple):
            return False
        val = evaluate(W, self.word, self.violating_tuple)
        return val != W.identity and val == self.violation_value


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    frontier: tuple[dict, ...] = ()

    def to_dict(self) -> dict:
        return {"kind": "inconclusive", "reason": self.reason, "frontier": list(self.frontier)}


def candidate_words(budget: SearchBudget, exponent: int | None = None) -> Iterator[Word]:
    """Separation candidates in canonical order.

    1. commutator words by weight: the left-normed ``[x1, ..., xw]`` first,
       then the Hall basic commutators of that weight on ``max_arity`` letters;
    2. the exponent word ``x1^exponent`` (exempt from the length bound);
    3. reduced words from ``enumerate_words``, at most ``max_words`` new ones.
    """
    seen: set[Word] = set()
    k = budget.max_arity

    def fresh(w: Word) -> bool:
        if w in seen or w.rank > k:
            return False
        seen.add(w)
        return True

    if budget.use_hall_basis:
        weight = 1
        basics = {}
        while True:
            batch = []
            if 2 <= weight <= k:
                batch.append(left_normed(*(variable(i) for i in range(1, weight + 1))))
            if weight not in basics:
                for w, wt in basic_commutators(k, weight):
                    basics.setdefault(wt, []).append(w)
            batch += basics.get(weight, [])
            fitting = [w for w in batch if w.length <= budget.max_length]
            if not fitting and weight > 1:
                break
            for w in fitting:
                if fresh(w):
                    yield w
            basics.clear()
            weight += 1
    if exponent is not None and exponent > 1:
        w = power_word(variable(1), exponent)
        if fresh(w):
            yield w
    emitted = 0
    for w in enumerate_words(k, budget.max_length):
        if emitted >= budget.max_words:
            break
        if fresh(w):
            emitted += 1
            yield w


def _violation(W: FiniteGroup, w: Word, budget: SearchBudget):
    if W.order ** w.rank <= budget.sample_count:
        return is_law(W, w, EXHAUSTIVE)
    return is_law(W, w, Sampled(budget.sample_count, budget.seed))


def separation_search(L: FiniteGroup, W: FiniteGroup, budget: SearchBudget = SearchBudget(),
                      law_exponent: int | None = None, kind: str = "", route: str = "",
                      stats: dict | None = None) -> SeparationCertificate | None:
    """First candidate word that is a law of ``L`` and fails in ``W``."""
    if stats is None:
        stats = {}
    stats.setdefault("words_tried", 0)
    stats.setdefault("skipped_scan_cap", 0)
    for w in candidate_words(budget, law_exponent):
        stats["words_tried"] += 1
        wres = _violation(W, w, budget)
        if wres.status is not LawStatus.VIOLATED:
            continue
        try:
            lres = is_law(L, w, EXHAUSTIVE, budget.scan_cap)
        except ScanCapExceeded:
            stats["skipped_scan_cap"] += 1
            continue
        if not lres.is_law:
            continue
        tup = wres.violating_tuple
        cols = [np.array([W.index(g)]) for g in tup]
        value = W.element(int(_eval_indices(W, w, cols)[0]))
        wscan = {"mode": wres.mode, "tuples_checked": wres.tuples_checked, "seed": wres.seed}
        return SeparationCertificate(
            word=w, law_group=str(expr_of(L)), law_check=lres.to_dict(),
            witness_group=str(expr_of(W)), violating_tuple=tup, violation_value=value,
            witness_scan=wscan, witness_kind=kind, route=route)
    return None


def find_separating_law(A: FiniteGroup, B: FiniteGroup, budget: SearchBudget = SearchBudget(),
                        cap: int = DEFAULT_CAP) -> SeparationCertificate | Inconclusive:
    """Certify a NotEqual verdict by a law of ``A wr B`` failing in a witness.

    Witness groups are tried in a fixed order per failing condition, and
    candidate words in :func:`candidate_words` order; the first hit wins.
    """
    from .structure import exponent as _exp
    v = decide_criterion(A, B)
    if v.verdict is not Verdict.NOT_EQUAL:
        raise PreconditionFailed(f"verdict is {v.verdict.value}; nothing to separate")
    law_expr = Wreath(expr_of(A), expr_of(B))
    try:
        L = build(law_expr, cap)
    except ClosureExceedsCap as exc:
        return Inconclusive(f"{law_expr} cannot be enumerated: {exc}")
    law_report = analyze(L) if v.failing == "a" else None
    law_exp = _exp(L)
    frontier = []
    for wit in _witness_candidates(A, B, v, law_report):
        entry = {"witness": str(wit.expr), "route": wit.route}
        try:
            W = build(wit.expr, min(cap, budget.witness_cap))
        except ClosureExceedsCap as exc:
            entry["status"] = f"over cap: {exc}"
            frontier.append(entry)
            continue
        stats: dict = {}
        cert = separation_search(L, W, budget, law_exp, wit.kind, wit.route, stats)
        if cert is not None:
            return cert
        entry.update(status="searched", **stats)
        frontier.append(entry)
    return Inconclusive("no separating word within budget", tuple(frontier))


# membership ---------------------------------------------------------------

class Membership(enum.Enum):
    MEMBER = "Member"
    NOT_MEMBER = "NotMember"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class MembershipResult:
    status: Membership
    certificate: SeparationCertificate | None = None
    detail: dict = field(default_factory=dict)

    @property
    def word(self) -> Word | None:
        return None if self.certificate is None else self.certificate.word

    def to_dict(self) -> dict:
        return {"status": self.status.value,
                "certificate": None if self.certificate is None else self.certificate.to_dict(),
                "detail": self.detail}


def _qsc_witness(G: FiniteGroup, H: FiniteGroup, k: int) -> dict | None:
    """Search for G as a quotient of a subgroup of H^k (|H^k| <= subgroup cap)."""
    P = H
    for _ in range(k - 1):
        P = direct_product(P, H)
    if P.order > SUBGROUP_CAP:
        return None
    subs = enumerate_subgroups(P)
    for S in subs:
        if S.size % G.order:
            continue
        need = S.size // G.order
        Sg = S.as_group()
        if need == 1:
            if are_isomorphic(Sg, G):
                return {"power": k, "subgroup_order": S.size, "kernel_order": 1}
            continue
        for N in subs:
            if N.size != need or not N.issubset(S):
                continue
            pos = np.searchsorted(S.indices, N.indices)
            gens = np.searchsorted(S.indices, np.array(N.gens, dtype=np.intp)).tolist()
            Ns = Subgroup(Sg, pos, gens)
            if is_normal(Sg, Ns) and are_isomorphic(quotient_group(Sg, Ns), G):
                return {"power": k, "subgroup_order": S.size, "kernel_order": N.size}
    return None


def is_in_variety(G: FiniteGroup, H: FiniteGroup, budget: SearchBudget = SearchBudget()) -> MembershipResult:
    """Decide ``G in var(H)`` when a bounded search settles it.

    Member only with an explicit quotient-of-subgroup-of-power witness;
    NotMember only with a law of ``H`` that fails in ``G``.
    """
    from .structure import exponent as _exp
    if G.order <= SUBGROUP_CAP and H.order <= SUBGROUP_CAP:
        found = _qsc_witness(G, H, 1)
        if found is not None:
            return MembershipResult(Membership.MEMBER, detail=found)
    cert = separation_search(H, G, budget, _exp(H), "input group", "membership")
    if cert is not None:
        return MembershipResult(Membership.NOT_MEMBER, cert)
    for k in range(2, budget.max_power + 1):
        if H.order ** k > SUBGROUP_CAP or G.order > SUBGROUP_CAP:
            break
        found = _qsc_witness(G, H, k)
        if found is not None:
            return MembershipResult(Membership.MEMBER, detail=found)
    return MembershipResult(Membership.INCONCLUSIVE, detail={"max_power": budget.max_power})
