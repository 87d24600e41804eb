"""Command-line front end: ``wreathvar <command> ...``.

Global flags (--json, --cap, --cache, --seed) go after the command name.

Exit codes: 0 Equal / true / Law / Member / certificate found or valid,
1 NotEqual / false / Violated / NotMember / invalid certificate,
2 Inconclusive or sampled without violation, 3 parse error,
4 cap exceeded, 5 any other error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .constructions import build, catalog_exprs
from .dsl import parse_group_expr, parse_word
from .errors import (ClosureExceedsCap, GroupError, OrderCapExceeded, ParseError,
                     ScanCapExceeded)
from .group import DEFAULT_CAP
from .structure import StructureReport, analyze
from .variety import (Inconclusive, Membership, SearchBudget, SeparationCertificate, Verdict,
                      decide_circ_product, decide_finite_generation, decide_from_reports,
                      find_separating_law, is_in_variety)
from .words import EXHAUSTIVE, LawStatus, Sampled, is_law

CACHE_VERSION = 1

EXIT_PARSE = 3
EXIT_CAP = 4
EXIT_ERROR = 5


class ReportCache:
    """One JSON document per (canonical expression, cap) key."""

    def __init__(self, directory: str | None):
        self.dir = Path(directory) if directory else None
        if self.dir is not None:
            self.dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(text: str, cap: int) -> str:
        return hashlib.sha256(f"{text}\ncap={cap}".encode()).hexdigest()

    def path(self, text: str, cap: int) -> Path:
        return self.dir / f"{self.key(text, cap)}.json"

    def load(self, text: str, cap: int) -> StructureReport | None:
        if self.dir is None:
            return None
        p = self.path(text, cap)
        try:
            doc = json.loads(p.read_text())
        except (OSError, ValueError):
            return None
        if doc.get("version") != CACHE_VERSION or doc.get("expr") != text or doc.get("cap") != cap:
            return None
        try:
            return StructureReport.from_dict(doc["report"])
        except (KeyError, TypeError, ValueError):
            return None

    def store(self, text: str, cap: int, rep: StructureReport):
        if self.dir is None:
            return
        doc = {"version": CACHE_VERSION, "expr": text, "cap": cap, "report": rep.to_dict()}
        tmp = self.path(text, cap).with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True, indent=2))
        tmp.replace(self.path(text, cap))

    def report(self, text: str, cap: int) -> StructureReport:
        rep = self.load(text, cap)
        if rep is None:
            rep = analyze(build(text, cap))
            self.store(text, cap, rep)
        return rep


def _canon(text: str) -> str:
    return str(parse_group_expr(text))


def _emit(args, doc: dict, lines: list[str]):
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


def _budget(args) -> SearchBudget:
    return SearchBudget(max_arity=args.max_arity, max_length=args.max_length,
                        use_hall_basis=not args.no_hall, sample_count=args.samples,
                        seed=args.seed, max_words=args.max_words, max_power=args.max_power)


def _report_lines(name: str, rep: StructureReport) -> list[str]:
    cls = rep.nilpotency_class if rep.is_nilpotent else "not nilpotent"
    out = [f"{name}: order {rep.order}, exponent {rep.exponent}, class {cls}",
           f"  lower central series orders: {' > '.join(map(str, rep.lcs_sizes))}"]
    if rep.abelian_invariants is not None:
        out.append(f"  abelian invariants: {rep.abelian_invariants}")
    return out


def _verdict_lines(a: str, b: str, v) -> list[str]:
    out = [f"{v.verdict.value}" + (" (o-product reading)" if v.reading == "circ" else "")]
    if v.verdict is Verdict.TRIVIAL_FACTOR:
        out.append("  a factor is trivial")
        return out
    ca = v.cond_a
    out.append(f"  (a) m = exp {a} = {ca.exp_A}, n = exp {b} = {ca.exp_B}, gcd = {ca.gcd}: "
               f"{'pass' if ca.passed else 'FAIL'}")
    if v.cond_b is None:
        out.append("  (b) not evaluated")
    else:
        cb = v.cond_b
        cls = cb.class_A if cb.class_A is not None else "not nilpotent"
        out.append(f"  (b) class of {a} = {cls}, {b} abelian = {cb.abelian_B}: "
                   f"{'pass' if cb.passed else 'FAIL'}")
    if v.cond_c is None:
        out.append("  (c) not evaluated")
    else:
        n, c = v.cond_c.required
        out.append(f"  (c) {b} contains C{n}^{c}: {'pass' if v.cond_c.passed else 'FAIL'}")
    return out


def cmd_analyze(args, cache: ReportCache) -> int:
    text = _canon(args.expr)
    rep = cache.report(text, args.cap)
    _emit(args, {"expr": text, "report": rep.to_dict()}, _report_lines(text, rep))
    return 0


def _pair_reports(args, cache):
    a, b = _canon(args.a), _canon(args.b)
    return a, b, cache.report(a, args.cap), cache.report(b, args.cap)


def cmd_criterion(args, cache: ReportCache) -> int:
    a, b, ra, rb = _pair_reports(args, cache)
    if args.command == "circ":
        v = decide_circ_product(ra, rb)
    else:
        v = decide_from_reports(ra, rb)
    _emit(args, {"A": a, "B": b, **v.to_dict()}, _verdict_lines(a, b, v))
    return 1 if v.verdict is Verdict.NOT_EQUAL else 0


def cmd_fingen(args, cache: ReportCache) -> int:
    a, b, ra, rb = _pair_reports(args, cache)
    r = decide_finite_generation(ra, rb)
    lines = [f"var({a}) var({b}) finitely generated: {'true' if r else 'false'}",
             f"  gcd(exp A, exp B) = {r.cond_a.gcd}, A nilpotent = {r.cond_b.class_A is not None}, "
             f"B abelian = {r.cond_b.abelian_B}"]
    _emit(args, {"A": a, "B": b, **r.to_dict()}, lines)
    return 0 if r else 1


def cmd_law(args, cache: ReportCache) -> int:
    w = parse_word(args.word)
    text = _canon(args.expr)
    G = build(text, args.cap)
    mode = EXHAUSTIVE if args.mode == "exhaustive" else Sampled(args.samples, args.seed)
    res = is_law(G, w, mode)
    doc = {"word": str(w), "group": text, **res.to_dict()}
    lines = [f"{w} on {text}: {res.status.value} ({res.mode}, {res.tuples_checked} tuples)"]
    if res.violating_tuple is not None:
        lines.append("  violating tuple: " + ", ".join(str(list(g)) for g in res.violating_tuple))
    _emit(args, doc, lines)
    return {LawStatus.LAW: 0, LawStatus.VIOLATED: 1}.get(res.status, 2)


def cmd_separate(args, cache: ReportCache) -> int:
    a, b = _canon(args.a), _canon(args.b)
    res = find_separating_law(build(a, args.cap), build(b, args.cap), _budget(args), args.cap)
    if isinstance(res, Inconclusive):
        lines = [f"Inconclusive: {res.reason}"] + [f"  {e}" for e in res.frontier]
        _emit(args, res.to_dict(), lines)
        return 2
    lines = [f"separating word {res.word}",
             f"  law of {res.law_group} ({res.law_check['tuples_checked']} tuples, exhaustive)",
             f"  violated in {res.witness_group} at "
             + ", ".join(str(list(g)) for g in res.violating_tuple),
             f"  witness: {res.witness_kind}"]
    _emit(args, res.to_dict(), lines)
    return 0


def cmd_member(args, cache: ReportCache) -> int:
    g, h = _canon(args.g), _canon(args.h)
    res = is_in_variety(build(g, args.cap), build(h, args.cap), _budget(args))
    lines = [f"{g} in var({h}): {res.status.value}"]
    if res.word is not None:
        lines.append(f"  law of {h} violated in {g}: {res.word}")
    if res.detail:
        lines.append(f"  {res.detail}")
    _emit(args, res.to_dict(), lines)
    return {Membership.MEMBER: 0, Membership.NOT_MEMBER: 1}.get(res.status, 2)


def cmd_verify(args, cache: ReportCache) -> int:
    doc = json.loads(Path(args.path).read_text())
    cert = SeparationCertificate.from_dict(doc)
    ok = cert.replay(args.cap)
    _emit(args, {"valid": ok, "word": str(cert.word)},
          [f"certificate for {cert.word}: {'valid' if ok else 'INVALID'}"])
    return 0 if ok else 1


def cmd_catalog(args, cache: ReportCache) -> int:
    rows = []
    for e in catalog_exprs(args.max_order):
        text = str(e)
        rows.append({"expr": text, "order": cache.report(text, args.cap).order})
    _emit(args, {"groups": rows}, [f"{r['order']:>5}  {r['expr']}" for r in rows])
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group enumeration cap")
    common.add_argument("--cache", metavar="DIR", help="structure report cache directory")
    common.add_argument("--seed", type=int, default=0)

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--max-arity", type=int, default=3)
    search.add_argument("--max-length", type=int, default=10)
    search.add_argument("--no-hall", action="store_true", help="skip commutator candidates")
    search.add_argument("--samples", type=int, default=10**5)
    search.add_argument("--max-words", type=int, default=256)
    search.add_argument("--max-power", type=int, default=2)

    p = argparse.ArgumentParser(prog="wreathvar",
                                description="Varieties generated by wreath products of finite groups.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("analyze", parents=[common], help="structure report")
    s.add_argument("expr")
    s.set_defaults(func=cmd_analyze)
    for name, helptext in (("criterion", "does var(A Wr B) = var(A)var(B)?"),
                           ("circ", "does var(A) o G = var(A)var(G)?")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("a")
        s.add_argument("b")
        s.set_defaults(func=cmd_criterion)
    s = sub.add_parser("fingen", parents=[common], help="is var(A)var(B) finitely generated?")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_fingen)
    s = sub.add_parser("law", parents=[common], help="check a word on a group")
    s.add_argument("word")
    s.add_argument("expr")
    s.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    s.add_argument("--samples", type=int, default=10**5)
    s.set_defaults(func=cmd_law)
    s = sub.add_parser("separate", parents=[common, search], help="find a separating law")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_separate)
    s = sub.add_parser("member", parents=[common, search], help="is G in var(H)?")
    s.add_argument("g")
    s.add_argument("h")
    s.set_defaults(func=cmd_member)
    s = sub.add_parser("verify", parents=[common], help="replay a certificate")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("catalog", parents=[common], help="list catalog groups")
    s.add_argument("--max-order", type=int, default=100)
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args, ReportCache(args.cache))
    except ParseError as exc:
        print(f"parse error at position {exc.position}: {exc.message}", file=sys.stderr)
        return EXIT_PARSE
    except (ClosureExceedsCap, OrderCapExceeded, ScanCapExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GroupError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
