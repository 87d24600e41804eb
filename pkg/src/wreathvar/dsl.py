"""Recursive-descent parsers for the group-expression and word syntaxes.

Group expressions::

    expr   := term { "X" term }                      (left-associative)
    term   := "C(" int ")" | "D(" int ")" | "Q8" | "S(" int ")" | "A(" int ")"
            | "E(" int "," int ")" | "Heis(" int "," int ")"
            | "Wr(" expr "," expr ")" | "Perm(" int ";" gens ")" | "(" expr ")"
    gens   := gen { "," gen }
    gen    := "()" | cycle { cycle }
    cycle  := "(" int { int } ")"                    (points are 1-based)

Words::

    word   := factor { factor }                      (juxtaposition)
    factor := atom [ "^" [ "-" ] int ]
    atom   := "x" int | "1" | "(" word ")" | "[" word "," word { "," word } "]"

``[a, b, c]`` is the left-normed commutator ``[[a, b], c]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .constructions import (Alternating, Cyclic, Dihedral, DirectProduct, ElemAbelian,
                            GroupExpr, Heis, PermExpr, Quaternion8, Symmetric, Wreath)
from .errors import ParseError
from .words import Word, commutator_word, power_word, reduce, variable


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_GROUP_TOKENS = re.compile(r"\s*(?:(?P<int>\d+)|(?P<kw>Heis|Perm|Wr|Q8|C|D|S|A|E|X)|(?P<sym>[(),;]))")
_WORD_TOKENS = re.compile(r"\s*(?:(?P<var>x\d+)|(?P<int>\d+)|(?P<sym>[()\[\],^-]))")


def _tokenize(text: str, pattern: re.Pattern) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = pattern.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text: str) -> Token:
        t = self.tok
        if t.text != text or t.kind == "eof":
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(t.pos, f"expected {text!r}, found {found}")
        self.i += 1
        return t

    def integer(self) -> int:
        t = self.tok
        if t.kind != "int":
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(t.pos, f"expected integer, found {found}")
        self.i += 1
        return int(t.text)

    def end(self):
        if self.tok.kind != "eof":
            raise ParseError(self.tok.pos, f"unexpected {self.tok.text!r} after expression")


class _GroupParser(_Parser):
    def expr(self) -> GroupExpr:
        left = self.term()
        while self.peek("X"):
            self.i += 1
            left = DirectProduct(left, self.term())
        return left

    def _args(self, n: int) -> list[int]:
        self.expect("(")
        vals = [self.integer()]
        for _ in range(n - 1):
            self.expect(",")
            vals.append(self.integer())
        self.expect(")")
        return vals

    def term(self) -> GroupExpr:
        t = self.tok
        simple = {"C": (Cyclic, 1), "D": (Dihedral, 1), "S": (Symmetric, 1),
                  "A": (Alternating, 1), "E": (ElemAbelian, 2), "Heis": (Heis, 2)}
        if t.kind == "kw" and t.text in simple:
            self.i += 1
            cls, n = simple[t.text]
            return cls(*self._args(n))
        if t.kind == "kw" and t.text == "Q8":
            self.i += 1
            return Quaternion8()
        if t.kind == "kw" and t.text == "Wr":
            self.i += 1
            self.expect("(")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return Wreath(a, b)
        if t.kind == "kw" and t.text == "Perm":
            self.i += 1
            return self.perm()
        if self.peek("("):
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(t.pos, f"expected a group term (C, D, Q8, S, A, E, Heis, Wr, Perm or '('), found {found}")

    def perm(self) -> PermExpr:
        self.expect("(")
        degree = self.integer()
        self.expect(";")
        gens = [self.generator()]
        while self.peek(","):
            self.i += 1
            gens.append(self.generator())
        self.expect(")")
        return PermExpr(degree, tuple(gens))

    def generator(self) -> tuple[tuple[int, ...], ...]:
        cycles = []
        self.expect("(")
        while True:
            pts = []
            while self.tok.kind == "int":
                pts.append(self.integer())
            self.expect(")")
            if pts:
                cycles.append(tuple(pts))
            elif cycles:
                raise ParseError(self.tokens[self.i - 1].pos, "empty cycle inside a generator")
            else:
                # "()" is the identity generator
                return ()
            if not self.peek("("):
                return tuple(c for c in cycles if len(c) > 1)
            self.i += 1


def parse_group_expr(text: str) -> GroupExpr:
    p = _GroupParser(_tokenize(text, _GROUP_TOKENS))
    e = p.expr()
    p.end()
    return e


class _WordParser(_Parser):
    def word(self) -> Word:
        parts = [self.factor()]
        while self.tok.kind == "var" or self.tok.text in ("(", "[", "1"):
            parts.append(self.factor())
        if len(parts) == 1:
            return parts[0]
        syl = tuple(s for w in parts for s in w.syllables)
        return reduce(syl, rank=max(w.rank for w in parts), label=" ".join(map(str, parts)))

    def factor(self) -> Word:
        a = self.atom()
        if self.peek("^"):
            self.i += 1
            sign = 1
            if self.peek("-"):
                self.i += 1
                sign = -1
            a = power_word(a, sign * self.integer())
        return a

    def atom(self) -> Word:
        t = self.tok
        if t.kind == "var":
            self.i += 1
            k = int(t.text[1:])
            if k < 1:
                raise ParseError(t.pos, "variables are numbered from x1")
            return variable(k)
        if t.kind == "int" and t.text == "1":
            self.i += 1
            return Word((), 0, "1")
        if self.peek("("):
            self.i += 1
            w = self.word()
            self.expect(")")
            return w
        if self.peek("["):
            self.i += 1
            ws = [self.word()]
            self.expect(",")
            ws.append(self.word())
            while self.peek(","):
                self.i += 1
                ws.append(self.word())
            self.expect("]")
            out = ws[0]
            for w in ws[1:]:
                out = commutator_word(out, w)
            return out
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(t.pos, f"expected a variable, '1', '(' or '[', found {found}")


def parse_word(text: str) -> Word:
    p = _WordParser(_tokenize(text, _WORD_TOKENS))
    w = p.word()
    p.end()
    return w
