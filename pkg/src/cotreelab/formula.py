"""Bi-intuitionistic formulas and their text syntax.

Grammar, loosest binding first::

    arrow  := disj ( '->' arrow )?          right associative
            | disj ( '<-' disj )*           left associative
    disj   := conj ( '|' conj )*
    conj   := unary ( '&' unary )*
    unary  := '~' unary | atom
    atom   := VAR | '0' | '1' | '(' arrow ')'

``->`` and ``<-`` may not be mixed at one level without parentheses.
``~p`` is read as ``p -> 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Binary:
    op: str  # '&', '|', '->', '<-'
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Const, Binary]

BOTTOM = Const(0)
TOP = Const(1)


def neg(phi: Formula) -> Formula:
    return Binary("->", phi, BOTTOM)


def variables(phi: Formula) -> list[str]:
    out: set[str] = set()
    stack = [phi]
    while stack:
        f = stack.pop()
        if isinstance(f, Var):
            out.add(f.name)
        elif isinstance(f, Binary):
            stack += [f.left, f.right]
    return sorted(out)


def to_text(phi: Formula) -> str:
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Const):
        return str(phi.value)
    if phi.op == "->" and phi.right == BOTTOM:
        return f"~{_wrap(phi.left)}"
    return f"{_wrap(phi.left)} {phi.op} {_wrap(phi.right)}"


def _wrap(phi: Formula) -> str:
    s = to_text(phi)
    return s if isinstance(phi, (Var, Const)) or s.startswith("~") else f"({s})"


_TOKEN = re.compile(r"\s*(?:(?P<var>[a-z][a-z0-9_]*)|(?P<const>[01])|(?P<op>->|<-|[&|~()]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        toks.append((m.group(m.lastgroup), start))
        pos = m.end()
    toks.append(("", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][1]

    def take(self) -> str:
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str):
        if self.peek() != tok:
            raise ParseError(f"expected {tok!r}", self.pos())
        self.take()

    def arrow(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            right = self.arrow_right()
            return Binary("->", left, right)
        while self.peek() == "<-":
            self.take()
            left = Binary("<-", left, self.disj())
        if self.peek() == "->":
            raise ParseError("'->' and '<-' mixed without parentheses", self.pos())
        return left

    def arrow_right(self) -> Formula:
        left = self.disj()
        if self.peek() == "<-":
            raise ParseError("'->' and '<-' mixed without parentheses", self.pos())
        if self.peek() == "->":
            self.take()
            return Binary("->", left, self.arrow_right())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek() == "|":
            self.take()
            left = Binary("|", left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = Binary("&", left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.peek() == "~":
            self.take()
            return neg(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok, at = self.toks[self.i]
        if tok == "(":
            self.take()
            inner = self.arrow()
            self.expect(")")
            return inner
        if tok in ("0", "1"):
            self.take()
            return Const(int(tok))
        if tok and (tok[0].isalpha()):
            self.take()
            return Var(tok)
        raise ParseError("expected a formula" if tok else "unexpected end of input", at)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    phi = p.arrow()
    if p.peek() != "":
        raise ParseError(f"unexpected token {p.peek()!r}", p.pos())
    return phi


PRELINEARITY = parse_formula("(p -> q) | (q -> p)")
BILC = parse_formula("~((q <- p) & (p <- q))")

AXIOMS = {"prelinearity": PRELINEARITY, "bilc": BILC}
