"""Propositional claim formulas: AST, parser, printer, subformula machinery.

Concrete syntax: ``~`` (negation), ``&`` (conjunction), ``|`` (disjunction),
``->`` (implication), parentheses. Precedence ``~ > & > | > ->``; ``&`` and
``|`` associate left, ``->`` associates right. Equality of formulas is
structural; no normalisation is ever applied.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FormulaSyntaxError

ATOM_RE = re.compile(r"[a-z_][a-z0-9_]*\Z")


class Formula:
    """Base class for claim ASTs. Subclasses are frozen and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not ATOM_RE.match(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


_PREC = {Implies: 1, Or: 2, And: 3, Not: 4, Atom: 5}
_BIN_SYMBOL = {And: "&", Or: "|", Implies: "->"}

_TOKEN_RE = re.compile(r"[a-z_][a-z0-9_]*|->|[~&|()]")


def _tokenize(text: str) -> list[tuple[str, int]]:
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if not ch.isascii())
        raise FormulaSyntaxError("non-ASCII input", bad)
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, int]], length: int):
        self.tokens = tokens
        self.pos = 0
        self.length = length

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def offset(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return self.length

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.peek() == "|":
            self.take()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.peek() == "&":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        if self.peek() == "~":
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.offset())
        if tok == "(":
            self.take()
            node = self.implication()
            if self.peek() != ")":
                raise FormulaSyntaxError("expected ')'", self.offset())
            self.take()
            return node
        if ATOM_RE.match(tok):
            self.take()
            return Atom(tok)
        raise FormulaSyntaxError(f"unexpected token {tok!r}", self.offset())


def parse_formula(text: str) -> Formula:
    """Parse concrete claim syntax into its unique AST."""
    tokens = _tokenize(text)
    if not tokens:
        raise FormulaSyntaxError("empty formula", 0)
    parser = _Parser(tokens, len(text))
    node = parser.implication()
    if parser.peek() is not None:
        raise FormulaSyntaxError(f"trailing input {parser.peek()!r}", parser.offset())
    return node


def render_formula(f: Formula) -> str:
    """Minimal-parentheses canonical text; parse_formula inverts it exactly."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = render_formula(f.operand)
        if _PREC[type(f.operand)] < _PREC[Not]:
            inner = f"({inner})"
        return f"~{inner}"
    prec = _PREC[type(f)]
    left = render_formula(f.left)
    right = render_formula(f.right)
    # Left child parenthesised below own precedence, or at equal precedence
    # for the right-associative ->; mirrored for right children of & and |.
    if _PREC[type(f.left)] < prec or (isinstance(f, Implies) and _PREC[type(f.left)] == prec):
        left = f"({left})"
    if _PREC[type(f.right)] < prec or (not isinstance(f, Implies) and _PREC[type(f.right)] == prec):
        right = f"({right})"
    return f"{left} {_BIN_SYMBOL[type(f)]} {right}"


def subformulae(f: Formula) -> frozenset[Formula]:
    """All subtrees of f, including f itself."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if node in out:
            continue
        out.add(node)
        if isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or, Implies)):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(out)
