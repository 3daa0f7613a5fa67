"""Hybrid set/arithmetic expressions over named msets or mfunctions.

Grammar, loosest binding first (all binary operators left-associative)::

    expr   := union
    union  := inter ('|' inter)*
    inter  := addsub ('&' addsub)*
    addsub := muldiv (('+' | '-') muldiv)*
    muldiv := unary (('*' | '/') unary)*
    unary  := '-' unary | atom
    atom   := IDENT | NUMBER | '(' expr ')'

``|`` is union (max), ``&`` intersection (min), ``-`` the signed difference
and unary ``-`` the complement. A number stands for a constant function on
the shared grid, or a uniform mset over every element named in the bindings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import AlignmentError, ExprSyntaxError, MultikitError
from .mfunction import MFunction, pointwise
from .mset import Mset, combine, complement, quotient


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Unary:
    op: str
    child: "Node"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Ident, Number, Unary, Binary]

_SYMBOLS = {
    "|": "union",
    "&": "intersection",
    "+": "add",
    "-": "subtract",
    "*": "multiply",
    "/": "divide",
}
_GLYPH = {v: k for k, v in _SYMBOLS.items()}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[|&+\-*/()])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident, number, op, end
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", len(text[:pos].encode()))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), len(text[:pos].encode())))
        pos = m.end()
    toks.append(_Tok("end", "", len(text.encode())))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def binary_level(self, ops, sub):
        node = sub()
        while self.peek().kind == "op" and self.peek().text in ops:
            op = _SYMBOLS[self.take().text]
            node = Binary(op, node, sub())
        return node

    def union(self):
        return self.binary_level("|", self.inter)

    def inter(self):
        return self.binary_level("&", self.addsub)

    def addsub(self):
        return self.binary_level("+-", self.muldiv)

    def muldiv(self):
        return self.binary_level("*/", self.unary)

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return Unary("negate", self.unary())
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok.kind == "ident":
            return Ident(tok.text)
        if tok.kind == "number":
            return Number(float(tok.text))
        if tok.kind == "op" and tok.text == "(":
            node = self.union()
            close = self.take()
            if not (close.kind == "op" and close.text == ")"):
                raise ExprSyntaxError(f"unexpected {_describe(close)}", close.offset,
                                      {")", "|", "&", "+", "-", "*", "/"})
            return node
        raise ExprSyntaxError(f"unexpected {_describe(tok)}", tok.offset,
                              {"identifier", "number", "(", "-"})


def _describe(tok: _Tok) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


def parse(text: str) -> Node:
    """Parse ``text`` into an AST; raises :class:`ExprSyntaxError` with a byte offset."""
    p = _Parser(text)
    node = p.union()
    tok = p.peek()
    if tok.kind != "end":
        raise ExprSyntaxError(f"unexpected {_describe(tok)}", tok.offset,
                              {"end of input", "|", "&", "+", "-", "*", "/"})
    return node


def to_text(node: Node) -> str:
    """Fully parenthesized rendering that parses back to the same tree."""
    if isinstance(node, Ident):
        return node.name
    if isinstance(node, Number):
        return repr(node.value)
    if isinstance(node, Unary):
        return f"-{to_text(node.child)}" if isinstance(node.child, (Ident, Number)) else f"-({to_text(node.child)})"
    return f"({to_text(node.left)} {_GLYPH[node.op]} {to_text(node.right)})"


# -- evaluation --------------------------------------------------------------

_MSET_OPS = {
    "union": "union",
    "intersection": "intersection",
    "add": "sum",
    "subtract": "diff_signed",
    "multiply": "product",
}


def _constant(value: float, env: Mapping[str, Union[Mset, MFunction]]):
    vals = list(env.values())
    if not vals:
        raise MultikitError("a numeric literal needs at least one binding to fix its grid or universe")
    if isinstance(vals[0], MFunction):
        return MFunction(vals[0].grid, np.full(vals[0].grid.n, value))
    universe = set().union(*vals)
    return Mset({k: value for k in universe})


def _check_env(env: Mapping[str, Union[Mset, MFunction]]) -> None:
    vals = list(env.values())
    if not vals:
        return
    if all(isinstance(v, MFunction) for v in vals):
        grid = vals[0].grid
        for name, v in env.items():
            if v.grid != grid:
                raise AlignmentError(f"binding {name!r} is on a different grid")
    elif not all(isinstance(v, Mset) for v in vals):
        raise AlignmentError("bindings must be all msets or all mfunctions")


def evaluate(node: Node, env: Mapping[str, Union[Mset, MFunction]]):
    """Evaluate bottom-up with the samplewise (or elementwise) mset operations."""
    _check_env(env)
    return _eval(node, env)


def _eval(node, env):
    if isinstance(node, Ident):
        try:
            return env[node.name]
        except KeyError:
            raise MultikitError(f"unbound identifier {node.name!r}") from None
    if isinstance(node, Number):
        return _constant(node.value, env)
    if isinstance(node, Unary):
        child = _eval(node.child, env)
        return complement(child) if isinstance(child, Mset) else pointwise("complement", child)
    left = _eval(node.left, env)
    right = _eval(node.right, env)
    if isinstance(left, Mset):
        if node.op == "divide":
            return quotient(left, right)
        return combine(_MSET_OPS[node.op], left, right)
    op = "quotient" if node.op == "divide" else _MSET_OPS[node.op]
    return pointwise(op, left, right)


def eval_text(text: str, env: Mapping[str, Union[Mset, MFunction]]):
    return evaluate(parse(text), env)
