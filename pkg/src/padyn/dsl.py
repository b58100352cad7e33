"""A small language for T-functions.

::

    p=2 k=2; f0 = x1; f1 = x0 + x1 * x1

Operators are ``+ - *`` and, for p=2 only, ``xor and or not``.  Precedence
from tightest: ``not``, ``*``, ``+ -``, ``xor and or``; binary operators are
left-associative.  Constants are non-negative decimals taken mod ``p**n`` at
evaluation time.  ``#`` starts a comment.  Every expression the grammar can
build is compatible, so a :class:`MapSpec` needs no separate certificate to
be a valid dynamic (the test suite still checks it exhaustively).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .maps import CompatibleMap
from .padic import check_prime

BITWISE = frozenset({"xor", "and", "or"})
_PREC = {"xor": 1, "and": 1, "or": 1, "+": 2, "-": 2, "*": 3}


class SpecError(ValueError):
    """Malformed map spec.  ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message, self.line, self.column = message, line, column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Not:
    operand: "Expr"


Expr = Union[Const, Var, BinOp, Not]


def eval_expr(e: Expr, env, modulus: int):
    """Evaluate on ints or int64 numpy arrays; all values stay in [0, modulus)."""
    if isinstance(e, Var):
        return env[e.index]
    if isinstance(e, Const):
        return e.value % modulus
    if isinstance(e, Not):
        return modulus - 1 - eval_expr(e.operand, env, modulus)
    a = eval_expr(e.left, env, modulus)
    b = eval_expr(e.right, env, modulus)
    op = e.op
    if op == "+":
        return (a + b) % modulus
    if op == "-":
        return (a - b) % modulus
    if op == "*":
        return (a * b) % modulus
    if op == "xor":
        return a ^ b
    if op == "and":
        return a & b
    if op == "or":
        return a | b
    raise ValueError(f"unknown operator {op!r}")


def format_expr(e: Expr, parent: int = 0, right: bool = False) -> str:
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Not):
        inner = format_expr(e.operand, 4)
        return f"not {inner}"
    prec = _PREC[e.op]
    text = f"{format_expr(e.left, prec)} {e.op} {format_expr(e.right, prec, right=True)}"
    if prec < parent or (right and prec == parent):
        return f"({text})"
    return text


def _walk(e: Expr):
    yield e
    if isinstance(e, BinOp):
        yield from _walk(e.left)
        yield from _walk(e.right)
    elif isinstance(e, Not):
        yield from _walk(e.operand)


@dataclass(frozen=True)
class MapSpec(CompatibleMap):
    p: int
    k: int
    exprs: tuple
    _table_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    vectorized = True

    def __post_init__(self):
        check_prime(self.p)
        if self.k < 1:
            raise SpecError("k must be >= 1")
        if len(self.exprs) != self.k:
            raise SpecError(f"expected {self.k} coordinate expressions, got {len(self.exprs)}")
        for e in self.exprs:
            for node in _walk(e):
                if isinstance(node, Var) and not 0 <= node.index < self.k:
                    raise SpecError(f"variable x{node.index} out of range for k={self.k}")
                if self.p != 2 and (isinstance(node, Not) or (isinstance(node, BinOp) and node.op in BITWISE)):
                    raise SpecError("bitwise operators require p=2")
                if isinstance(node, Const) and node.value < 0:
                    raise SpecError("constants must be non-negative")

    def __call__(self, state, n):
        self._check_level(n)
        modulus = self.p**n
        return tuple(eval_expr(e, state, modulus) for e in self.exprs)

    def __str__(self):
        return format_spec(self)


def format_spec(spec: MapSpec) -> str:
    parts = [f"p={spec.p} k={spec.k}"]
    parts += [f"f{i} = {format_expr(e)}" for i, e in enumerate(spec.exprs)]
    return "; ".join(parts)


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+|\#[^\n]*)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*=;()])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.toks = self._lex(source)
        self.i = 0

    def where(self, pos):
        line = self.source.count("\n", 0, pos) + 1
        col = pos - (self.source.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise SpecError(msg, *self.where(tok.pos))

    def _lex(self, s):
        toks = []
        pos = 0
        while pos < len(s):
            m = _TOKEN_RE.match(s, pos)
            if not m:
                raise SpecError(f"unexpected character {s[pos]!r}", *self.where(pos))
            kind = m.lastgroup
            if kind != "ws":
                text = m.group()
                if kind == "name" and text in BITWISE | {"not"}:
                    kind = "op"
                toks.append(_Tok(kind, text, pos))
            pos = m.end()
        toks.append(_Tok("eof", "", len(s)))
        return toks

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, text=None):
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            self.error(f"expected {want}, got {got}")
        return self.take()

    def header_int(self, key):
        tok = self.expect("name")
        if tok.text != key:
            self.error(f"expected '{key}=' in header", tok)
        self.expect("op", "=")
        return int(self.expect("num").text)

    def parse(self) -> MapSpec:
        p = self.header_int("p")
        k = self.header_int("k")
        if k < 1:
            self.error("k must be >= 1")
        self.expect("op", ";")
        exprs: dict[int, Expr] = {}
        while self.peek().kind != "eof":
            tok = self.expect("name")
            m = re.fullmatch(r"f(\d+)", tok.text)
            if not m:
                self.error(f"expected a binding f<i>, got {tok.text!r}", tok)
            idx = int(m.group(1))
            if idx >= k:
                self.error(f"binding f{idx} out of range for k={k}", tok)
            if idx in exprs:
                self.error(f"f{idx} bound twice", tok)
            self.expect("op", "=")
            exprs[idx] = self.expr(0, p, k)
            if self.peek().kind != "eof":
                self.expect("op", ";")
        missing = [i for i in range(k) if i not in exprs]
        if missing:
            self.error("missing binding(s): " + ", ".join(f"f{i}" for i in missing))
        try:
            return MapSpec(p, k, tuple(exprs[i] for i in range(k)))
        except ValueError as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(str(exc), 1, 1) from None

    def expr(self, min_prec, p, k) -> Expr:
        left = self.unary(p, k)
        while True:
            tok = self.peek()
            prec = _PREC.get(tok.text) if tok.kind == "op" else None
            if prec is None or prec < min_prec:
                return left
            self.take()
            if tok.text in BITWISE and p != 2:
                self.error("bitwise operators require p=2", tok)
            right = self.expr(prec + 1, p, k)
            left = BinOp(tok.text, left, right)

    def unary(self, p, k) -> Expr:
        tok = self.take()
        if tok.kind == "num":
            return Const(int(tok.text))
        if tok.kind == "name":
            m = re.fullmatch(r"x(\d+)", tok.text)
            if not m:
                self.error(f"unknown name {tok.text!r}", tok)
            idx = int(m.group(1))
            if idx >= k:
                self.error(f"variable x{idx} out of range for k={k}", tok)
            return Var(idx)
        if tok.kind == "op" and tok.text == "not":
            if p != 2:
                self.error("bitwise operators require p=2", tok)
            return Not(self.unary(p, k))
        if tok.kind == "op" and tok.text == "(":
            e = self.expr(0, p, k)
            self.expect("op", ")")
            return e
        got = repr(tok.text) if tok.kind != "eof" else "end of input"
        self.error(f"expected an expression, got {got}", tok)


def parse(source: str) -> MapSpec:
    return _Parser(source).parse()
