"""Expression parser for elements, tensors and deformation series.

Grammar (``(x)`` separates tensor slots and binds loosest)::

    texpr  := expr ('(x)' expr)*
    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)*
    atom   := rational | 'i' | 'h' | ident | '(' texpr ')'
            | 'sqrt' '(' expr ')' | 'inv' '(' expr ')'
    rational := int ('/' nat)?

Every canonical rendering produced by :meth:`Element.render` parses back to
an equal element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BicrossError, ConfigurationError, InputError
from .ncpoly import (
    Element,
    Presentation,
    TensorPresentation,
    central_invert,
    central_sqrt,
    tensor_elements,
)
from .scalars import I, DeformationSeries, Q

__all__ = ["ParseError", "parse_expression", "parse_ast", "evaluate"]


class ParseError(InputError):
    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<tensor>\(x\))|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str):
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        text = m.group()
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind if kind != "op" else text, text, line, col))
        nl = text.count("\n")
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


# AST nodes are tuples: ("num", Q) ("i",) ("h",) ("name", str) ("neg", x) ("add", a, b)
# ("sub", a, b) ("mul", a, b) ("pow", x, n) ("sqrt", x) ("inv", x) ("tensor", [parts])


class _Parser:
    def __init__(self, src):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.tok
        if kind is not None and t.kind != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            got = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {want}, found {got}", t.line, t.col)
        self.i += 1
        return t

    def texpr(self):
        parts = [self.expr()]
        while self.tok.kind == "tensor":
            self.take()
            parts.append(self.expr())
        return parts[0] if len(parts) == 1 else ("tensor", parts)

    def expr(self):
        if self.tok.kind == "-":
            self.take()
            node = ("neg", self.term())
        else:
            node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.take().kind
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        while self.tok.kind == "^":
            self.take()
            t = self.take("num")
            node = ("pow", node, int(t.text))
        return node

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            q = Q(int(t.text))
            if self.tok.kind == "/":
                self.take()
                d = self.take("num")
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.line, d.col)
                q = Q(int(t.text), int(d.text))
            return ("num", q)
        if t.kind == "ident":
            self.take()
            if t.text in ("sqrt", "inv") and self.tok.kind == "(":
                self.take("(")
                inner = self.expr()
                self.take(")")
                return (t.text, inner)
            if t.text == "i":
                return ("i",)
            if t.text == "h":
                return ("h",)
            return ("name", t.text, t.line, t.col)
        if t.kind == "(":
            self.take()
            inner = self.texpr()
            self.take(")")
            return inner
        got = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"unexpected {got}", t.line, t.col)


def parse_ast(src: str):
    p = _Parser(src)
    node = p.texpr()
    p.take("eof")
    return node


def evaluate(node, ctx: Presentation, order: int, defs=None) -> Element:
    """Evaluate an AST in ``ctx``; ``defs`` maps extra names to elements of ``ctx``."""
    defs = defs or {}
    N = order

    def ev(n, p):
        kind = n[0]
        if kind == "num":
            return p.scalar(n[1], N)
        if kind == "i":
            return p.scalar(I, N)
        if kind == "h":
            return p.scalar(DeformationSeries.h(N), N)
        if kind == "name":
            name = n[1]
            if name in defs and defs[name].parent is p:
                return defs[name]
            if name in p:
                return p.gen(name, N)
            raise ParseError(f"unknown generator {name!r} in {p.label}", n[2], n[3])
        if kind == "neg":
            return -ev(n[1], p)
        if kind == "add":
            return ev(n[1], p) + ev(n[2], p)
        if kind == "sub":
            return ev(n[1], p) - ev(n[2], p)
        if kind == "mul":
            return ev(n[1], p) * ev(n[2], p)
        if kind == "pow":
            return ev(n[1], p) ** n[2]
        if kind == "sqrt":
            return central_sqrt(ev(n[1], p))
        if kind == "inv":
            return central_invert(ev(n[1], p))
        if kind == "tensor":
            parts = n[1]
            if not isinstance(p, TensorPresentation) or len(parts) != p.nslots:
                slots = p.nslots if isinstance(p, TensorPresentation) else 1
                raise InputError(f"{len(parts)} tensor slots given, {p.label} has {slots}")
            return tensor_elements(*(ev(part, f) for part, f in zip(parts, p.factors)))
        raise InputError(f"unknown node {kind}")  # pragma: no cover

    try:
        return ev(node, ctx)
    except BicrossError:
        raise
    except RecursionError:
        raise InputError("expression nests too deeply") from None


def parse_expression(src: str, ctx: Presentation, order: int = 3, defs=None) -> Element:
    """Parse and evaluate ``src`` to a normal-form element of ``ctx`` at truncation ``order``."""
    if not isinstance(src, str):
        src = str(src)
    try:
        return evaluate(parse_ast(src), ctx, order, defs)
    except ConfigurationError as exc:
        raise InputError(f"cannot evaluate {src!r}: {exc}") from None
