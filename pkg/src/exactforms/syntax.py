"""Expression syntax shared by fixture files and the command-line DSL.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' power)?
    atom   := INT | IDENT | '@' IDENT | OP '(' expr (',' expr)* ')' | '(' expr ')'

``^`` is exponentiation between scalars and the wedge product otherwise;
``dx`` denotes a coordinate differential, ``e1`` a coframe 1-form and
``@x`` a coordinate vector field.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

OPERATORS = {
    "d": 1, "delta": 1, "star": 1, "starinv": 1, "box": 1, "sharp": 1, "flat": 1, "div": 1,
    "wedge": 2, "ip": 2, "jp": 2, "lie": 2, "sn": 2, "theta": 2, "inner": 2,
}


class DslSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Vec:
    ident: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Apply:
    op: str
    args: tuple


Node = Union[Num, Name, Vec, Neg, BinOp, Apply]


def _tokenize(src: str):
    tokens = []
    i, line, col = 0, 1, 1
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        j = i
        if ch.isdigit():
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(("int", src[i:j], line, col))
        elif ch.isalpha() or ch == "_":
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("ident", src[i:j], line, col))
        elif ch in "+-*/^(),@":
            j = i + 1
            tokens.append((ch, ch, line, col))
        else:
            raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
        col += j - i
        i = j
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise DslSyntaxError(f"expected {want}, found {got}", tok[2], tok[3])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            node = BinOp("^", node, self.power())
        return node

    def atom(self):
        kind, text, line, col = self.peek()
        if kind == "int":
            self.take()
            return Num(int(text))
        if kind == "@":
            self.take()
            return Vec(self.take("ident")[1])
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if kind == "ident":
            self.take()
            if self.peek()[0] == "(":
                if text not in OPERATORS:
                    raise DslSyntaxError(f"unknown operator {text!r}", line, col)
                self.take()
                args = [self.expr()]
                while self.peek()[0] == ",":
                    self.take()
                    args.append(self.expr())
                self.take(")")
                if len(args) != OPERATORS[text]:
                    raise DslSyntaxError(
                        f"operator {text!r} takes {OPERATORS[text]} argument(s), got {len(args)}",
                        line, col)
                return Apply(text, tuple(args))
            if text in OPERATORS and text != "d":
                raise DslSyntaxError(f"operator {text!r} needs arguments", line, col)
            return Name(text)
        what = "end of input" if kind == "eof" else repr(text)
        raise DslSyntaxError(f"unexpected {what}", line, col)


def parse(src: str) -> Node:
    p = _Parser(src)
    node = p.expr()
    p.take("eof")
    return node


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    return 5


def to_source(node: Node) -> str:
    """Render an AST so that ``parse(to_source(ast)) == ast``."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Vec):
        return "@" + node.ident
    if isinstance(node, Apply):
        return f"{node.op}({', '.join(to_source(a) for a in node.args)})"
    if isinstance(node, Neg):
        inner = to_source(node.arg)
        return f"-({inner})" if _prec(node.arg) < 3 else f"-{inner}"
    p = _PREC[node.op]
    left, right = to_source(node.left), to_source(node.right)
    if node.op == "^":
        if _prec(node.left) <= p:
            left = f"({left})"
        if _prec(node.right) < p or isinstance(node.right, Neg):
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}" if p == 1 else f"{left}{node.op}{right}"


def eval_scalar(node: Node, chart):
    """Evaluate a rational-function literal over ``chart``'s coordinates."""
    if isinstance(node, str):
        node = parse(node)
    if isinstance(node, Num):
        return chart.const(node.value)
    if isinstance(node, Name):
        if node.ident in chart.coords:
            return chart.var(chart.index(node.ident))
        raise ValueError(f"unknown coordinate {node.ident!r}")
    if isinstance(node, Neg):
        return -eval_scalar(node.arg, chart)
    if isinstance(node, BinOp):
        left = eval_scalar(node.left, chart)
        if node.op == "^":
            exp = eval_scalar(node.right, chart)
            return left ** exponent_value(exp)
        right = eval_scalar(node.right, chart)
        return {"+": left.__add__, "-": left.__sub__, "*": left.__mul__,
                "/": left.__truediv__}[node.op](right)
    raise ValueError(f"not a rational-function literal: {to_source(node)}")


def exponent_value(f) -> int:
    if not f.is_constant():
        raise ValueError(f"exponent must be a constant, got {f}")
    v = f.constant_value()
    if v.denominator != 1 or v < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {v}")
    return int(v)


# -- canonical printing ------------------------------------------------------

def format_scalar(f) -> str:
    return str(f)


def _coef_term(coef, atom: str) -> str:
    if coef == 1:
        return atom
    if coef == -1:
        return "-" + atom
    s = str(coef)
    if " " in s:
        s = f"({s})"
    return f"{s}*{atom}"


def _join(terms: list) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _atom_names(frame, basis: str, vector: bool):
    from .exterior import FRAME

    coords = frame.chart.coords
    if vector:
        return ["@" + c for c in coords] if basis != FRAME else [f"E{a + 1}" for a in range(len(coords))]
    if basis == FRAME:
        return [f"e{a + 1}" for a in range(len(coords))]
    return ["d" + c for c in coords]


def _format_graded(x, vector: bool) -> str:
    if x.degree == 0:
        return format_scalar(x.value) if not x.is_zero() else "0"
    names = _atom_names(x.frame, x.basis, vector)
    terms = []
    for idx in sorted(x.comps):
        atom = "^".join(names[i] for i in idx)
        terms.append(_coef_term(x.comps[idx], atom))
    return _join(terms)


def format_form(f) -> str:
    return _format_graded(f, vector=False)


def format_multivector(m) -> str:
    return _format_graded(m, vector=True)
