"""Command-line front end.

    exactforms eval [--fixture F] [--let NAME=EXPR | --let FILE.json] EXPR...
    exactforms check [--fixture F]... [--filter GLOB] [--seed N] [--trials K]
                     [--max-degree K] [--report text|json] [--out PATH]
    exactforms fixtures list
    exactforms identities list [--filter GLOB]

Exit status: 0 success, 2 identity failures, 1 usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import brackets, exterior, hodge
from .exterior import FRAME, COORD, Form, Multivector, VectorField, DegreeError
from .fixtures import BUILTIN, FixtureError, load_fixture, read_document
from .manifold import FrameField
from .ratfield import RationalFn
from .syntax import (
    Apply,
    BinOp,
    DslSyntaxError,
    Name,
    Neg,
    Num,
    Vec,
    exponent_value,
    parse,
)


class EvalError(ValueError):
    pass


Value = Form | Multivector | VectorField


def _vector(x) -> VectorField:
    if isinstance(x, VectorField):
        return x
    if isinstance(x, Multivector) and (x.degree == 1 or x.is_zero()):
        return exterior.mv_to_vector(x) if x.degree == 1 else VectorField(x.frame, [0] * x.frame.dim)
    raise EvalError(f"expected a vector field, got {_describe(x)}")


def _form(x, what="argument") -> Form:
    if isinstance(x, Form):
        return x
    raise EvalError(f"{what} must be a form, got {_describe(x)}")


def _describe(x) -> str:
    if isinstance(x, VectorField):
        return "a vector field"
    if isinstance(x, Multivector):
        return f"a {x.degree}-vector"
    return f"a {x.degree}-form"


def _is_scalar(x) -> bool:
    return isinstance(x, Form) and x.degree == 0


def _mv(x) -> Multivector:
    return x.as_multivector() if isinstance(x, VectorField) else x


class Evaluator:
    def __init__(self, frame: FrameField, bindings: dict | None = None):
        self.frame = frame
        self.bindings = dict(bindings or {})

    def bind(self, name: str, src: str) -> None:
        self.bindings[name] = self.eval(src)

    def eval(self, src) -> Value:
        node = parse(src) if isinstance(src, str) else src
        out = self._eval(node)
        if isinstance(out, Form) and out.basis != COORD:
            out = exterior.change_basis(out, COORD)
        elif isinstance(out, Multivector) and out.degree == 1:
            out = exterior.mv_to_vector(exterior.change_basis(out, COORD))
        return out

    # -- atoms ------------------------------------------------------------------

    def _name(self, ident: str) -> Value:
        fr = self.frame
        coords = fr.chart.coords
        if ident in self.bindings:
            return self.bindings[ident]
        if ident in coords:
            return exterior.scalar_form(fr, fr.chart.var(coords.index(ident)))
        if ident.startswith("d") and ident[1:] in coords:
            return exterior.coord_differential(fr, coords.index(ident[1:]))
        if ident[0] == "e" and ident[1:].isdigit():
            k = int(ident[1:])
            if 1 <= k <= fr.dim:
                return exterior.change_basis(exterior.basis_form(fr, (k - 1,), FRAME), COORD)
        if ident == "omega":
            return hodge.volume_form(fr)
        raise EvalError(f"unknown identifier {ident!r}")

    def _eval(self, node) -> Value:
        fr = self.frame
        if isinstance(node, Num):
            return exterior.scalar_form(fr, node.value)
        if isinstance(node, Name):
            return self._name(node.ident)
        if isinstance(node, Vec):
            coords = fr.chart.coords
            if node.ident not in coords:
                raise EvalError(f"unknown coordinate vector @{node.ident}")
            return exterior.coord_vector(fr, coords.index(node.ident))
        if isinstance(node, Neg):
            return -self._eval(node.arg)
        if isinstance(node, BinOp):
            return self._binop(node.op, self._eval(node.left), self._eval(node.right))
        if isinstance(node, Apply):
            return self._apply(node.op, [self._eval(a) for a in node.args])
        raise EvalError(f"cannot evaluate {node!r}")

    def _binop(self, op: str, x: Value, y: Value) -> Value:
        if op in "+-":
            if type(x) is not type(y):
                raise EvalError(f"cannot add {_describe(x)} and {_describe(y)}")
            return x + y if op == "+" else x - y
        if op == "*":
            if _is_scalar(x):
                return y.scale(x.value)
            if _is_scalar(y):
                return x.scale(y.value)
            raise EvalError(f"'*' needs a scalar factor; use '^' for the wedge of "
                            f"{_describe(x)} and {_describe(y)}")
        if op == "/":
            if not _is_scalar(y):
                raise EvalError(f"cannot divide by {_describe(y)}")
            if y.is_zero():
                raise EvalError("division by zero")
            return x.scale(fr_inverse(y.value))
        if op == "^":
            if _is_scalar(x) and _is_scalar(y):
                return exterior.scalar_form(self.frame, x.value ** exponent_value(y.value))
            if isinstance(x, Form) and isinstance(y, Form):
                return exterior.wedge(x, y)
            if not isinstance(x, Form) and not isinstance(y, Form):
                return exterior.mv_wedge(_mv(x), _mv(y))
            raise EvalError(f"cannot wedge {_describe(x)} with {_describe(y)}")
        raise EvalError(f"unknown operator {op!r}")

    def _apply(self, op: str, args: list) -> Value:
        fr = self.frame
        if op == "d":
            return exterior.ext_d(_form(args[0]))
        if op == "delta":
            return hodge.codifferential(_form(args[0]))
        if op == "star":
            return hodge.star(_form(args[0]))
        if op == "starinv":
            return hodge.star_inv(_form(args[0]))
        if op == "box":
            return hodge.laplace_de_rham(_form(args[0]))
        if op == "sharp":
            a = _form(args[0])
            return exterior.sharp(a)
        if op == "flat":
            x = args[0]
            if isinstance(x, Form):
                raise EvalError("flat expects a vector or multivector")
            return exterior.flat(_mv(x))
        if op == "div":
            return exterior.scalar_form(fr, hodge.divergence(_vector(args[0])))
        a, b = args
        if op == "wedge":
            return self._binop("^", a, b) if not (_is_scalar(a) and _is_scalar(b)) else a.scale(b.value)
        if op == "ip":
            return brackets.gen_interior(_form(a), _form(b))
        if op == "jp":
            return brackets.gen_exterior(_form(a), _form(b))
        if op == "lie":
            v = _vector(a)
            if isinstance(b, Form):
                return brackets.lie(v, b)
            return exterior.lie_multivector(v, _mv(b))
        if op == "sn":
            if isinstance(a, Form) and isinstance(b, Form):
                return brackets.sn_bracket(a, b)
            if not isinstance(a, Form) and not isinstance(b, Form):
                return exterior.vector_bracket(_vector(a), _vector(b))
            raise EvalError("sn needs two forms or two vector fields")
        if op == "theta":
            return brackets.theta(_form(a), _form(b))
        if op == "inner":
            return exterior.scalar_form(fr, hodge.form_inner(_form(a), _form(b)))
        raise EvalError(f"unknown operator {op!r}")


def fr_inverse(f: RationalFn) -> RationalFn:
    return f.inverse()


def render(x: Value) -> str:
    return str(x)


def evaluate(src: str, frame: FrameField, bindings: dict | None = None) -> Value:
    return Evaluator(frame, bindings).eval(src)


# -- argument handling -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="exactforms", description="Exact exterior calculus and identity checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pe = sub.add_parser("eval", help="evaluate expressions on a fixture")
    pe.add_argument("--fixture", default="euclid3")
    pe.add_argument("--let", action="append", default=[], metavar="NAME=EXPR|FILE")
    pe.add_argument("expr", nargs="+")

    pc = sub.add_parser("check", help="run identity checks")
    pc.add_argument("--fixture", action="append", default=None)
    pc.add_argument("--filter", default=None)
    pc.add_argument("--seed", type=int, default=42)
    pc.add_argument("--trials", type=int, default=100)
    pc.add_argument("--max-degree", type=int, default=2)
    pc.add_argument("--report", choices=("text", "json"), default="text")
    pc.add_argument("--out", default=None)
    pc.add_argument("--workers", type=int, default=1)

    pf = sub.add_parser("fixtures", help="fixture catalog")
    pf.add_argument("action", choices=("list",))

    pi = sub.add_parser("identities", help="identity catalog")
    pi.add_argument("action", choices=("list",))
    pi.add_argument("--filter", default=None)
    return p


def _load_lets(ev: Evaluator, lets: list) -> None:
    for item in lets:
        if "=" in item:
            name, src = item.split("=", 1)
            ev.bind(name.strip(), src)
            continue
        try:
            doc = json.loads(Path(item).read_text(encoding="utf-8"))
        except OSError as exc:
            raise EvalError(f"cannot read bindings file {item}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise EvalError(f"{item}: invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise EvalError(f"{item}: bindings file must map names to expressions")
        for name, src in doc.items():
            ev.bind(name, str(src))


def cmd_eval(args) -> int:
    frame = load_fixture(args.fixture)
    ev = Evaluator(frame)
    _load_lets(ev, args.let)
    for src in args.expr:
        print(render(ev.eval(src)))
    return 0


def cmd_check(args) -> int:
    from .verify import GenSpec, run_suite

    fixtures = args.fixture or list(BUILTIN)
    for src in fixtures:
        read_document(src)  # surfaces unknown fixtures as usage errors
    spec = GenSpec(seed=args.seed, max_poly_degree=args.max_degree)
    if args.trials < 1:
        raise EvalError("--trials must be positive")
    report = run_suite(args.filter, fixtures, spec, args.trials, workers=args.workers)
    body = report.to_json() if args.report == "json" else report.to_text()
    if args.out:
        try:
            Path(args.out).write_text(body, encoding="utf-8")
        except OSError as exc:
            raise EvalError(f"cannot write {args.out}: {exc}") from exc
        print(report.to_text().splitlines()[-1])
    else:
        sys.stdout.write(body)
    return 0 if report.passed else 2


def cmd_fixtures(args) -> int:
    for name in BUILTIN:
        fr = load_fixture(name)
        sig = "".join("+" if s > 0 else "-" for s in fr.eta)
        killing = ", ".join(sorted(fr.killing)) or "-"
        print(f"{name:<8} dim {fr.dim}  coords {','.join(fr.chart.coords):<8} "
              f"signature {sig:<5} killing: {killing}")
    return 0


def cmd_identities(args) -> int:
    from .verify import select

    checks = select(args.filter)
    if not checks:
        raise EvalError(f"no checks selected by filter {args.filter!r}")
    for c in checks:
        print(f"{c.id:<34} {c.anchor}")
    return 0


def main(argv=None) -> int:
    from .verify import SelectionError

    args = _build_parser().parse_args(argv)
    handlers = {"eval": cmd_eval, "check": cmd_check, "fixtures": cmd_fixtures,
                "identities": cmd_identities}
    try:
        return handlers[args.command](args)
    except (DslSyntaxError, EvalError, DegreeError, FixtureError, SelectionError,
            ZeroDivisionError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
