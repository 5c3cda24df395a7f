import json

import pytest

from exactforms.cli import EvalError, evaluate, main
from exactforms.exterior import DegreeError, Form
from exactforms.fixtures import load_fixture
from exactforms.syntax import Apply, DslSyntaxError, parse, to_source

CORPUS = [
    "x", "dx", "e1", "@x", "omega", "3", "-y", "x + y", "x - y - z", "x*y/z",
    "x^2", "(x + 1)^3", "dx^dy", "dx^dy^dz", "x*dx + y*dy", "-(x + y)*dz",
    "d(x^2*y)", "delta(x*dx)", "box(x^2)", "star(dx)", "starinv(dy^dz)",
    "sharp(dx)", "flat(@x)", "div(x*@x)", "wedge(dx, dy)", "ip(dx^dy, dx^dy^dz)",
    "jp(dx, dy)", "lie(@x, x*dx)", "sn(x*dy, dx)", "theta(dx, x*dy)",
    "inner(dx, x*dx)", "d(d(x*y*z))", "sn(sn(x, dy^dz), dx)", "x^2^1",
    "(dx + dy)^(dy - dz)", "-x^2", "2*(x - y)/(1 + z^2)", "e1^e2 + e3^e1",
    "lie(y*@x - x*@y, dz)", "theta(x^dy, y*dz^dx)",
]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_corpus_size():
    assert len(CORPUS) >= 30


@pytest.mark.parametrize("src", CORPUS)
def test_parse_print_roundtrip(src):
    ast = parse(src)
    assert parse(to_source(ast)) == ast


@pytest.mark.parametrize("src", CORPUS)
def test_eval_print_reparse_fixed_point(src, e3):
    first = evaluate(src, e3)
    text = str(first)
    again = evaluate(text, e3)
    assert again == first
    assert str(again) == text


def test_apply_parses():
    ast = parse("sn(x*dx, y*dy)")
    assert isinstance(ast, Apply) and ast.op == "sn" and len(ast.args) == 2


def test_syntax_errors_are_positioned():
    with pytest.raises(DslSyntaxError) as err:
        parse("x +\n  * y")
    assert err.value.line == 2 and err.value.col == 3
    with pytest.raises(DslSyntaxError, match="argument"):
        parse("wedge(dx)")
    with pytest.raises(DslSyntaxError):
        parse("frob(x)")


def test_degree_errors_surface_at_evaluation(e3):
    ast = parse("inner(dx, dx^dy)")
    assert isinstance(ast, Apply)
    with pytest.raises(DegreeError):
        evaluate("inner(dx, dx^dy)", e3)
    with pytest.raises(EvalError):
        evaluate("nosuch + 1", e3)


def test_pole_expressions_print_symbolically(e3):
    out = evaluate("1/(x - 1)", e3)
    assert isinstance(out, Form) and str(out) == "(1)/(x - 1)"


@pytest.mark.parametrize("src, fixture, want", [
    ("delta(x*dx)", "euclid3", "-1"),
    ("box(x^2)", "euclid3", "2"),
    ("div(x*@x)", "euclid3", "1"),
    ("ip(dx^dy, dx^dy^dz)", "euclid3", "dz"),
    ("star(dx)", "euclid3", "dy^dz"),
    ("sn(x*dy, dx)", "euclid2", "-dy"),
    ("sn(x*@y, @x)", "euclid3", "-@y"),
    ("sharp(dt)", "mink4", "-@t"),
])
def test_eval_outputs(capsys, src, fixture, want):
    code, out, _ = run(capsys, "eval", "--fixture", fixture, src)
    assert code == 0
    assert out.strip() == want


def test_eval_with_inline_binding(capsys):
    code, out, _ = run(capsys, "eval", "--let", "f=x^2*y", "d(d(f))", "d(f)")
    assert code == 0
    assert out.split("\n")[:2] == ["0", "2*x*y*dx + x^2*dy"]


def test_eval_with_binding_file(capsys, tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps({"a": "x*dy", "b": "dx"}))
    code, out, _ = run(capsys, "eval", "--fixture", "euclid2", "--let", str(path), "sn(a, b)")
    assert code == 0 and out.strip() == "-dy"


def test_eval_usage_errors(capsys):
    assert run(capsys, "eval", "wedge(dx)")[0] == 1
    assert run(capsys, "eval", "--let", "/no/such/file.json", "x")[0] == 1
    assert run(capsys, "eval", "--fixture", "nosuch", "x")[0] == 1
    code, _, err = run(capsys, "eval", "inner(dx, dx^dy)")
    assert code == 1 and "degree" in err


def test_check_passing_subset(capsys):
    code, out, _ = run(capsys, "check", "--fixture", "euclid3", "--filter", "eq20*",
                       "--seed", "42", "--trials", "100")
    assert code == 0
    assert out.rstrip().endswith("PASS")


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "--fixture", "nosuch")[0] == 1
    assert run(capsys, "check", "--filter", "zzz*", "--trials", "1")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["check", "--bogus-flag"])
    assert exc.value.code == 1
    code, out, _ = run(capsys, "check", "--fixture", "euclid3", "--filter",
                       "eq64_theta_wedge_commutators", "--trials", "20")
    assert code == 2 and "FAIL" in out


def test_check_json_report_to_file(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "--fixture", "euclid2", "--fixture", "conf3",
                       "--filter", "appA_*", "--trials", "5", "--report", "json",
                       "--out", str(dest))
    assert code == 0
    doc = json.loads(dest.read_text())
    assert doc["passed"] is True and doc["fixtures"] == ["euclid2", "conf3"]
    assert "PASS" in out


def test_check_accepts_fixture_path(capsys):
    from importlib import resources

    path = resources.files("exactforms.data").joinpath("euclid2.json")
    code, _, _ = run(capsys, "check", "--fixture", str(path), "--filter", "eq5*", "--trials", "3")
    assert code == 0


def test_catalog_listings(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and all(n in out for n in ("euclid2", "mink4", "conf3"))
    code, out, _ = run(capsys, "identities", "list", "--filter", "appA_*")
    assert code == 0 and "appA_dd_zero" in out and "eq5" not in out
    code, out, _ = run(capsys, "identities", "list")
    assert len(out.strip().splitlines()) >= 45


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "exactforms", "eval", "box(x^2)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "2"


def test_frame_atoms_on_curved_fixture():
    c3 = load_fixture("conf3")
    assert evaluate("e1", c3) == evaluate("(1 + x^2)*dx", c3)
