import json

import pytest
import sympy

from exactforms.exterior import VectorField
from exactforms.fixtures import FixtureError, load_fixture, read_document
from exactforms.manifold import Chart, FrameField, anholonomy, christoffel, is_killing

X, Y, Z = sympy.symbols("x y z")


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"), locals={"x": X, "y": Y, "z": Z})


def sympy_anholonomy(E, coords):
    """c^a_{bc} from de^a = -1/2 c^a_{bc} e^b ^ e^c, computed with sympy matrices."""
    n = len(coords)
    Em = sympy.Matrix(E)
    Einv = Em.inv()  # dx^mu = Einv[mu, a] e^a
    out = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                acc = 0
                for nu in range(n):
                    for mu in range(n):
                        # d(E^a_mu dx^mu) = d_nu E^a_mu dx^nu ^ dx^mu
                        acc += sympy.diff(Em[a, mu], coords[nu]) * (
                            Einv[nu, b] * Einv[mu, c] - Einv[nu, c] * Einv[mu, b])
                acc = sympy.cancel(-acc)
                if acc != 0:
                    out[a, b, c] = acc
    return out


def test_conf3_anholonomy_frozen_value(c3):
    c = anholonomy(c3)
    x = c3.chart.var(0)
    expected = -2 * x / (1 + x * x) ** 2
    assert c[1, 0, 1] == expected
    assert c[1, 1, 0] == -expected
    assert c[2, 0, 2] == expected
    assert set(c) == {(1, 0, 1), (1, 1, 0), (2, 0, 2), (2, 2, 0)}


def test_conf3_anholonomy_matches_sympy(c3):
    E = [[to_sympy(v) for v in row] for row in c3.E]
    oracle = sympy_anholonomy(E, (X, Y, Z))
    ours = anholonomy(c3)
    assert set(oracle) == set(ours)
    for key, val in oracle.items():
        assert sympy.cancel(to_sympy(ours[key]) - val) == 0


def test_flat_fixtures_are_holonomic(frames):
    for name in ("euclid2", "euclid3", "euclid4", "mink4"):
        assert anholonomy(frames[name]) == {}
        assert frames[name].metric.christoffel == {}


def test_christoffel_matches_sympy(c3):
    g = sympy.Matrix(3, 3, lambda i, j: to_sympy(c3.metric.g[i][j]))
    ginv = g.inv()
    coords = (X, Y, Z)
    ours = christoffel(c3.metric)
    for lam in range(3):
        for mu in range(3):
            for nu in range(3):
                ref = sum(ginv[lam, s] * (sympy.diff(g[s, mu], coords[nu]) + sympy.diff(g[s, nu], coords[mu])
                                          - sympy.diff(g[mu, nu], coords[s])) for s in range(3)) / 2
                got = to_sympy(ours.get((lam, mu, nu), c3.zero))
                assert sympy.cancel(got - ref) == 0


def test_metric_signature(m4):
    g = m4.metric.g
    assert [g[i][i] for i in range(4)] == [-1, 1, 1, 1]
    assert m4.sign == -1


def test_declared_killing_vectors_are_killing(frames):
    for fr in frames.values():
        for v in fr.killing.values():
            assert is_killing(v, fr.metric)


def test_dilation_is_not_killing(c3):
    x, y, z = (c3.chart.var(i) for i in range(3))
    assert not is_killing(VectorField(c3, [x, y, z]), c3.metric)
    assert not is_killing(VectorField(c3, [1, 0, 0]), c3.metric)


def test_invalid_killing_declaration_rejected(tmp_path):
    doc = read_document("euclid3")
    doc["killing_vectors"] = {"bogus": ["x", "0", "0"]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(FixtureError, match="not Killing"):
        load_fixture(str(path))


def test_unknown_fixture():
    with pytest.raises(FixtureError):
        load_fixture("no-such-fixture")


def test_degenerate_coframe_rejected():
    ch = Chart(("x", "y"))
    with pytest.raises(ValueError):
        FrameField(ch, [[1, 1], [1, 1]], [1, 1])


def test_chart_rejects_duplicate_coordinates():
    with pytest.raises(ValueError):
        Chart(("x", "x"))
