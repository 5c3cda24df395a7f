"""Bracket routes, the interior/Theta family, and refuted sign variants.

The "printed" expressions below differ from the registered identities by a
sign, an index order or a misplaced factor. Each one is refuted on a
concrete input, while the registered form holds on that same input.
"""
import random

import pytest
from hypothesis import given, settings, strategies as st

from exactforms import exterior as ex
from exactforms.brackets import (
    frame_structure_oracle,
    gen_interior,
    gen_interior_components,
    graded_commutator,
    lie,
    sn_bracket,
    sn_bracket_components,
    sn_bracket_nabla,
    sn_bracket_one_form_def,
    theta,
)
from exactforms.cli import evaluate
from exactforms.exterior import DegreeError, VectorField
from exactforms.fixtures import load_fixture
from exactforms.hodge import codifferential, divergence, laplace_de_rham, star, star_inv
from exactforms.verify.generators import GenSpec, gen_form, gen_vector

SPEC = GenSpec()
FIXTURES = ["euclid2", "euclid3", "euclid4", "mink4", "conf3"]
seeds = st.integers(0, 2**32)


def sg(k):
    return -1 if k % 2 else 1


def draw_pair(fr, rng, p=None):
    p = rng.randint(0, fr.dim) if p is None else p
    q = rng.randint(0, fr.dim + 1 - p) if p else rng.randint(0, fr.dim)
    return gen_form(SPEC, fr, p, rng), gen_form(SPEC, fr, q, rng)


# -- worked examples ------------------------------------------------------------

def test_bracket_worked_example_all_routes(e3):
    a = evaluate("x*dy", e3)
    b = evaluate("dx", e3)
    want = evaluate("-dy", e3)
    assert sn_bracket(a, b) == want
    assert sn_bracket_components(a, b) == want
    assert sn_bracket_components(a, b, use_frame=True) == want
    assert sn_bracket_nabla(a, b) == want
    assert sn_bracket_one_form_def(a, b) == want


def test_closed_one_forms_of_separate_variables(e3):
    assert sn_bracket(evaluate("x*dx", e3), evaluate("y*dy", e3)).is_zero()


def test_theta_and_interior_examples(e3):
    assert theta(evaluate("x", e3), evaluate("dy", e3)) == evaluate("-dx^dy", e3)
    assert theta(evaluate("dx", e3), evaluate("x*dy", e3)) == evaluate("dy", e3)
    assert gen_interior(evaluate("dx^dy", e3), evaluate("dx^dy^dz", e3)) == evaluate("dz", e3)


# -- route agreement ------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(FIXTURES))
def test_routes_agree(seed, name):
    fr = load_fixture(name)
    a, b = draw_pair(fr, random.Random(seed))
    canon = sn_bracket(a, b)
    assert sn_bracket_components(a, b) == canon
    assert sn_bracket_components(a, b, use_frame=True) == canon
    assert sn_bracket_nabla(a, b) == canon


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(FIXTURES))
def test_one_form_definition_agrees(seed, name):
    fr = load_fixture(name)
    lam, b = draw_pair(fr, random.Random(seed), p=1)
    assert sn_bracket_one_form_def(lam, b) == sn_bracket(lam, b)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(FIXTURES))
def test_graded_antisymmetry(seed, name):
    fr = load_fixture(name)
    a, b = draw_pair(fr, random.Random(seed))
    p, q = a.degree, b.degree
    assert sn_bracket(a, b) == sn_bracket(b, a).scale(-sg((p - 1) * (q - 1)))


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from(["euclid3", "mink4", "conf3"]))
def test_interior_two_routes(seed, name):
    fr = load_fixture(name)
    rng = random.Random(seed)
    q = rng.randint(0, fr.dim)
    a, b = gen_form(SPEC, fr, rng.randint(0, q), rng), gen_form(SPEC, fr, q, rng)
    want = gen_interior(a, b)
    assert gen_interior_components(a, b) == want
    assert gen_interior_components(a, b, orthonormal=True) == want


def test_frame_structure_matches_vector_bracket_oracle(frames):
    for fr in frames.values():
        assert frame_structure_oracle(fr) == fr.metric.ctilde


def test_conf3_structure_terms_are_active(c3):
    """Dropping the structure term must be detectable on the curved fixture."""
    rng = random.Random(7)
    coord_miss = frame_miss = 0
    for _ in range(30):
        a, b = gen_form(SPEC, c3, 1, rng), gen_form(SPEC, c3, 1, rng)
        canon = sn_bracket(a, b)
        coord_miss += sn_bracket_components(a, b, structure=False) != canon
        frame_miss += sn_bracket_components(a, b, use_frame=True, structure=False) != canon
    assert coord_miss > 0
    assert frame_miss > 0


def test_structure_term_vanishes_on_flat_fixtures(frames):
    rng = random.Random(3)
    for name in ("euclid3", "mink4"):
        fr = frames[name]
        for _ in range(10):
            a, b = draw_pair(fr, rng)
            assert sn_bracket_components(a, b, structure=False) == sn_bracket(a, b)


# -- refuted printed variants -----------------------------------------------------

def test_component_formula_second_term_index_order(e3):
    # With constant-coefficient b on flat space only the second term survives,
    # so the printed index order beta_{K'' r} yields the negative for even q.
    a = evaluate("x*y*dz + x^2*dy", e3)
    b = evaluate("3*dx^dy - dy^dz", e3)
    corrected = sn_bracket_components(a, b)
    printed = -corrected
    assert not corrected.is_zero()
    assert corrected == sn_bracket(a, b) == sn_bracket_nabla(a, b)
    assert printed != sn_bracket(a, b)


def test_box_scalar_times_one_form_printed_second_form(e3):
    phi, lam = evaluate("x^2", e3), evaluate("y*dy + x*dz", e3)
    dphi = ex.ext_d(phi)
    v = ex.sharp1(dphi)
    lhs = laplace_de_rham(ex.wedge(phi, lam))
    tail = lie(v, lam) - dphi.scale(codifferential(lam).value) + codifferential(ex.wedge(lam, dphi))
    printed = lam.scale(laplace_de_rham(phi).value) + tail
    corrected = laplace_de_rham(lam).scale(phi.value) + tail
    assert printed != lhs
    assert corrected == lhs


def test_box_of_one_form_wedge_printed_term_has_wrong_degree(e3):
    lam, tau = evaluate("y*dx", e3), evaluate("x*y*dy", e3)
    assert ex.wedge(lam, tau).degree == 2 and not ex.wedge(lam, tau).is_zero()
    printed_term = lam.scale(codifferential(tau).value)
    corrected_term = ex.ext_d(lam).scale(codifferential(tau).value)
    assert printed_term.degree == 1 and not printed_term.is_zero()
    assert corrected_term.degree == 2
    with pytest.raises(DegreeError):
        ex.wedge(lam, tau) + printed_term


def test_interior_lie_commutator_divergence_sign(e3):
    v = VectorField(e3, [e3.chart.var(0), 0, 0])
    a, b = evaluate("dy", e3), evaluate("z*dy^dz", e3)
    assert divergence(v) == 1
    lhs = gen_interior(a, lie(v, b)) - lie(v, gen_interior(a, b))
    base = -gen_interior(star_inv(lie(v, star(a))), b)
    div_term = gen_interior(a, b).scale(divergence(v))
    assert lhs == base + div_term
    assert lhs != base - div_term


def test_lie_codifferential_commutator_bracket_sign(e3):
    x, y = e3.chart.var(0), e3.chart.var(1)
    v = VectorField(e3, [y, x * x, 0])
    b = evaluate("x*dy^dz + y^2*dx^dz", e3)
    dv = ex.ext_d(ex.flat1(v))
    lhs = lie(v, codifferential(b)) - codifferential(lie(v, b))
    box_iv = laplace_de_rham(ex.interior(v, b)) - ex.interior(v, laplace_de_rham(b))
    head = box_iv + ex.interior(ex.sharp1(codifferential(dv)), b)
    tail = star_inv(sn_bracket(dv, star(b))).scale(sg(b.degree))
    assert lhs == head - tail
    assert lhs != head + tail


def _theta_wedge_commutator_sides(a, b, c):
    p = a.degree
    lhs = theta(ex.wedge(a, b), c)
    comm = graded_commutator(lambda x: gen_interior(b, x), lambda x: theta(a, x), p + 1, c)
    true = gen_interior(b, theta(a, c)) + theta(b, gen_interior(a, c)).scale(sg(p))
    return lhs, comm, true


def test_theta_of_wedge_commutator_form_refuted(e3):
    a, b, c = evaluate("x", e3), evaluate("dy", e3), evaluate("y*dz^dx", e3)
    lhs, comm, true = _theta_wedge_commutator_sides(a, b, c)
    assert lhs == true
    assert lhs != comm


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(["euclid3", "mink4", "conf3"]))
def test_theta_of_wedge_true_form(seed, name):
    fr = load_fixture(name)
    rng = random.Random(seed)
    p = rng.randint(0, 2)
    q = rng.randint(0, fr.dim - p)
    a, b = gen_form(SPEC, fr, p, rng), gen_form(SPEC, fr, q, rng)
    c = gen_form(SPEC, fr, rng.randint(max(p + q - 1, 0), fr.dim), rng)
    lhs, _, true = _theta_wedge_commutator_sides(a, b, c)
    assert lhs == true


def test_theta_parity_split_refuted(e3):
    # a = 1-form, b = 0-form: the odd-a branch claims Theta^{a^b} = [i^b, Theta^a]
    lam, phi, c = evaluate("dx", e3), evaluate("y", e3), evaluate("x*dy", e3)
    lhs = theta(ex.wedge(lam, phi), c)
    comm = graded_commutator(lambda x: gen_interior(phi, x), lambda x: theta(lam, x), 0, c)
    assert lhs != comm


def test_bracket_degree_overflow_is_zero(e3):
    a, b = evaluate("dx^dy", e3), evaluate("x*dx^dy^dz", e3)
    out = sn_bracket(a, b)
    assert out.is_zero()


def test_vector_bracket_example(e3):
    assert evaluate("sn(x*@y, @x)", e3) == evaluate("-@y", e3)


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from(["euclid3", "conf3"]))
def test_flat_of_vector_bracket(seed, name):
    fr = load_fixture(name)
    rng = random.Random(seed)
    u, v = gen_vector(SPEC, fr, rng), gen_vector(SPEC, fr, rng)
    assert sn_bracket(ex.flat1(u), ex.flat1(v)) == ex.flat1(ex.vector_bracket(u, v))
