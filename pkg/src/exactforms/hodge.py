"""Hodge star, inner product, codifferential and Laplace-de Rham operator."""
from __future__ import annotations

from functools import lru_cache

from .exterior import (
    COORD,
    FRAME,
    DegreeError,
    Form,
    VectorField,
    _acc,
    _prune,
    change_basis,
    ext_d,
    flat1,
    interior,
    merge,
    sort_sign,
    wedge,
)
from .manifold import FrameField
from .ratfield import RationalFn


@lru_cache(maxsize=None)
def _star_entry(eta: tuple, idx: tuple) -> tuple:
    n = len(eta)
    comp = tuple(i for i in range(n) if i not in idx)
    sign, _ = merge(idx, comp)
    for i in idx:
        sign *= eta[i]
    return comp, sign


def volume_form(frame: FrameField, basis: str = COORD) -> Form:
    """``e^1 ^ ... ^ e^n``; in coordinates its single component is det E."""
    n = frame.dim
    vol = Form(frame, n, {tuple(range(n)): frame.chart.one}, FRAME, clean=True)
    return change_basis(vol, basis)


def star(a: Form) -> Form:
    frame = a.frame
    n = frame.dim
    basis = a.basis
    f = change_basis(a, FRAME)
    out = {}
    for idx, v in f.comps.items():
        comp, sign = _star_entry(frame.eta, idx)
        out[comp] = v if sign > 0 else -v
    return change_basis(Form(frame, n - a.degree, out, FRAME, clean=True), basis)


def star_sign(frame: FrameField, degree: int) -> int:
    """``sgn(g) (-1)^{p(n+1)}``, the value of ``** `` on p-forms."""
    return frame.sign * (-1 if (degree * (frame.dim + 1)) % 2 else 1)


def star_inv(a: Form) -> Form:
    s = star_sign(a.frame, a.degree)
    out = star(a)
    return out if s > 0 else -out


def form_inner(a: Form, b: Form) -> RationalFn:
    """Pairing ``(a, b) = *^{-1}(a ^ *b)`` of two forms of equal degree."""
    if a.degree != b.degree:
        raise DegreeError(f"inner product needs equal degrees, got {a.degree} and {b.degree}")
    return star_inv(wedge(a, star(change_basis(b, a.basis)))).value


def form_inner_components(a: Form, b: Form) -> RationalFn:
    """``(a, b)`` as a g~-contraction of coordinate components."""
    if a.degree != b.degree:
        raise DegreeError(f"inner product needs equal degrees, got {a.degree} and {b.degree}")
    frame = a.frame
    a = change_basis(a, COORD)
    b = change_basis(b, COORD)
    table = frame.compound("ginv", a.degree)
    acc = frame.zero
    for i, u in a.comps.items():
        for j, v in b.comps.items():
            m = table.get((i, j))
            if m is not None:
                acc = acc + u * v * m
    return acc


def codifferential(a: Form) -> Form:
    """``delta a = (-1)^p *^{-1} d * a``."""
    out = star_inv(ext_d(star(a)))
    return -out if a.degree % 2 else out


def covariant_derivative(a: Form, mu: int) -> Form:
    """``nabla_mu a`` in coordinate components, Levi-Civita connection."""
    basis = a.basis
    a = change_basis(a, COORD)
    frame = a.frame
    n = frame.dim
    gamma = frame.metric.christoffel
    out = {}
    for idx, val in a.comps.items():
        dv = val.partial(mu)
        if not dv.is_zero():
            _acc(out, idx, dv)
        if not gamma:
            continue
        for k, lam in enumerate(idx):
            # nabla_mu dx^lam = -Gamma^lam_{mu s} dx^s
            for s in range(n):
                c = gamma.get((lam, mu, s))
                if c is None:
                    continue
                sign, key = sort_sign(idx[:k] + (s,) + idx[k + 1:])
                if sign == 0:
                    continue
                term = c * val
                _acc(out, key, -term if sign > 0 else term)
    return change_basis(Form(frame, a.degree, _prune(out), clean=True), basis)


def raised_coordinate_vector(frame: FrameField, mu: int) -> VectorField:
    """``sharp dx^mu = g^{mu nu} d_nu``."""
    ginv = frame.metric.ginv
    return VectorField(frame, [ginv[mu][nu] for nu in range(frame.dim)])


def codifferential_via_connection(a: Form) -> Form:
    """``delta a = -g^{mu nu} i_{d_nu} nabla_mu a``."""
    frame = a.frame
    basis = a.basis
    a = change_basis(a, COORD)
    out = Form(frame, a.degree - 1, {}, clean=True)
    for mu in range(frame.dim):
        na = covariant_derivative(a, mu)
        if na.is_zero():
            continue
        out = out - interior(raised_coordinate_vector(frame, mu), na)
    return change_basis(out, basis)


def laplace_de_rham(a: Form) -> Form:
    """``box = -(d delta + delta d)``; equals the flat Laplacian on scalars."""
    return -(ext_d(codifferential(a)) + codifferential(ext_d(a)))


def divergence(v: VectorField) -> RationalFn:
    return -codifferential(flat1(v)).value
