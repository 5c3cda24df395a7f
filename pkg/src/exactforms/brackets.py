"""Schouten-Nijenhuis bracket on forms and the generalized interior product.

The canonical bracket is generated by the codifferential. Three further
routes (explicit component formula in a chosen coframe, Levi-Civita
connection, and the Lie derivative definition for 1-form left arguments)
exist as independent oracles for it.
"""
from __future__ import annotations

from typing import Callable

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
    flat,
    interior,
    lie_multivector,
    merge,
    sharp,
    sharp1,
    sort_sign,
    vector_bracket,
    flat1,
    wedge,
    zero_form,
)
from .hodge import (
    codifferential,
    covariant_derivative,
    raised_coordinate_vector,
    star,
    star_inv,
)
from .manifold import FrameField


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def lie(v: VectorField, a: Form) -> Form:
    """Lie derivative by Cartan's formula ``i_v d + d i_v``."""
    return interior(v, ext_d(a)) + ext_d(interior(v, a))


def sn_bracket(a: Form, b: Form) -> Form:
    """Bracket generated by the codifferential:

    ``[[a, b]] = (-1)^p [delta(a ^ b) - (delta a) ^ b - (-1)^p a ^ delta b]``.
    """
    s = _sgn(a.degree)
    b = change_basis(b, a.basis)
    out = codifferential(wedge(a, b)) - wedge(codifferential(a), b)
    t = wedge(a, codifferential(b))
    out = out - t if s > 0 else out + t
    return out if s > 0 else -out


def coordinate_structure(frame: FrameField) -> dict:
    """Components ``C^{rs}_k`` of ``[[dx^r, dx^s]] = flat [sharp dx^r, sharp dx^s]``.

    Vanishes when the metric components are constant.
    """
    cache = frame._compounds
    if "coordinate_structure" in cache:
        return cache["coordinate_structure"]
    n = frame.dim
    g, ginv = frame.metric.g, frame.metric.ginv
    dginv = [[[ginv[a][b].partial(i) for i in range(n)] for b in range(n)] for a in range(n)]
    out = {}
    for r in range(n):
        for s in range(n):
            vec = []
            for j in range(n):
                acc = frame.zero
                for i in range(n):
                    if not ginv[r][i].is_zero() and not dginv[s][j][i].is_zero():
                        acc = acc + ginv[r][i] * dginv[s][j][i]
                    if not ginv[s][i].is_zero() and not dginv[r][j][i].is_zero():
                        acc = acc - ginv[s][i] * dginv[r][j][i]
                vec.append(acc)
            for k in range(n):
                acc = frame.zero
                for j in range(n):
                    if not vec[j].is_zero() and not g[j][k].is_zero():
                        acc = acc + g[j][k] * vec[j]
                if not acc.is_zero():
                    out[r, s, k] = acc
    cache["coordinate_structure"] = out
    return out


def frame_structure_oracle(frame: FrameField) -> dict:
    """``flat [sharp e^r, sharp e^s]`` in frame components, via vector brackets."""
    from .exterior import frame_vector

    n = frame.dim
    eta = frame.eta
    vecs = [frame_vector(frame, a).scale(eta[a]) for a in range(n)]
    out = {}
    for r in range(n):
        for s in range(n):
            lowered = change_basis(flat1(vector_bracket(vecs[r], vecs[s])), FRAME)
            for (k,), v in lowered.comps.items():
                out[r, s, k] = v
    return out


def _pairing_table(frame: FrameField, use_frame: bool):
    """Return ``pair(phi, r) = (d phi, e^r)`` for the chosen coframe."""
    n = frame.dim
    if use_frame:
        einv = frame.metric.einv
        eta = frame.eta

        def pair(phi, r):
            acc = frame.zero
            for mu in range(n):
                c = einv[mu][r]
                if c.is_zero():
                    continue
                d = phi.partial(mu)
                if not d.is_zero():
                    acc = acc + c * d
            return acc if eta[r] > 0 else -acc
    else:
        ginv = frame.metric.ginv

        def pair(phi, r):
            acc = frame.zero
            for s in range(n):
                c = ginv[r][s]
                if c.is_zero():
                    continue
                d = phi.partial(s)
                if not d.is_zero():
                    acc = acc + c * d
            return acc
    return pair


def _slots(comps: dict, degree: int) -> list:
    """Entries ``(K', r, sign * value)`` with ``value_{K' r}`` moved to the last slot."""
    out = []
    for idx, v in comps.items():
        for k, r in enumerate(idx):
            sign = _sgn(degree - 1 - k)
            out.append((idx[:k] + idx[k + 1:], r, v if sign > 0 else -v))
    return out


def sn_bracket_components(a: Form, b: Form, use_frame: bool = False,
                          structure: bool = True) -> Form:
    """Bracket from the explicit component formula in a coframe.

    With ``use_frame`` the orthonormal coframe is used and the anholonomy
    term ``c~^{rs}_k`` is active; otherwise the coordinate coframe is used,
    whose structure term only survives for non-constant metric components.
    ``structure=False`` drops that term (for demonstrating that it matters).
    """
    frame = a.frame
    basis = FRAME if use_frame else COORD
    p, q = a.degree, b.degree
    deg = p + q - 1
    if deg < 0 or deg > frame.dim:
        return zero_form(frame, deg, a.basis)
    A = change_basis(a, basis).comps
    B = change_basis(b, basis).comps
    pair = _pairing_table(frame, use_frame)
    struct = frame.metric.ctilde if use_frame else coordinate_structure(frame)
    n = frame.dim
    out = {}

    def put(i, j, val):
        sign, key = merge(i, j)
        if sign:
            _acc(out, key, val if sign > 0 else -val)

    a_slots = _slots(A, p) if p else []
    b_slots = _slots(B, q) if q else []
    # a * alpha_{K' r} (d beta_{K''}, e^r)
    if a_slots:
        dbeta = {(j, r): pair(v, r) for j, v in B.items() for r in range(n)}
        for kp, r, av in a_slots:
            for j in B:
                dv = dbeta[j, r]
                if not dv.is_zero():
                    put(kp, j, av * dv)
    # - b * (d alpha_K, e^r) beta_{r K''}; beta_{r K''} = (-1)^(q-1) beta_{K'' r}
    if b_slots:
        dalpha = {(i, r): pair(v, r) for i, v in A.items() for r in range(n)}
        for kpp, r, bv in b_slots:
            for i in A:
                dv = dalpha[i, r]
                if not dv.is_zero():
                    t = dv * bv
                    put(i, kpp, t if q % 2 == 0 else -t)
    # a b * alpha_{K' r} beta_{K'' s} c~^{rs}_k
    if structure and a_slots and b_slots and struct:
        for kp, r, av in a_slots:
            for kpp, s, bv in b_slots:
                sign1, head = merge(kp, kpp)
                if not sign1:
                    continue
                prod = None
                for k in range(n):
                    c = struct.get((r, s, k))
                    if c is None:
                        continue
                    sign2, key = merge(head, (k,))
                    if not sign2:
                        continue
                    if prod is None:
                        prod = av * bv
                    term = prod * c
                    _acc(out, key, term if sign1 * sign2 > 0 else -term)
    res = Form(frame, deg, _prune(out), basis, clean=True)
    return change_basis(res, a.basis)


def sn_bracket_nabla(a: Form, b: Form) -> Form:
    """``-(nabla_m a) ^ i^m b + (-1)^{p+1} (i^m a) ^ nabla_m b``."""
    frame = a.frame
    basis = a.basis
    a = change_basis(a, COORD)
    b = change_basis(b, COORD)
    deg = a.degree + b.degree - 1
    out = zero_form(frame, deg)
    s = _sgn(a.degree + 1)
    for m in range(frame.dim):
        up = raised_coordinate_vector(frame, m)
        ib = interior(up, b)
        if not ib.is_zero():
            out = out - wedge(covariant_derivative(a, m), ib)
        ia = interior(up, a)
        if not ia.is_zero():
            t = wedge(ia, covariant_derivative(b, m))
            out = out + t if s > 0 else out - t
    return change_basis(out, basis)


def sn_bracket_one_form_def(lam: Form, b: Form) -> Form:
    """``[[lam, b]] = flat(L_{sharp lam} sharp b)`` for a 1-form ``lam``."""
    if lam.degree != 1:
        raise DegreeError(f"left argument must be a 1-form, got degree {lam.degree}")
    out = flat(lie_multivector(sharp1(lam), sharp(b)))
    return change_basis(out, b.basis)


def gen_interior(a: Form, b: Form) -> Form:
    """``i^a b = (-1)^{p(q+1)} *^{-1}(a ^ *b)``, of degree ``q - p``."""
    p, q = a.degree, b.degree
    if p > q:
        return zero_form(a.frame, q - p, b.basis)
    out = star_inv(wedge(change_basis(a, b.basis), star(b)))
    return -out if (p * (q + 1)) % 2 else out


def gen_exterior(a: Form, b: Form) -> Form:
    """``j^a b = a ^ b``."""
    return wedge(change_basis(a, b.basis), b)


def gen_interior_components(a: Form, b: Form, orthonormal: bool = False) -> Form:
    """``i^a b`` from components contracted with ``g~`` (or ``eta`` in the frame)."""
    frame = a.frame
    p, q = a.degree, b.degree
    if p > q:
        return zero_form(frame, q - p, b.basis)
    basis = FRAME if orthonormal else COORD
    A = change_basis(a, basis).comps
    B = change_basis(b, basis).comps
    n = frame.dim
    # raised components alpha^{N1}
    if orthonormal:
        raised = {}
        for i, v in A.items():
            s = 1
            for k in i:
                s *= frame.eta[k]
            raised[i] = v if s > 0 else -v
    else:
        table = frame.compound("ginv", p)
        raised = {}
        for i, v in A.items():
            for j in _subsets(n, p):
                m = table.get((i, j))
                if m is not None:
                    _acc(raised, j, v * m)
        raised = _prune(raised)
    out = {}
    for j, bv in B.items():
        for n1, av in raised.items():
            if not set(n1) <= set(j):
                continue
            rest = tuple(x for x in j if x not in n1)
            sign, _ = merge(n1, rest)
            term = av * bv
            _acc(out, rest, term if sign > 0 else -term)
    res = Form(frame, q - p, _prune(out), basis, clean=True)
    return change_basis(res, b.basis)


def _subsets(n, p):
    from .exterior import increasing

    return increasing(n, p)


def theta(a: Form, b: Form) -> Form:
    """``Theta^a b = i^a d b - (-1)^p d i^a b``."""
    t = ext_d(gen_interior(a, b))
    first = gen_interior(a, ext_d(b))
    return first - t if a.degree % 2 == 0 else first + t


Operator = Callable[[Form], Form]


def graded_commutator(x: Operator, y: Operator, n: int, b: Form) -> Form:
    """``[X, Y]_n b = X Y b - (-1)^n Y X b``."""
    xy = x(y(b))
    yx = y(x(b))
    return xy - yx if n % 2 == 0 else xy + yx
