"""Catalog of executable identities.

Each builder receives the frame and the drawn arguments and returns a
sequence of expressions that must all be exactly equal.  Argument kinds:

``form``     random form, degree swept over the valid range
``scalar``   random 0-form
``one``      random 1-form
``vector``   random vector field
``killing``  random constant combination of declared Killing vectors
``killing1`` the 1-form flat of such a Killing vector
"""
from __future__ import annotations

import fnmatch
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..brackets import (
    gen_exterior,
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
from ..exterior import (
    FRAME,
    COORD,
    Form,
    change_basis,
    coord_vector,
    ext_d,
    flat,
    flat1,
    interior,
    j_product,
    lie_form_components,
    lie_inverse_metric,
    lie_multivector,
    metric_pairing,
    scalar_form,
    sharp,
    sharp1,
    vector_bracket,
    wedge,
    zero_form,
)
from ..hodge import (
    codifferential,
    codifferential_via_connection,
    divergence,
    form_inner,
    form_inner_components,
    laplace_de_rham,
    star,
    star_inv,
    volume_form,
)
from ..manifold import FrameField

FREE_KINDS = ("form",)
FIXED_DEGREE = {"scalar": 0, "one": 1, "killing1": 1}


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    anchor: str
    args: tuple
    build: Callable = field(repr=False, compare=False)
    valid: Callable | None = field(default=None, repr=False, compare=False)
    needs_killing: bool = False
    tag: str = "identity"

    def applies_to(self, frame: FrameField) -> bool:
        return bool(frame.killing) or not self.needs_killing

    def degree_tuples(self, n: int) -> list:
        """All admissible degree assignments for the ``form`` slots."""
        free = sum(1 for k in self.args if k in FREE_KINDS)
        out = []
        for free_degs in itertools.product(range(n + 1), repeat=free):
            it = iter(free_degs)
            degs = tuple(next(it) if k in FREE_KINDS else FIXED_DEGREE.get(k) for k in self.args)
            if self.valid is None or self.valid(degs, n):
                out.append(degs)
        return out


REGISTRY: dict = {}


def check(cid: str, anchor: str, *args: str, valid=None, needs_killing=False, tag="identity"):
    def deco(fn):
        if cid in REGISTRY:
            raise ValueError(f"duplicate check id {cid}")
        REGISTRY[cid] = IdentityCheck(cid, anchor, tuple(args), fn, valid, needs_killing, tag)
        return fn
    return deco


def select(pattern: str | None = None) -> list:
    if not pattern:
        return list(REGISTRY.values())
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    return [c for c in REGISTRY.values() if any(fnmatch.fnmatchcase(c.id, p) for p in pats)]


# -- shorthand ----------------------------------------------------------------

def sg(k: int) -> int:
    return -1 if k % 2 else 1


def deg(x) -> int:
    return x.degree


B = sn_bracket
d = ext_d
delta = codifferential
box = laplace_de_rham
i = gen_interior
j = gen_exterior
w = wedge
Th = theta


def L(v, a):
    return lie(v, a)


def star_lie_star(v, a):
    """``*^{-1} L_v * a``."""
    return star_inv(lie(v, star(a)))


def flat_lie_sharp(v, a):
    """``flat L_v sharp a`` through multivector transport."""
    return flat(lie_multivector(v, sharp(a)))


def comm(x, y, n, b):
    return graded_commutator(x, y, n, b)


def S(frame, f) -> Form:
    return scalar_form(frame, f)


def Z(frame, degree) -> Form:
    return zero_form(frame, degree)


def bracket_fits(degs, n):
    a, b = degs[0], degs[1]
    return a + b - 1 <= n


# -- kernel ground truth ------------------------------------------------------

@check("appA_dd_zero", "d d a = 0", "form")
def _(fr, a):
    return [d(d(a)), Z(fr, a.degree + 2)]


@check("appA_delta_delta_zero", "delta delta a = 0", "form")
def _(fr, a):
    return [delta(delta(a)), Z(fr, a.degree - 2)]


@check("appA_star_star", "** a = sgn(g) (-1)^(a(n+1)) a", "form")
def _(fr, a):
    return [star(star(a)), a.scale(fr.sign * sg(a.degree * (fr.dim + 1)))]


@check("appA_star_one", "*phi = phi omega", "scalar")
def _(fr, f):
    return [star(f), volume_form(fr).scale(f.value)]


@check("appA_star_volume", "*(phi omega) = sgn(g) phi", "scalar")
def _(fr, f):
    return [star(volume_form(fr).scale(f.value)), f.scale(fr.sign)]


@check("appA_flat_sharp", "flat sharp a = a", "form")
def _(fr, a):
    return [flat(sharp(a)), a]


@check("appA_sharp_flat_vector", "sharp flat v = v", "vector")
def _(fr, v):
    back = sharp1(flat1(v))
    return [back.as_multivector(), v.as_multivector()]


@check("appA_basis_roundtrip", "coordinate -> frame -> coordinate is the identity", "form",
       tag="plumbing")
def _(fr, a):
    there = change_basis(a, FRAME)
    return [change_basis(there, COORD), a, there]


@check("appA_i_leibniz", "i_v(a ^ b) = (i_v a) ^ b + (-1)^a a ^ i_v b", "vector", "form", "form",
       valid=lambda g, n: g[1] + g[2] <= n)
def _(fr, v, a, b):
    return [interior(v, w(a, b)), w(interior(v, a), b) + w(a, interior(v, b)).scale(sg(a.degree))]


@check("appA_i_antisym", "i_u i_v a = -i_v i_u a", "vector", "vector", "form")
def _(fr, u, v, a):
    return [interior(u, interior(v, a)), -interior(v, interior(u, a))]


@check("appA_i_j_anticomm", "i_u j_v + j_v i_u = g(u, v)", "vector", "vector", "form",
       valid=lambda g, n: g[2] < n)
def _(fr, u, v, a):
    lhs = interior(u, j_product(v, a)) + j_product(v, interior(u, a))
    return [lhs, a.scale(metric_pairing(u, v))]


@check("appA_cartan", "L_v = i_v d + d i_v (against the component formula)", "vector", "form")
def _(fr, v, a):
    return [lie(v, a), lie_form_components(v, a)]


@check("appA_star_i", "* i_v a = -(-1)^a j_v * a", "vector", "form")
def _(fr, v, a):
    return [star(interior(v, a)), j_product(v, star(a)).scale(-sg(a.degree))]


@check("appA_star_j", "* j_v a = (-1)^a i_v * a", "vector", "form")
def _(fr, v, a):
    return [star(j_product(v, a)), interior(v, star(a)).scale(sg(a.degree))]


@check("appA_inner_product", "(a, b) = *^-1(a ^ *b) = (b, a) = g~ contraction", "form", "form",
       valid=lambda g, n: g[0] == g[1])
def _(fr, a, b):
    return [S(fr, form_inner(a, b)), S(fr, form_inner(b, a)), S(fr, form_inner_components(a, b))]


@check("appA_codiff_connection", "delta a = (-1)^a *^-1 d * a = -g^{mn} i_n nabla_m a", "form")
def _(fr, a):
    return [delta(a), codifferential_via_connection(a)]


@check("appA_divergence", "div v = -delta flat v = *^-1 L_v omega", "vector")
def _(fr, v):
    return [S(fr, divergence(v)), star_inv(lie(v, volume_form(fr)))]


@check("eq3_interior_hodge", "i^l b = (-1)^(b+1) *^-1 j^l * b = i_{sharp l} b", "one", "form")
def _(fr, lam, b):
    via = star_inv(w(lam, star(b))).scale(sg(b.degree + 1))
    return [via, interior(sharp1(lam), b)]


# -- bracket axioms and representations ---------------------------------------

@check("eq5_antisymmetry", "[[a,b]] = -(-1)^((a-1)(b-1)) [[b,a]]", "form", "form", valid=bracket_fits)
def _(fr, a, b):
    return [B(a, b), B(b, a).scale(-sg((a.degree - 1) * (b.degree - 1)))]


@check("eq6_right_leibniz", "[[a, b^c]] = [[a,b]]^c + (-1)^((a-1)b) b^[[a,c]]", "form", "form", "form",
       valid=lambda g, n: g[1] + g[2] <= n and g[0] + g[1] + g[2] - 1 <= n)
def _(fr, a, b, c):
    rhs = w(B(a, b), c) + w(b, B(a, c)).scale(sg((a.degree - 1) * b.degree))
    return [B(a, w(b, c)), rhs]


@check("eq7_scalar_scalar", "[[phi, psi]] = 0", "scalar", "scalar")
def _(fr, f, g):
    return [B(f, g), Z(fr, -1), sn_bracket_components(f, g), sn_bracket_components(f, g, True)]


@check("eq8_one_form_def", "[[l, b]] = flat(L_{sharp l} sharp b)", "one", "form")
def _(fr, lam, b):
    return [B(lam, b), sn_bracket_one_form_def(lam, b)]


@check("eq6_lie_gtilde_decomposition", "[[l,b]] = (L_{sharp l} g~)^{mn} j_m i_n b + L_{sharp l} b",
       "one", "form")
def _(fr, lam, b):
    v = sharp1(lam)
    lg = lie_inverse_metric(v)
    n = fr.dim
    acc = lie(v, b)
    for m in range(n):
        for k in range(n):
            c = lg[m][k]
            if c.is_zero():
                continue
            jm = coord_vector(fr, m)
            ink = interior(coord_vector(fr, k), b)
            acc = acc + j_product(jm, ink).scale(c)
    return [B(lam, b), acc]


@check("eq6_killing_collapse", "[[l,b]] = L_{sharp l} b for sharp l Killing", "killing1", "form",
       needs_killing=True)
def _(fr, lam, b):
    return [B(lam, b), lie_form_components(sharp1(lam), b)]


@check("eq13_explicit_coordinate", "explicit component formula, coordinate coframe", "form", "form",
       valid=bracket_fits)
def _(fr, a, b):
    return [B(a, b), sn_bracket_components(a, b, use_frame=False)]


@check("eq13_explicit_frame", "explicit component formula, orthonormal coframe with c~^{rs}_k",
       "form", "form", valid=bracket_fits)
def _(fr, a, b):
    return [B(a, b), sn_bracket_components(a, b, use_frame=True)]


@check("eq23_nabla_route", "[[a,b]] = -(nabla_m a) ^ i^m b + (-1)^(a+1) (i^m a) ^ nabla_m b",
       "form", "form", valid=bracket_fits)
def _(fr, a, b):
    return [B(a, b), sn_bracket_nabla(a, b)]


def _jacobi_fits(g, n):
    a, b, c = g
    return a + b + c <= n + 2 and b + c - 1 <= n and a + b - 1 <= n and a + c - 1 <= n


@check("eq14_graded_jacobi",
       "(-1)^((a-1)(c-1))[[a,[[b,c]]]] + (-1)^((b-1)(a-1))[[b,[[c,a]]]] + (-1)^((c-1)(b-1))[[c,[[a,b]]]] = 0",
       "form", "form", "form", valid=_jacobi_fits)
def _(fr, a, b, c):
    p, q, r = a.degree - 1, b.degree - 1, c.degree - 1
    total = (B(a, B(b, c)).scale(sg(p * r)) + B(b, B(c, a)).scale(sg(q * p))
             + B(c, B(a, b)).scale(sg(r * q)))
    return [total, Z(fr, p + q + r + 1)]


@check("eq14_jacobi_derivation", "[[a,[[b,c]]]] = [[[[a,b]],c]] + (-1)^((a-1)(b-1)) [[b,[[a,c]]]]",
       "form", "form", "form", valid=_jacobi_fits)
def _(fr, a, b, c):
    rhs = B(B(a, b), c) + B(b, B(a, c)).scale(sg((a.degree - 1) * (b.degree - 1)))
    return [B(a, B(b, c)), rhs]


@check("eq16_left_expansion", "[[a^b, c]] = a^[[b,c]] + (-1)^(ab) b^[[a,c]]", "form", "form", "form",
       valid=lambda g, n: g[0] + g[1] <= n and g[0] + g[1] + g[2] - 1 <= n)
def _(fr, a, b, c):
    rhs = w(a, B(b, c)) + w(b, B(a, c)).scale(sg(a.degree * b.degree))
    return [B(w(a, b), c), rhs]


@check("eq17_scalar_one_form",
       "[[phi,l]] = -[[l,phi]] = -L_{sharp l} phi = -i^l d phi = -(l, d phi) = -i^{d phi} l",
       "scalar", "one")
def _(fr, f, lam):
    df = d(f)
    return [B(f, lam), -B(lam, f), -lie(sharp1(lam), f), -i(lam, df),
            -S(fr, form_inner(lam, df)), -i(df, lam)]


@check("eq18_scalar_form", "[[phi,a]] = -i^{d phi} a = (-1)^a [[a,phi]]", "scalar", "form")
def _(fr, f, a):
    return [B(f, a), -i(d(f), a), B(a, f).scale(sg(a.degree))]


@check("eq19_star_lie_star_wedge",
       "*^-1 L_{sharp t} * (l ^ c) = l ^ *^-1 L_{sharp t} * c + [[t,l]] ^ c", "one", "one", "form",
       valid=lambda g, n: g[2] < n)
def _(fr, t, lam, c):
    v = sharp1(t)
    return [star_lie_star(v, w(lam, c)), w(lam, star_lie_star(v, c)) + w(B(t, lam), c)]


@check("eq19b_star_lie_star",
       "*^-1 L_{sharp t} * b = [[t,b]] - (delta t) b; [[t,b]] = flat L sharp b = *^-1 L * b + (delta t) b",
       "one", "form")
def _(fr, t, b):
    v = sharp1(t)
    slb = star_lie_star(v, b)
    dt = delta(t).value
    return [slb, B(t, b) - b.scale(dt), flat_lie_sharp(v, b) - b.scale(dt)]


@check("eq19c_strip_operator", "*^-1 L_v * = flat L_v sharp + div(v) Id", "vector", "form")
def _(fr, v, b):
    return [star_lie_star(v, b), flat_lie_sharp(v, b) + b.scale(divergence(v))]


@check("eq20_delta_wedge",
       "delta(a^b) = (delta a)^b + (-1)^a a^(delta b) + (-1)^a [[a,b]]  (bracket by components)",
       "form", "form", valid=lambda g, n: g[0] + g[1] <= n)
def _(fr, a, b):
    s = sg(a.degree)
    rhs = (w(delta(a), b) + w(a, delta(b)).scale(s)
           + sn_bracket_components(a, b, use_frame=True).scale(s))
    return [delta(w(a, b)), rhs]


@check("eq20_base_scalar", "delta(phi b) = phi delta b + [[phi, b]],  [[phi,b]] = -i^{d phi} b",
       "scalar", "form")
def _(fr, f, b):
    return [delta(w(f, b)), delta(b).scale(f.value) - i(d(f), b)]


@check("eq20_base_one_form",
       "delta(l^b) = -l^delta b - *^-1 L_{sharp l} * b = (delta l) b - l^delta b - [[l,b]]",
       "one", "form", valid=lambda g, n: g[1] < n)
def _(fr, lam, b):
    v = sharp1(lam)
    return [delta(w(lam, b)), -w(lam, delta(b)) - star_lie_star(v, b),
            b.scale(delta(lam).value) - w(lam, delta(b)) - sn_bracket_one_form_def(lam, b)]


@check("eq22_delta_bracket", "delta [[a,b]] = [[delta a, b]] - (-1)^a [[a, delta b]]", "form", "form",
       valid=bracket_fits)
def _(fr, a, b):
    return [delta(B(a, b)), B(delta(a), b) - B(a, delta(b)).scale(sg(a.degree))]


@check("eq24_box_wedge",
       "box(a^b) = (box a)^b + a^(box b) - [[a,db]] + (-1)^a [[da,b]] - (-1)^a d[[a,b]]",
       "form", "form", valid=lambda g, n: g[0] + g[1] <= n)
def _(fr, a, b):
    s = sg(a.degree)
    rhs = (w(box(a), b) + w(a, box(b)) - B(a, d(b)) + B(d(a), b).scale(s)
           - d(B(a, b)).scale(s))
    return [box(w(a, b)), rhs]


@check("eq25_box_scalar_scalar", "box(phi psi) = psi box phi + phi box psi + 2 (d phi, d psi)",
       "scalar", "scalar")
def _(fr, f, g):
    rhs = box(f).scale(g.value) + box(g).scale(f.value) + S(fr, form_inner(d(f), d(g))).scale(2)
    return [box(w(f, g)), rhs]


@check("eq26_box_scalar_one_form",
       "box(phi l) = phi box l + L_{sharp d phi} l + *^-1 L_{sharp d phi} * l"
       " = phi box l + L_{sharp d phi} l - (delta l) d phi + delta(l ^ d phi)",
       "scalar", "one")
def _(fr, f, lam):
    df = d(f)
    v = sharp1(df)
    first = box(lam).scale(f.value) + lie(v, lam) + star_lie_star(v, lam)
    # phi box l, not (box phi) l, leads the second form
    second = (box(lam).scale(f.value) + lie(v, lam) - df.scale(delta(lam).value)
              + delta(w(lam, df)))
    return [box(w(f, lam)), first, second]


@check("eq27_box_scalar_form",
       "box(phi b) = (box phi) b + phi box b + L_{sharp d phi} b + flat L_{sharp d phi} sharp b"
       " = phi box b + L_{sharp d phi} b + *^-1 L_{sharp d phi} * b",
       "scalar", "form")
def _(fr, f, b):
    v = sharp1(d(f))
    first = b.scale(box(f).value) + box(b).scale(f.value) + lie(v, b) + flat_lie_sharp(v, b)
    second = box(b).scale(f.value) + lie(v, b) + star_lie_star(v, b)
    return [box(w(f, b)), first, second]


@check("eq28_box_one_forms",
       "box(l^t) = (box l)^t + l^(box t) - flat L_{sharp l} sharp dt + flat L_{sharp t} sharp dl"
       " + d flat L_{sharp l} sharp t = -(delta d l)^t + l^(box t) + (delta t) dl"
       " - *^-1 L_{sharp l} * dt + *^-1 L_{sharp t} * dl + d *^-1 L_{sharp l} * t",
       "one", "one")
def _(fr, lam, tau):
    vl, vt = sharp1(lam), sharp1(tau)
    first = (w(box(lam), tau) + w(lam, box(tau)) - flat_lie_sharp(vl, d(tau))
             + flat_lie_sharp(vt, d(lam)) + d(flat_lie_sharp(vl, tau)))
    # (delta t) multiplies dl, as the degrees require
    second = (-w(delta(d(lam)), tau) + w(lam, box(tau)) + d(lam).scale(delta(tau).value)
              - star_lie_star(vl, d(tau)) + star_lie_star(vt, d(lam)) + d(star_lie_star(vl, tau)))
    return [box(w(lam, tau)), first, second]


# -- generalized interior product ---------------------------------------------

@check("def2_degree1_classical", "i^l b = i_{sharp l} b", "one", "form")
def _(fr, lam, b):
    return [i(lam, b), interior(sharp1(lam), b)]


@check("def2_equal_degree_inner", "i^a b = (a, b) when a = b", "form", "form",
       valid=lambda g, n: g[0] == g[1])
def _(fr, a, b):
    return [i(a, b), S(fr, form_inner(a, b)), S(fr, form_inner_components(a, b))]


@check("def2_above_degree_zero", "i^a b = 0 when a > b", "form", "form",
       valid=lambda g, n: g[0] > g[1])
def _(fr, a, b):
    return [i(a, b), Z(fr, b.degree - a.degree)]


@check("def2_component_formula",
       "i^a b = 1/(a!(b-a)!) a_{m..} b_{n..} g~^{m1 n1}...g~^{ma na} e^{n(a+1)}^...", "form", "form",
       valid=lambda g, n: g[0] <= g[1])
def _(fr, a, b):
    return [i(a, b), gen_interior_components(a, b), gen_interior_components(a, b, orthonormal=True)]


@check("eq30_scalar_interior", "i^phi a = phi a", "scalar", "form")
def _(fr, f, a):
    return [i(f, a), a.scale(f.value)]


@check("eq31_interior_volume", "i^a omega = * a", "form")
def _(fr, a):
    return [i(a, volume_form(fr)), star(a)]


@check("eq32_star_interior", "* i^a b = (-1)^(a(b+1)) j^a * b", "form", "form",
       valid=lambda g, n: g[0] <= g[1])
def _(fr, a, b):
    return [star(i(a, b)), j(a, star(b)).scale(sg(a.degree * (b.degree + 1)))]


@check("eq33_interior_star", "i^a * b = (-1)^(ab) * j^a b", "form", "form",
       valid=lambda g, n: g[0] + g[1] <= n)
def _(fr, a, b):
    return [i(a, star(b)), star(j(a, b)).scale(sg(a.degree * b.degree))]


@check("eq34_iterated_interior",
       "i^a i^b c = i^{b^a} c = (-1)^(ab) i^{a^b} c = (-1)^(ab) i^b i^a c", "form", "form", "form",
       valid=lambda g, n: g[0] + g[1] <= g[2])
def _(fr, a, b, c):
    s = sg(a.degree * b.degree)
    return [i(a, i(b, c)), i(w(b, a), c), i(w(a, b), c).scale(s), i(b, i(a, c)).scale(s)]


@check("eq35_interior_star_swap", "i^a * b = (-1)^(ab) i^b * a", "form", "form",
       valid=lambda g, n: g[0] + g[1] <= n)
def _(fr, a, b):
    return [i(a, star(b)), i(b, star(a)).scale(sg(a.degree * b.degree))]


@check("eq36_star_interior_swap", "i^{*a} b = (-1)^(a+b+ab+n) i^{*b} a", "form", "form",
       valid=lambda g, n: g[0] + g[1] >= n)
def _(fr, a, b):
    p, q, n = a.degree, b.degree, fr.dim
    return [i(star(a), b), i(star(b), a).scale(sg(p + q + p * q + n))]


@check("eq37_star_interior_star", "i^{*a} *b = sgn(g) (-1)^(n(a+b) + a(b+1)) i^b a", "form", "form",
       valid=lambda g, n: g[1] <= g[0])
def _(fr, a, b):
    p, q, n = a.degree, b.degree, fr.dim
    return [i(star(a), star(b)), i(b, a).scale(fr.sign * sg(n * (p + q) + p * (q + 1)))]


@check("eq38_interior_creation", "[i^a, j^l]_a b = i^{i^l a} b", "form", "one", "form",
       valid=lambda g, n: g[2] < n)
def _(fr, a, lam, b):
    lhs = comm(lambda x: i(a, x), lambda x: j(lam, x), a.degree, b)
    return [lhs, i(i(lam, a), b)]


@check("eq39_creation_interior", "[i^l, j^a]_a b = j^{i^l a} b", "one", "form", "form",
       valid=lambda g, n: g[1] + g[2] <= n)
def _(fr, lam, a, b):
    lhs = comm(lambda x: i(lam, x), lambda x: j(a, x), a.degree, b)
    return [lhs, j(i(lam, a), b)]


# -- interplay with the bracket -----------------------------------------------

@check("eq40_interior_of_bracket",
       "i^{[[a,b]]} c = (-1)^a i^{a^b} dc + (-1)^b d i^{a^b} c + (-1)^((a-1)(b-1)) i^a d i^b c"
       " - i^b d i^a c", "form", "form", "form",
       valid=lambda g, n: g[0] + g[1] - 1 <= n and g[0] + g[1] - 1 <= g[2] + 1 and g[0] + g[1] <= n + 1)
def _(fr, a, b, c):
    p, q = a.degree, b.degree
    ab = w(a, b)
    rhs = (i(ab, d(c)).scale(sg(p)) + d(i(ab, c)).scale(sg(q))
           + i(a, d(i(b, c))).scale(sg((p - 1) * (q - 1))) - i(b, d(i(a, c))))
    return [i(B(a, b), c), rhs]


@check("eq41_one_form_on_bracket",
       "i^l [[a,b]] = [[i^l a, b]] - (-1)^a [[a, i^l b]]"
       " + (-1)^a [i^{dl}(a^b) - (i^{dl} a)^b - a^(i^{dl} b)]", "one", "form", "form",
       valid=bracket_fits)
def _(fr, lam, a, b):
    s = sg(a.degree)
    dl = d(lam)
    rhs = (B(i(lam, a), b) - B(a, i(lam, b)).scale(s)
           + (i(dl, w(a, b)) - w(i(dl, a), b) - w(a, i(dl, b))).scale(s))
    return [i(lam, B(a, b)), rhs]


@check("eq42_exact_collapse", "i^{d phi}[[a,b]] = [[i^{d phi} a, b]] - (-1)^a [[a, i^{d phi} b]]",
       "scalar", "form", "form", valid=lambda g, n: g[1] + g[2] - 1 <= n)
def _(fr, f, a, b):
    df = d(f)
    return [i(df, B(a, b)), B(i(df, a), b) - B(a, i(df, b)).scale(sg(a.degree))]


@check("eq43_scalar_bracket_interior",
       "i^{[[phi,b]]} c = -i^{i^{d phi} b} c = -i^b(d phi ^ c) + (-1)^b d phi ^ i^b c"
       " = -[i^b, j^{d phi}]_b c", "scalar", "form", "form")
def _(fr, f, b, c):
    df = d(f)
    q = b.degree
    return [i(B(f, b), c), -i(i(df, b), c),
            -i(b, w(df, c)) + w(df, i(b, c)).scale(sg(q)),
            -comm(lambda x: i(b, x), lambda x: j(df, x), q, c)]


@check("eq44_one_form_bracket_interior",
       "i^{[[l,a]]} b = -i^{l^a} db + (-1)^a d i^{l^a} b + i^l d i^a b - i^a d i^l b",
       "one", "form", "form", valid=lambda g, n: g[1] < n)
def _(fr, lam, a, b):
    la = w(lam, a)
    rhs = (-i(la, d(b)) + d(i(la, b)).scale(sg(a.degree)) + i(lam, d(i(a, b)))
           - i(a, d(i(lam, b))))
    return [i(B(lam, a), b), rhs]


# -- commutator catalog -------------------------------------------------------

def _wedge_fits(g, n):
    return g[0] + g[1] <= n


@check("eq45_d_creation", "[d, j^a]_a b = j^{da} b", "form", "form", valid=_wedge_fits)
def _(fr, a, b):
    return [comm(d, lambda x: j(a, x), a.degree, b), j(d(a), b)]


@check("eq46_delta_creation", "[delta, j^a]_a b = j^{delta a} b + (-1)^a [[a,b]]  (bracket by components)",
       "form", "form", valid=_wedge_fits)
def _(fr, a, b):
    rhs = j(delta(a), b) + sn_bracket_components(a, b).scale(sg(a.degree))
    return [comm(delta, lambda x: j(a, x), a.degree, b), rhs]


@check("eq47_lie_creation", "[L_v, j^a] b = j^{L_v a} b", "vector", "form", "form",
       valid=lambda g, n: g[1] + g[2] <= n)
def _(fr, v, a, b):
    return [comm(lambda x: L(v, x), lambda x: j(a, x), 0, b), j(lie_form_components(v, a), b)]


@check("eq48_box_creation",
       "[box, j^a] b = j^{box a} b - [[a,db]] + (-1)^a [[da,b]] - (-1)^a d[[a,b]]", "form", "form",
       valid=_wedge_fits)
def _(fr, a, b):
    s = sg(a.degree)
    rhs = j(box(a), b) - B(a, d(b)) + B(d(a), b).scale(s) - d(B(a, b)).scale(s)
    return [comm(box, lambda x: j(a, x), 0, b), rhs]


@check("eq49_interior_d", "[i^a, d]_a b = -i^{delta a} b + (-1)^(b(a+1)) *^-1 [[a, *b]]", "form", "form",
       valid=lambda g, n: g[0] <= g[1] + 1)
def _(fr, a, b):
    p, q = a.degree, b.degree
    rhs = -i(delta(a), b) + star_inv(B(a, star(b))).scale(sg(q * (p + 1)))
    return [comm(lambda x: i(a, x), d, p, b), rhs]


@check("eq50_interior_delta", "[i^a, delta]_a b = i^{da} b", "form", "form",
       valid=lambda g, n: g[0] <= g[1] + 1)
def _(fr, a, b):
    return [comm(lambda x: i(a, x), delta, a.degree, b), i(d(a), b)]


@check("eq51_interior_lie",
       "[i^a, L_v] b = -i^{[[flat v, a]]} b = -i^{flat L_v sharp a} b = -i^{*^-1 L_v * a} b + div(v) i^a b",
       "vector", "form", "form", valid=lambda g, n: g[1] <= g[2])
def _(fr, v, a, b):
    lhs = comm(lambda x: i(a, x), lambda x: L(v, x), 0, b)
    return [lhs, -i(B(flat1(v), a), b), -i(flat_lie_sharp(v, a), b),
            # sign of the divergence term fixed by *^-1 L_v * = flat L_v sharp + div(v)
            -i(star_lie_star(v, a), b) + i(a, b).scale(divergence(v))]


@check("eq52_interior_box",
       "[i^a, box] b = -i^{box a} b - (-1)^(ab) *^-1[[da, *b]] + (-1)^(ab) *^-1 d[[a, *b]]"
       " + (-1)^(ab+a) *^-1 [[a, d*b]]", "form", "form", valid=lambda g, n: g[0] <= g[1] + 1)
def _(fr, a, b):
    p, q = a.degree, b.degree
    s = sg(p * q)
    sb = star(b)
    rhs = (-i(box(a), b) - star_inv(B(d(a), sb)).scale(s) + star_inv(d(B(a, sb))).scale(s)
           + star_inv(B(a, d(sb))).scale(s * sg(p)))
    return [comm(lambda x: i(a, x), box, 0, b), rhs]


@check("eq53_lie_delta",
       "[L_v, delta] b = [box, i_v] b + [d, i^{d flat v}] b"
       " = [box, i_v] b + i_{sharp delta d flat v} b - (-1)^b *^-1 [[d flat v, *b]]",
       "vector", "form")
def _(fr, v, b):
    dv = d(flat1(v))
    box_iv = comm(box, lambda x: interior(v, x), 0, b)
    return [comm(lambda x: L(v, x), delta, 0, b),
            box_iv + comm(d, lambda x: i(dv, x), 0, b),
            # sign of the bracket term as forced by [i^a, d]_a at a = 2
            box_iv + interior(sharp1(delta(dv)), b) - star_inv(B(dv, star(b))).scale(sg(b.degree))]


@check("eq54_killing_box", "[i^l, box] b = (d i^{dl} - i^{dl} d) b for sharp l Killing",
       "killing1", "form", needs_killing=True)
def _(fr, lam, b):
    dl = d(lam)
    return [comm(lambda x: i(lam, x), box, 0, b), d(i(dl, b)) - i(dl, d(b))]


# -- miscellaneous --------------------------------------------------------------

@check("misc_nested_scalar",
       "[[phi_a, ...[[phi_1, a]]...]] = (-1)^a i^{d phi_a}...i^{d phi_1} a"
       " = (-1)^a i^{d phi_1 ^ ... ^ d phi_a} a = (-1)^a (d phi_1 ^ ... ^ d phi_a, a)",
       "form", "scalar", "scalar", "scalar", "scalar", valid=lambda g, n: g[0] <= 4)
def _(fr, a, *phis):
    p = a.degree
    phis = phis[:p]
    s = sg(p)
    nested = a
    iterated = a
    for f in phis:
        nested = B(f, nested)
        iterated = i(d(f), iterated)
    dphi = S(fr, 1)
    for f in phis:
        dphi = w(dphi, d(f))
    return [nested, iterated.scale(s), i(dphi, a).scale(s), S(fr, form_inner(dphi, a)).scale(s)]


@check("misc_lambda_commutator",
       "[[l1,[[l2,a]]]] - [[l2,[[l1,a]]]] = [[l3,a]],  l3 = flat [sharp l1, sharp l2]",
       "one", "one", "form")
def _(fr, l1, l2, a):
    l3 = flat1(vector_bracket(sharp1(l1), sharp1(l2)))
    return [B(l1, B(l2, a)) - B(l2, B(l1, a)), B(l3, a)]


# -- Tulczyjew operator -------------------------------------------------------

@check("eq61_theta_bracket", "Theta^a b = [i^a, d]_a b = -i^{delta a} b + (-1)^(b(a+1)) *^-1 [[a, *b]]",
       "form", "form", valid=lambda g, n: g[0] <= g[1] + 1)
def _(fr, a, b):
    p, q = a.degree, b.degree
    return [Th(a, b), -i(delta(a), b) + star_inv(B(a, star(b))).scale(sg(q * (p + 1)))]


@check("eq62_theta_scalar", "Theta^phi a = -(d phi) ^ a = -j^{d phi} a", "scalar", "form")
def _(fr, f, a):
    return [Th(f, a), -w(d(f), a)]


@check("eq63_theta_one_form", "Theta^l a = L_{sharp l} a", "one", "form")
def _(fr, lam, a):
    return [Th(lam, a), lie_form_components(sharp1(lam), a)]


def _theta_wedge_fits(g, n):
    return g[0] + g[1] <= n and g[0] + g[1] <= g[2] + 1


@check("eq64_theta_wedge",
       "Theta^{a^b} = i^b Theta^a + (-1)^a Theta^b i^a = (-1)^(ab)[i^a Theta^b + (-1)^b Theta^a i^b]",
       "form", "form", "form", valid=_theta_wedge_fits)
def _(fr, a, b, c):
    p, q = a.degree, b.degree
    s = sg(p * q)
    return [Th(w(a, b), c),
            i(b, Th(a, c)) + Th(b, i(a, c)).scale(sg(p)),
            (i(a, Th(b, c)) + Th(a, i(b, c)).scale(sg(q))).scale(s)]


@check("eq64_theta_wedge_commutators",
       "Theta^{a^b} = [i^b, Theta^a]_(a+1) = (-1)^(ab) [i^a, Theta^b]_(b+1)",
       "form", "form", "form", valid=_theta_wedge_fits)
def _(fr, a, b, c):
    p, q = a.degree, b.degree

    def ia(x): return i(a, x)
    def ib(x): return i(b, x)
    def ta(x): return Th(a, x)
    def tb(x): return Th(b, x)

    return [Th(w(a, b), c), comm(ib, ta, p + 1, c), comm(ia, tb, q + 1, c).scale(sg(p * q))]


@check("eq65_theta_d", "[Theta^a, d]_(a+1) = 0", "form", "form", valid=lambda g, n: g[0] <= g[1] + 2)
def _(fr, a, b):
    return [comm(lambda x: Th(a, x), d, a.degree + 1, b), Z(fr, b.degree - a.degree + 2)]


def _theta_bracket_fits(g, n):
    a, b, c = g
    return a + b - 1 <= n and a + b - 1 <= c + 1


@check("eq66_interior_bracket_theta",
       "i^{[[a,b]]} c = (-1)^a i^b Theta^a c + (-1)^((a-1)(b-1)) Theta^a i^b c"
       " = (-1)^a [i^b, Theta^a]_(b(a+1)) c = -[Theta^b, i^a]_(a(b+1)) c",
       "form", "form", "form", valid=_theta_bracket_fits)
def _(fr, a, b, c):
    p, q = a.degree, b.degree

    def ia(x): return i(a, x)
    def ib(x): return i(b, x)
    def ta(x): return Th(a, x)
    def tb(x): return Th(b, x)

    return [i(B(a, b), c),
            ib(ta(c)).scale(sg(p)) + ta(ib(c)).scale(sg((p - 1) * (q - 1))),
            comm(ib, ta, q * (p + 1), c).scale(sg(p)),
            -comm(tb, ia, p * (q + 1), c)]


@check("eq67_theta_of_bracket",
       "Theta^{[[a,b]]} = (-1)^((a-1)(b-1)) Theta^a Theta^b - Theta^b Theta^a"
       " = -[Theta^b, Theta^a]_((a-1)(b-1))", "form", "form", "form",
       valid=lambda g, n: g[0] + g[1] - 1 <= n and g[0] + g[1] - 1 <= g[2] + 1)
def _(fr, a, b, c):
    p, q = a.degree, b.degree

    def ta(x): return Th(a, x)
    def tb(x): return Th(b, x)

    e = (p - 1) * (q - 1)
    return [Th(B(a, b), c), ta(tb(c)).scale(sg(e)) - tb(ta(c)), -comm(tb, ta, e, c)]


@check("eq68_theta_parity_split",
       "Theta^{a^b} c = [i^b, Theta^a] c = -i^{[[a,b]]} c (a odd); [i^b, Theta^a]_+ c = i^{[[a,b]]} c"
       " (a even, b odd); i^{[[a,b]]} c + 2 Theta^a i^b c (a, b even)",
       "form", "form", "form", valid=lambda g, n: _theta_wedge_fits(g, n) and g[0] + g[1] - 1 <= n)
def _(fr, a, b, c):
    p, q = a.degree, b.degree

    def ib(x): return i(b, x)
    def ta(x): return Th(a, x)

    lhs = Th(w(a, b), c)
    ibr = i(B(a, b), c)
    if p % 2:
        return [lhs, comm(ib, ta, 0, c), -ibr]
    if q % 2:
        return [lhs, comm(ib, ta, 1, c), ibr]
    return [lhs, ibr + ta(ib(c)).scale(2)]


@check("eq69_lie_delta_theta", "[L_v, delta] b = [box, i_v] b - Theta^{d flat v} b", "vector", "form")
def _(fr, v, b):
    dv = d(flat1(v))
    return [comm(lambda x: L(v, x), delta, 0, b),
            comm(box, lambda x: interior(v, x), 0, b) - Th(dv, b)]


@check("eq70_killing_theta", "[box, i^l] b = Theta^{dl} b for sharp l Killing", "killing1", "form",
       needs_killing=True)
def _(fr, lam, b):
    return [comm(box, lambda x: i(lam, x), 0, b), Th(d(lam), b)]
