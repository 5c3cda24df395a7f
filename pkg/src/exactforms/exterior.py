"""Differential forms, vector fields and multivectors on a framed chart.

Components are stored sparsely under strictly increasing multi-indices.
The coordinate basis is the working basis; the orthonormal frame basis is
available through :func:`change_basis`.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .manifold import FrameField
from .ratfield import RationalFn

COORD = "coordinate"
FRAME = "frame"


class BasisMismatch(ValueError):
    pass


class DegreeError(ValueError):
    pass


@lru_cache(maxsize=None)
def increasing(n: int, p: int) -> tuple:
    if p < 0 or p > n:
        return ()
    return tuple(itertools.combinations(range(n), p))


@lru_cache(maxsize=None)
def merge(i: tuple, j: tuple) -> tuple:
    """Sign and sorted union of two increasing index tuples (0 on overlap)."""
    if not i:
        return 1, j
    if not j:
        return 1, i
    if set(i) & set(j):
        return 0, None
    # parity = number of pairs (x in i, y in j) with x > y
    inv = 0
    for x in i:
        for y in j:
            if x > y:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(i + j))


@lru_cache(maxsize=None)
def sort_sign(seq: tuple) -> tuple:
    """Sign of the permutation sorting ``seq`` and the sorted tuple; 0 on repeats."""
    if len(set(seq)) != len(seq):
        return 0, None
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(seq))


def _acc(out: dict, key, val: RationalFn) -> None:
    cur = out.get(key)
    out[key] = val if cur is None else cur + val


def _prune(comps: dict) -> dict:
    return {k: v for k, v in comps.items() if not v.is_zero()}


def _scalar(frame: FrameField, c) -> RationalFn:
    if isinstance(c, RationalFn):
        return c
    return frame.chart.const(c)


class _Graded:
    """Shared machinery for antisymmetric tensors (forms and multivectors)."""

    __slots__ = ("frame", "degree", "comps", "basis")
    kind = "graded"

    def __init__(self, frame: FrameField, degree: int, comps: dict | None = None,
                 basis: str = COORD, clean: bool = False):
        self.frame = frame
        self.degree = degree
        if comps is None:
            comps = {}
        elif not clean:
            comps = _prune(comps)
            for k in comps:
                if len(k) != degree or any(a >= b for a, b in zip(k, k[1:])):
                    raise ValueError(f"bad multi-index {k} for degree {degree}")
                if k and (k[0] < 0 or k[-1] >= frame.dim):
                    raise ValueError(f"multi-index {k} out of range")
        self.comps = comps
        self.basis = basis

    def _new(self, degree, comps, basis=None, clean=True):
        return type(self)(self.frame, degree, comps, self.basis if basis is None else basis, clean=clean)

    def is_zero(self) -> bool:
        return not self.comps

    def _align(self, other):
        if not isinstance(other, type(self)):
            raise TypeError(f"cannot combine {self.kind} with {type(other).__name__}")
        if other.frame is not self.frame:
            raise ValueError("operands live on different frames")
        if other.basis != self.basis:
            other = change_basis(other, self.basis)
        if other.degree != self.degree:
            if other.is_zero():
                return None
            if self.is_zero():
                return other
            raise DegreeError(f"degree mismatch: {self.degree} vs {other.degree}")
        return other

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RationalFn)) and self.degree == 0:
            other = self._new(0, _prune({(): _scalar(self.frame, other)}), clean=True)
        aligned = self._align(other)
        if aligned is None:
            return self
        if aligned.degree != self.degree:  # self is a zero of another degree
            return aligned
        out = dict(self.comps)
        for k, v in aligned.comps.items():
            cur = out.get(k)
            if cur is None:
                out[k] = v
            else:
                s = cur + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return self._new(self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return self._new(self.degree, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RationalFn)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "_Graded":
        if isinstance(c, _Graded):
            if c.degree != 0:
                raise DegreeError("can only scale by a 0-degree element")
            c = c.value
        if isinstance(c, int) and c == 1:
            return self
        c = _scalar(self.frame, c)
        if c.is_zero():
            return self._new(self.degree, {})
        return self._new(self.degree, _prune({k: c * v for k, v in self.comps.items()}))

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, RationalFn)):
            return self.scale(c)
        if isinstance(c, _Graded) and c.degree == 0 and type(c) is type(self):
            return self.scale(c.value)
        if isinstance(self, _Graded) and self.degree == 0 and isinstance(c, _Graded):
            return c.scale(self.value)
        return NotImplemented

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, RationalFn)):
            return self.scale(c)
        return NotImplemented

    @property
    def value(self) -> RationalFn:
        if self.degree != 0:
            raise DegreeError(f"not a 0-degree element (degree {self.degree})")
        return self.comps.get((), self.frame.zero)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RationalFn)):
            if self.degree == 0:
                return self.value == other
            return self.is_zero() and other == 0
        if not isinstance(other, type(self)) or other.frame is not self.frame:
            return NotImplemented
        if other.basis != self.basis:
            other = change_basis(other, self.basis)
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.comps == other.comps

    def __hash__(self):
        return hash((self.degree, self.basis, frozenset(self.comps.items())))

    def __getitem__(self, idx) -> RationalFn:
        return self.comps.get(tuple(idx), self.frame.zero)


class Form(_Graded):
    """Differential form; ``comps`` maps increasing index tuples to coefficients."""

    __slots__ = ()
    kind = "form"

    def __str__(self):
        from .syntax import format_form
        return format_form(self)

    def __repr__(self):
        return f"Form(deg={self.degree}, {self})"


class Multivector(_Graded):
    __slots__ = ()
    kind = "multivector"

    def __str__(self):
        from .syntax import format_multivector
        return format_multivector(self)

    def __repr__(self):
        return f"Multivector(deg={self.degree}, {self})"


class VectorField:
    """Vector field in the coordinate basis."""

    __slots__ = ("frame", "comps")

    def __init__(self, frame: FrameField, comps: Sequence):
        if len(comps) != frame.dim:
            raise ValueError(f"vector needs {frame.dim} components")
        self.frame = frame
        self.comps = tuple(_scalar(frame, c) for c in comps)

    def __add__(self, other):
        return VectorField(self.frame, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return VectorField(self.frame, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorField(self.frame, [-a for a in self.comps])

    def scale(self, c):
        c = _scalar(self.frame, c)
        return VectorField(self.frame, [c * a for a in self.comps])

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def apply(self, f: RationalFn) -> RationalFn:
        """Directional derivative ``v(f)``."""
        acc = self.frame.zero
        for s, c in enumerate(self.comps):
            if not c.is_zero():
                d = f.partial(s)
                if not d.is_zero():
                    acc = acc + c * d
        return acc

    def as_multivector(self) -> Multivector:
        return Multivector(self.frame, 1, {(i,): c for i, c in enumerate(self.comps)})

    def __str__(self):
        return str(self.as_multivector())

    def __repr__(self):
        return f"VectorField({self})"


# -- constructors -------------------------------------------------------------

def zero_form(frame: FrameField, degree: int, basis: str = COORD) -> Form:
    return Form(frame, degree, {}, basis, clean=True)


def scalar_form(frame: FrameField, f) -> Form:
    f = _scalar(frame, f)
    return Form(frame, 0, {} if f.is_zero() else {(): f}, clean=True)


def coord_differential(frame: FrameField, mu: int) -> Form:
    return Form(frame, 1, {(mu,): frame.chart.one}, clean=True)


def basis_form(frame: FrameField, idx: Iterable[int], basis: str = COORD) -> Form:
    sign, k = sort_sign(tuple(idx))
    if sign == 0:
        return zero_form(frame, len(tuple(idx)), basis)
    return Form(frame, len(k), {k: frame.chart.const(sign)}, basis, clean=True)


def coord_vector(frame: FrameField, mu: int) -> VectorField:
    return VectorField(frame, [1 if i == mu else 0 for i in range(frame.dim)])


def frame_vector(frame: FrameField, a: int) -> VectorField:
    """The frame vector ``e_a = einv[mu][a] d_mu`` dual to the coframe."""
    einv = frame.metric.einv
    return VectorField(frame, [einv[mu][a] for mu in range(frame.dim)])


def as_form(frame: FrameField, x) -> Form:
    if isinstance(x, Form):
        return x
    return scalar_form(frame, x)


# -- basis change -------------------------------------------------------------

def _transform(comps: dict, table: dict) -> dict:
    """Apply a sparse compound matrix: out[J] = sum_I comps[I] * table[I][J]."""
    out = {}
    for i, v in comps.items():
        for j, m in table.get(i, ()):
            _acc(out, j, v * m)
    return _prune(out)


def _rows(frame: FrameField, which: str, p: int, transpose: bool) -> dict:
    key = ("rows", which, p, transpose)
    cache = frame._compounds
    if key not in cache:
        full = frame.compound(which, p)
        rows = {}
        for (r, c), v in full.items():
            if transpose:
                rows.setdefault(c, []).append((r, v))
            else:
                rows.setdefault(r, []).append((c, v))
        cache[key] = rows
    return cache[key]


def change_basis(x, to: str):
    """Convert a Form or Multivector between coordinate and frame components."""
    if to not in (COORD, FRAME):
        raise ValueError(f"unknown basis {to!r}")
    if x.basis == to:
        return x
    frame = x.frame
    if frame.is_identity or x.degree == 0 or x.is_zero():
        return type(x)(frame, x.degree, x.comps, to, clean=True)
    p = x.degree
    if isinstance(x, Form):
        if to == FRAME:
            # dx^mu = einv[mu][a] e^a: alpha_A = sum_J alpha_J det einv[J, A]
            table = _rows(frame, "einv", p, transpose=False)
        else:
            # e^a = E[a][mu] dx^mu: alpha_J = sum_A alpha_A det E[A, J]
            table = _rows(frame, "E", p, transpose=False)
    else:
        if to == FRAME:
            # d_mu = E[a][mu] e_a: m^A = sum_J m^J det E[A, J]
            table = _rows(frame, "E", p, transpose=True)
        else:
            # e_a = einv[mu][a] d_mu: m^J = sum_A m^A det einv[J, A]
            table = _rows(frame, "einv", p, transpose=True)
    return type(x)(frame, p, _transform(x.comps, table), to, clean=True)


def _coord(x):
    return change_basis(x, COORD) if x.basis != COORD else x


def _restore(result, basis: str):
    return change_basis(result, basis) if basis != COORD else result


# -- algebra ------------------------------------------------------------------

def _check_same(a, b):
    if a.frame is not b.frame:
        raise ValueError("operands live on different frames")
    if a.basis != b.basis:
        raise BasisMismatch(f"basis mismatch: {a.basis} vs {b.basis}")


def _wedge_comps(ac: dict, bc: dict) -> dict:
    out = {}
    for i, u in ac.items():
        for j, v in bc.items():
            sign, k = merge(i, j)
            if sign == 0:
                continue
            prod = u * v
            _acc(out, k, prod if sign > 0 else -prod)
    return _prune(out)


def wedge(a: Form, b: Form) -> Form:
    _check_same(a, b)
    deg = a.degree + b.degree
    if deg > a.frame.dim or a.is_zero() or b.is_zero():
        return Form(a.frame, deg, {}, a.basis, clean=True)
    return Form(a.frame, deg, _wedge_comps(a.comps, b.comps), a.basis, clean=True)


def wedge_all(first: Form, *rest: Form) -> Form:
    out = first
    for r in rest:
        out = wedge(out, r)
    return out


def mv_wedge(a: Multivector, b: Multivector) -> Multivector:
    _check_same(a, b)
    deg = a.degree + b.degree
    if deg > a.frame.dim:
        return Multivector(a.frame, deg, {}, a.basis, clean=True)
    return Multivector(a.frame, deg, _wedge_comps(a.comps, b.comps), a.basis, clean=True)


def ext_d(a: Form) -> Form:
    basis = a.basis
    a = _coord(a)
    n = a.frame.dim
    out = {}
    for i, v in a.comps.items():
        for mu in range(n):
            if mu in i:
                continue
            dv = v.partial(mu)
            if dv.is_zero():
                continue
            sign, k = merge((mu,), i)
            _acc(out, k, dv if sign > 0 else -dv)
    return _restore(Form(a.frame, a.degree + 1, _prune(out), clean=True), basis)


def interior(v: VectorField, a: Form) -> Form:
    """Classical insertion ``i_v``."""
    basis = a.basis
    a = _coord(a)
    out = {}
    comps = v.comps
    for i, val in a.comps.items():
        for k, mu in enumerate(i):
            c = comps[mu]
            if c.is_zero():
                continue
            term = c * val
            _acc(out, i[:k] + i[k + 1:], term if k % 2 == 0 else -term)
    return _restore(Form(a.frame, a.degree - 1, _prune(out), clean=True), basis)


def metric_pairing(u: VectorField, v: VectorField) -> RationalFn:
    g = u.frame.metric.g
    acc = u.frame.zero
    for m, um in enumerate(u.comps):
        if um.is_zero():
            continue
        for n_, vn in enumerate(v.comps):
            if vn.is_zero() or g[m][n_].is_zero():
                continue
            acc = acc + g[m][n_] * um * vn
    return acc


# -- musical isomorphisms -----------------------------------------------------

def flat1(v: VectorField) -> Form:
    g = v.frame.metric.g
    n = v.frame.dim
    out = {}
    for mu in range(n):
        acc = v.frame.zero
        for nu in range(n):
            if not g[mu][nu].is_zero() and not v.comps[nu].is_zero():
                acc = acc + g[mu][nu] * v.comps[nu]
        if not acc.is_zero():
            out[(mu,)] = acc
    return Form(v.frame, 1, out, clean=True)


def sharp1(lam: Form) -> VectorField:
    if lam.degree != 1:
        raise DegreeError(f"sharp1 needs a 1-form, got degree {lam.degree}")
    lam = _coord(lam)
    ginv = lam.frame.metric.ginv
    n = lam.frame.dim
    comps = []
    for mu in range(n):
        acc = lam.frame.zero
        for (nu,), val in lam.comps.items():
            if not ginv[mu][nu].is_zero():
                acc = acc + ginv[mu][nu] * val
        comps.append(acc)
    return VectorField(lam.frame, comps)


def j_product(v: VectorField, a: Form) -> Form:
    """Creation operator ``j_v a = (flat v) ^ a``."""
    return wedge(_restore(flat1(v), a.basis), a)


def sharp(a: Form) -> Multivector:
    a = _coord(a)
    table = _rows(a.frame, "ginv", a.degree, transpose=True)
    return Multivector(a.frame, a.degree, _transform(a.comps, table), clean=True)


def flat(m: Multivector) -> Form:
    if isinstance(m, VectorField):
        return flat1(m)
    m = _coord(m)
    table = _rows(m.frame, "g", m.degree, transpose=True)
    return Form(m.frame, m.degree, _transform(m.comps, table), clean=True)


def mv_to_vector(m: Multivector) -> VectorField:
    if m.degree != 1:
        raise DegreeError("not a vector")
    m = _coord(m)
    return VectorField(m.frame, [m[(i,)] for i in range(m.frame.dim)])


# -- Lie derivatives by components --------------------------------------------

def _dv(v: VectorField) -> list:
    n = v.frame.dim
    return [[v.comps[s].partial(m) for m in range(n)] for s in range(n)]


def lie_form_components(v: VectorField, a: Form) -> Form:
    """``L_v a`` from the component formula (no Cartan calculus involved)."""
    basis = a.basis
    a = _coord(a)
    n = a.frame.dim
    dv = _dv(v)
    out = {}
    for i, val in a.comps.items():
        tr = v.apply(val)
        if not tr.is_zero():
            _acc(out, i, tr)
        for k, mu in enumerate(i):
            # L_v dx^mu = d v^mu = (d_s v^mu) dx^s
            for s in range(n):
                c = dv[mu][s]
                if c.is_zero():
                    continue
                sign, key = sort_sign(i[:k] + (s,) + i[k + 1:])
                if sign == 0:
                    continue
                term = c * val
                _acc(out, key, term if sign > 0 else -term)
    return _restore(Form(a.frame, a.degree, _prune(out), clean=True), basis)


def lie_multivector(v: VectorField, m: Multivector) -> Multivector:
    m = _coord(m)
    n = m.frame.dim
    dv = _dv(v)
    out = {}
    for i, val in m.comps.items():
        tr = v.apply(val)
        if not tr.is_zero():
            _acc(out, i, tr)
        for k, mu in enumerate(i):
            # L_v d_mu = -(d_mu v^s) d_s
            for s in range(n):
                c = dv[s][mu]
                if c.is_zero():
                    continue
                sign, key = sort_sign(i[:k] + (s,) + i[k + 1:])
                if sign == 0:
                    continue
                term = c * val
                _acc(out, key, -term if sign > 0 else term)
    return Multivector(m.frame, m.degree, _prune(out), clean=True)


def vector_bracket(u: VectorField, v: VectorField) -> VectorField:
    """Lie bracket ``[u, v]`` of vector fields."""
    return VectorField(u.frame, [u.apply(v.comps[m]) - v.apply(u.comps[m]) for m in range(u.frame.dim)])


def lie_inverse_metric(v: VectorField) -> list:
    """Components ``(L_v g~)^{mu nu}`` of the Lie derivative of the inverse metric."""
    frame = v.frame
    ginv = frame.metric.ginv
    n = frame.dim
    dv = _dv(v)
    out = [[None] * n for _ in range(n)]
    for mu in range(n):
        for nu in range(mu, n):
            acc = v.apply(ginv[mu][nu])
            for s in range(n):
                if not ginv[s][nu].is_zero() and not dv[mu][s].is_zero():
                    acc = acc - ginv[s][nu] * dv[mu][s]
                if not ginv[mu][s].is_zero() and not dv[nu][s].is_zero():
                    acc = acc - ginv[mu][s] * dv[nu][s]
            out[mu][nu] = out[nu][mu] = acc
    return out
