"""Charts and orthonormal coframes.

A metric is only ever given through an oriented orthonormal coframe
``e^a = E^a_mu dx^mu`` and a constant signature ``eta``, which keeps the
volume form and Hodge star free of square roots.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .ratfield import RationalFn, poly_ring


@dataclass(frozen=True)
class Chart:
    coords: tuple[str, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(self.coords)) != len(self.coords):
            raise ValueError(f"coordinate names must be distinct: {self.coords}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @cached_property
    def ring(self):
        return poly_ring(self.coords)

    @cached_property
    def zero(self) -> RationalFn:
        return RationalFn.constant(self.ring, 0)

    @cached_property
    def one(self) -> RationalFn:
        return RationalFn.constant(self.ring, 1)

    def const(self, c) -> RationalFn:
        return RationalFn.constant(self.ring, c)

    def var(self, i: int) -> RationalFn:
        return RationalFn.variable(self.ring, i)

    def index(self, name: str) -> int:
        return self.coords.index(name)


Matrix = list  # list[list[RationalFn]]


def det(m: Sequence[Sequence[RationalFn]], zero: RationalFn) -> RationalFn:
    """Determinant by cofactor expansion (n <= 4 here)."""
    return minor(m, tuple(range(len(m))), tuple(range(len(m))), zero)


def minor(m, rows: tuple, cols: tuple, zero: RationalFn) -> RationalFn:
    if not rows:
        return zero + 1
    if len(rows) == 1:
        return m[rows[0]][cols[0]]
    r0, rest = rows[0], rows[1:]
    acc = zero
    for k, c in enumerate(cols):
        entry = m[r0][c]
        if entry.is_zero():
            continue
        sub = minor(m, rest, cols[:k] + cols[k + 1:], zero)
        if sub.is_zero():
            continue
        term = entry * sub
        acc = acc - term if k % 2 else acc + term
    return acc


def inverse(m, zero: RationalFn) -> Matrix:
    n = len(m)
    dt = det(m, zero)
    if dt.is_zero():
        raise ValueError("matrix is singular (determinant is the zero function)")
    inv_det = dt.inverse()
    idx = tuple(range(n))
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = minor(m, idx[:j] + idx[j + 1:], idx[:i] + idx[i + 1:], zero)
            if (i + j) % 2:
                cof = -cof
            out[i][j] = cof * inv_det
    return out


def compound(m, p: int, zero: RationalFn) -> dict:
    """p-th compound matrix as a sparse dict ``(I, J) -> det m[I, J]``."""
    n = len(m)
    subsets = list(itertools.combinations(range(n), p))
    out = {}
    for rows in subsets:
        for cols in subsets:
            v = minor(m, rows, cols, zero)
            if not v.is_zero():
                out[rows, cols] = v
    return out


@dataclass
class MetricData:
    g: Matrix
    ginv: Matrix
    einv: Matrix  # einv[mu][a]: dx^mu = einv[mu][a] e^a
    anholonomy: dict  # (a, b, c) -> c^a_{bc}, nonzero entries only
    ctilde: dict  # (r, s, k) -> c~^{rs}_k
    christoffel: dict  # (lam, mu, nu) -> Gamma^lam_{mu nu}
    detE: RationalFn


class FrameField:
    """Oriented orthonormal coframe with constant signature on a chart."""

    def __init__(self, chart: Chart, coframe, eta: Sequence[int], name: str = "",
                 killing: dict | None = None, notes: str = ""):
        n = chart.dim
        if len(coframe) != n or any(len(row) != n for row in coframe):
            raise ValueError(f"coframe must be {n}x{n}")
        if len(eta) != n or any(e not in (1, -1) for e in eta):
            raise ValueError("eta must be a list of +1/-1 of length dim")
        self.chart = chart
        self.name = name
        self.notes = notes
        self.E = [[chart.zero + c for c in row] for row in coframe]
        self.eta = tuple(int(e) for e in eta)
        self.sign = 1
        for e in self.eta:
            self.sign *= e
        self.is_identity = all(
            self.E[a][m] == (1 if a == m else 0) for a in range(n) for m in range(n)
        )
        self.metric = metric_from_frame(self)
        self.killing = {}
        for kname, vec in (killing or {}).items():
            self.killing[kname] = vec

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def zero(self) -> RationalFn:
        return self.chart.zero

    @cached_property
    def _compounds(self) -> dict:
        return {}

    def compound(self, which: str, p: int) -> dict:
        """Cached compound matrices of E, einv, g, ginv."""
        key = (which, p)
        cache = self._compounds
        if key not in cache:
            m = {"E": self.E, "einv": self.metric.einv, "g": self.metric.g,
                 "ginv": self.metric.ginv}[which]
            cache[key] = compound(m, p, self.zero)
        return cache[key]

    def __repr__(self):
        return f"FrameField({self.name or self.chart.coords})"


def metric_from_frame(frame: FrameField) -> MetricData:
    n = frame.dim
    zero = frame.zero
    E, eta = frame.E, frame.eta
    g = [[zero] * n for _ in range(n)]
    for mu in range(n):
        for nu in range(mu, n):
            acc = zero
            for a in range(n):
                if not E[a][mu].is_zero() and not E[a][nu].is_zero():
                    acc = acc + eta[a] * (E[a][mu] * E[a][nu])
            g[mu][nu] = g[nu][mu] = acc
    dE = det(E, zero)
    if dE.is_zero():
        raise ValueError("coframe determinant vanishes identically")
    if frame.is_identity:
        ident = [[zero + (1 if i == j else 0) for j in range(n)] for i in range(n)]
        einv = ident
        ginv = [[zero + (eta[i] if i == j else 0) for j in range(n)] for i in range(n)]
    else:
        einv = inverse(E, zero)
        ginv = inverse(g, zero)
    data = MetricData(g=g, ginv=ginv, einv=einv, anholonomy={}, ctilde={},
                      christoffel={}, detE=dE)
    data.anholonomy = _anholonomy(frame, einv)
    data.ctilde = _ctilde(eta, data.anholonomy, n)
    data.christoffel = christoffel(data, n)
    return data


def _anholonomy(frame: FrameField, einv) -> dict:
    # de^a = dE^a_mu ^ dx^mu = -1/2 c^a_{bc} e^b ^ e^c
    n = frame.dim
    E = frame.E
    out = {}
    for a in range(n):
        curl = {}
        for nu in range(n):
            for mu in range(nu + 1, n):
                v = E[a][mu].partial(nu) - E[a][nu].partial(mu)
                if not v.is_zero():
                    curl[nu, mu] = v
        if not curl:
            continue
        for b in range(n):
            for c in range(b + 1, n):
                acc = frame.zero
                for (nu, mu), v in curl.items():
                    w = einv[nu][b] * einv[mu][c] - einv[mu][b] * einv[nu][c]
                    if not w.is_zero():
                        acc = acc + v * w
                if not acc.is_zero():
                    out[a, b, c] = -acc
                    out[a, c, b] = acc
    return out


def anholonomy(frame: FrameField) -> dict:
    """Nonzero ``c^a_{bc}`` keyed by ``(a, b, c)``."""
    return frame.metric.anholonomy


def _ctilde(eta, c: dict, n: int) -> dict:
    # c~^{rs}_k = g^{ri} g^{sj} g_{kl} c^l_{ij} with g = eta in the frame
    out = {}
    for (l, i, j), v in c.items():
        out[i, j, l] = eta[i] * eta[j] * eta[l] * v
    return out


def christoffel(metric: MetricData, n: int | None = None) -> dict:
    """Nonzero Levi-Civita symbols ``Gamma^lam_{mu nu}`` keyed ``(lam, mu, nu)``."""
    g, ginv = metric.g, metric.ginv
    n = len(g) if n is None else n
    zero = g[0][0] * 0
    dg = [[[g[a][b].partial(s) for s in range(n)] for b in range(n)] for a in range(n)]
    out = {}
    for mu in range(n):
        for nu in range(mu, n):
            lowered = []
            for sig in range(n):
                lowered.append(dg[sig][nu][mu] + dg[sig][mu][nu] - dg[mu][nu][sig])
            if all(x.is_zero() for x in lowered):
                continue
            for lam in range(n):
                acc = zero
                for sig in range(n):
                    if not ginv[lam][sig].is_zero() and not lowered[sig].is_zero():
                        acc = acc + ginv[lam][sig] * lowered[sig]
                if not acc.is_zero():
                    acc = acc * Fraction(1, 2)
                    out[lam, mu, nu] = acc
                    out[lam, nu, mu] = acc
    return out


def lie_metric(v, metric: MetricData) -> list:
    """Components ``(L_v g)_{mu nu}`` for a coordinate vector field ``v``."""
    g = metric.g
    n = len(g)
    comps = v.comps
    dv = [[comps[s].partial(m) for m in range(n)] for s in range(n)]
    out = [[None] * n for _ in range(n)]
    for mu in range(n):
        for nu in range(mu, n):
            acc = g[0][0] * 0
            for s in range(n):
                if not comps[s].is_zero():
                    acc = acc + comps[s] * g[mu][nu].partial(s)
                acc = acc + g[s][nu] * dv[s][mu] + g[mu][s] * dv[s][nu]
            out[mu][nu] = out[nu][mu] = acc
    return out


def is_killing(v, metric: MetricData) -> bool:
    return all(x.is_zero() for row in lie_metric(v, metric) for x in row)
