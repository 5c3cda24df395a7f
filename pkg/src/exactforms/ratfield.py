"""Exact scalar arithmetic: rationals, multivariate polynomials, rational functions.

Polynomials are backed by FLINT's ``fmpq_mpoly`` (via python-flint); every
``RationalFn`` is kept in a unique normal form (numerator and denominator
coprime, denominator monic under degree-lexicographic order), so equality
is structural.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import flint

Rational = Fraction

ORDERING = "deglex"

Scalar = Union[int, Fraction, "flint.fmpq"]


class PoleError(ZeroDivisionError):
    """The denominator vanishes at the requested sample point."""


def poly_ring(names: Sequence[str]) -> flint.fmpq_mpoly_ctx:
    return flint.fmpq_mpoly_ctx.get(tuple(names), ORDERING)


def to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, flint.fmpz):
        return flint.fmpq(c)
    raise TypeError(f"not an exact rational: {c!r}")


def to_fraction(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _check_index(ctx, mu: int) -> None:
    if not 0 <= mu < ctx.nvars():
        raise IndexError(f"coordinate index {mu} out of range for {ctx.nvars()} variables")


class Poly:
    """Multivariate polynomial with rational coefficients."""

    __slots__ = ("_p",)

    def __init__(self, p: flint.fmpq_mpoly):
        self._p = p

    @classmethod
    def from_terms(cls, ctx, terms: Mapping[tuple, Scalar]) -> "Poly":
        clean = {}
        for exps, c in terms.items():
            if len(exps) != ctx.nvars() or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps!r}")
            c = to_fmpq(c)
            if c != 0:
                clean[tuple(exps)] = c
        return cls(ctx.from_dict(clean))

    @classmethod
    def constant(cls, ctx, c: Scalar) -> "Poly":
        return cls(ctx.constant(to_fmpq(c)))

    @classmethod
    def variable(cls, ctx, i: int) -> "Poly":
        _check_index(ctx, i)
        return cls(ctx.gens()[i])

    @property
    def ring(self):
        return self._p.context()

    @property
    def nvars(self) -> int:
        return self._p.context().nvars()

    def terms(self) -> dict[tuple, Fraction]:
        """Exponent vector -> coefficient, in canonical (descending deglex) order."""
        return {tuple(m): to_fraction(c) for m, c in self._p.terms()}

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def total_degree(self) -> int:
        return -1 if self._p.is_zero() else int(self._p.total_degree())

    def partial(self, mu: int) -> "Poly":
        _check_index(self.ring, mu)
        return Poly(self._p.derivative(mu))

    def __call__(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        if self.nvars == 0:
            return to_fraction(self._p.leading_coefficient()) if not self.is_zero() else Fraction(0)
        return to_fraction(self._p(*[to_fmpq(v) for v in point]))

    def _wrap(self, other):
        if isinstance(other, Poly):
            return other._p
        return to_fmpq(other)

    def __add__(self, other):
        return Poly(self._p + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Poly(self._p - self._wrap(other))

    def __rsub__(self, other):
        return Poly(self._wrap(other) - self._p)

    def __mul__(self, other):
        return Poly(self._p * self._wrap(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(-self._p)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        return Poly(self._p**k)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._p == other._p
        if isinstance(other, (int, Fraction)):
            return self._p == self._p.context().constant(to_fmpq(other))
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms().items()))

    def __str__(self):
        return str(self._p)

    def __repr__(self):
        return f"Poly({self._p})"


def poly_partial(f: Poly, mu: int) -> Poly:
    return f.partial(mu)


def _normalize(n, d):
    """Reduce n/d to normal form; d must be nonzero."""
    if d.is_one():
        return n, d
    if d.is_constant():
        c = d.leading_coefficient()
        ctx = d.context()
        return n / c, ctx.constant(1)
    if n.is_zero():
        return n, d.context().constant(1)
    g = n.gcd(d)
    if not g.is_one():
        n = n / g
        d = d / g
    c = d.leading_coefficient()
    if c != 1:
        n = n / c
        d = d / c
    return n, d


class RationalFn:
    """Exact multivariate rational function ``num/den`` in normal form.

    Instances are immutable. Arithmetic accepts ints and Fractions on either
    side.
    """

    __slots__ = ("_n", "_d")

    def __init__(self, num, den=None):
        if isinstance(num, Poly):
            num = num._p
        if den is None:
            den = num.context().constant(1)
        elif isinstance(den, Poly):
            den = den._p
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self._n, self._d = _normalize(num, den)

    @classmethod
    def _raw(cls, n, d) -> "RationalFn":
        obj = object.__new__(cls)
        obj._n = n
        obj._d = d
        return obj

    @classmethod
    def constant(cls, ctx, c: Scalar) -> "RationalFn":
        return cls._raw(ctx.constant(to_fmpq(c)), ctx.constant(1))

    @classmethod
    def variable(cls, ctx, i: int) -> "RationalFn":
        _check_index(ctx, i)
        return cls._raw(ctx.gens()[i], ctx.constant(1))

    @property
    def ring(self):
        return self._n.context()

    @property
    def num(self) -> Poly:
        return Poly(self._n)

    @property
    def den(self) -> Poly:
        return Poly(self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_polynomial(self) -> bool:
        return self._d.is_one()

    def is_constant(self) -> bool:
        return self._d.is_one() and self._n.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self._n.is_zero():
            return Fraction(0)
        return to_fraction(self._n.leading_coefficient())

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, Poly):
            return RationalFn._raw(other._p, other._p.context().constant(1))
        ctx = self._n.context()
        return RationalFn._raw(ctx.constant(to_fmpq(other)), ctx.constant(1))

    def __add__(self, other):
        if not isinstance(other, RationalFn):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        d1, d2 = self._d, other._d
        if d1.is_one() and d2.is_one():
            return RationalFn._raw(self._n + other._n, d1)
        if d1 == d2:
            return RationalFn(self._n + other._n, d1)
        if d1.is_one():
            return RationalFn._raw(self._n * d2 + other._n, d2)
        if d2.is_one():
            return RationalFn._raw(self._n + other._n * d1, d1)
        g = d1.gcd(d2)
        if g.is_one():
            return RationalFn(self._n * d2 + other._n * d1, d1 * d2)
        q1 = d1 / g
        q2 = d2 / g
        return RationalFn(self._n * q2 + other._n * q1, q1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._raw(-self._n, self._d)

    def __sub__(self, other):
        if not isinstance(other, RationalFn):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFn):
            if isinstance(other, (int, Fraction, flint.fmpq)):
                c = to_fmpq(other)
                if c == 0:
                    return RationalFn._raw(self._n.context().constant(0), self._d.context().constant(1))
                return RationalFn._raw(self._n * c, self._d)
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if d1.is_one() and d2.is_one():
            return RationalFn._raw(n1 * n2, d1)
        if n1.is_zero() or n2.is_zero():
            return RationalFn._raw(n1.context().constant(0), n1.context().constant(1))
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1 = n1 / g
                d2 = d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2 = n2 / g
                d1 = d1 / g
        return RationalFn._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self._n.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        c = self._n.leading_coefficient()
        return RationalFn._raw(self._d / c, self._n / c)

    def __truediv__(self, other):
        if not isinstance(other, RationalFn):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFn._raw(self._n**k, self._d**k)

    def partial(self, mu: int) -> "RationalFn":
        _check_index(self._n.context(), mu)
        if self._d.is_one():
            return RationalFn._raw(self._n.derivative(mu), self._d)
        dn = self._n.derivative(mu)
        dd = self._d.derivative(mu)
        if dd.is_zero():
            return RationalFn(dn, self._d)
        return RationalFn(dn * self._d - self._n * dd, self._d * self._d)

    def __call__(self, point: Sequence[Scalar]) -> Fraction:
        return eval_at(self, point)

    def __eq__(self, other):
        if isinstance(other, RationalFn):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction, Poly)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((str(self._n), str(self._d)))

    def __bool__(self):
        return not self._n.is_zero()

    def __str__(self):
        if self._d.is_one():
            return str(self._n)
        return f"({self._n})/({self._d})"

    def __repr__(self):
        return f"RationalFn({self})"


def ratfn_arith(a: RationalFn, b: RationalFn, op: str) -> RationalFn:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def ratfn_partial(f: RationalFn, mu: int) -> RationalFn:
    return f.partial(mu)


def eval_at(f: RationalFn, point: Sequence[Scalar]) -> Fraction:
    ctx = f.ring
    if len(point) != ctx.nvars():
        raise ValueError(f"expected {ctx.nvars()} coordinates, got {len(point)}")
    den = Poly(f._d)(point)
    if den == 0:
        raise PoleError(f"denominator {f.den} vanishes at {tuple(point)}")
    return Poly(f._n)(point) / den


def const(ctx, c: Scalar) -> RationalFn:
    return RationalFn.constant(ctx, c)


def ratfn_sum(ctx, items: Iterable[RationalFn]) -> RationalFn:
    acc = None
    for it in items:
        acc = it if acc is None else acc + it
    return RationalFn.constant(ctx, 0) if acc is None else acc
