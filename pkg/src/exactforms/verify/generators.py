"""Seeded random scalars, forms and vector fields."""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction

from ..exterior import COORD, Form, VectorField, increasing
from ..manifold import FrameField
from ..ratfield import Poly, RationalFn


@dataclass(frozen=True)
class GenSpec:
    """Sampling parameters; equal specs give equal sample streams."""

    seed: int = 42
    max_poly_degree: int = 2
    max_terms: int = 3
    coeff_bound: int = 5
    sweep: str = "cycle"

    def __post_init__(self):
        if self.max_poly_degree < 0 or self.max_terms < 1 or self.coeff_bound < 1:
            raise ValueError("GenSpec needs max_poly_degree >= 0, max_terms >= 1, coeff_bound >= 1")
        if self.sweep not in ("cycle", "uniform"):
            raise ValueError(f"unknown degree sweep {self.sweep!r}")


def trial_rng(spec: GenSpec, check_id: str, fixture: str, trial: int) -> random.Random:
    """Independent stream per (seed, check, fixture, trial)."""
    key = f"{spec.seed}:{check_id}:{fixture}:{trial}".encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def rand_coeff(rng: random.Random, spec: GenSpec) -> Fraction:
    b = spec.coeff_bound
    num = rng.choice([k for k in range(-b, b + 1) if k])
    return Fraction(num, rng.randint(1, b))


def gen_poly(spec: GenSpec, frame: FrameField, rng: random.Random) -> RationalFn:
    n = frame.dim
    terms = {}
    for _ in range(rng.randint(1, spec.max_terms)):
        total = rng.randint(0, spec.max_poly_degree)
        exps = [0] * n
        for _ in range(total):
            exps[rng.randrange(n)] += 1
        terms[tuple(exps)] = rand_coeff(rng, spec)
    poly = Poly.from_terms(frame.chart.ring, terms)
    return RationalFn(poly)


def gen_form(spec: GenSpec, frame: FrameField, degree: int, rng: random.Random) -> Form:
    """Sparse random ``degree``-form with polynomial coordinate components."""
    n = frame.dim
    if degree < 0 or degree > n:
        raise ValueError(f"cannot draw a {degree}-form on a {n}-dimensional chart")
    slots = increasing(n, degree)
    count = rng.randint(1, min(len(slots), 3))
    comps = {}
    for idx in rng.sample(slots, count):
        comps[idx] = gen_poly(spec, frame, rng)
    return Form(frame, degree, comps, COORD)


def gen_vector(spec: GenSpec, frame: FrameField, rng: random.Random) -> VectorField:
    comps = [frame.zero] * frame.dim
    for mu in rng.sample(range(frame.dim), rng.randint(1, frame.dim)):
        comps[mu] = gen_poly(spec, frame, rng)
    return VectorField(frame, comps)


def gen_killing(spec: GenSpec, frame: FrameField, rng: random.Random) -> VectorField:
    """Random constant combination of the frame's declared Killing vectors."""
    if not frame.killing:
        raise ValueError(f"fixture {frame.name} declares no Killing vectors")
    names = sorted(frame.killing)
    out = None
    for name in rng.sample(names, rng.randint(1, len(names))):
        term = frame.killing[name].scale(rand_coeff(rng, spec))
        out = term if out is None else out + term
    return out
