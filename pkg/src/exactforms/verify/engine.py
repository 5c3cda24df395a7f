"""Running identity checks and assembling reports."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..exterior import Form, VectorField
from ..fixtures import load_fixture
from ..manifold import FrameField
from .generators import GenSpec, gen_form, gen_killing, gen_vector, trial_rng
from .registry import IdentityCheck, select


class SelectionError(ValueError):
    pass


@dataclass
class CheckResult:
    check_id: str
    anchor: str
    fixture: str
    trials: int
    failures: int = 0
    counterexample: dict | None = None
    millis: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def as_dict(self, timing: bool = True) -> dict:
        out = {"check_id": self.check_id, "anchor": self.anchor, "fixture": self.fixture,
               "trials": self.trials, "failures": self.failures}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if timing:
            out["millis"] = self.millis
        return out


@dataclass
class Report:
    seed: int
    fixtures: list
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed(self) -> list:
        return [r for r in self.results if not r.passed]

    def check_ids(self) -> set:
        return {r.check_id for r in self.results}

    def as_dict(self, timing: bool = True) -> dict:
        return {"seed": self.seed, "fixtures": list(self.fixtures), "passed": self.passed,
                "checks": len(self.check_ids()),
                "results": [r.as_dict(timing) for r in self.results]}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status}  {r.check_id:<34} {r.fixture:<8} "
                         f"{r.trials - r.failures}/{r.trials}  {r.millis} ms")
            if r.counterexample:
                ce = r.counterexample
                lines.append(f"      trial {ce['trial']}, degrees {ce['degrees']}")
                for k, arg in enumerate(ce["inputs"]):
                    lines.append(f"      arg{k} = {arg}")
                if "error" in ce:
                    lines.append(f"      error: {ce['error']}")
                else:
                    lines.append(f"      side {ce['side']} differs: lhs - rhs = {ce['difference']}")
        total = len(self.results)
        bad = len(self.failed)
        lines.append(f"seed {self.seed}; {len(self.check_ids())} checks, {total} runs, "
                     f"{bad} failing; {'PASS' if not bad else 'FAIL'}")
        return "\n".join(lines) + "\n"


def draw_arguments(check: IdentityCheck, frame: FrameField, spec: GenSpec, degrees: tuple, rng):
    args = []
    for kind, degree in zip(check.args, degrees):
        if kind == "vector":
            args.append(gen_vector(spec, frame, rng))
        elif kind == "killing":
            args.append(gen_killing(spec, frame, rng))
        elif kind == "killing1":
            from ..exterior import flat1
            args.append(flat1(gen_killing(spec, frame, rng)))
        else:
            args.append(gen_form(spec, frame, degree, rng))
    return args


def pick_degrees(check: IdentityCheck, frame: FrameField, spec: GenSpec, trial: int, rng) -> tuple:
    tuples = check.degree_tuples(frame.dim)
    if not tuples:
        raise SelectionError(f"{check.id}: no admissible degrees on {frame.name}")
    if spec.sweep == "uniform":
        return rng.choice(tuples)
    # cycle: every admissible tuple is visited before any repeats
    order = list(tuples)
    trial_rng(spec, check.id, frame.name, -1).shuffle(order)
    return order[trial % len(order)]


def _as_form(frame, x):
    if isinstance(x, (Form,)) or hasattr(x, "comps") and not isinstance(x, VectorField):
        return x
    from ..exterior import scalar_form
    return scalar_form(frame, x)


def evaluate_trial(check: IdentityCheck, frame: FrameField, spec: GenSpec, trial: int):
    """Run one trial; returns None on success or a counterexample dict."""
    rng = trial_rng(spec, check.id, frame.name, trial)
    degrees = pick_degrees(check, frame, spec, trial, rng)
    args = draw_arguments(check, frame, spec, degrees, rng)
    inputs = [str(a) for a in args]
    base = {"trial": trial, "degrees": [d for d in degrees if d is not None], "inputs": inputs}
    try:
        sides = [_as_form(frame, s) for s in check.build(frame, *args)]
        first = sides[0]
        for k, other in enumerate(sides[1:], start=1):
            if first != other:
                return dict(base, side=k, difference=str(first - other) if first.degree == other.degree
                            or first.is_zero() or other.is_zero()
                            else f"degree {first.degree} vs {other.degree}")
    except Exception as exc:  # a crashing builder is a failing trial
        return dict(base, error=f"{type(exc).__name__}: {exc}")
    return None


def run_check(check: IdentityCheck, frame: FrameField, spec: GenSpec, trials: int = 100,
              stop_on_failure: bool = False) -> CheckResult:
    res = CheckResult(check.id, check.anchor, frame.name, trials)
    start = time.perf_counter()
    for t in range(trials):
        ce = evaluate_trial(check, frame, spec, t)
        if ce is not None:
            res.failures += 1
            if res.counterexample is None:
                res.counterexample = ce
            if stop_on_failure:
                res.trials = t + 1
                break
    res.millis = int((time.perf_counter() - start) * 1000)
    return res


def _job(args):
    check_id, source, spec, trials = args
    from .registry import REGISTRY
    return run_check(REGISTRY[check_id], load_fixture(source), spec, trials)


def run_suite(pattern: str | None = None, fixtures=("euclid2", "euclid3", "euclid4", "mink4", "conf3"),
              spec: GenSpec | None = None, trials: int = 100, workers: int = 1) -> Report:
    """Run every selected check on every applicable fixture.

    ``fixtures`` holds builtin names or JSON paths. Results are ordered by
    check then fixture, independent of ``workers``.
    """
    spec = spec or GenSpec()
    checks = select(pattern)
    if not checks:
        raise SelectionError(f"no checks selected by filter {pattern!r}")
    frames = [(src, load_fixture(src)) for src in fixtures]
    jobs = [(c.id, src, spec, trials) for c in checks for src, fr in frames if c.applies_to(fr)]
    report = Report(spec.seed, [fr.name for _, fr in frames])
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            report.results = list(pool.map(_job, jobs))
    else:
        by_src = dict(frames)
        from .registry import REGISTRY
        report.results = [run_check(REGISTRY[cid], by_src[src], spec, t) for cid, src, _, t in jobs]
    return report
