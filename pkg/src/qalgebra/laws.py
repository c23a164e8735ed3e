"""Seeded verification of the algebraic laws of the deformed operators.

Each law in :data:`LAWS` is checked on random samples drawn from its domain.
Identity laws hold when ``lhs == rhs`` to the law's relative tolerance on
every sample.  Non-identity laws (non-distributivity, the missing absorbing
element, the dual-operator anomalies) hold when a counterexample with
``|lhs - rhs| > 1e-6`` turns up.

Sampling is deterministic: every law draws from its own ``random.Random``
seeded with ``"<seed>:<law name>"``, so a report depends only on the
:class:`SampleSpec` and the law, never on which other laws ran before it.
"""

import enum
import fnmatch
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

from .core import q_exp, q_ln
from .errors import DomainViolation, UnknownLaw
from .ops import add_a, add_dual, div_a, inv_a, mul_a, mul_dual, neg_a, sub_a

#: samples with ``|a|`` below this are redrawn
A_EXCLUDE = 1e-3
#: minimal ``|lhs - rhs|`` for a counterexample
GAP = 1e-6
#: samples with ``|1 + a*y|`` below this are redrawn (linear denominators)
LINEAR_MARGIN = 1e-6
#: samples with a power-form base or exp/log bracket below this are redrawn
POWER_MARGIN = 1e-6
MAX_REDRAWS = 10_000

REAL = (-3.0, 3.0)
POSITIVE = (0.1, 4.0)


class Verdict(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"


@dataclass(frozen=True)
class SampleSpec:
    seed: int = 42
    count: int = 10_000
    a_range: Tuple[float, float] = (-2.0, 2.0)
    #: overrides the law's own value range when given
    x_range: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")
        lo, hi = self.a_range
        if not lo <= hi:
            raise ValueError(f"empty a range {self.a_range!r}")
        if max(abs(lo), abs(hi)) < A_EXCLUDE:
            raise ValueError(f"a range {self.a_range!r} lies inside the excluded band |a| < {A_EXCLUDE}")
        if self.x_range is not None and not self.x_range[0] <= self.x_range[1]:
            raise ValueError(f"empty x range {self.x_range!r}")


@dataclass
class OpReport:
    law_name: str
    kind: str
    samples_tested: int
    max_abs_error: float
    max_rel_error: float
    #: ``(a, x, y, ...)`` of the sample with the largest relative error
    worst_case_inputs: tuple
    verdict: Verdict
    tolerance: float
    #: ``(a, x, y, ...)`` with ``|lhs - rhs| > GAP``, if one was found
    counterexample: Optional[tuple] = None
    counterexample_gap: float = 0.0
    counterexample_index: Optional[int] = None

    @property
    def ok(self):
        """Whether the law reached its expected verdict."""
        return self.verdict is Verdict.HOLDS

    def summary(self):
        if self.kind == "identity":
            detail = f"max_rel_error={self.max_rel_error:.3e}"
            if self.counterexample is not None:
                detail += f" counterexample={_fmt(self.counterexample)}"
        elif self.counterexample is not None:
            detail = (f"witness={_fmt(self.counterexample)} "
                      f"gap={self.counterexample_gap:.6g} at sample {self.counterexample_index}")
        else:
            detail = "no counterexample"
        return f"{self.law_name:<16} {self.verdict.value:<5} n={self.samples_tested} {detail}"


def _fmt(values):
    return "(" + ", ".join(repr(v) for v in values) + ")"


@dataclass(frozen=True)
class Law:
    name: str
    kind: str  # "identity" | "counterexample"
    arity: int
    value_range: Tuple[float, float]
    lhs: Optional[Callable] = None
    rhs: Optional[Callable] = None
    #: rejects ill-conditioned samples; takes ``(a, *xs)``
    guard: Optional[Callable] = None
    tolerance: float = 1e-10
    runner: Optional[Callable] = field(default=None, compare=False)
    #: per-component magnitude floor for the relative error, for sides that
    #: are exactly zero (e.g. ``x +_a (-_a x) == 0``); takes ``(a, *xs)``
    scale: Optional[Callable] = None


def _rel_error(lhs, rhs, floor=0.0):
    scale = max(abs(lhs), abs(rhs), floor)
    if scale == 0.0:
        return 0.0
    return abs(lhs - rhs) / scale


def _as_tuple(v):
    return v if isinstance(v, tuple) else (v,)


class _Sampler:
    def __init__(self, law, spec):
        self.rng = random.Random(f"{spec.seed}:{law.name}")
        self.a_range = spec.a_range
        self.x_range = spec.x_range or law.value_range

    def a(self):
        lo, hi = self.a_range
        for _ in range(MAX_REDRAWS):
            a = self.rng.uniform(lo, hi)
            if abs(a) >= A_EXCLUDE:
                return a
        raise RuntimeError(f"could not draw a from {self.a_range!r} outside |a| < {A_EXCLUDE}")

    def x(self, n):
        lo, hi = self.x_range
        return tuple(self.rng.uniform(lo, hi) for _ in range(n))


def _draw(sampler, law, evaluate):
    """Redraw until the guard accepts and ``evaluate`` raises no domain error."""
    for _ in range(MAX_REDRAWS):
        a = sampler.a()
        xs = sampler.x(law.arity)
        if law.guard is not None and not law.guard(a, *xs):
            continue
        try:
            return (a,) + xs, evaluate(a, *xs)
        except DomainViolation:
            continue
    raise RuntimeError(f"{law.name}: no valid sample in {MAX_REDRAWS} draws; check the ranges")


def _run_pairwise(law, spec):
    sampler = _Sampler(law, spec)
    report = OpReport(law.name, law.kind, 0, 0.0, 0.0, (), Verdict.FAILS, law.tolerance)

    def evaluate(a, *xs):
        lhs = _as_tuple(law.lhs(a, *xs))
        rhs = _as_tuple(law.rhs(a, *xs))
        floors = _as_tuple(law.scale(a, *xs)) if law.scale else (0.0,) * len(lhs)
        return lhs, rhs, floors

    for i in range(spec.count):
        inputs, (lhs, rhs, floors) = _draw(sampler, law, evaluate)
        abs_err = max(abs(l - r) for l, r in zip(lhs, rhs))
        rel_err = max(_rel_error(l, r, f) for l, r, f in zip(lhs, rhs, floors))
        report.samples_tested += 1
        report.max_abs_error = max(report.max_abs_error, abs_err)
        if rel_err > report.max_rel_error or not report.worst_case_inputs:
            report.max_rel_error = rel_err
            report.worst_case_inputs = inputs
        if abs_err > GAP and report.counterexample is None:
            report.counterexample = inputs
            report.counterexample_gap = abs_err
            report.counterexample_index = i

    if law.kind == "identity":
        holds = report.max_rel_error <= law.tolerance
        if holds:
            report.counterexample = None
            report.counterexample_gap = 0.0
            report.counterexample_index = None
        elif report.counterexample is None:
            # tolerance exceeded without an absolute gap > GAP
            report.counterexample = report.worst_case_inputs
    else:
        holds = report.counterexample is not None
    report.verdict = Verdict.HOLDS if holds else Verdict.FAILS
    return report


def _run_no_absorbing(law, spec):
    """For every sampled ``(a, y)`` look for an ``x`` with ``x *_a y != y``."""
    sampler = _Sampler(law, spec)
    report = OpReport(law.name, law.kind, 0, 0.0, 0.0, (), Verdict.FAILS, law.tolerance)
    weakest = math.inf
    for i in range(spec.count):
        a = sampler.a()
        (y,) = sampler.x(1)
        found = None
        for _ in range(100):
            (x,) = sampler.x(1)
            try:
                gap = abs(mul_a(a, x, y) - y)
            except DomainViolation:
                continue
            if gap > GAP:
                found = (a, x, y), gap
                break
        report.samples_tested += 1
        if found is None:
            report.verdict = Verdict.FAILS
            report.counterexample = None
            report.worst_case_inputs = (a, y)
            return report
        inputs, gap = found
        if gap < weakest:
            weakest = gap
            report.counterexample = inputs
            report.counterexample_gap = gap
            report.counterexample_index = i
        report.max_abs_error = max(report.max_abs_error, gap)
    report.verdict = Verdict.HOLDS
    return report


def _run_dual_anomalies(law, spec):
    """``x *^a 0 == 0`` everywhere, while ``x *^a 1 != x`` and ``x +^a 0+ != x``.

    ``y = 0`` is outside the domain of ``+^a``, so that anomaly is probed at
    ``y = 1e-4``.
    """
    sampler = _Sampler(law, spec)
    report = OpReport(law.name, law.kind, 0, 0.0, 0.0, (), Verdict.FAILS, law.tolerance)
    unit_gap = None
    sum_gap = None

    def probe(a, x):
        return mul_dual(a, x, 0.0), mul_dual(a, x, 1.0), add_dual(a, x, 1e-4)

    for i in range(spec.count):
        (a, x), (zero, unit, near) = _draw(sampler, law, probe)
        report.samples_tested += 1
        if abs(zero) > report.max_abs_error:
            report.max_abs_error = abs(zero)
            report.worst_case_inputs = (a, x)
        if unit_gap is None and abs(unit - x) > GAP:
            unit_gap = (a, x, 1.0), abs(unit - x), i
        if sum_gap is None and abs(near - x) > GAP:
            sum_gap = (a, x, 1e-4), abs(near - x), i
    report.max_rel_error = report.max_abs_error
    if unit_gap is not None:
        report.counterexample, report.counterexample_gap, report.counterexample_index = unit_gap
    holds = report.max_abs_error <= law.tolerance and unit_gap is not None and sum_gap is not None
    report.verdict = Verdict.HOLDS if holds else Verdict.FAILS
    return report


# -- domain guards -------------------------------------------------------------

def _pow(x, a):
    # nan for x <= 0 so that every guard comparison fails
    return x ** a if x > 0 else math.nan


def _lin_ok(a, *xs):
    return all(abs(1.0 + a * x) >= LINEAR_MARGIN for x in xs)


def _exp_ok(a, *xs):
    return all(1.0 + a * x >= POWER_MARGIN for x in xs)


def _mul_base_ok(a, x, y):
    return _pow(x, a) + _pow(y, a) - 1.0 >= POWER_MARGIN


def _dual_product_ok(a, x, y):
    if not _exp_ok(a, x, y):
        return False
    # 1 + a*(x *^a y) = exp(log(1+a*x) * log(1+a*y) / a)
    return math.log1p(a * x) * math.log1p(a * y) / a >= math.log(POWER_MARGIN)


# -- the registry ----------------------------------------------------------------

def _identity(name, arity, value_range, lhs, rhs, guard=None, tolerance=1e-10):
    return Law(name, "identity", arity, value_range, lhs, rhs, guard, tolerance)


def _nonidentity(name, arity, value_range, lhs, rhs, guard=None):
    return Law(name, "counterexample", arity, value_range, lhs, rhs, guard)


_LAW_LIST = [
    _identity("assoc_add", 3, REAL,
              lambda a, x, y, z: add_a(a, add_a(a, x, y), z),
              lambda a, x, y, z: add_a(a, x, add_a(a, y, z))),
    _identity("assoc_mul", 3, POSITIVE,
              lambda a, x, y, z: mul_a(a, mul_a(a, x, y), z),
              lambda a, x, y, z: mul_a(a, x, mul_a(a, y, z)),
              guard=lambda a, x, y, z: _pow(x, a) + _pow(y, a) + _pow(z, a) - 2.0 >= POWER_MARGIN),
    _identity("comm_add", 2, REAL,
              lambda a, x, y: add_a(a, x, y),
              lambda a, x, y: add_a(a, y, x)),
    _identity("comm_mul", 2, POSITIVE,
              lambda a, x, y: mul_a(a, x, y),
              lambda a, x, y: mul_a(a, y, x),
              guard=_mul_base_ok),
    _identity("neutral_add", 1, REAL,
              lambda a, x: (add_a(a, x, 0.0), add_a(a, 0.0, x)),
              lambda a, x: (x, x),
              tolerance=1e-14),
    _identity("neutral_mul", 1, POSITIVE,
              lambda a, x: (mul_a(a, x, 1.0), mul_a(a, 1.0, x)),
              lambda a, x: (x, x),
              tolerance=1e-14),
    Law("opposite", "identity", 2, REAL,
        lambda a, x, y: (sub_a(a, x, y), add_a(a, x, neg_a(a, x)), sub_a(a, 0.0, x),
                         sub_a(a, add_a(a, x, y), y)),
        lambda a, x, y: (add_a(a, x, neg_a(a, y)), 0.0, neg_a(a, x), x),
        guard=lambda a, x, y: _lin_ok(a, x, y),
        scale=lambda a, x, y: (0.0, max(abs(x), abs(neg_a(a, x))), 0.0, 0.0)),
    _identity("inverse", 2, POSITIVE,
              lambda a, x, y: (mul_a(a, x, inv_a(a, x)), div_a(a, mul_a(a, x, y), y)),
              lambda a, x, y: (1.0, x),
              guard=lambda a, x, y: 2.0 - _pow(x, a) >= POWER_MARGIN and _mul_base_ok(a, x, y)),
    _identity("sign_rules", 1, REAL,
              lambda a, x: neg_a(a, neg_a(a, x)),
              lambda a, x: x,
              guard=_lin_ok),
    _identity("gen_add1", 2, REAL,
              lambda a, x, y: a * add_a(a, x, y),
              lambda a, x, y: add_a(1.0, a * x, a * y)),
    _identity("gen_mul1", 2, POSITIVE,
              lambda a, x, y: mul_a(a, x, y) ** a,
              lambda a, x, y: mul_a(1.0, x ** a, y ** a),
              guard=_mul_base_ok),
    _identity("morphism_2a", 2, REAL,
              lambda a, x, y: q_exp(a, add_a(a, x, y)),
              lambda a, x, y: q_exp(a, x) * q_exp(a, y),
              guard=_exp_ok),
    _identity("morphism_3a", 2, REAL,
              lambda a, x, y: q_exp(a, x + y),
              lambda a, x, y: mul_a(a, q_exp(a, x), q_exp(a, y)),
              guard=lambda a, x, y: _exp_ok(a, x, y, x + y)),
    _identity("morphism_4a", 2, POSITIVE,
              lambda a, x, y: q_ln(a, mul_a(a, x, y)),
              lambda a, x, y: q_ln(a, x) + q_ln(a, y),
              guard=_mul_base_ok),
    _identity("morphism_5a", 2, POSITIVE,
              lambda a, x, y: q_ln(a, x * y),
              lambda a, x, y: add_a(a, q_ln(a, x), q_ln(a, y))),
    _identity("morphism_2b", 2, REAL,
              lambda a, x, y: q_exp(a, sub_a(a, x, y)),
              lambda a, x, y: q_exp(a, x) / q_exp(a, y),
              guard=_exp_ok),
    _identity("morphism_3b", 2, REAL,
              lambda a, x, y: q_exp(a, x - y),
              lambda a, x, y: div_a(a, q_exp(a, x), q_exp(a, y)),
              guard=lambda a, x, y: _exp_ok(a, x, y, x - y)),
    _identity("morphism_4b", 2, POSITIVE,
              lambda a, x, y: q_ln(a, div_a(a, x, y)),
              lambda a, x, y: q_ln(a, x) - q_ln(a, y),
              guard=lambda a, x, y: _pow(x, a) - _pow(y, a) + 1.0 >= POWER_MARGIN),
    _identity("morphism_5b", 2, POSITIVE,
              lambda a, x, y: q_ln(a, x / y),
              lambda a, x, y: sub_a(a, q_ln(a, x), q_ln(a, y))),
    _identity("dual_def_9", 2, REAL,
              lambda a, x, y: math.log(q_exp(a, mul_dual(a, x, y))),
              lambda a, x, y: math.log(q_exp(a, x)) * math.log(q_exp(a, y)),
              guard=_dual_product_ok),
    _identity("dual_def_10", 2, POSITIVE,
              lambda a, x, y: q_ln(a, add_dual(a, x, y)),
              lambda a, x, y: _logaddexp(q_ln(a, x), q_ln(a, y))),
    _identity("distrib_11", 3, REAL,
              lambda a, x, y, z: add_a(a, mul_dual(a, x, y), mul_dual(a, x, z)),
              lambda a, x, y, z: mul_dual(a, x, add_a(a, y, z)),
              guard=_exp_ok, tolerance=1e-9),
    _identity("distrib_12", 3, POSITIVE,
              lambda a, x, y, z: add_dual(a, mul_a(a, x, y), mul_a(a, x, z)),
              lambda a, x, y, z: mul_a(a, x, add_dual(a, y, z)),
              guard=lambda a, x, y, z: _mul_base_ok(a, x, y) and _mul_base_ok(a, x, z),
              tolerance=1e-9),
    _nonidentity("nondistrib_6", 3, POSITIVE,
                 lambda a, x, y, z: mul_a(a, x, y) + mul_a(a, x, z),
                 lambda a, x, y, z: mul_a(a, x, y + z)),
    _nonidentity("nondistrib_7", 3, REAL,
                 lambda a, x, y, z: add_a(a, x * y, x * z),
                 lambda a, x, y, z: x * add_a(a, y, z)),
    _nonidentity("nondistrib_8", 3, POSITIVE,
                 lambda a, x, y, z: add_a(a, mul_a(a, x, y), mul_a(a, x, z)),
                 lambda a, x, y, z: mul_a(a, x, add_a(a, y, z))),
    _nonidentity("nondistrib_13", 3, POSITIVE,
                 lambda a, x, y, z: add_dual(a, mul_dual(a, x, y), mul_dual(a, x, z)),
                 lambda a, x, y, z: mul_dual(a, x, add_dual(a, y, z))),
    Law("no_absorbing", "counterexample", 1, POSITIVE, runner=_run_no_absorbing),
    Law("dual_anomalies", "counterexample", 1, POSITIVE, guard=_exp_ok,
        tolerance=1e-14, runner=_run_dual_anomalies),
]

LAWS = {law.name: law for law in _LAW_LIST}


def _logaddexp(u, v):
    top = max(u, v)
    return top + math.log1p(math.exp(-abs(u - v)))


def select_laws(pattern):
    """Registry names matching a glob pattern, in registry order."""
    names = [name for name in LAWS if fnmatch.fnmatchcase(name, pattern)]
    if not names:
        raise UnknownLaw(pattern)
    return names


def check_law(law, spec=None):
    """Sample ``law`` (a registry name or :class:`Law`) and return an :class:`OpReport`."""
    if isinstance(law, str):
        try:
            law = LAWS[law]
        except KeyError:
            raise UnknownLaw(law) from None
    spec = spec or SampleSpec()
    runner = law.runner or _run_pairwise
    return runner(law, spec)
