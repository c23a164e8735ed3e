"""Deformed arithmetic operators.

Subscript family (morphisms of exp_a / ln_a)::

    x +_a y = x + y + a*x*y
    x -_a y = (x - y) / (1 + a*y)
    x *_a y = (x**a + y**a - 1)**(1/a)        x, y > 0
    x /_a y = (x**a - y**a + 1)**(1/a)        x, y > 0

Dual (superscript) family, distributive over the subscript one::

    x *^a y = (exp(log(1+a*x) * log(1+a*y) / a) - 1) / a
    x +^a y = (a * log(exp(x**a/a) + exp(y**a/a)))**(1/a)

Every operator takes the deformation parameter first, as a float or a
:class:`~qalgebra.core.DeformParam`, and reduces to ordinary arithmetic at
``a == 0``.
"""

import math
import sys

from .core import (
    as_param,
    exp_of_sum,
    expm1_ratio,
    ln_a_unchecked,
    log1p_ratio,
    power_sum_root,
    root_of_base,
)
from .errors import (
    NonPositiveArgument,
    NonPositiveBase,
    NonPositiveBracket,
    Overflow,
    SingularDenominator,
)

# |1 + a*y| at or below this is the singular point y = -1/a; the point itself
# is rarely representable, so exact-zero tests would miss it.
_SINGULAR_TOL = 4 * sys.float_info.epsilon


def _check(value, name):
    if not math.isfinite(value):
        raise Overflow(f"{name} overflows the floating point range")
    return value


def _positive(name, *values):
    for v in values:
        if not v > 0.0:
            raise NonPositiveArgument(f"{name} needs positive operands, got {v!r}")


def _denominator(p, y):
    den = 1.0 + p.a * y
    if abs(den) <= _SINGULAR_TOL:
        raise SingularDenominator(f"1 + a*y vanishes at y={y!r} (a={p.a!r})")
    return den


def add_a(a, x, y):
    p = as_param(a)
    return _check(x + y + p.a * x * y, "x +_a y")


def sub_a(a, x, y):
    p = as_param(a)
    return _check((x - y) / _denominator(p, y), "x -_a y")


def neg_a(a, x):
    """Opposite element ``-x / (1 + a*x)``; ``x = -1/a`` has none."""
    p = as_param(a)
    return _check(-x / _denominator(p, x), "-_a x")


def mul_a(a, x, y):
    """``(x**a + y**a - 1)**(1/a)``; the base must come out positive."""
    p = as_param(a)
    _positive("x *_a y", x, y)
    if p.classical:
        return _check(x * y, "x * y")
    return power_sum_root(p, -1.0, [(1, x), (1, y)], NonPositiveBase)


def div_a(a, x, y):
    """``(x**a - y**a + 1)**(1/a)``.

    A base of exactly zero with ``a > 0`` yields 0, matching the inverse of
    ``2**(1/a)`` being 0.
    """
    p = as_param(a)
    _positive("x /_a y", x, y)
    if p.classical:
        return _check(x / y, "x / y")
    return power_sum_root(p, 1.0, [(1, x), (-1, y)], NonPositiveBase, zero_ok=True)


def inv_a(a, x):
    """Inverse element ``1 /_a x = (2 - x**a)**(1/a)``.

    ``x = 0`` is invertible when ``a > 0`` (``0**a = 0``), giving ``2**(1/a)``.
    """
    p = as_param(a)
    if x < 0.0 or (x == 0.0 and not p.a > 0):
        raise NonPositiveArgument(f"1 /_a x needs x > 0 (or x = 0 with a > 0), got x={x!r}, a={p.a!r}")
    if p.classical:
        return _check(1.0 / x, "1 / x")
    return power_sum_root(p, 2.0, [(-1, x)], NonPositiveBase, zero_ok=True)


def mul_dual(a, x, y):
    p = as_param(a)
    if p.classical:
        return _check(x * y, "x * y")
    if p.a * x <= -1.0 or p.a * y <= -1.0:
        raise NonPositiveBracket(f"x *^a y needs 1 + a*x > 0 and 1 + a*y > 0 (a={p.a!r}, x={x!r}, y={y!r})")
    # log1p(a*x) = a*x*r(a*x) with r(u) = log1p(u)/u, so
    # (expm1(w))/a = x*y*r(a*x)*r(a*y)*expm1(w)/w, stable down to subnormal a
    xy = x * y * log1p_ratio(p.a * x) * log1p_ratio(p.a * y)
    w = p.a * xy
    try:
        return _check(xy * expm1_ratio(w), "x *^a y")
    except OverflowError:
        raise Overflow(f"x *^a y overflows (a={p.a!r}, x={x!r}, y={y!r})") from None


def add_dual(a, x, y):
    """``(a * log(exp(x**a/a) + exp(y**a/a)))**(1/a)`` for ``x, y > 0``.

    The exponentials are shifted by the larger of ``x**a/a`` and ``y**a/a``,
    so only ``exp`` of a non-positive number is ever taken.
    """
    p = as_param(a)
    _positive("x +^a y", x, y)
    if p.classical:
        return _check(x + y, "x + y")
    if p.small:
        # ln_a(x +^a y) = log(exp(ln_a x) + exp(ln_a y))
        lx = ln_a_unchecked(p, x)
        ly = ln_a_unchecked(p, y)
        s = max(lx, ly) + math.log1p(math.exp(-abs(lx - ly)))
        return exp_of_sum(p, s, NonPositiveBase)
    try:
        px = x ** p.a
        py = y ** p.a
    except OverflowError:
        raise Overflow(f"x +^a y overflows (a={p.a!r}, x={x!r}, y={y!r})") from None
    # x**a/a - y**a/a, the exponents of the two exponentials
    gap = (px - py) / p.a
    top = px if gap >= 0 else py
    # a*log(exp(px/a) + exp(py/a)) = top + a*log1p(exp(-|gap|))
    return root_of_base(p, top + p.a * math.log1p(math.exp(-abs(gap))), NonPositiveBase)
