"""High-precision reference formulas, evaluated literally with mpmath.

These follow the textbook definitions and share no code path with the
package (no log1p/expm1 reformulations, no fsum). Working precision grows
with ``log10(1/|a|)`` so that ``1 + a*x`` keeps its low-order digits.
"""

import functools
import math

import mpmath as mp

mp.mp.dps = 50


def _precise(func):
    @functools.wraps(func)
    def wrapper(a, *args):
        extra = int(-math.log10(abs(a))) if a != 0 and abs(a) < 1 else 0
        with mp.workdps(60 + extra):
            return +func(a, *args)

    return wrapper


def mpf(v):
    return mp.mpf(v)


@_precise
def q_exp(a, x):
    a, x = mpf(a), mpf(x)
    if a == 0:
        return mp.exp(x)
    return (1 + a * x) ** (1 / a)


@_precise
def q_ln(a, x):
    a, x = mpf(a), mpf(x)
    if a == 0:
        return mp.log(x)
    return (x ** a - 1) / a


@_precise
def mul_a(a, x, y):
    a, x, y = mpf(a), mpf(x), mpf(y)
    return (x ** a + y ** a - 1) ** (1 / a)


@_precise
def div_a(a, x, y):
    a, x, y = mpf(a), mpf(x), mpf(y)
    return (x ** a - y ** a + 1) ** (1 / a)


@_precise
def inv_a(a, x):
    a, x = mpf(a), mpf(x)
    return (2 - x ** a) ** (1 / a)


@_precise
def mul_dual(a, x, y):
    a, x, y = mpf(a), mpf(x), mpf(y)
    return (mp.exp(mp.log(1 + a * x) * mp.log(1 + a * y) / a) - 1) / a


@_precise
def add_dual(a, x, y):
    a, x, y = mpf(a), mpf(x), mpf(y)
    return (a * mp.log(mp.exp(x ** a / a) + mp.exp(y ** a / a))) ** (1 / a)


def rel(value, reference):
    reference = mpf(reference)
    if reference == 0:
        return abs(mpf(value))
    return float(abs((mpf(value) - reference) / reference))
