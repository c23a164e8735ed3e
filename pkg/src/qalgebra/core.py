"""Deformed exponential and logarithm.

    exp_a(x) = (1 + a*x)**(1/a)        defined on D_a = {x : 1 + a*x > 0}
    ln_a(x)  = (x**a - 1) / a          defined for x > 0

Both reduce to ``exp``/``log`` at ``a == 0``.  For ``0 < |a| <= epsilon_limit``
the exponential (and the power forms built on it) is evaluated as
``exp(log1p(a*x)/a)`` so that the small-``a`` regime does not lose digits to
cancellation.  The logarithm is always evaluated as ``expm1(a*log(x))/a``: the
literal ``x**a - 1`` cancels near ``x = 1`` for every ``a``.
"""

import enum
import math
from dataclasses import dataclass

from .errors import NonPositiveArgument, NonPositiveBracket, Overflow

DEFAULT_EPSILON_LIMIT = 1e-2


class EvalPolicy(enum.Enum):
    """What ``q_exp`` does with a non-positive bracket ``1 + a*x``."""

    STRICT = "strict"
    #: Return 0 when ``1/a > 0`` (the usual energy cutoff convention).
    CUTOFF = "cutoff"


@dataclass(frozen=True)
class DeformParam:
    """Deformation parameter ``a`` plus the threshold of the small-``a`` path."""

    a: float
    epsilon_limit: float = DEFAULT_EPSILON_LIMIT

    def __post_init__(self):
        a = float(self.a)
        if not math.isfinite(a):
            raise ValueError(f"deformation parameter must be finite, got {self.a!r}")
        if not (self.epsilon_limit > 0):
            raise ValueError(f"epsilon_limit must be > 0, got {self.epsilon_limit!r}")
        object.__setattr__(self, "a", a)

    @property
    def classical(self):
        return self.a == 0.0

    @property
    def small(self):
        """True on the stable small-``a`` path (``a == 0`` excluded)."""
        return self.a != 0.0 and abs(self.a) <= self.epsilon_limit


def as_param(a):
    """Accept a bare float wherever a :class:`DeformParam` is expected."""
    if isinstance(a, DeformParam):
        return a
    return DeformParam(a)


def _finite(value, what):
    if not math.isfinite(value):
        raise Overflow(f"{what} overflows the floating point range")
    return value


def log1p_ratio(u):
    """``log1p(u)/u``, continuous at 0 and accurate for subnormal ``u``."""
    if abs(u) < 1e-8:
        return 1.0 - u / 2.0 + u * u / 3.0
    return math.log1p(u) / u


def expm1_ratio(v):
    """``expm1(v)/v``, continuous at 0 and accurate for subnormal ``v``."""
    if abs(v) < 1e-8:
        return 1.0 + v / 2.0 + v * v / 6.0
    return math.expm1(v) / v


def in_domain_exp(a, x):
    """Whether ``x`` lies in D_a, i.e. ``1 + a*x > 0``."""
    p = as_param(a)
    return p.classical or p.a * x > -1.0


def q_exp(a, x, policy=EvalPolicy.STRICT):
    """Deformed exponential ``(1 + a*x)**(1/a)``.

    Raises :class:`NonPositiveBracket` outside D_a, except under
    ``EvalPolicy.CUTOFF`` with ``a > 0`` where the result is 0.  Raises
    :class:`Overflow` if the result overflows or underflows to zero.
    """
    p = as_param(a)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if p.classical:
        try:
            y = math.exp(x)
        except OverflowError:
            raise Overflow(f"exp({x!r}) overflows") from None
    else:
        ax = p.a * x
        if ax <= -1.0:
            if policy is EvalPolicy.CUTOFF and p.a > 0:
                return 0.0
            raise NonPositiveBracket(f"1 + a*x = {1.0 + ax!r} is not positive (a={p.a!r}, x={x!r})")
        try:
            if p.small:
                y = math.exp(x * log1p_ratio(ax))
            else:
                y = (1.0 + ax) ** (1.0 / p.a)
        except OverflowError:
            raise Overflow(f"exp_a({x!r}) overflows for a={p.a!r}") from None
    _finite(y, "exp_a")
    if y == 0.0:
        raise Overflow(f"exp_a({x!r}) underflows to zero for a={p.a!r}")
    return y


def q_ln(a, x):
    """Deformed logarithm ``(x**a - 1)/a`` for ``x > 0``."""
    p = as_param(a)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if x <= 0.0:
        raise NonPositiveArgument(f"ln_a needs x > 0, got {x!r}")
    if p.classical:
        return math.log(x)
    return _finite(ln_a_unchecked(p, x), "ln_a")


def ln_a_unchecked(p, x):
    """``ln_a`` for ``x >= 0`` without domain checks; ``ln_a(0) = -1/a``."""
    if x == 0.0:
        return -1.0 / p.a
    log_x = math.log(x)
    try:
        return log_x * expm1_ratio(p.a * log_x)
    except OverflowError:
        raise Overflow(f"ln_a({x!r}) overflows for a={p.a!r}") from None


def power_sum_root(p, const, terms, exc, zero_ok=False):
    """``(const + sum(sign * x**a for sign, x in terms))**(1/a)`` for ``a != 0``.

    ``terms`` holds ``(sign, x)`` pairs with ``x >= 0``, and ``const`` must
    make the base equal to 1 when every ``x`` is 1 (true of the product,
    quotient and inverse forms).  ``0**a`` is taken as 0, which callers only
    allow for ``a > 0``.

    On the small-``a`` path the base is rewritten as ``1 + a*s`` with
    ``s = sum(sign * ln_a(x))``, so this is ``exp_a(s)``; otherwise the raw
    powers are summed with ``fsum``.  Raises ``exc`` when the base is not
    positive.  With ``zero_ok`` a base of exactly zero and ``a > 0`` gives 0.
    """
    if p.small:
        s = math.fsum(sign * ln_a_unchecked(p, x) for sign, x in terms)
        return exp_of_sum(p, s, exc, zero_ok)
    try:
        base = math.fsum([const] + [sign * (x ** p.a if x else 0.0) for sign, x in terms])
    except OverflowError:
        raise Overflow(f"power overflows for a={p.a!r}") from None
    return root_of_base(p, base, exc, zero_ok)


def exp_of_sum(p, s, exc, zero_ok=False):
    """``(1 + a*s)**(1/a)`` evaluated as ``exp(log1p(a*s)/a)``; raises ``exc`` off-domain."""
    if p.a * s <= -1.0:
        if zero_ok and p.a * s == -1.0 and p.a > 0:
            return 0.0
        raise exc(f"power base 1 + a*s = {1.0 + p.a * s!r} is not positive (a={p.a!r})")
    try:
        y = math.exp(s * log1p_ratio(p.a * s))
    except OverflowError:
        raise Overflow(f"power form overflows for a={p.a!r}") from None
    return _nonzero(y, 1.0 + p.a * s)


def root_of_base(p, base, exc, zero_ok=False):
    """``base**(1/a)`` for ``a != 0``."""
    if base <= 0.0:
        if zero_ok and base == 0.0 and p.a > 0:
            return 0.0
        raise exc(f"power base {base!r} is not positive (a={p.a!r})")
    try:
        y = base ** (1.0 / p.a)
    except OverflowError:
        raise Overflow(f"({base!r})**(1/{p.a!r}) overflows") from None
    return _nonzero(y, base)


def _nonzero(y, base):
    _finite(y, "power form")
    if y == 0.0:
        raise Overflow(f"power of base {base!r} underflows to zero")
    return y

