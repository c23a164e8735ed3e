"""Deformed algebra of the q-exponential and q-logarithm.

The deformation parameter ``a`` is passed first to every function, either as
a float or as a :class:`DeformParam`; ``a == 0`` is ordinary arithmetic.
"""

from .core import DeformParam, EvalPolicy, in_domain_exp, q_exp, q_ln
from .errors import (
    DomainViolation,
    InvalidDistribution,
    LexError,
    NonPositiveArgument,
    NonPositiveBase,
    NonPositiveBracket,
    Overflow,
    ParseError,
    SingularDenominator,
    UnboundVariable,
    UndefinedPower,
    UnknownLaw,
)
from .expr import EvalEnv, evaluate, parse, parse_expr, pretty_print, tokenize
from .laws import LAWS, OpReport, SampleSpec, Verdict, check_law
from .nonextensive import (
    EntropyParams,
    ProbDist,
    compose,
    info_measure,
    product_dist,
    shannon_entropy,
    tsallis_entropy,
)
from .ops import add_a, add_dual, div_a, inv_a, mul_a, mul_dual, neg_a, sub_a
from .ratio import RatioChain

__version__ = "0.1.0"
