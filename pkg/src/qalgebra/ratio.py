"""Composition of successive growth ratios with ``+_1``.

For values ``x_0, ..., x_n`` the step ratios ``y_i = (x_{i+1} - x_i) / x_i``
compose into the global ratio ``(x_n - x_0) / x_0`` under deformed addition
with ``a = 1``, whatever the values are.
"""

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Tuple

from .ops import add_a

AGREEMENT = 1e-12


class InvalidChain(ValueError):
    pass


@dataclass(frozen=True)
class RatioChain:
    values: Tuple[float, ...]

    def __init__(self, values: Sequence[float]):
        values = tuple(float(v) for v in values)
        if len(values) < 2:
            raise InvalidChain("a ratio chain needs at least two values")
        for v in values:
            if not (math.isfinite(v) and v > 0):
                raise InvalidChain(f"chain values must be finite and > 0, got {v!r}")
        object.__setattr__(self, "values", values)

    def steps(self):
        return [(b - a) / a for a, b in zip(self.values, self.values[1:])]

    def composed(self):
        """Left fold of the step ratios under ``+_1``."""
        return reduce(lambda acc, y: add_a(1.0, acc, y), self.steps())

    def direct(self):
        first, last = self.values[0], self.values[-1]
        return (last - first) / first

    def agrees(self):
        # absolute floor: a global ratio of exactly 0 is reached through
        # rounding in the fold, where a pure relative test is meaningless
        return math.isclose(self.composed(), self.direct(), rel_tol=AGREEMENT, abs_tol=AGREEMENT)
