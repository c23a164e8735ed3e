"""Tsallis entropy, the deformed information measure, and pseudo-additivity.

For independent systems A and B (joint probabilities ``p_i * r_j``)::

    S(A+B) = S(A) + S(B) + lam * S(A) * S(B),   lam = (1 - q) / k

which is a single deformed addition ``S(A) +_lam S(B)``.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple

from .core import q_ln
from .errors import InvalidDistribution, UndefinedPower
from .ops import add_a

SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ProbDist:
    """A finite discrete probability distribution."""

    probs: Tuple[float, ...]

    def __init__(self, probs: Sequence[float]):
        probs = tuple(float(p) for p in probs)
        if not probs:
            raise InvalidDistribution("a distribution needs at least one probability")
        for p in probs:
            if not math.isfinite(p) or p < 0.0:
                raise InvalidDistribution(f"probabilities must be finite and >= 0, got {p!r}")
        total = math.fsum(probs)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", probs)

    def __len__(self):
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    @classmethod
    def parse(cls, text):
        """One probability per line; ``#`` starts a comment, blank lines are skipped."""
        probs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                probs.append(float(line))
            except ValueError:
                raise InvalidDistribution(f"line {lineno}: not a number: {line!r}") from None
        return cls(probs)

    @classmethod
    def from_file(cls, path):
        return cls.parse(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class EntropyParams:
    q: float
    k: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.q):
            raise ValueError(f"q must be finite, got {self.q!r}")
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError(f"k must be finite and > 0, got {self.k!r}")

    @property
    def lam(self):
        """Pseudo-additivity coefficient ``(1 - q) / k``."""
        return (1.0 - self.q) / self.k


def shannon_entropy(d, k=1.0):
    # + 0.0 turns the -0.0 of a certain outcome into 0.0
    return -k * math.fsum(p * math.log(p) for p in d.probs if p > 0.0) + 0.0


def tsallis_entropy(d, ep):
    """``S = -k * (sum(p) - sum(p**q)) / (1 - q)``; Shannon's ``-k sum p ln p`` at q = 1.

    Zero probabilities contribute nothing for ``q > 0`` and are rejected with
    :class:`UndefinedPower` for ``q <= 0``.
    """
    if ep.q == 1.0:
        return shannon_entropy(d, ep.k)
    if ep.q <= 0.0 and any(p == 0.0 for p in d.probs):
        raise UndefinedPower(f"0**q is undefined for q={ep.q!r}")
    # p - p**q = -p * (p**(q-1) - 1) = -(q-1) * p * ln_{q-1}(p); every term has
    # the same sign, so the sum does not cancel even near q = 1.
    a = ep.q - 1.0
    return -ep.k * math.fsum(p * q_ln(a, p) for p in d.probs if p > 0.0) + 0.0


def info_measure(p, ep):
    """Information of one state, ``k * ln_{1-q}(p)``; ``k * ln(p)`` at q = 1."""
    return ep.k * q_ln(1.0 - ep.q, p)


def compose(s_a, s_b, lam):
    """``s_a + s_b + lam * s_a * s_b`` for entropies or energies of independent parts."""
    return add_a(lam, s_a, s_b)


def product_dist(d_a, d_b):
    """Joint distribution of independent systems, row-major in ``(i, j)``."""
    return ProbDist([p * r for p in d_a.probs for r in d_b.probs])
