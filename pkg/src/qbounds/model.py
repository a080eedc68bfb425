"""Shared domain types: population, sample design, and the Q-error metric."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class SamplingMethod(enum.Enum):
    WITH_REPLACEMENT = "wr"
    WITHOUT_REPLACEMENT = "wor"

    @classmethod
    def parse(cls, text: str) -> "SamplingMethod":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown sampling method {text!r} (expected 'wr' or 'wor')") from None


@dataclass(frozen=True)
class PopulationSpec:
    """A table of `n` rows of which `cardinality` satisfy the predicate.

    The selectivity `p` is always derived as cardinality / n so the two
    integers stay authoritative.
    """

    n: int
    cardinality: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"population size must be >= 1, got {self.n}")
        if not 0 <= self.cardinality <= self.n:
            raise ValueError(
                f"cardinality must be in [0, {self.n}], got {self.cardinality}"
            )

    @property
    def p(self) -> float:
        return self.cardinality / self.n


@dataclass(frozen=True)
class SampleDesign:
    """Sampling regime and sample size."""

    method: SamplingMethod
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"sample size must be >= 1, got {self.k}")


def validate_design(pop: PopulationSpec, design: SampleDesign) -> None:
    """Check the cross constraints between a population and a sample design."""
    if design.method is SamplingMethod.WITHOUT_REPLACEMENT:
        if pop.n < 2:
            raise ValueError("sampling without replacement needs at least 2 rows")
        if design.k >= pop.n:
            raise ValueError(
                f"sampling without replacement needs k < n, got k={design.k}, n={pop.n}"
            )


def q_error(est: float, truth: float) -> float:
    """Q-error of an estimate: max(true/est, est/true), both clamped to >= 1.

    The clamp avoids division by zero; 1.0 means a perfect prediction.
    """
    if est < 0:
        raise ValueError(f"estimate must be non-negative, got {est}")
    if truth < 0:
        raise ValueError(f"true cardinality must be non-negative, got {truth}")
    e = max(float(est), 1.0)
    t = max(float(truth), 1.0)
    return max(t / e, e / t)


def selectivity(pop: PopulationSpec) -> float:
    """Fraction of rows satisfying the predicate, as full-precision division."""
    return pop.cardinality / pop.n


def population_variance(p: float) -> float:
    """Variance p(1-p) of the per-row Bernoulli indicator."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"selectivity must be in [0, 1], got {p}")
    return p * (1.0 - p)
