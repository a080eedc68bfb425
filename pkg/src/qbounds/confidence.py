"""Single entry point for bound evaluation across sampling methods.

Handles the degenerate empty-predicate case: at p = 0 every exponential
term is vacuous, so the reported confidence is the (trivially valid)
lower bound 0, flagged as degenerate.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .model import SamplingMethod
from .terms import (
    DEFAULT_WR_KINDS,
    WITH_REPLACEMENT_KINDS,
    BoundResult,
    InequalityKind,
    degenerate_result,
)
from .with_replacement import confidence_wr
from .without_replacement import confidence_wor


def default_inequalities(
    method: SamplingMethod, with_hoeffding: bool = False
) -> frozenset[InequalityKind]:
    if method is SamplingMethod.WITH_REPLACEMENT:
        return WITH_REPLACEMENT_KINDS if with_hoeffding else DEFAULT_WR_KINDS
    return frozenset(
        {InequalityKind.HOEFFDING_SERFLING, InequalityKind.BERNSTEIN_SERFLING}
    )


def evaluate_confidence(
    method: SamplingMethod,
    p: float,
    k: int,
    q: float,
    n: Optional[int] = None,
    inequalities: Optional[Iterable[InequalityKind]] = None,
) -> BoundResult:
    """Lower bound on P(Q-error <= q) for the given sampling method."""
    if p == 0.0:
        return degenerate_result()
    if method is SamplingMethod.WITH_REPLACEMENT:
        return confidence_wr(p, k, q, inequalities)
    if n is None:
        raise ValueError("sampling without replacement needs the table size n")
    if k >= n:
        raise ValueError(f"sampling without replacement needs k < n, got k={k}, n={n}")
    return confidence_wor(p, k, n, q, inequalities)
