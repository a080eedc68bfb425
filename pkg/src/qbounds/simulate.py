"""Seeded Monte Carlo simulation of the sampling estimator.

Trials are grouped into fixed-size blocks; block b draws from a Philox
counter stream keyed by (seed, b), so results are bit-identical whether
blocks run sequentially or in parallel and aggregation is a plain sum.
The scheme identifier is exported for output metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exact import admissible_range
from .model import PopulationSpec, SampleDesign, SamplingMethod, validate_design

RNG_SCHEME = "philox4x64-block4096-v1"
_BLOCK = 4096


@dataclass(frozen=True)
class SimulationConfig:
    pop: PopulationSpec
    design: SampleDesign
    q: float
    trials: int
    seed: int
    keep_q_errors: bool = False

    def __post_init__(self) -> None:
        validate_design(self.pop, self.design)
        if self.q < 1.0:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class SimulationSummary:
    successes: int
    trials: int
    empirical_rate: float
    standard_error: float
    q_errors: Optional[np.ndarray] = None


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    """Generator for one trial block, derived purely from (seed, block)."""
    bitgen = np.random.Philox(key=seed, counter=[0, 0, 0, block_index])
    return np.random.Generator(bitgen)


def run_simulation(cfg: SimulationConfig) -> SimulationSummary:
    """Repeat the draw-and-estimate experiment and count Q-error successes.

    Success of a trial with hit count x means q_error(n*x/k, C) <= q,
    which is exactly membership of x in the admissible hit-count range.
    """
    n, c, k = cfg.pop.n, cfg.pop.cardinality, cfg.design.k
    p = cfg.pop.p
    rng = admissible_range(n, c, k, cfg.q)

    successes = 0
    q_errors: list[np.ndarray] = []
    truth = float(max(c, 1))
    n_blocks = (cfg.trials + _BLOCK - 1) // _BLOCK
    for b in range(n_blocks):
        size = min(_BLOCK, cfg.trials - b * _BLOCK)
        gen = block_generator(cfg.seed, b)
        if cfg.design.method is SamplingMethod.WITH_REPLACEMENT:
            hits = gen.binomial(k, p, size=size)
        else:
            hits = gen.hypergeometric(c, n - c, k, size=size)
        successes += int(np.count_nonzero((hits >= rng.lo) & (hits <= rng.hi)))
        if cfg.keep_q_errors:
            est = np.maximum(hits * (n / k), 1.0)
            q_errors.append(np.maximum(truth / est, est / truth))

    rate = successes / cfg.trials
    return SimulationSummary(
        successes=successes,
        trials=cfg.trials,
        empirical_rate=rate,
        standard_error=math.sqrt(rate * (1.0 - rate) / cfg.trials),
        q_errors=np.concatenate(q_errors) if q_errors else None,
    )
