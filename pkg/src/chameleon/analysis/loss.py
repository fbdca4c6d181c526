"""
Telling chameleon-type loss from detector inefficiency.

Repeat a run over the same σ-sequence many times. If particles are lost
because the local dynamics sends them outside the apparatus, the same
particles are lost every time and the detected count never moves. If they
are lost by accident, the count fluctuates with binomial variance.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from chameleon.errors import DomainError
from chameleon.protocols.streams import SOURCE, derive_stream_key, uniform_draws
from chameleon.utils import TWO_PI

# Accepted ratio of observed to binomial variance for an inefficiency verdict.
BINOMIAL_BAND = (0.5, 2.0)


class LossVerdict(str, Enum):
    CHAMELEON_LIKE = "chameleon-like"
    INEFFICIENCY_LIKE = "inefficiency-like"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LossRunSummary:
    runs: int
    counts: tuple[int, ...]
    variance: float
    binomial_variance: float
    mechanism_verdict: LossVerdict

    def to_dict(self) -> dict:
        return {
            "runs": self.runs,
            "counts": list(self.counts),
            "variance": self.variance,
            "binomial_variance": self.binomial_variance,
            "mechanism_verdict": self.mechanism_verdict.value,
        }


def discriminate_loss(run_counts_fixed_sigma, n_per_run: int) -> LossRunSummary:
    counts = np.asarray(run_counts_fixed_sigma, dtype=np.int64)
    if counts.size < 2:
        raise DomainError(f"need at least 2 runs, got {counts.size}")
    if n_per_run < 1 or counts.min() < 0 or counts.max() > n_per_run:
        raise DomainError(f"counts must lie in [0, {n_per_run}]")

    variance = float(np.var(counts, ddof=1))
    p = float(counts.mean()) / n_per_run
    binomial = n_per_run * p * (1.0 - p)
    low, high = BINOMIAL_BAND
    if variance == 0.0:
        verdict = LossVerdict.CHAMELEON_LIKE
    elif binomial > 0.0 and low * binomial <= variance <= high * binomial:
        verdict = LossVerdict.INEFFICIENCY_LIKE
    else:
        verdict = LossVerdict.INCONCLUSIVE
    return LossRunSummary(
        runs=int(counts.size),
        counts=tuple(int(c) for c in counts),
        variance=variance,
        binomial_variance=binomial,
        mechanism_verdict=verdict,
    )


def fixed_sigma_sequence(n_photons: int, seed: int) -> np.ndarray:
    """The σ-sequence every repeated run re-emits."""
    key = derive_stream_key(seed, SOURCE)
    return TWO_PI * uniform_draws(key, np.arange(n_photons))


def deterministic_loss_counts(sigmas: np.ndarray, setting: float, keep_fraction: float, n_runs: int) -> np.ndarray:
    """
    Detected counts per run when a particle enters the apparatus iff
    |sin(σ − setting)| < sin(π·keep/2): a deterministic, setting-dependent
    rule that keeps a `keep_fraction` share of uniformly spread phases.
    """
    if not 0.0 < keep_fraction <= 1.0:
        raise DomainError(f"keep_fraction must lie in (0, 1], got {keep_fraction!r}")
    cut = np.sin(np.pi * keep_fraction / 2.0)
    return np.array(
        [int(np.count_nonzero(np.abs(np.sin(sigmas - setting)) < cut)) for _ in range(n_runs)], dtype=np.int64
    )


def bernoulli_thinning_counts(n_photons: int, efficiency: float, n_runs: int, seed: int) -> np.ndarray:
    """Detected counts per run when each photon is independently kept with probability `efficiency`."""
    if not 0.0 <= efficiency <= 1.0:
        raise DomainError(f"efficiency must lie in [0, 1], got {efficiency!r}")
    return np.random.default_rng(seed).binomial(n_photons, efficiency, size=n_runs)
