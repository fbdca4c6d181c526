"""
The old protocol: local factors renormalized, Riemann sums accumulated,
and the 2π put back by hand at the end.

Station 1 replaces (|cos(σ−a)|/4)·S⁽¹⁾ₐ by a ±1 function Ŝ⁽¹⁾ₐ(σ, λ) whose
mean over the auxiliary draw λ ~ U[0, 1) is cos(σ−a)/4 (threshold
construction). Station 2 uses Ŝ⁽²⁾ᵦ = S⁽²⁾ᵦ. Before the final
multiplication by 2π the estimate at a = b is −1/2π, not −1.
"""

from typing import NamedTuple

import numpy as np

from chameleon.dynamics.model import observable_array
from chameleon.errors import ConfigError, DomainError
from chameleon.protocols.experiment import ExperimentConfig, ProtocolKind, generate_sigma_sequence
from chameleon.protocols.streams import STATION_1, derive_stream_key, uniform_draws
from chameleon.utils import TWO_PI

CHUNK_TRIALS = 1 << 16


class OldProtocolResult(NamedTuple):
    raw_mean: float
    scaled_mean: float


def old_hat_outcomes(sigmas: np.ndarray, setting: float, station: int, draws=None) -> np.ndarray:
    if station == 2:
        return observable_array(np.asarray(sigmas, dtype=np.float64), setting, 2)
    if station != 1:
        raise DomainError(f"station must be 1 or 2, got {station!r}")
    threshold = (1.0 + np.cos(np.asarray(sigmas, dtype=np.float64) - setting) / 4.0) / 2.0
    return np.where(np.asarray(draws) <= threshold, 1, -1).astype(np.int8)


def old_hat_observable(sigma: float, setting: float, station: int, rng_draw: float) -> int:
    if not 0.0 <= rng_draw < 1.0:
        raise DomainError(f"rng_draw must lie in [0, 1), got {rng_draw!r}")
    return int(old_hat_outcomes(np.array([float(sigma)]), float(setting), station, np.array([rng_draw]))[0])


def run_old(cfg: ExperimentConfig) -> OldProtocolResult:
    """raw_mean = (1/N)Σ_j [K₁-mean of Ŝ⁽¹⁾][K₂-mean of Ŝ⁽²⁾]; scaled_mean = 2π·raw_mean."""
    if cfg.protocol is not ProtocolKind.OLD:
        raise ConfigError(f"run_old needs protocol=old, got {cfg.protocol.value}")
    cfg.validate()

    sigmas = generate_sigma_sequence(cfg).expand()
    key_1 = derive_stream_key(cfg.seed, STATION_1)
    inner = np.arange(cfg.k1, dtype=np.int64)
    total = 0.0
    for start in range(0, len(sigmas), CHUNK_TRIALS):
        chunk = sigmas[start : start + CHUNK_TRIALS]
        trials = np.arange(start, start + len(chunk), dtype=np.int64)
        # draw for (trial t, inner sample k) is station-1 stream index t·K₁ + k
        draws = uniform_draws(key_1, (trials[:, None] * cfg.k1 + inner[None, :]).ravel()).reshape(-1, cfg.k1)
        mean_1 = old_hat_outcomes(chunk[:, None], cfg.a, 1, draws).mean(axis=1)
        # Ŝ⁽²⁾ needs no auxiliary draw, so its K₂ samples all coincide and their mean is S⁽²⁾ᵦ(σ_j)
        mean_2 = old_hat_outcomes(chunk, cfg.b, 2).astype(np.float64)
        total += float(np.dot(mean_1, mean_2))

    raw_mean = total / len(sigmas)
    return OldProtocolResult(raw_mean=raw_mean, scaled_mean=TWO_PI * raw_mean)
