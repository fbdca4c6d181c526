"""
The direct (coincidence-conditioning) protocol.

Station 1 lets the particle into the apparatus with probability
p₁,ₐ(σ) = |cos(σ−a)|/4: it draws λ₁ uniform on [0, 1) from its own stream
and replies S⁽¹⁾ₐ(σ) when λ₁ ≤ p₁,ₐ(σ), ∅ otherwise. Station 2 has
p₂,ᵦ = 1 and always replies S⁽²⁾ᵦ(σ). Station-scoped functions only ever
see σ, their own setting and their own draw.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from chameleon.errors import ConfigError, DomainError
from chameleon.protocols.experiment import ExperimentConfig, ProtocolKind, generate_sigma_sequence
from chameleon.protocols.records import Outcome, TrialLog
from chameleon.protocols.streams import STATION_1, derive_stream_key, uniform_draws

CHUNK_SIZE = 1 << 18


def direct_outcomes(
    sigmas: np.ndarray, setting: float, station: int, draws: Optional[np.ndarray] = None
) -> np.ndarray:
    """Replies of one station for a batch of trials, as int8 outcome codes."""
    if station not in (1, 2):
        raise DomainError(f"station must be 1 or 2, got {station!r}")
    cosines = np.cos(np.asarray(sigmas, dtype=np.float64) - setting)
    signs = np.where(cosines >= 0.0, Outcome.PLUS, Outcome.MINUS).astype(np.int8)
    if station == 2:
        return -signs
    if draws is None:
        raise DomainError("station 1 needs one uniform draw per trial")
    inside = np.asarray(draws) <= np.abs(cosines) / 4.0
    return np.where(inside, signs, np.int8(Outcome.EMPTY)).astype(np.int8)


def direct_trial(sigma: float, setting: float, station: int, rng_draw: float) -> Outcome:
    if not 0.0 <= rng_draw < 1.0:
        raise DomainError(f"rng_draw must lie in [0, 1), got {rng_draw!r}")
    # one-element batch, so a netsim station and run_direct share the exact arithmetic
    code = direct_outcomes(np.array([float(sigma)]), float(setting), station, np.array([float(rng_draw)]))
    return Outcome(int(code[0]))


def run_direct(cfg: ExperimentConfig, workers: int = 1, chunk_size: int = CHUNK_SIZE) -> TrialLog:
    """
    One TrialRecord per repetition of every σ_j, in trial-index order.
    With workers > 1 the index range is split into chunks evaluated on a
    thread pool; the result is identical to the sequential run.
    """
    if cfg.protocol is not ProtocolKind.DIRECT:
        raise ConfigError(f"run_direct needs protocol=direct, got {cfg.protocol.value}")
    if cfg.n_total == 0:
        return TrialLog.empty()
    cfg.validate()

    sigmas = generate_sigma_sequence(cfg).expand()
    key_1 = derive_stream_key(cfg.seed, STATION_1)
    n = len(sigmas)

    def run_chunk(bounds: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
        start, stop = bounds
        chunk = sigmas[start:stop]
        draws_1 = uniform_draws(key_1, np.arange(start, stop))
        return direct_outcomes(chunk, cfg.a, 1, draws_1), direct_outcomes(chunk, cfg.b, 2)

    bounds = [(start, min(start + chunk_size, n)) for start in range(0, n, chunk_size)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, bounds))
    else:
        parts = [run_chunk(b) for b in bounds]

    return TrialLog(
        indices=np.arange(n),
        sigmas=sigmas,
        outcome_1=np.concatenate([p[0] for p in parts]),
        outcome_2=np.concatenate([p[1] for p in parts]),
    )
