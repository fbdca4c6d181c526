"""
ExperimentConfig and the σ-sequence the source emits.
"""

from dataclasses import asdict, dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from chameleon.config import DEFAULT_K, DEFAULT_N_GRID, DEFAULT_N_TOTAL
from chameleon.errors import ConfigError
from chameleon.protocols.streams import SOURCE, SEED_LIMIT, derive_stream_key, uniform_draws
from chameleon.utils import TWO_PI, normalize_angle


class SigmaMode(str, Enum):
    DETERMINISTIC = "D"
    RANDOM = "R"


class ProtocolKind(str, Enum):
    DIRECT = "direct"
    OLD = "old"


@dataclass(frozen=True)
class ExperimentConfig:
    a: float = 0.0
    b: float = 0.0
    n_grid: int = DEFAULT_N_GRID
    n_total: int = DEFAULT_N_TOTAL
    sigma_mode: SigmaMode = SigmaMode.DETERMINISTIC
    protocol: ProtocolKind = ProtocolKind.DIRECT
    seed: int = 0
    k1: int = DEFAULT_K
    k2: int = DEFAULT_K

    def __post_init__(self):
        object.__setattr__(self, "a", normalize_angle(self.a))
        object.__setattr__(self, "b", normalize_angle(self.b))
        try:
            object.__setattr__(self, "sigma_mode", SigmaMode(self.sigma_mode))
            object.__setattr__(self, "protocol", ProtocolKind(self.protocol))
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def validate(self) -> "ExperimentConfig":
        """Check the invariants 1 ≤ n_grid ≤ n_total, k1, k2 ≥ 1 and the seed range. Returns self."""
        for name in ("n_grid", "n_total", "k1", "k2", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if not 1 <= self.n_grid <= self.n_total:
            raise ConfigError(f"need 1 ≤ n_grid ≤ n_total, got n_grid={self.n_grid}, n_total={self.n_total}")
        if self.k1 < 1 or self.k2 < 1:
            raise ConfigError(f"k1 and k2 must be at least 1, got k1={self.k1}, k2={self.k2}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise ConfigError(f"seed must lie in [0, 2**64), got {self.seed}")
        return self

    def with_settings(self, a: float, b: float, seed: Optional[int] = None) -> "ExperimentConfig":
        return replace(self, a=a, b=b, seed=self.seed if seed is None else seed)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["sigma_mode"] = self.sigma_mode.value
        data["protocol"] = self.protocol.value
        return data


@dataclass(frozen=True)
class SigmaSequence:
    values: np.ndarray
    repetitions: np.ndarray

    @property
    def total(self) -> int:
        return int(self.repetitions.sum())

    def expand(self) -> np.ndarray:
        """One σ per trial, in trial-index order."""
        return np.repeat(self.values, self.repetitions)


def _normalize_array(values: np.ndarray) -> np.ndarray:
    reduced = np.mod(values, TWO_PI)
    return np.where(reduced >= TWO_PI, 0.0, reduced)


def generate_sigma_sequence(cfg: ExperimentConfig) -> SigmaSequence:
    """
    Deterministic mode: σ_j = (2π/N)·j for j = 1..N, each repeated
    floor(N_tot/N) times with the remainder going to the lowest indices.
    Random mode: N_tot i.i.d. uniform phases from the source stream.
    """
    if cfg.sigma_mode is SigmaMode.RANDOM:
        key = derive_stream_key(cfg.seed, SOURCE)
        values = _normalize_array(TWO_PI * uniform_draws(key, np.arange(cfg.n_total)))
        return SigmaSequence(values=values, repetitions=np.ones(cfg.n_total, dtype=np.int64))

    n = cfg.n_grid
    values = _normalize_array(TWO_PI * np.arange(1, n + 1) / n)
    repetitions = np.full(n, cfg.n_total // n, dtype=np.int64)
    repetitions[: cfg.n_total % n] += 1
    return SigmaSequence(values=values, repetitions=repetitions)
