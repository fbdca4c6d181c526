"""
The deterministic chameleon model: state spaces, the local dynamics of the
two (particle, apparatus) subsystems, and the observables read off after
the interaction.

Each particle carries p = (σ, λ): σ is the hidden phase emitted by the
source, λ the apparatus hidden variable. The interaction with an apparatus
set at x leaves σ alone and rescales λ by the local weight T′, which for
station 1 depends on the local setting only (chameleon effect) and for
station 2 is the constant √(2π).

Scalar functions here use `math`; the `*_array` variants are the numpy
kernels the quadrature oracles and the protocols run on.
"""

import math
from dataclasses import dataclass

import numpy as np

from chameleon.config import DEFAULT_POINTER_VALUE
from chameleon.errors import DomainError, SingularDynamics
from chameleon.utils import TWO_PI, normalize_angle

SQRT_TWO_PI = math.sqrt(TWO_PI)
# Largest value of T′₁,ₐ, reached at σ = a.
T1_MAX = SQRT_TWO_PI / 4.0
# |cos(σ−a)| at or below this is the singular set of the station-1 map;
# floating point never returns an exact zero for cos(π/2).
SINGULAR_TOLERANCE = 1e-12

STATIONS = (1, 2)


def _check_station(station: int) -> None:
    if station not in STATIONS:
        raise DomainError(f"station must be 1 or 2, got {station!r}")


@dataclass(frozen=True)
class Angle:
    """A polarizer setting or hidden phase, always stored in [0, 2π)."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", normalize_angle(self.value))

    @classmethod
    def from_degrees(cls, degrees: float) -> "Angle":
        return cls(float(degrees) * math.pi / 180.0)

    @property
    def degrees(self) -> float:
        return math.degrees(self.value)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class ParticlePhase:
    sigma: float
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "sigma", normalize_angle(float(self.sigma)))
        if not 0.0 <= self.lam <= TWO_PI:
            raise DomainError(f"λ must lie in [0, 2π], got {self.lam!r}")


@dataclass(frozen=True)
class ApparatusConfig:
    """An apparatus: its setting and the constant pointer reading m_a (or m_b)."""

    setting: float
    pointer_value: float = DEFAULT_POINTER_VALUE

    def __post_init__(self):
        object.__setattr__(self, "setting", normalize_angle(float(self.setting)))
        if not (math.isfinite(self.pointer_value) and self.pointer_value > 0.0):
            raise DomainError(f"pointer_value must be a positive constant, got {self.pointer_value!r}")


@dataclass(frozen=True)
class WeightPair:
    t1: float
    t2: float = SQRT_TWO_PI

    @classmethod
    def at(cls, sigma: float, a: float) -> "WeightPair":
        return cls(t1=weight_t1(sigma, a))


def weight_t1(sigma: float, a: float) -> float:
    """T′₁,ₐ(σ) = (√(2π)/4)·|cos(σ − a)|."""
    return T1_MAX * abs(math.cos(float(sigma) - float(a)))


def _station_weight(sigma: float, setting: float, station: int) -> float:
    _check_station(station)
    if station == 1:
        return weight_t1(sigma, setting)
    return SQRT_TWO_PI


def _check_regular(sigma: float, setting: float, station: int) -> None:
    if station == 1 and abs(math.cos(float(sigma) - float(setting))) <= SINGULAR_TOLERANCE:
        raise SingularDynamics(
            f"station-1 dynamics undefined at σ={sigma!r}, a={setting!r}: cos(σ−a) vanishes"
        )


def apply_dynamics(p: ParticlePhase, app: ApparatusConfig, station: int) -> tuple[float, float]:
    """Map (σ, λ) to (σ, λ/T′): the particle state is untouched, the apparatus reading rescaled."""
    _check_station(station)
    _check_regular(p.sigma, app.setting, station)
    return p.sigma, p.lam / _station_weight(p.sigma, app.setting, station)


def inverse_dynamics(sigma: float, m: float, app: ApparatusConfig, station: int) -> float:
    """Recover λ from the reading m at fixed σ (λ = m·T′)."""
    _check_station(station)
    _check_regular(sigma, app.setting, station)
    return m * _station_weight(sigma, app.setting, station)


def reduced_weight(sigma: float, app: ApparatusConfig, station: int) -> float:
    """
    Jacobian dλ/dμ of the change of variables μ = m(σ, λ), evaluated at the
    pointer value. The inverse map μ ↦ μ·T′(σ) is linear, so the Jacobian is
    T′(σ) whatever `app.pointer_value` is.
    """
    return _station_weight(sigma, app.setting, station)


def observable(sigma: float, setting: float, station: int) -> int:
    """S⁽¹⁾ₓ(σ) = sgn(cos(σ−x)), S⁽²⁾ₓ = −S⁽¹⁾ₓ, with sgn(0) = +1."""
    _check_station(station)
    sign = 1 if math.cos(float(sigma) - float(setting)) >= 0.0 else -1
    return sign if station == 1 else -sign


def local_marginal_mass(setting: float, sigma: float, station: int) -> float:
    """∫ p_{j,x}(σ, λ) dλ. Not 1: the local apparatus measures are not conditional probabilities."""
    return _station_weight(sigma, setting, station)


def observable_array(sigmas: np.ndarray, setting: float, station: int) -> np.ndarray:
    _check_station(station)
    sign = np.where(np.cos(sigmas - setting) >= 0.0, 1, -1).astype(np.int8)
    return sign if station == 1 else -sign


def reduced_weight_array(sigmas: np.ndarray, app: ApparatusConfig, station: int) -> np.ndarray:
    _check_station(station)
    if station == 1:
        return T1_MAX * np.abs(np.cos(sigmas - app.setting))
    return np.full(np.shape(sigmas), SQRT_TWO_PI)
