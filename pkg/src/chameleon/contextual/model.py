"""
Finite classical contextual models with normalized local factors.

A model is a probability vector over a finite hidden-state space together
with, for each setting x and side j, the already-composed effective
observable f_{j,x} = E_{j,x}(T_{j,x}(S_x)) as a vector with entries in
[−1, 1]. Normalization of the local conditional expectations is what keeps
these entries bounded, and bounded entries plus the singlet condition are
all the Bell inequality needs.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from chameleon.analysis.bell import BELL_TOLERANCE
from chameleon.errors import DomainError, SingletViolated, UnknownSetting
from chameleon.utils import TWO_PI, normalize_angle

PROBABILITY_TOLERANCE = 1e-9
SETTING_TOLERANCE = 1e-12


def setting_grid(n_settings: int) -> tuple[float, ...]:
    """2πk/n for k = 0..n−1; for n = 6 this holds 0, π/3 and 2π/3."""
    return tuple(normalize_angle(TWO_PI * k / n_settings) for k in range(n_settings))


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ContextualModel:
    base_state: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    settings: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "base_state", _readonly(self.base_state))
        object.__setattr__(self, "f1", _readonly(np.atleast_2d(self.f1)))
        object.__setattr__(self, "f2", _readonly(np.atleast_2d(self.f2)))
        object.__setattr__(self, "settings", tuple(normalize_angle(float(x)) for x in self.settings))

        base = self.base_state
        if base.ndim != 1 or base.size < 1:
            raise DomainError("base_state must be a non-empty vector")
        if np.any(base < 0.0) or abs(float(base.sum()) - 1.0) > PROBABILITY_TOLERANCE:
            raise DomainError("base_state must be a probability vector")
        expected = (len(self.settings), base.size)
        for name, observable in (("f1", self.f1), ("f2", self.f2)):
            if observable.shape != expected:
                raise DomainError(f"{name} has shape {observable.shape}, expected {expected}")
            if np.any(np.abs(observable) > 1.0):
                raise DomainError(f"{name} entries must lie in [-1, 1]")

    @property
    def omega_size(self) -> int:
        return int(self.base_state.size)

    def index_of(self, setting: float) -> int:
        target = normalize_angle(float(setting))
        for k, x in enumerate(self.settings):
            gap = abs(x - target)
            if min(gap, TWO_PI - gap) <= SETTING_TOLERANCE:
                return k
        raise UnknownSetting(f"setting {setting!r} is not part of this model")


@dataclass(frozen=True)
class SingletConstraint:
    """f_{1,c} = −f_{2,c} on the support of the base state, for every setting c."""

    tolerance: float = SETTING_TOLERANCE

    def satisfied_by(self, m: ContextualModel) -> bool:
        support = m.base_state > 0.0
        return bool(np.all(np.abs(m.f1[:, support] + m.f2[:, support]) <= self.tolerance))


def model_correlation(m: ContextualModel, a: float, b: float) -> float:
    i, j = m.index_of(a), m.index_of(b)
    return float(np.dot(m.base_state, m.f1[i] * m.f2[j]))


def correlation_matrix(m: ContextualModel) -> np.ndarray:
    """Entry [i, j] is the correlation at settings (settings[i], settings[j])."""
    return (m.f1 * m.base_state) @ m.f2.T


def generate_singlet_model(
    omega_size: int, n_settings: int, seed: int, settings: Optional[Sequence[float]] = None
) -> ContextualModel:
    if omega_size < 2:
        raise DomainError(f"omega_size must be at least 2, got {omega_size}")
    if n_settings < 3:
        raise DomainError(f"n_settings must be at least 3, got {n_settings}")
    grid = tuple(settings) if settings is not None else setting_grid(n_settings)
    if len(grid) != n_settings:
        raise DomainError(f"expected {n_settings} settings, got {len(grid)}")

    rng = np.random.default_rng(seed)
    base = rng.dirichlet(np.ones(omega_size))
    f1 = rng.uniform(-1.0, 1.0, size=(n_settings, omega_size))
    return ContextualModel(base_state=base, f1=f1, f2=-f1, settings=grid)


def _quantity(e_ab: float, e_cb: float, e_ac: float) -> float:
    return abs(e_ab - e_cb) - e_ac


def check_bell(
    m: ContextualModel, a: float, b: float, c: float, constraint: SingletConstraint = SingletConstraint()
) -> tuple[float, bool]:
    if not constraint.satisfied_by(m):
        raise SingletViolated("model does not satisfy the singlet condition")
    quantity = _quantity(model_correlation(m, a, b), model_correlation(m, c, b), model_correlation(m, a, c))
    return quantity, quantity <= 1.0 + BELL_TOLERANCE


def epr_distance(m: ContextualModel, a: float, b: float, c: float) -> float:
    """Largest miss of the three pair correlations against −cos of their angle difference."""
    return max(
        abs(model_correlation(m, x, y) + np.cos(x - y)) for x, y in ((a, b), (c, b), (a, c))
    )


def nearest_epr_gap(m: ContextualModel, settings: Sequence[float]) -> float:
    if len(settings) < 3:
        raise DomainError(f"need at least 3 settings, got {len(settings)}")
    excess = max(
        max(0.0, _quantity(model_correlation(m, x, y), model_correlation(m, z, y), model_correlation(m, x, z)) - 1.0)
        for x, y, z in permutations(settings, 3)
    )
    miss = max(abs(model_correlation(m, x, y) + np.cos(x - y)) for x, y in permutations(settings, 2))
    return float(excess + miss)
