"""
Exact and quadrature oracles for the reduced model.

After the λ-integration and the collapse of δ(σ₁−σ₂) (done analytically,
never on a grid) every quantity is a one-dimensional integral over σ. The
quadrature is a midpoint rule on a uniform grid whose origin sits on the
integrand's break point: the integrands are 2π-periodic, so shifting the
grid is exact and the jump of sgn(cos(σ−b)) falls on a cell edge.
"""

import math

import numpy as np

from chameleon.config import DEFAULT_POINTER_VALUE
from chameleon.dynamics.model import ApparatusConfig, observable_array, reduced_weight_array
from chameleon.errors import DomainError
from chameleon.utils import TWO_PI

MIN_GRID = 8


def exact_correlation(a: float, b: float) -> float:
    return -math.cos(float(a) - float(b))


def conditioned_oracle(a: float, b: float) -> tuple[float, float, float]:
    """Limits of the direct protocol: (Σ products / N_tot, coincidences / N_tot, their ratio)."""
    numerator = -math.cos(float(a) - float(b)) / TWO_PI
    denominator = 1.0 / TWO_PI
    return numerator, denominator, numerator / denominator


def _midpoint_grid(origin: float, grid_n: int) -> tuple[np.ndarray, float]:
    if grid_n < MIN_GRID:
        raise DomainError(f"grid_n must be at least {MIN_GRID}, got {grid_n}")
    step = TWO_PI / grid_n
    return origin + (np.arange(grid_n) + 0.5) * step, step


def reduced_correlation_integrand(
    sigmas: np.ndarray, app_a: ApparatusConfig, app_b: ApparatusConfig
) -> np.ndarray:
    """S⁽¹⁾ₐ(σ)·S⁽²⁾ᵦ(σ)·T′₁,ₐ(σ)·T′₂,ᵦ(σ)·p_S, with p_S = 1/2π after the δ collapse."""
    products = observable_array(sigmas, app_a.setting, 1) * observable_array(sigmas, app_b.setting, 2)
    weights = reduced_weight_array(sigmas, app_a, 1) * reduced_weight_array(sigmas, app_b, 2)
    return products * weights / TWO_PI


def total_mass_integrand(sigmas: np.ndarray, app_a: ApparatusConfig, app_b: ApparatusConfig) -> np.ndarray:
    return reduced_weight_array(sigmas, app_a, 1) * reduced_weight_array(sigmas, app_b, 2) / TWO_PI


def quadrature_correlation(
    a: float,
    b: float,
    grid_n: int,
    pointer_a: float = DEFAULT_POINTER_VALUE,
    pointer_b: float = DEFAULT_POINTER_VALUE,
) -> float:
    app_a, app_b = ApparatusConfig(a, pointer_a), ApparatusConfig(b, pointer_b)
    sigmas, step = _midpoint_grid(app_b.setting + math.pi / 2.0, grid_n)
    return float(np.sum(reduced_correlation_integrand(sigmas, app_a, app_b)) * step)


def quadrature_total_mass(
    a: float,
    b: float,
    grid_n: int,
    pointer_a: float = DEFAULT_POINTER_VALUE,
    pointer_b: float = DEFAULT_POINTER_VALUE,
) -> float:
    app_a, app_b = ApparatusConfig(a, pointer_a), ApparatusConfig(b, pointer_b)
    sigmas, step = _midpoint_grid(app_a.setting + math.pi / 2.0, grid_n)
    return float(np.sum(total_mass_integrand(sigmas, app_a, app_b)) * step)
