import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chameleon.dynamics import (
    SQRT_TWO_PI,
    T1_MAX,
    Angle,
    ApparatusConfig,
    ParticlePhase,
    WeightPair,
    apply_dynamics,
    conditioned_oracle,
    exact_correlation,
    inverse_dynamics,
    local_marginal_mass,
    observable,
    quadrature_correlation,
    quadrature_total_mass,
    reduced_weight,
    weight_t1,
)
from chameleon.errors import DomainError, SingularDynamics
from chameleon.utils import TWO_PI, normalize_angle, parse_angle

angles = st.floats(min_value=0.0, max_value=TWO_PI, allow_nan=False, allow_infinity=False)


def test_weight_t1_values():
    assert weight_t1(0.7, 0.7) == pytest.approx(math.sqrt(TWO_PI) / 4)
    assert weight_t1(math.pi / 2, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert weight_t1(math.pi / 3, 0.0) == pytest.approx(0.313329, abs=1e-6)


def test_weight_pair_station_two_is_constant():
    pair = WeightPair.at(1.0, 0.0)
    assert pair.t2 == SQRT_TWO_PI
    assert pair.t1 == pytest.approx(weight_t1(1.0, 0.0))


def test_apply_dynamics_examples():
    assert apply_dynamics(ParticlePhase(1.2, SQRT_TWO_PI), ApparatusConfig(0.4), 2)[1] == pytest.approx(1.0)
    assert apply_dynamics(ParticlePhase(0.3, T1_MAX), ApparatusConfig(0.3), 1)[1] == pytest.approx(1.0)
    with pytest.raises(SingularDynamics):
        apply_dynamics(ParticlePhase(math.pi / 2, 1.0), ApparatusConfig(0.0), 1)


def test_apply_dynamics_keeps_sigma():
    sigma, _ = apply_dynamics(ParticlePhase(2.0, 1.0), ApparatusConfig(0.5), 1)
    assert sigma == 2.0


def test_particle_phase_rejects_lambda_outside_range():
    with pytest.raises(DomainError):
        ParticlePhase(0.0, -0.1)
    with pytest.raises(DomainError):
        ParticlePhase(0.0, TWO_PI + 0.1)


def test_apparatus_rejects_non_positive_pointer():
    with pytest.raises(DomainError):
        ApparatusConfig(0.0, pointer_value=0.0)


@given(sigma=angles, a=angles, lam=st.floats(min_value=0.0, max_value=TWO_PI))
def test_inverse_dynamics_recovers_lambda(sigma, a, lam):
    app = ApparatusConfig(a)
    if abs(math.cos(sigma - a)) < 1e-6:
        return
    reading_sigma, m = apply_dynamics(ParticlePhase(sigma, lam), app, 1)
    assert inverse_dynamics(reading_sigma, m, app, 1) == pytest.approx(lam, rel=0, abs=1e-12)


def test_reduced_weight_ignores_pointer_value():
    assert reduced_weight(0.2, ApparatusConfig(0.2), 1) == pytest.approx(T1_MAX)
    assert reduced_weight(0.9, ApparatusConfig(2.0, 5.0), 2) == SQRT_TWO_PI
    assert reduced_weight(1.1, ApparatusConfig(0.3, 1.0), 1) == reduced_weight(1.1, ApparatusConfig(0.3, 7.0), 1)


def test_observable_examples():
    assert observable(0.5, 0.5, 1) == 1
    assert observable(0.5, 0.5, 2) == -1
    assert observable(3 * math.pi / 4, 0.0, 1) == -1


def test_observable_sign_of_zero_is_plus():
    # cos(σ−a) rounds to a tiny positive number here, the sign convention keeps +1 at the break
    assert observable(math.pi / 2, 0.0, 1) == 1


@given(sigma=angles, c=angles)
def test_singlet_condition(sigma, c):
    assert observable(sigma, c, 1) == -observable(sigma, c, 2)


@given(sigma=angles, a=angles, shift=angles)
def test_observable_rotation_covariance(sigma, a, shift):
    if abs(math.cos(sigma - a)) < 1e-9:
        return
    assert observable(sigma + shift, a + shift, 1) == observable(sigma, a, 1)


@given(a=angles, b=angles, shift=angles)
def test_rotation_covariance(a, b, shift):
    assert exact_correlation(a + shift, b + shift) == pytest.approx(exact_correlation(a, b), abs=1e-12)


def test_local_marginal_mass_is_not_normalized():
    assert local_marginal_mass(0.0, 0.0, 2) == pytest.approx(2.5066, abs=1e-4)
    assert local_marginal_mass(0.4, 0.4, 1) == pytest.approx(T1_MAX)
    assert local_marginal_mass(0.0, math.pi / 2, 1) == pytest.approx(0.0, abs=1e-15)


def test_exact_correlation():
    assert exact_correlation(1.0, 1.0) == -1.0
    assert exact_correlation(0.0, math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert exact_correlation(0.0, math.pi / 3) == pytest.approx(-0.5)


def test_conditioned_oracle_ratio_is_singlet_correlation():
    numerator, denominator, ratio = conditioned_oracle(0.0, math.pi / 3)
    assert denominator == pytest.approx(1 / TWO_PI)
    assert numerator == pytest.approx(-0.5 / TWO_PI)
    assert ratio == pytest.approx(-0.5)


@pytest.mark.parametrize("a, b", [(0.0, 0.0), (0.0, math.pi / 2)])
def test_quadrature_correlation_fine_grid(a, b):
    assert quadrature_correlation(a, b, 10**6) == pytest.approx(exact_correlation(a, b), abs=1e-6)


def test_quadrature_correlation_coarse_grid():
    assert quadrature_correlation(0.0, math.pi / 3, 8) == pytest.approx(-0.5, abs=0.2)


@pytest.mark.parametrize("a, b", [(0.0, 0.0), (0.0, 2.5)])
def test_quadrature_total_mass_fine_grid(a, b):
    assert quadrature_total_mass(a, b, 10**6) == pytest.approx(1.0, abs=1e-6)


def test_quadrature_total_mass_coarse_grid():
    assert quadrature_total_mass(math.pi, 1.0, 8) == pytest.approx(1.0, abs=0.1)


def test_quadrature_random_pairs():
    rng = np.random.default_rng(11)
    for a, b in rng.uniform(0.0, TWO_PI, size=(20, 2)):
        assert quadrature_correlation(a, b, 10**6) == pytest.approx(exact_correlation(a, b), abs=1e-6)
        assert quadrature_total_mass(a, b, 10**6) == pytest.approx(1.0, abs=1e-6)


def test_quadrature_independent_of_pointer_values():
    assert quadrature_correlation(0.3, 1.7, 4096, 1.0, 1.0) == quadrature_correlation(0.3, 1.7, 4096, 3.0, 0.5)


def test_quadrature_rejects_tiny_grid():
    with pytest.raises(DomainError):
        quadrature_correlation(0.0, 0.0, 4)


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
@settings(max_examples=200)
def test_normalize_angle_range(value):
    reduced = normalize_angle(value)
    assert 0.0 <= reduced < TWO_PI


def test_angle_from_degrees():
    assert Angle.from_degrees(180).value == pytest.approx(math.pi)
    assert Angle(-math.pi / 2).degrees == pytest.approx(270.0)


@pytest.mark.parametrize(
    "text, expected",
    [("0.5", 0.5), ("30deg", math.pi / 6), ("90°", math.pi / 2), ("2pi/3", TWO_PI / 3), ("pi", math.pi)],
)
def test_parse_angle(text, expected):
    assert parse_angle(text) == pytest.approx(expected)


def test_parse_angle_rejects_garbage():
    with pytest.raises(ValueError):
        parse_angle("north")


@pytest.mark.parametrize("text", ["2pi/0", "pi/0.0"])
def test_parse_angle_rejects_zero_divisor(text):
    with pytest.raises(ValueError):
        parse_angle(text)
