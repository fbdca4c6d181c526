import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chameleon.analysis import check_bell_values
from chameleon.contextual import (
    ContextualModel,
    SingletConstraint,
    check_bell,
    correlation_matrix,
    generate_singlet_model,
    model_correlation,
    nearest_epr_gap,
    run_contextual_batch,
    setting_grid,
)
from chameleon.errors import ConfigError, DomainError, SingletViolated, UnknownSetting
from chameleon.utils import TWO_PI

GRID = setting_grid(6)
EPR_TRIPLE = (0.0, TWO_PI / 3, math.pi / 3)


def _constant_model(f1_value, f2_value, omega=2):
    base = np.full(omega, 1.0 / omega)
    return ContextualModel(
        base_state=base,
        f1=np.full((3, omega), f1_value),
        f2=np.full((3, omega), f2_value),
        settings=setting_grid(3),
    )


def test_constant_observables():
    m = _constant_model(1.0, -1.0)
    assert model_correlation(m, 0.0, TWO_PI / 3) == pytest.approx(-1.0)


def test_null_observable():
    m = _constant_model(0.7, 0.0)
    assert model_correlation(m, 0.0, 0.0) == 0.0


def test_two_state_correlation():
    m = ContextualModel(
        base_state=[0.5, 0.5], f1=[[1.0, -1.0]] * 3, f2=[[1.0, -1.0]] * 3, settings=setting_grid(3)
    )
    assert model_correlation(m, 0.0, TWO_PI / 3) == pytest.approx(1.0)


def test_unknown_setting():
    with pytest.raises(UnknownSetting):
        model_correlation(_constant_model(1.0, -1.0), 0.0, 1.0)


def test_model_validation():
    with pytest.raises(DomainError):
        ContextualModel(base_state=[0.6, 0.6], f1=[[0.0, 0.0]], f2=[[0.0, 0.0]], settings=(0.0,))
    with pytest.raises(DomainError):
        ContextualModel(base_state=[0.5, 0.5], f1=[[1.5, 0.0]], f2=[[0.0, 0.0]], settings=(0.0,))
    with pytest.raises(DomainError):
        ContextualModel(base_state=[0.5, 0.5], f1=[[0.0, 0.0]], f2=[[0.0, 0.0]], settings=(0.0, 1.0))


@given(seed=st.integers(min_value=0, max_value=2**32), omega=st.integers(min_value=2, max_value=64))
@settings(max_examples=50)
def test_generated_models_satisfy_hypotheses(seed, omega):
    m = generate_singlet_model(omega, 6, seed)
    assert SingletConstraint(tolerance=0.0).satisfied_by(m)
    assert np.all(np.abs(m.f1) <= 1.0)
    assert m.base_state.sum() == pytest.approx(1.0)
    assert np.all(np.abs(correlation_matrix(m)) <= 1.0 + 1e-12)


def test_generation_is_deterministic():
    first, second = generate_singlet_model(8, 6, 42), generate_singlet_model(8, 6, 42)
    assert np.array_equal(first.base_state, second.base_state)
    assert np.array_equal(first.f1, second.f1)


def test_generation_preconditions():
    with pytest.raises(DomainError):
        generate_singlet_model(1, 6, 0)
    with pytest.raises(DomainError):
        generate_singlet_model(4, 2, 0)


def test_correlation_matrix_matches_pairwise():
    m = generate_singlet_model(5, 6, 1)
    matrix = correlation_matrix(m)
    assert matrix[2, 4] == pytest.approx(model_correlation(m, GRID[2], GRID[4]))


@given(seed=st.integers(min_value=0, max_value=2**32))
@settings(max_examples=30)
def test_random_models_satisfy_bell(seed):
    m = generate_singlet_model(16, 6, seed)
    for a in GRID[:3]:
        for b in GRID[3:]:
            quantity, holds = check_bell(m, a, b, GRID[0])
            assert holds, quantity


def test_check_bell_needs_singlet_condition():
    m = _constant_model(0.5, 0.5)
    with pytest.raises(SingletViolated):
        check_bell(m, 0.0, TWO_PI / 3, 2 * TWO_PI / 3)


def test_null_model_quantity_is_zero():
    m = _constant_model(0.0, 0.0)
    assert check_bell(m, 0.0, TWO_PI / 3, 2 * TWO_PI / 3) == (0.0, True)


def test_chameleon_correlations_do_not_fit_the_hypotheses():
    quantity, holds = check_bell_values(0.5, -0.5, -0.5)
    assert quantity == pytest.approx(1.5)
    assert not holds


def test_null_model_gap_is_largest_cosine():
    m = ContextualModel(
        base_state=[1.0], f1=np.zeros((6, 1)), f2=np.zeros((6, 1)), settings=GRID
    )
    expected = max(abs(math.cos(x - y)) for x in GRID for y in GRID if x != y)
    assert nearest_epr_gap(m, GRID) == pytest.approx(expected)


def test_nearest_epr_gap_is_positive_for_singlet_models():
    for seed in range(20):
        m = generate_singlet_model(12, 6, seed)
        assert nearest_epr_gap(m, list(EPR_TRIPLE)) > 0.0


def test_nearest_epr_gap_needs_three_settings():
    with pytest.raises(DomainError):
        nearest_epr_gap(generate_singlet_model(4, 6, 0), [0.0, 1.0])


def test_batch_has_no_violations_and_no_epr_matches():
    batch = run_contextual_batch(1000, 2, 64, 6, seed=3)
    assert batch.n_models == 1000
    assert batch.violations == 0
    assert batch.worst_quantity <= 1.0 + 1e-9
    assert batch.epr_matches == 0
    assert all(row.epr_distance > 0.16 for row in batch.rows)


def test_batch_is_reproducible_and_exports_json_lines():
    first = run_contextual_batch(20, seed=5)
    assert first == run_contextual_batch(20, seed=5)
    lines = first.to_json_lines().splitlines()
    assert len(lines) == 20
    row = json.loads(lines[0])
    assert set(row) == {"seed", "omega_size", "triple", "quantity", "holds", "epr_distance"}


def test_batch_rejects_empty_run():
    with pytest.raises(ConfigError):
        run_contextual_batch(0)
