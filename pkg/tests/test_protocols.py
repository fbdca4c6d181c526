import math

import numpy as np
import pytest

from chameleon.analysis import estimate_correlation
from chameleon.dynamics import exact_correlation
from chameleon.errors import ConfigError, DomainError
from chameleon.protocols import (
    ExperimentConfig,
    Outcome,
    ProtocolKind,
    SigmaMode,
    TrialLog,
    TrialRecord,
    direct_trial,
    generate_sigma_sequence,
    old_hat_observable,
    run_direct,
    run_old,
)
from chameleon.protocols.old import old_hat_outcomes
from chameleon.utils import TWO_PI


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(n_grid=10, n_total=5).validate()
    with pytest.raises(ConfigError):
        ExperimentConfig(n_grid=0, n_total=5).validate()
    with pytest.raises(ConfigError):
        ExperimentConfig(k1=0).validate()
    with pytest.raises(ConfigError):
        ExperimentConfig(sigma_mode="X")


def test_config_normalizes_angles():
    cfg = ExperimentConfig(a=-math.pi / 2, b=TWO_PI + 1.0)
    assert cfg.a == pytest.approx(3 * math.pi / 2)
    assert cfg.b == pytest.approx(1.0)


def test_deterministic_sigma_grid():
    seq = generate_sigma_sequence(ExperimentConfig(n_grid=4, n_total=4))
    assert np.allclose(seq.values, [math.pi / 2, math.pi, 3 * math.pi / 2, 0.0])
    assert list(seq.repetitions) == [1, 1, 1, 1]


def test_remainder_goes_to_lowest_indices():
    seq = generate_sigma_sequence(ExperimentConfig(n_grid=2, n_total=5))
    assert list(seq.repetitions) == [3, 2]
    assert seq.total == 5
    assert len(seq.expand()) == 5


def test_random_sigma_sequence_is_reproducible():
    cfg = ExperimentConfig(n_grid=10, n_total=1000, sigma_mode=SigmaMode.RANDOM, seed=4)
    first, second = generate_sigma_sequence(cfg), generate_sigma_sequence(cfg)
    assert np.array_equal(first.values, second.values)
    assert first.values.min() >= 0.0 and first.values.max() < TWO_PI


def test_direct_trial_examples():
    assert direct_trial(0.4, 0.4, 1, 0.20) is Outcome.PLUS
    assert direct_trial(0.4, 0.4, 1, 0.30) is Outcome.EMPTY
    assert direct_trial(0.4, 0.4, 2, 0.99) is Outcome.MINUS


def test_station_two_never_empty():
    draws = np.linspace(0.0, 0.999, 50)
    for sigma in np.linspace(0.0, TWO_PI, 37, endpoint=False):
        assert all(direct_trial(sigma, 1.3, 2, d) is not Outcome.EMPTY for d in draws)


def test_direct_trial_rejects_bad_draw():
    with pytest.raises(DomainError):
        direct_trial(0.0, 0.0, 1, 1.0)


def test_run_direct_empty_session():
    assert len(run_direct(ExperimentConfig(n_grid=1, n_total=0))) == 0


def test_run_direct_requires_direct_protocol():
    with pytest.raises(ConfigError):
        run_direct(ExperimentConfig(n_grid=1, n_total=10, protocol=ProtocolKind.OLD))


def test_run_direct_is_deterministic_and_worker_independent():
    cfg = ExperimentConfig(a=0.3, b=1.1, n_grid=1000, n_total=50_000, seed=9)
    sequential = run_direct(cfg)
    assert sequential == run_direct(cfg)
    assert sequential == run_direct(cfg, workers=4, chunk_size=4096)
    assert list(sequential.indices) == list(range(50_000))


def test_coincidence_fraction_matches_one_over_two_pi():
    log = run_direct(ExperimentConfig(n_grid=100_000, n_total=10**6, seed=1))
    fraction = np.count_nonzero(log.coincidence) / len(log)
    assert fraction == pytest.approx(1 / TWO_PI, abs=0.005)


@pytest.mark.parametrize("a, b", [(0.0, 0.0), (0.0, math.pi / 4), (0.0, math.pi / 2), (math.pi / 3, math.pi)])
def test_coincidence_fraction_does_not_depend_on_settings(a, b):
    log = run_direct(ExperimentConfig(a=a, b=b, n_grid=100_000, n_total=10**6, seed=4))
    assert estimate_correlation(log).coincidence_fraction == pytest.approx(1 / TWO_PI, abs=0.005)


@pytest.mark.parametrize("mode", [SigmaMode.DETERMINISTIC, SigmaMode.RANDOM])
def test_direct_estimate_tracks_singlet_correlation(mode):
    cfg = ExperimentConfig(a=0.0, b=math.pi / 3, n_grid=100_000, n_total=10**6, sigma_mode=mode, seed=2)
    report = estimate_correlation(run_direct(cfg))
    assert abs(report.correlation + 0.5) <= 3 * report.std_error


@pytest.mark.parametrize("delta", [TWO_PI * k / 9 for k in range(9)])
def test_direct_estimate_within_three_standard_errors(delta):
    cfg = ExperimentConfig(a=delta, b=0.0, n_grid=100_000, n_total=10**6, seed=21)
    report = estimate_correlation(run_direct(cfg))
    assert abs(report.correlation - exact_correlation(cfg.a, cfg.b)) <= 3 * report.std_error + 1e-12


def test_deterministic_and_random_modes_agree():
    base = dict(a=0.0, b=math.pi / 4, n_grid=100_000, n_total=10**6, seed=6)
    d = estimate_correlation(run_direct(ExperimentConfig(sigma_mode=SigmaMode.DETERMINISTIC, **base)))
    r = estimate_correlation(run_direct(ExperimentConfig(sigma_mode=SigmaMode.RANDOM, **base)))
    assert abs(d.correlation - r.correlation) <= 0.01


def test_trial_log_sequence_behaviour():
    records = [
        TrialRecord(0, 0.1, Outcome.PLUS, Outcome.MINUS),
        TrialRecord(1, 0.2, Outcome.EMPTY, Outcome.PLUS),
        TrialRecord(2, 0.3, Outcome.MINUS, Outcome.PLUS),
    ]
    log = TrialLog.from_records(records)
    assert len(log) == 3
    assert list(log) == records
    assert log[1].coincidence is False
    assert list(log[1:]) == records[1:]
    with pytest.raises(ValueError):
        log.sigmas[0] = 1.0


def test_old_hat_station_one_mean():
    draws = np.random.default_rng(3).random(10**6)
    outcomes = old_hat_outcomes(np.full(draws.size, 0.7), 0.7, 1, draws)
    assert outcomes.mean() == pytest.approx(0.25, abs=0.003)


def test_old_hat_station_two_ignores_draw():
    assert old_hat_observable(0.5, 0.5, 2, 0.0) == -1
    assert old_hat_observable(0.5, 0.5, 2, 0.9) == -1


def test_old_protocol_two_pi_bookkeeping():
    result = run_old(ExperimentConfig(a=0.0, b=0.0, n_grid=10**5, n_total=10**5, protocol=ProtocolKind.OLD, seed=5))
    assert result.raw_mean == pytest.approx(-1 / TWO_PI, abs=0.01)
    assert result.scaled_mean == pytest.approx(-1.0, abs=0.05)
    assert result.scaled_mean == pytest.approx(TWO_PI * result.raw_mean)


def test_old_protocol_orthogonal_settings():
    result = run_old(
        ExperimentConfig(a=0.0, b=math.pi / 2, n_grid=10**5, n_total=10**5, protocol=ProtocolKind.OLD, seed=5)
    )
    assert result.scaled_mean == pytest.approx(0.0, abs=0.05)
