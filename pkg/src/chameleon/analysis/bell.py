"""
Three-term Bell quantity |E(a,b) − E(c,b)| − E(a,c) and the Bell experiment
over three direct-protocol sessions.

Unconditioned local models satisfying the singlet condition keep the
quantity at or below 1. Coincidence-conditioned correlations only obey the
relaxed bound 1/P(Γ_c), which for the chameleon model is 2π.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from chameleon.analysis.estimators import (
    CorrelationReport,
    EmptyPolicy,
    estimate_correlation,
    unconditioned_correlation,
)
from chameleon.errors import DomainError
from chameleon.protocols.direct import run_direct
from chameleon.protocols.experiment import ExperimentConfig
from chameleon.protocols.streams import derive_session_seed

BELL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BellReport:
    settings: tuple[float, float, float]
    e_ab: float
    e_cb: float
    e_ac: float
    bell_quantity: float
    bound: float
    std_error: float = 0.0
    coincidence_fraction: float = 0.0
    unconditioned_quantity: float = 0.0

    @property
    def violates_bell(self) -> bool:
        return self.bell_quantity > 1.0

    def to_dict(self) -> dict:
        return {
            "settings": list(self.settings),
            "e_ab": self.e_ab,
            "e_cb": self.e_cb,
            "e_ac": self.e_ac,
            "bell_quantity": self.bell_quantity,
            "bound": self.bound,
            "std_error": self.std_error,
            "coincidence_fraction": self.coincidence_fraction,
            "unconditioned_quantity": self.unconditioned_quantity,
        }


def bell_quantity(e_ab: float, e_cb: float, e_ac: float) -> float:
    for name, value in (("e_ab", e_ab), ("e_cb", e_cb), ("e_ac", e_ac)):
        if not -1.0 <= value <= 1.0:
            raise DomainError(f"{name} must lie in [-1, 1], got {value!r}")
    return abs(e_ab - e_cb) - e_ac


def check_bell_values(e_ab: float, e_cb: float, e_ac: float, tolerance: float = BELL_TOLERANCE) -> tuple[float, bool]:
    quantity = bell_quantity(e_ab, e_cb, e_ac)
    return quantity, quantity <= 1.0 + tolerance


def run_bell_experiment(a: float, b: float, c: float, cfg: ExperimentConfig, workers: int = 3) -> BellReport:
    """
    Direct-protocol sessions at (a,b), (c,b), (a,c) with independent seeds
    derived from cfg.seed. The bound is 1/P̂(Γ_c), P̂ being the coincidence
    fraction pooled over the three sessions.
    """
    configs = [
        cfg.with_settings(x, y, seed=derive_session_seed(cfg.seed, "bell", k))
        for k, (x, y) in enumerate(((a, b), (c, b), (a, c)))
    ]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        logs = list(pool.map(run_direct, configs))

    reports: list[CorrelationReport] = [estimate_correlation(log) for log in logs]
    e_ab, e_cb, e_ac = (r.correlation for r in reports)
    pooled = sum(r.n_coincidences for r in reports) / sum(r.n_trials for r in reports)
    unconditioned = [unconditioned_correlation(log, EmptyPolicy.ZERO) for log in logs]
    return BellReport(
        settings=(configs[0].a, configs[0].b, configs[1].a),
        e_ab=e_ab,
        e_cb=e_cb,
        e_ac=e_ac,
        bell_quantity=bell_quantity(e_ab, e_cb, e_ac),
        bound=1.0 / pooled,
        std_error=math.sqrt(sum(r.std_error**2 for r in reports)),
        coincidence_fraction=pooled,
        unconditioned_quantity=bell_quantity(*unconditioned),
    )
