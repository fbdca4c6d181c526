"""
Conditioned correlation estimation.

The estimator is (sum of correlation products) / (number of coincidences),
over coincident trials only. report_from_counts is the single place that
arithmetic lives: run_direct logs, the netsim Central and transcript
replay all go through it, which is what makes their reports comparable
with ==.
"""

import math
from collections.abc import Iterable
from dataclasses import asdict, dataclass
from enum import Enum
from typing import NamedTuple, Union

import numpy as np

from chameleon.errors import NoCoincidences
from chameleon.protocols.records import Outcome, TrialLog, TrialRecord

Records = Union[TrialLog, Iterable[TrialRecord]]


@dataclass(frozen=True)
class CorrelationReport:
    correlation: float
    n_coincidences: int
    n_trials: int
    sum_products: float
    std_error: float

    @property
    def coincidence_fraction(self) -> float:
        return self.n_coincidences / self.n_trials if self.n_trials else 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CorrelationReport":
        return cls(
            correlation=float(data["correlation"]),
            n_coincidences=int(data["n_coincidences"]),
            n_trials=int(data["n_trials"]),
            sum_products=float(data["sum_products"]),
            std_error=float(data["std_error"]),
        )


class EmptyPolicy(str, Enum):
    """Number an empty reply stands for when trials are averaged unconditioned."""

    MINUS_ONE = "minus-one"
    ZERO = "zero"


class ConditionedComparison(NamedTuple):
    conditioned: float
    unconditioned: float


def report_from_counts(sum_products: float, n_coincidences: int, n_trials: int) -> CorrelationReport:
    if n_coincidences <= 0:
        raise NoCoincidences(f"no coincidences among {n_trials} trials")
    correlation = sum_products / n_coincidences
    return CorrelationReport(
        correlation=correlation,
        n_coincidences=n_coincidences,
        n_trials=n_trials,
        sum_products=float(sum_products),
        std_error=math.sqrt(max(0.0, 1.0 - correlation * correlation) / n_coincidences),
    )


def _as_log(records: Records) -> TrialLog:
    return records if isinstance(records, TrialLog) else TrialLog.from_records(records)


def estimate_correlation(records: Records) -> CorrelationReport:
    log = _as_log(records)
    coincident = log.coincidence
    products = log.outcome_1[coincident].astype(np.int64) * log.outcome_2[coincident].astype(np.int64)
    return report_from_counts(float(products.sum()), int(coincident.sum()), len(log))


def unconditioned_correlation(records: Records, empty_as: EmptyPolicy) -> float:
    """Average product over every trial, empty replies mapped per `empty_as`."""
    log = _as_log(records)
    if len(log) == 0:
        raise NoCoincidences("no trials to average")
    fill = -1 if EmptyPolicy(empty_as) is EmptyPolicy.MINUS_ONE else 0
    side_1 = np.where(log.outcome_1 == Outcome.EMPTY, fill, log.outcome_1).astype(np.int64)
    side_2 = np.where(log.outcome_2 == Outcome.EMPTY, fill, log.outcome_2).astype(np.int64)
    return float(np.mean(side_1 * side_2))


def conditioned_vs_unconditioned(records: Records, empty_as: EmptyPolicy) -> ConditionedComparison:
    """
    The correct coincidence-conditioned correlation next to the unconditioned
    average. Under the Zero policy conditioned ≈ unconditioned / P(Γ_c).
    """
    log = _as_log(records)
    conditioned = estimate_correlation(log).correlation
    return ConditionedComparison(conditioned=conditioned, unconditioned=unconditioned_correlation(log, empty_as))
