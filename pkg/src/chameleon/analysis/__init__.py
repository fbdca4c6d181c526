"""
Statistical layer: conditioned correlation estimation, the Bell quantity
with its conditioning bound, and the chameleon-vs-inefficiency loss
discriminator.
"""

from chameleon.analysis.bell import BellReport, bell_quantity, check_bell_values, run_bell_experiment
from chameleon.analysis.estimators import (
    ConditionedComparison,
    CorrelationReport,
    EmptyPolicy,
    conditioned_vs_unconditioned,
    estimate_correlation,
    report_from_counts,
    unconditioned_correlation,
)
from chameleon.analysis.loss import (
    LossRunSummary,
    LossVerdict,
    bernoulli_thinning_counts,
    deterministic_loss_counts,
    discriminate_loss,
    fixed_sigma_sequence,
)

__all__ = [
    'BellReport', 'bell_quantity', 'check_bell_values', 'run_bell_experiment',
    'ConditionedComparison', 'CorrelationReport', 'EmptyPolicy', 'conditioned_vs_unconditioned',
    'estimate_correlation', 'report_from_counts', 'unconditioned_correlation',
    'LossRunSummary', 'LossVerdict', 'bernoulli_thinning_counts', 'deterministic_loss_counts',
    'discriminate_loss', 'fixed_sigma_sequence',
]
