"""
Normalized contextual hidden-variable models and their Bell checks: the
negative control showing that contextuality alone does not reach the
singlet correlations.
"""

from chameleon.contextual.batch import ContextualBatch, ContextualRow, run_contextual_batch
from chameleon.contextual.model import (
    ContextualModel,
    SingletConstraint,
    check_bell,
    correlation_matrix,
    epr_distance,
    generate_singlet_model,
    model_correlation,
    nearest_epr_gap,
    setting_grid,
)

__all__ = [
    'ContextualBatch', 'ContextualRow', 'run_contextual_batch',
    'ContextualModel', 'SingletConstraint', 'check_bell', 'correlation_matrix', 'epr_distance',
    'generate_singlet_model', 'model_correlation', 'nearest_epr_gap', 'setting_grid',
]
