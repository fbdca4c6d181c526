"""
Simulation procedures for the chameleon model: the direct
coincidence-conditioning protocol and the old 2π-renormalized one, plus
the experiment configuration, σ-sequences and random streams they share.
"""

from chameleon.protocols.direct import direct_outcomes, direct_trial, run_direct
from chameleon.protocols.experiment import (
    ExperimentConfig,
    ProtocolKind,
    SigmaMode,
    SigmaSequence,
    generate_sigma_sequence,
)
from chameleon.protocols.old import OldProtocolResult, old_hat_observable, run_old
from chameleon.protocols.records import Outcome, TrialLog, TrialRecord

__all__ = [
    'ExperimentConfig', 'ProtocolKind', 'SigmaMode', 'SigmaSequence', 'generate_sigma_sequence',
    'Outcome', 'TrialLog', 'TrialRecord', 'direct_outcomes', 'direct_trial', 'run_direct',
    'OldProtocolResult', 'old_hat_observable', 'run_old',
]
