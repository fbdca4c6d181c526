"""
The chameleon model core (dynamics, measures, observables) and the oracles
every stochastic estimate is checked against; see model.py and oracles.py.
"""

from chameleon.dynamics.model import (
    SQRT_TWO_PI,
    T1_MAX,
    Angle,
    ApparatusConfig,
    ParticlePhase,
    WeightPair,
    apply_dynamics,
    inverse_dynamics,
    local_marginal_mass,
    observable,
    reduced_weight,
    weight_t1,
)
from chameleon.dynamics.oracles import (
    conditioned_oracle,
    exact_correlation,
    quadrature_correlation,
    quadrature_total_mass,
)

__all__ = [
    'SQRT_TWO_PI', 'T1_MAX', 'Angle', 'ApparatusConfig', 'ParticlePhase', 'WeightPair',
    'apply_dynamics', 'inverse_dynamics', 'local_marginal_mass', 'observable', 'reduced_weight',
    'weight_t1', 'conditioned_oracle', 'exact_correlation', 'quadrature_correlation',
    'quadrature_total_mass',
]
