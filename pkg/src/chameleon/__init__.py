"""EPR-chameleon simulator: local dynamics, protocols, netsim, analysis and contextual checks."""

__version__ = "0.1.0"
