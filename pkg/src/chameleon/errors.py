"""
Exception hierarchy. Library code raises these and never prints; the CLI
decides what becomes a usage error (exit 2) and what a runtime failure
(exit 1).
"""


class ChameleonError(Exception):
    """Base class for every error raised by the toolkit."""


class ConfigError(ChameleonError, ValueError):
    """An ExperimentConfig (or CLI flag combination) violates its invariants."""


class DomainError(ChameleonError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularDynamics(ChameleonError, ArithmeticError):
    """The station-1 map λ ↦ λ/T′ is undefined because cos(σ−a) vanishes."""


class NoCoincidences(ChameleonError):
    """The conditioned estimator has nothing to condition on."""


class UnknownSetting(ChameleonError, KeyError):
    """A contextual model was queried at a setting it does not define."""


class SingletViolated(ChameleonError):
    """A contextual model does not satisfy f₁,c = −f₂,c on the support of its state."""


class ProtocolError(ChameleonError):
    """A frame sequence breaks the netsim protocol (unknown or duplicated reply, bad schema)."""


class TransportError(ChameleonError):
    """A link was lost or delivered a malformed frame.

    `transcript` holds everything captured before the failure, so a dead
    station never costs the frames that did make it across.
    """

    def __init__(self, message: str, transcript=None):
        super().__init__(message)
        self.transcript = transcript
