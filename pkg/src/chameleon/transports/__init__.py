"""
Transports netsim sessions run over: queue-backed in-process links and TCP.
"""

from chameleon.transports.base import Link, Transport
from chameleon.transports.inprocess import InProcessTransport
from chameleon.transports.registry import TransportRegistry
from chameleon.transports.tcp import StationServer, TcpTransport, parse_address


def build_default_registry() -> TransportRegistry:
    registry = TransportRegistry()
    for transport in (InProcessTransport, TcpTransport):
        registry.register(transport.name, transport)
    return registry


__all__ = [
    "Link", "Transport", "TransportRegistry", "InProcessTransport", "TcpTransport",
    "StationServer", "parse_address", "build_default_registry",
]
