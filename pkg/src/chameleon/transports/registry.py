"""
TransportRegistry: the named transports a session can run over. The CLI
looks transports up here by name and builds a fresh instance per session.
"""

from typing import Callable

from chameleon.errors import ConfigError
from chameleon.transports.base import Transport


class TransportRegistry:
    def __init__(self):
        self._factories: dict[str, Callable[..., Transport]] = {}

    def register(self, name: str, factory: Callable[..., Transport]) -> None:
        self._factories[name] = factory

    def names(self) -> list[str]:
        return list(self._factories)

    def create(self, name: str, **kwargs) -> Transport:
        factory = self._factories.get(name)
        if factory is None:
            raise ConfigError(f"unknown transport {name!r} (known: {', '.join(self._factories)})")
        return factory(**kwargs)
