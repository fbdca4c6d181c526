"""
Base interfaces every netsim transport implements.

A Transport hands Central one Link per station role. A Link moves whole
frames (header included) in both directions and nothing else: it never
looks inside them, so the locality audit only has to trust the session
loop and the stations, not the plumbing between them.
"""

import queue
from abc import ABC, abstractmethod
from typing import Optional

from chameleon.errors import TransportError

# Put on a link's inbound queue when the far side goes away.
CLOSED = None


class Link(ABC):
    """One bidirectional frame channel between Central and a station."""

    name: str

    @abstractmethod
    def send(self, frame: bytes) -> None:
        raise NotImplementedError

    @abstractmethod
    def receive(self, timeout: Optional[float] = None) -> bytes:
        """Next inbound frame. Raises TransportError on timeout or a closed peer."""
        raise NotImplementedError

    @abstractmethod
    def close(self) -> None:
        raise NotImplementedError


class QueueLink(Link):
    """Link whose inbound side is a queue.Queue fed by whoever owns the other end."""

    def __init__(self, name: str, inbound: "queue.Queue[Optional[bytes]]"):
        self.name = name
        self._inbound = inbound

    def receive(self, timeout: Optional[float] = None) -> bytes:
        try:
            frame = self._inbound.get(timeout=timeout)
        except queue.Empty:
            raise TransportError(f"link {self.name}: no frame within {timeout}s") from None
        if frame is CLOSED:
            # keep the marker for any later reader
            self._inbound.put(CLOSED)
            raise TransportError(f"link {self.name}: peer closed the connection")
        return frame


class Transport(ABC):
    """Opens the links of one session; closing it releases whatever it started."""

    name: str

    @abstractmethod
    def connect(self, role) -> Link:
        """Central's end of a fresh link to the station playing `role`."""
        raise NotImplementedError

    def close(self) -> None:
        pass

    def __enter__(self) -> "Transport":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
