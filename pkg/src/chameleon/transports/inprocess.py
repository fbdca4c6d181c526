"""
In-process transport: each link is a pair of queues, and each station runs
its request loop on a daemon thread. No shared state between the roles
beyond the framed bytes on the queues.
"""

import queue
import threading
from typing import Optional

from chameleon.errors import TransportError
from chameleon.transports.base import CLOSED, QueueLink, Transport


class _QueuePeer(QueueLink):
    def __init__(self, name: str, inbound: queue.Queue, outbound: queue.Queue):
        super().__init__(name, inbound)
        self._outbound = outbound
        self._closed = threading.Event()

    def send(self, frame: bytes) -> None:
        if self._closed.is_set():
            raise TransportError(f"link {self.name} is closed")
        self._outbound.put(frame)

    def close(self) -> None:
        if not self._closed.is_set():
            self._closed.set()
            self._outbound.put(CLOSED)


class InProcessTransport(Transport):
    name = "inprocess"

    def __init__(self, stations: Optional[dict] = None):
        """`stations` maps a Role to the Station that serves it; missing roles get a default Station."""
        self._stations = dict(stations or {})
        self._threads: list[threading.Thread] = []

    def connect(self, role) -> QueueLink:
        from chameleon.netsim.roles import Station

        to_station: queue.Queue = queue.Queue()
        to_central: queue.Queue = queue.Queue()
        central_end = _QueuePeer(role.link, inbound=to_central, outbound=to_station)
        station_end = _QueuePeer(role.link, inbound=to_station, outbound=to_central)

        station = self._stations.get(role) or Station(role)
        thread = threading.Thread(target=station.serve, args=(station_end,), name=f"station-{role.link}", daemon=True)
        thread.start()
        self._threads.append(thread)
        return central_end

    def close(self) -> None:
        for thread in self._threads:
            thread.join(timeout=1.0)
        self._threads.clear()
