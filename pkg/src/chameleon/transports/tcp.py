"""
TCP transport.

A StationServer listens on host:port and serves one session per accepted
connection with its Station. TcpTransport either connects to servers that
are already running (`serve-station`) or, for roles without an address,
starts a local server on an ephemeral port for the duration of the
session.

Each SocketLink runs a reader thread that decodes frames into a queue, so
a window of Trial frames can be written without waiting for the replies
piling up on the other side.
"""

import logging
import queue
import socket
import threading
from typing import Optional

from chameleon.config import LINK_TIMEOUT, MAX_FRAME_BYTES
from chameleon.errors import TransportError
from chameleon.netsim.wire import HEADER
from chameleon.transports.base import CLOSED, QueueLink, Transport

logger = logging.getLogger(__name__)

Address = tuple[str, int]


def parse_address(text: str) -> Address:
    host, sep, port = text.rpartition(":")
    if not sep or not port.isdigit():
        raise ValueError(f"expected host:port, got {text!r}")
    return host or "127.0.0.1", int(port)


def _read_exact(sock: socket.socket, size: int) -> Optional[bytes]:
    chunks = []
    remaining = size
    while remaining:
        chunk = sock.recv(remaining)
        if not chunk:
            if remaining == size:
                return None
            raise TransportError(f"connection closed mid-frame ({size - remaining}/{size} bytes)")
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


def read_frame(sock: socket.socket, max_bytes: int = MAX_FRAME_BYTES) -> Optional[bytes]:
    """One whole frame (header included), or None on a clean end of stream."""
    header = _read_exact(sock, HEADER.size)
    if header is None:
        return None
    (length,) = HEADER.unpack(header)
    if length > max_bytes:
        raise TransportError(f"frame of {length} bytes exceeds the {max_bytes}-byte limit")
    body = _read_exact(sock, length) if length else b""
    if body is None:
        raise TransportError("connection closed between header and body")
    return header + body


class SocketLink(QueueLink):
    def __init__(self, name: str, sock: socket.socket):
        super().__init__(name, queue.Queue())
        self._sock = sock
        self._sock.settimeout(None)
        self._send_lock = threading.Lock()
        self._reader = threading.Thread(target=self._pump, name=f"link-{name}-reader", daemon=True)
        self._reader.start()

    def _pump(self) -> None:
        try:
            while True:
                frame = read_frame(self._sock)
                if frame is None:
                    break
                self._inbound.put(frame)
        except (OSError, TransportError) as e:
            logger.debug("link %s reader stopped: %s", self.name, e)
        self._inbound.put(CLOSED)

    def send(self, frame: bytes) -> None:
        try:
            with self._send_lock:
                self._sock.sendall(frame)
        except OSError as e:
            raise TransportError(f"link {self.name}: send failed: {e}") from e

    def close(self) -> None:
        try:
            self._sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self._sock.close()


class StationServer:
    """Serves a Station over TCP, one session per accepted connection."""

    def __init__(self, station, host: str = "127.0.0.1", port: int = 0):
        self.station = station
        try:
            self._listener = socket.create_server((host, port))
        except OSError as e:
            raise TransportError(f"cannot listen on {host}:{port}: {e}") from e
        self._thread: Optional[threading.Thread] = None
        self._stopped = threading.Event()

    @property
    def address(self) -> Address:
        host, port = self._listener.getsockname()[:2]
        return host, port

    def serve_one(self) -> None:
        conn, peer = self._listener.accept()
        logger.info("station %s: session from %s:%s", self.station.role.link, *peer[:2])
        link = SocketLink(self.station.role.link, conn)
        try:
            self.station.serve(link)
        finally:
            link.close()

    def serve_forever(self) -> None:
        while not self._stopped.is_set():
            try:
                self.serve_one()
            except OSError:
                if self._stopped.is_set():
                    break
                raise

    def start(self) -> "StationServer":
        self._thread = threading.Thread(target=self._serve_quietly, name="station-server", daemon=True)
        self._thread.start()
        return self

    def _serve_quietly(self) -> None:
        try:
            self.serve_one()
        except OSError:
            pass

    def close(self) -> None:
        self._stopped.set()
        try:
            # wakes a thread blocked in accept()
            self._listener.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self._listener.close()
        if self._thread is not None:
            self._thread.join(timeout=1.0)


class TcpTransport(Transport):
    name = "tcp"

    def __init__(self, addresses: Optional[dict] = None, stations: Optional[dict] = None, timeout: float = LINK_TIMEOUT):
        """`addresses` maps a Role to the host:port of a running station server."""
        self._addresses = dict(addresses or {})
        self._stations = dict(stations or {})
        self._timeout = timeout
        self._servers: list[StationServer] = []

    def connect(self, role) -> SocketLink:
        from chameleon.netsim.roles import Station

        address = self._addresses.get(role)
        if address is None:
            server = StationServer(self._stations.get(role) or Station(role)).start()
            self._servers.append(server)
            address = server.address
        try:
            sock = socket.create_connection(address, timeout=self._timeout)
        except OSError as e:
            raise TransportError(f"cannot reach station {role.link} at {address[0]}:{address[1]}: {e}") from e
        return SocketLink(role.link, sock)

    def close(self) -> None:
        for server in self._servers:
            server.close()
        self._servers.clear()
