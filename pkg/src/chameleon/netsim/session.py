"""
The netsim session loop: Central's side of one direct-protocol run.

Central notes both settings in the transcript as a local frame on link C,
sends each station its Config (own setting, own stream key), then
streams the σ-sequence in windows: every Trial of the window to station A
and to station B, then the replies of A and of B, matched by index.
Windowing bounds the frames in flight per station; it cannot move the
statistics, because every reply depends only on (σ_j, setting, j).
After the last window both stations get Done and acknowledge it, and the
report goes into the transcript as a Result frame on link C.
"""

from typing import NamedTuple, Optional

from chameleon.analysis.estimators import CorrelationReport
from chameleon.config import LINK_TIMEOUT, PIPELINE_WINDOW
from chameleon.errors import ConfigError, ProtocolError, TransportError
from chameleon.netsim.roles import STATIONS, Central, Role
from chameleon.netsim.transcript import Transcript
from chameleon.netsim.wire import Message, MessageKind, decode_frame, encode_frame, frame_text
from chameleon.protocols.experiment import ExperimentConfig, ProtocolKind, generate_sigma_sequence
from chameleon.protocols.streams import derive_stream_key
from chameleon.transports.base import Link, Transport


class SessionResult(NamedTuple):
    report: CorrelationReport
    transcript: Transcript


class _Channel:
    """Central's end of one link; every frame through it lands in the transcript."""

    def __init__(self, role: Role, link: Link, transcript: Transcript, hooks, timeout: float):
        self.role = role
        self.link = link
        self._transcript = transcript
        self._hooks = hooks
        self._timeout = timeout

    def send(self, message: Message) -> None:
        frame = encode_frame(message)
        text = frame_text(frame)
        self._transcript.record(self.role.link, "to_station", text)
        if self._hooks is not None:
            self._hooks.on_frame(self.role.link, "to_station", frame)
        self.link.send(frame)

    def receive(self) -> Message:
        frame = self.link.receive(timeout=self._timeout)
        self._transcript.record(self.role.link, "to_central", frame_text(frame))
        if self._hooks is not None:
            self._hooks.on_frame(self.role.link, "to_central", frame)
        return decode_frame(frame)


def _settings_for(cfg: ExperimentConfig) -> dict[Role, float]:
    return {Role.STATION_A: cfg.a, Role.STATION_B: cfg.b}


def run_session(
    cfg: ExperimentConfig,
    transport: Transport,
    hooks=None,
    window: int = PIPELINE_WINDOW,
    timeout: float = LINK_TIMEOUT,
) -> SessionResult:
    if cfg.protocol is not ProtocolKind.DIRECT:
        raise ConfigError(f"netsim runs the direct protocol only, got {cfg.protocol.value}")
    if window < 1:
        raise ConfigError(f"pipeline window must be at least 1, got {window}")
    cfg.validate()

    if hooks is not None:
        hooks.on_session_start(cfg, transport.name)

    transcript = Transcript()
    central = Central()
    channels: list[_Channel] = []
    report: Optional[CorrelationReport] = None
    error: Optional[BaseException] = None
    try:
        # σ-generation at Central is blind to the settings
        sigmas = generate_sigma_sequence(cfg).expand()
        transcript.record("C", "local", Message.settings(cfg.a, cfg.b).to_json())
        for role in STATIONS:
            channels.append(_Channel(role, transport.connect(role), transcript, hooks, timeout))
        settings = _settings_for(cfg)
        for channel in channels:
            channel.send(Message.config(settings[channel.role], derive_stream_key(cfg.seed, channel.role.stream)))

        for start in range(0, len(sigmas), window):
            stop = min(start + window, len(sigmas))
            for channel in channels:
                for index in range(start, stop):
                    central.expect(channel.role, index)
                    channel.send(Message.trial(index, sigmas[index]))
            for channel in channels:
                for _ in range(start, stop):
                    message = channel.receive()
                    if message.kind is not MessageKind.REPLY:
                        raise ProtocolError(f"expected a reply from station {channel.role.link}, got {message.kind.value}")
                    central.accept(channel.role, message.index, message.outcome)

        for channel in channels:
            channel.send(Message.done())
        for channel in channels:
            ack = channel.receive()
            if ack.kind is not MessageKind.DONE:
                raise ProtocolError(f"station {channel.role.link} answered Done with {ack.kind.value}")

        report = central.report()
        transcript.record("C", "local", Message.result(report.to_dict()).to_json())
        return SessionResult(report, transcript)
    except TransportError as e:
        error = e
        raise TransportError(str(e), transcript) from e
    except Exception as e:
        error = e
        raise
    finally:
        for channel in channels:
            channel.link.close()
        transport.close()
        if hooks is not None:
            hooks.on_session_end(report, error)
