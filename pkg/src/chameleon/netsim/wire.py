"""
The netsim wire seam.

Every frame is a 4-byte big-endian length followed by a UTF-8 JSON object.
Nothing outside this module builds or parses frame bytes: the session loop,
the stations, transcript replay and the locality audit all go through
Message.to_json()/from_json() and encode_frame()/decode_frame().

Floats are written with 17 significant digits so a σ read back from the
wire (or from a saved transcript) is the very double that was sent.
"""

import json
import math
import struct
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from chameleon.config import MAX_FRAME_BYTES
from chameleon.errors import ProtocolError, TransportError
from chameleon.protocols.records import Outcome

HEADER = struct.Struct(">I")


class MessageKind(str, Enum):
    CONFIG = "config"
    TRIAL = "trial"
    REPLY = "reply"
    DONE = "done"
    RESULT = "result"
    SETTINGS = "settings"


# Exact key set of every frame kind; anything else on the wire is malformed.
SCHEMA = {
    MessageKind.CONFIG: frozenset({"kind", "setting", "stream_key"}),
    MessageKind.TRIAL: frozenset({"kind", "index", "sigma"}),
    MessageKind.REPLY: frozenset({"kind", "index", "outcome"}),
    MessageKind.DONE: frozenset({"kind"}),
    MessageKind.RESULT: frozenset({"kind", "report"}),
    MessageKind.SETTINGS: frozenset({"kind", "a", "b"}),
}


def format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ProtocolError(f"non-finite number cannot go on the wire: {value!r}")
    return format(value, ".17g")


def _dump(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_dump(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_dump(v) for v in value) + "]"
    raise TypeError(f"cannot put {type(value).__name__} on the wire")


@dataclass(frozen=True)
class Message:
    kind: MessageKind
    index: Optional[int] = None
    sigma: Optional[float] = None
    outcome: Optional[Outcome] = None
    setting: Optional[float] = None
    stream_key: Optional[int] = None
    report: Optional[dict] = None
    a: Optional[float] = None
    b: Optional[float] = None

    @classmethod
    def config(cls, setting: float, stream_key: int) -> "Message":
        return cls(MessageKind.CONFIG, setting=float(setting), stream_key=int(stream_key))

    @classmethod
    def trial(cls, index: int, sigma: float) -> "Message":
        return cls(MessageKind.TRIAL, index=int(index), sigma=float(sigma))

    @classmethod
    def reply(cls, index: int, outcome: Outcome) -> "Message":
        return cls(MessageKind.REPLY, index=int(index), outcome=Outcome(outcome))

    @classmethod
    def done(cls) -> "Message":
        return cls(MessageKind.DONE)

    @classmethod
    def result(cls, report: dict) -> "Message":
        return cls(MessageKind.RESULT, report=dict(report))

    @classmethod
    def settings(cls, a: float, b: float) -> "Message":
        """Central's local record of both configured settings; never sent to a station."""
        return cls(MessageKind.SETTINGS, a=float(a), b=float(b))

    def body(self) -> dict:
        fields = {
            "setting": self.setting,
            "stream_key": self.stream_key,
            "index": self.index,
            "sigma": self.sigma,
            "outcome": self.outcome.wire if self.outcome is not None else None,
            "report": self.report,
            "a": self.a,
            "b": self.b,
        }
        body = {"kind": self.kind.value}
        body.update((key, fields[key]) for key in sorted(SCHEMA[self.kind] - {"kind"}))
        return body

    def to_json(self) -> str:
        return _dump(self.body())

    @classmethod
    def from_json(cls, text: str) -> "Message":
        try:
            body = json.loads(text)
        except json.JSONDecodeError as e:
            raise ProtocolError(f"frame is not JSON: {e}") from e
        if not isinstance(body, dict):
            raise ProtocolError("frame is not a JSON object")
        try:
            kind = MessageKind(body.get("kind"))
        except ValueError:
            raise ProtocolError(f"unknown frame kind {body.get('kind')!r}") from None
        if set(body) != SCHEMA[kind]:
            raise ProtocolError(f"{kind.value} frame has keys {sorted(body)}, expected {sorted(SCHEMA[kind])}")

        try:
            if kind is MessageKind.CONFIG:
                return cls.config(_number(body["setting"]), _integer(body["stream_key"]))
            if kind is MessageKind.TRIAL:
                return cls.trial(_integer(body["index"]), _number(body["sigma"]))
            if kind is MessageKind.REPLY:
                return cls.reply(_integer(body["index"]), Outcome.from_wire(body["outcome"]))
            if kind is MessageKind.RESULT:
                if not isinstance(body["report"], dict):
                    raise ProtocolError("result frame carries no report object")
                return cls.result(body["report"])
            if kind is MessageKind.SETTINGS:
                return cls.settings(_number(body["a"]), _number(body["b"]))
        except TypeError as e:
            raise ProtocolError(f"malformed {kind.value} frame: {e}") from e
        return cls.done()


def _integer(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProtocolError(f"expected an integer, got {value!r}")
    return value


def _number(value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProtocolError(f"expected a number, got {value!r}")
    return float(value)


def encode_frame(message: Message, max_bytes: int = MAX_FRAME_BYTES) -> bytes:
    payload = message.to_json().encode("utf-8")
    if len(payload) > max_bytes:
        raise TransportError(f"{message.kind.value} frame of {len(payload)} bytes exceeds the {max_bytes}-byte limit")
    return HEADER.pack(len(payload)) + payload


def frame_text(frame: bytes) -> str:
    """The JSON text of a whole frame, header checked and stripped."""
    if len(frame) < HEADER.size:
        raise TransportError(f"truncated frame header ({len(frame)} bytes)")
    (length,) = HEADER.unpack_from(frame)
    if length != len(frame) - HEADER.size:
        raise TransportError(f"frame header says {length} bytes, body has {len(frame) - HEADER.size}")
    try:
        return frame[HEADER.size:].decode("utf-8")
    except UnicodeDecodeError as e:
        raise ProtocolError(f"frame is not UTF-8: {e}") from e


def decode_frame(frame: bytes) -> Message:
    return Message.from_json(frame_text(frame))
