"""
Auditing and replaying transcripts.

verify_locality checks every frame of links A and B against the settings
Central noted on link C before the session started: each link's Config
must carry that link's own setting, every frame must match the exact
schema of its kind and travel in the direction that kind may travel, and
no numeric field other than index, sigma and stream_key may carry the
other station's setting as written on the wire.
"""

import re
from typing import Optional

from chameleon.analysis.estimators import CorrelationReport
from chameleon.errors import ProtocolError
from chameleon.netsim.roles import Central, Role
from chameleon.netsim.transcript import Transcript
from chameleon.netsim.wire import MessageKind, format_float

_ROLE_BY_LINK = {"A": Role.STATION_A, "B": Role.STATION_B}
_OTHER_LINK = {"A": "B", "B": "A"}
_DIRECTION_OF = {
    MessageKind.CONFIG: "to_station",
    MessageKind.TRIAL: "to_station",
    MessageKind.DONE: None,
    MessageKind.REPLY: "to_central",
}
# "key":number pairs anywhere in a frame's text
_NUMERIC_FIELD = re.compile(r'"([^"\\]+)"\s*:\s*(-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)')
_UNRELATED_FIELDS = frozenset({"index", "sigma", "stream_key"})


def _numeric_tokens(text: str) -> set[str]:
    return {value for key, value in _NUMERIC_FIELD.findall(text) if key not in _UNRELATED_FIELDS}


def _configured_settings(transcript: Transcript) -> Optional[dict[str, str]]:
    """Setting token per station link from the single local settings frame, or None."""
    ledger = []
    for captured in transcript:
        if captured.link != "C":
            continue
        try:
            message = captured.message
        except ProtocolError:
            return None
        if message.kind is MessageKind.SETTINGS:
            if captured.direction != "local":
                return None
            ledger.append(message)
    if len(ledger) != 1:
        return None
    return {"A": format_float(ledger[0].a), "B": format_float(ledger[0].b)}


def verify_locality(transcript: Transcript) -> bool:
    station_frames = [f for f in transcript if f.link in _ROLE_BY_LINK]
    if not station_frames:
        return True
    settings = _configured_settings(transcript)
    if settings is None:
        return False

    for captured in station_frames:
        try:
            message = captured.message
        except ProtocolError:
            return False
        expected = _DIRECTION_OF.get(message.kind, "")
        if expected == "" or (expected is not None and captured.direction != expected):
            return False
        if message.kind is MessageKind.CONFIG and format_float(message.setting) != settings[captured.link]:
            return False

        remote = settings[_OTHER_LINK[captured.link]]
        # equal settings cannot be told apart on the wire
        if remote != settings[captured.link] and remote in _numeric_tokens(captured.frame):
            return False
    return True


def replay(transcript: Transcript) -> CorrelationReport:
    """Recompute the report from the captured Trial and Reply frames alone."""
    central = Central()
    for captured in transcript:
        role = _ROLE_BY_LINK.get(captured.link)
        if role is None:
            continue
        message = captured.message
        if message.kind is MessageKind.TRIAL and captured.direction == "to_station":
            central.expect(role, message.index)
        elif message.kind is MessageKind.REPLY and captured.direction == "to_central":
            central.accept(role, message.index, message.outcome)
    return central.report()
