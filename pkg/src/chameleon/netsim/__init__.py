"""
The direct protocol as three communicating roles: Central and two
stations, over pluggable transports, with transcripts that can be saved,
audited for locality and replayed.
"""

from chameleon.netsim.locality import replay, verify_locality
from chameleon.netsim.roles import STATIONS, Central, Role, Station
from chameleon.netsim.session import SessionResult, run_session
from chameleon.netsim.transcript import CapturedFrame, Transcript, load_transcript, save_transcript
from chameleon.netsim.wire import Message, MessageKind, decode_frame, encode_frame

__all__ = [
    "replay", "verify_locality", "STATIONS", "Central", "Role", "Station", "SessionResult", "run_session",
    "CapturedFrame", "Transcript", "load_transcript", "save_transcript",
    "Message", "MessageKind", "decode_frame", "encode_frame",
]
