import json

import pytest

from chameleon.errors import ProtocolError, TransportError
from chameleon.netsim.wire import HEADER, Message, MessageKind, decode_frame, encode_frame, frame_text
from chameleon.protocols import Outcome
from chameleon.transports import tcp


def test_trial_frame_layout():
    frame = encode_frame(Message.trial(12, 0.1))
    (length,) = HEADER.unpack_from(frame)
    assert length == len(frame) - 4
    assert frame_text(frame) == '{"kind":"trial","index":12,"sigma":0.10000000000000001}'


def test_sigma_survives_the_wire_exactly():
    sigma = 2.0943951023931957
    assert decode_frame(encode_frame(Message.trial(0, sigma))).sigma == sigma


def test_reply_outcomes_on_the_wire():
    for outcome, text in ((Outcome.PLUS, "+1"), (Outcome.MINUS, "-1"), (Outcome.EMPTY, "empty")):
        frame = encode_frame(Message.reply(3, outcome))
        assert json.loads(frame_text(frame))["outcome"] == text
        assert decode_frame(frame).outcome is outcome


def test_trial_with_extra_field_is_rejected():
    with pytest.raises(ProtocolError):
        Message.from_json('{"kind":"trial","index":0,"sigma":0.5,"setting":1.0}')


def test_unknown_kind_and_outcome_are_rejected():
    with pytest.raises(ProtocolError):
        Message.from_json('{"kind":"hello"}')
    with pytest.raises(ProtocolError):
        Message.from_json('{"kind":"reply","index":0,"outcome":"0"}')


def test_index_must_be_an_integer():
    with pytest.raises(ProtocolError):
        Message.from_json('{"kind":"trial","index":1.5,"sigma":0.5}')


def test_frame_limit():
    with pytest.raises(TransportError):
        encode_frame(Message.result({"blob": "x" * 200}), max_bytes=64)


def test_header_mismatch_is_a_transport_error():
    frame = encode_frame(Message.done())
    with pytest.raises(TransportError):
        decode_frame(frame[:-1])


def test_result_frame_carries_report():
    message = Message.from_json(Message.result({"correlation": -0.5, "n_trials": 4}).to_json())
    assert message.kind is MessageKind.RESULT
    assert message.report == {"correlation": -0.5, "n_trials": 4}


def test_settings_frame_layout():
    text = Message.settings(0.25, 1.75).to_json()
    assert text == '{"kind":"settings","a":0.25,"b":1.75}'
    message = Message.from_json(text)
    assert (message.a, message.b) == (0.25, 1.75)


def test_tcp_framing_uses_the_wire_header():
    assert tcp.HEADER is HEADER
