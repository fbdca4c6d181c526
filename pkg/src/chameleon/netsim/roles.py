"""
The three netsim roles.

A Station knows exactly one setting, the one its Config frame delivered,
plus the key of its own random stream; it answers each Trial with
direct_trial on σ and its own draw for that trial index. Central knows no
setting at all: it matches replies by trial index and keeps the
coincidence counters. Replay feeds captured frames through the same
Central, so live and replayed reports cannot drift apart.
"""

import logging
import time
from enum import Enum
from typing import Optional

from chameleon.analysis.estimators import CorrelationReport, report_from_counts
from chameleon.errors import ProtocolError, TransportError
from chameleon.netsim.wire import Message, MessageKind, decode_frame, encode_frame
from chameleon.protocols.direct import direct_trial
from chameleon.protocols.records import Outcome
from chameleon.protocols.streams import STATION_1, STATION_2, uniform_draw
from chameleon.utils import normalize_angle

logger = logging.getLogger(__name__)


class Role(str, Enum):
    CENTRAL = "central"
    STATION_A = "a"
    STATION_B = "b"

    @property
    def link(self) -> str:
        return {"central": "C", "a": "A", "b": "B"}[self.value]

    @property
    def station_number(self) -> int:
        if self is Role.CENTRAL:
            raise ValueError("central is not a station")
        return 1 if self is Role.STATION_A else 2

    @property
    def stream(self) -> str:
        return STATION_1 if self.station_number == 1 else STATION_2


STATIONS = (Role.STATION_A, Role.STATION_B)


class Station:
    """
    Request handler for one station. `pinned_setting` makes the station
    refuse a Config for any other setting (a `serve-station --setting`
    process). `fail_after` and `reply_delay` inject failures and slowness.
    """

    def __init__(
        self,
        role: Role,
        pinned_setting: Optional[float] = None,
        fail_after: Optional[int] = None,
        reply_delay: float = 0.0,
    ):
        if role is Role.CENTRAL:
            raise ValueError("a Station needs a station role")
        self.role = role
        self.pinned_setting = None if pinned_setting is None else normalize_angle(pinned_setting)
        self.fail_after = fail_after
        self.reply_delay = reply_delay
        self.setting: Optional[float] = None
        self._stream_key: Optional[int] = None
        self._answered = 0

    def handle(self, message: Message) -> Optional[Message]:
        if message.kind is MessageKind.CONFIG:
            setting = normalize_angle(message.setting)
            if self.pinned_setting is not None and setting != self.pinned_setting:
                raise ProtocolError(
                    f"station {self.role.link} is pinned to {self.pinned_setting!r}, config asked for {setting!r}"
                )
            self.setting = setting
            self._stream_key = message.stream_key
            self._answered = 0
            return None
        if message.kind is MessageKind.TRIAL:
            if self.setting is None:
                raise ProtocolError(f"station {self.role.link} got a trial before its config")
            draw = uniform_draw(self._stream_key, message.index)
            outcome = direct_trial(message.sigma, self.setting, self.role.station_number, draw)
            self._answered += 1
            return Message.reply(message.index, outcome)
        if message.kind is MessageKind.DONE:
            return Message.done()
        raise ProtocolError(f"station {self.role.link} cannot handle a {message.kind.value} frame")

    def serve(self, link) -> None:
        """Answer frames on `link` until Done is acknowledged or the link drops."""
        try:
            while True:
                message = decode_frame(link.receive())
                if message.kind is MessageKind.TRIAL and self.fail_after is not None and self._answered >= self.fail_after:
                    logger.info("station %s: dropping link after %d trials", self.role.link, self._answered)
                    return
                reply = self.handle(message)
                if reply is None:
                    continue
                if self.reply_delay:
                    time.sleep(self.reply_delay)
                link.send(encode_frame(reply))
                if reply.kind is MessageKind.DONE:
                    return
        except (TransportError, ProtocolError) as e:
            logger.info("station %s stopped: %s", self.role.link, e)
        finally:
            link.close()


class Central:
    """
    Aggregator. Trials are registered per station with expect(); each reply
    is matched to its index with accept(); a trial counts once both
    stations have answered it.
    """

    def __init__(self):
        self._pending: dict[int, dict[Role, Optional[Outcome]]] = {}
        self.sum_products = 0
        self.n_coincidences = 0
        self.n_trials = 0

    def expect(self, role: Role, index: int) -> None:
        slots = self._pending.setdefault(index, {})
        if role in slots:
            raise ProtocolError(f"trial {index} sent twice to station {role.link}")
        slots[role] = None

    def accept(self, role: Role, index: int, outcome: Outcome) -> None:
        slots = self._pending.get(index)
        if slots is None or role not in slots:
            raise ProtocolError(f"station {role.link} replied to unknown trial {index}")
        if slots[role] is not None:
            raise ProtocolError(f"duplicate reply from station {role.link} for trial {index}")
        slots[role] = Outcome(outcome)
        if len(slots) == len(STATIONS) and all(o is not None for o in slots.values()):
            del self._pending[index]
            o1, o2 = int(slots[Role.STATION_A]), int(slots[Role.STATION_B])
            self.sum_products += o1 * o2
            self.n_coincidences += int(o1 != 0 and o2 != 0)
            self.n_trials += 1

    def report(self) -> CorrelationReport:
        if self._pending:
            first = min(self._pending)
            raise ProtocolError(f"{len(self._pending)} trial(s) without both replies, first is trial {first}")
        return report_from_counts(float(self.sum_products), self.n_coincidences, self.n_trials)
