"""
Hook interface: observation points around every netsim session.

Hooks sit beside the session loop (logging, frame accounting, ...) and
never change what crosses a link. The transcript is part of the loop
itself, not a hook, so it can't be silently disabled by removing one.
"""

from abc import ABC
from typing import Optional


class Hook(ABC):
    def on_session_start(self, cfg, transport_name: str) -> None:
        pass

    def on_frame(self, link: str, direction: str, payload: bytes) -> None:
        pass

    def on_session_end(self, report, error: Optional[BaseException]) -> None:
        pass
