"""
HookManager: runs the registered hooks around each netsim session.

run_session only talks to HookManager, never to individual Hooks, and
calls them in registration order.
"""

from typing import Optional

from chameleon.hooks.base import Hook
from chameleon.hooks.frame_stats_hook import FrameStatsHook
from chameleon.hooks.logging_hook import LoggingHook


class HookManager:
    def __init__(self, hooks: list[Hook]):
        self.hooks = hooks

    def on_session_start(self, cfg, transport_name: str) -> None:
        for hook in self.hooks:
            hook.on_session_start(cfg, transport_name)

    def on_frame(self, link: str, direction: str, payload: bytes) -> None:
        for hook in self.hooks:
            hook.on_frame(link, direction, payload)

    def on_session_end(self, report, error: Optional[BaseException]) -> None:
        for hook in self.hooks:
            hook.on_session_end(report, error)


__all__ = ["Hook", "HookManager", "FrameStatsHook", "LoggingHook"]
