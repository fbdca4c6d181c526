"""
FrameStatsHook: counts the frames and bytes that crossed each link during
a session and renders them as a short summary once it is over.
"""

from dataclasses import dataclass, field

from chameleon.hooks.base import Hook


@dataclass
class _LinkTotals:
    frames: int = 0
    bytes: int = 0


@dataclass
class FrameStatsHook(Hook):
    _by_link: dict = field(default_factory=dict)

    def on_frame(self, link: str, direction: str, payload: bytes) -> None:
        totals = self._by_link.setdefault((link, direction), _LinkTotals())
        totals.frames += 1
        totals.bytes += len(payload)

    def total_frames(self) -> int:
        return sum(t.frames for t in self._by_link.values())

    def total_bytes(self) -> int:
        return sum(t.bytes for t in self._by_link.values())

    def summary(self) -> str:
        if not self._by_link:
            return "No frames exchanged."

        lines = [
            f"  link {link} {direction}: {totals.frames:,} frame(s), {totals.bytes:,} bytes"
            for (link, direction), totals in sorted(self._by_link.items())
        ]
        lines.append(f"  total: {self.total_frames():,} frame(s), {self.total_bytes():,} bytes")
        return "\n".join(lines)
