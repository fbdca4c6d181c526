"""
Transcripts: every frame Central sent or received, in order, with its link
and direction. One captured frame per line when saved (NDJSON), the frame
itself kept as the exact JSON text that crossed the link.
"""

import json
import threading
from collections.abc import Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from chameleon.errors import ProtocolError
from chameleon.netsim.wire import Message

LINKS = ("A", "B", "C")
DIRECTIONS = ("to_station", "to_central", "local")


@dataclass(frozen=True)
class CapturedFrame:
    link: str
    direction: str
    frame: str

    def __post_init__(self):
        if self.link not in LINKS:
            raise ProtocolError(f"unknown link {self.link!r}")
        if self.direction not in DIRECTIONS:
            raise ProtocolError(f"unknown direction {self.direction!r}")

    @property
    def message(self) -> Message:
        return Message.from_json(self.frame)

    def to_json(self) -> str:
        return json.dumps({"link": self.link, "direction": self.direction, "frame": self.frame})


class Transcript:
    def __init__(self, frames=()):
        self._frames: list[CapturedFrame] = list(frames)
        self._lock = threading.Lock()

    def record(self, link: str, direction: str, frame: str) -> None:
        captured = CapturedFrame(link, direction, frame)
        with self._lock:
            self._frames.append(captured)

    @property
    def frames(self) -> tuple[CapturedFrame, ...]:
        with self._lock:
            return tuple(self._frames)

    def __len__(self) -> int:
        return len(self._frames)

    def __iter__(self) -> Iterator[CapturedFrame]:
        return iter(self.frames)

    def __eq__(self, other) -> bool:
        return isinstance(other, Transcript) and self.frames == other.frames

    def to_ndjson(self) -> str:
        return "".join(f.to_json() + "\n" for f in self.frames)

    @classmethod
    def from_ndjson(cls, text: str) -> "Transcript":
        frames = []
        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                entry = json.loads(line)
                frames.append(CapturedFrame(entry["link"], entry["direction"], entry["frame"]))
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise ProtocolError(f"transcript line {number} is malformed: {e}") from e
        return cls(frames)


def save_transcript(transcript: Transcript, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(transcript.to_ndjson(), encoding="utf-8")
    return path


def load_transcript(path: Union[str, Path]) -> Transcript:
    return Transcript.from_ndjson(Path(path).read_text(encoding="utf-8"))
