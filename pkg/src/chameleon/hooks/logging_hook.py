"""
LoggingHook: append one JSON line per session event. Pure observability;
frames are left to the transcript.
"""

import json
import time
from pathlib import Path
from typing import Optional, Union

from chameleon.config import LOG_DIR
from chameleon.hooks.base import Hook


class LoggingHook(Hook):
    def __init__(self, log_dir: Union[str, Path] = LOG_DIR):
        self.log_path = Path(log_dir) / "sessions.jsonl"

    def _append(self, event: dict) -> None:
        self.log_path.parent.mkdir(parents=True, exist_ok=True)
        with self.log_path.open("a") as f:
            f.write(json.dumps(event) + "\n")

    def on_session_start(self, cfg, transport_name: str) -> None:
        self._append(
            {
                "event": "session_start",
                "transport": transport_name,
                "seed": cfg.seed,
                "a": cfg.a,
                "b": cfg.b,
                "n_total": cfg.n_total,
                "timestamp": time.time(),
            }
        )

    def on_session_end(self, report, error: Optional[BaseException]) -> None:
        self._append(
            {
                "event": "session_end",
                "report": report.to_dict() if report is not None else None,
                "error": str(error) if error is not None else None,
                "timestamp": time.time(),
            }
        )
