"""
Runtime defaults for the chameleon toolkit.

Experiment parameters (settings, trial counts, seeds) always come from
ExperimentConfig, built by the CLI from flags. What lives here are the
knobs of the plumbing around the experiments: netsim pipelining and
timeouts, framing limits, where session logs go. We load .env here (once,
at import time) so any of them can be overridden locally without
editing code, e.g. CHAMELEON_PIPELINE_WINDOW=256.
"""

import os

from dotenv import load_dotenv

load_dotenv()

# Outstanding Trial frames Central may have in flight per station.
PIPELINE_WINDOW = int(os.getenv("CHAMELEON_PIPELINE_WINDOW", "1024"))
# Seconds a Central read may block before the link is declared lost.
LINK_TIMEOUT = float(os.getenv("CHAMELEON_LINK_TIMEOUT", "30"))
MAX_FRAME_BYTES = int(os.getenv("CHAMELEON_MAX_FRAME_BYTES", "65536"))
LOG_DIR = os.getenv("CHAMELEON_LOG_DIR", os.path.join(".chameleon", "logs"))

# Old protocol inner Riemann-sum resolution (K1, K2).
DEFAULT_K = int(os.getenv("CHAMELEON_DEFAULT_K", "10"))
DEFAULT_N_GRID = 1000
DEFAULT_N_TOTAL = 1_000_000
DEFAULT_POINTER_VALUE = 1.0
