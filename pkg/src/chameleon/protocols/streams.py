"""
Counter-based random streams.

Every random number the protocols consume is a pure function of
(stream key, trial index): the key is derived once from the master seed
and the stream name, and the draw for trial j is a SplitMix64 hash of
key + (j+1)·γ. Chunks of trials can therefore be generated in any order,
on any worker, or one at a time inside a netsim station, and always come
out identical.
"""

import zlib

import numpy as np

from chameleon.errors import ConfigError

SOURCE = "source"
STATION_1 = "station1"
STATION_2 = "station2"

SEED_LIMIT = 2**64

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_DOUBLE_UNIT = 2.0**-53


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed < SEED_LIMIT:
        raise ConfigError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def _tag(label: str) -> int:
    # stable across processes, unlike hash()
    return zlib.crc32(label.encode("utf-8")) & 0xFFFFFFFF


def derive_stream_key(seed: int, stream: str) -> int:
    """64-bit key of one named stream under a master seed."""
    state = np.random.SeedSequence(_check_seed(seed), spawn_key=(_tag(stream),)).generate_state(1, dtype=np.uint64)
    return int(state[0])


def derive_session_seed(seed: int, label: str, index: int = 0) -> int:
    """Independent master seed for sub-session `index` of a batch (Bell triple, scan point, ...)."""
    state = np.random.SeedSequence(_check_seed(seed), spawn_key=(_tag(label), int(index))).generate_state(
        1, dtype=np.uint64
    )
    return int(state[0])


def uniform_draws(key: int, indices) -> np.ndarray:
    """Uniform doubles in [0, 1), one per trial index, for the stream `key`."""
    counters = np.atleast_1d(np.asarray(indices, dtype=np.uint64))
    # uint64 array arithmetic wraps modulo 2**64, which is what the hash wants
    z = np.uint64(key) + (counters + np.uint64(1)) * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX_1
    z = (z ^ (z >> np.uint64(27))) * _MIX_2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * _DOUBLE_UNIT


def uniform_draw(key: int, index: int) -> float:
    return float(uniform_draws(key, [index])[0])
