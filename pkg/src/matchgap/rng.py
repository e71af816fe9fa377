"""Counter-based random bits.

Every draw is a pure function of (seed, stream, position): stream `i`
position `j` always yields the same 64 bits regardless of evaluation
order, worker count, or platform.  Streams are derived with the
SplitMix64 finalizer, whose avalanche properties are more than adequate
for Monte Carlo work and which vectorizes cleanly over numpy uint64
arrays (unlike the stateful bit generators in numpy.random).
"""

from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_KEYMUL = np.uint64(0xD1342543DE82EF95)

_INV_2_53 = 2.0 ** -53


def mix64(z) -> np.ndarray:
    """SplitMix64 finalizer: a bijective avalanche mix on uint64."""
    with np.errstate(over="ignore"):
        z = np.asarray(z, dtype=np.uint64) + _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def stream_key(seed: int, stream) -> np.ndarray:
    """Derive the 64-bit key of one stream (or an array of streams)."""
    with np.errstate(over="ignore"):
        s = np.uint64(seed) * _KEYMUL
        return mix64(s + mix64(stream))


def uniforms(seed: int, stream: int, count: int, start: int = 0) -> np.ndarray:
    """Uniforms in [0, 1) at positions start .. start+count-1 of a stream."""
    key = stream_key(seed, np.uint64(stream))
    with np.errstate(over="ignore"):
        pos = np.arange(start, start + count, dtype=np.uint64)
        bits = mix64(key + pos * _GAMMA)
    return (bits >> np.uint64(11)).astype(np.float64) * _INV_2_53


def uniform_block(seed: int, streams, count: int) -> np.ndarray:
    """Matrix of uniforms: row k holds positions 0..count-1 of streams[k]."""
    keys = stream_key(seed, np.asarray(streams, dtype=np.uint64))
    with np.errstate(over="ignore"):
        pos = np.arange(count, dtype=np.uint64) * _GAMMA
        bits = mix64(keys[:, None] + pos[None, :])
    return (bits >> np.uint64(11)).astype(np.float64) * _INV_2_53
