"""Counter-based random bit streams shared by every simulation backend.

All randomness in this package derives from a stateless keyed hash:
``(seed, stream kind, stream index, draw index) -> uint64``.  Coupled
processes replay identical jump trials by construction, and any stream can
be regenerated from scratch at any time.

Two implementations of the hash core exist: a numba ``@njit`` one operating
on wrapping uint64, and a pure-Python one using masked ints.  The active
backend is chosen at import time from the ``TASEP_WALL_NUMBA`` environment
variable ("0"/"false"/"off" selects the pure numpy/Python path).  Both
produce bit-identical streams; ``tests/test_bits.py`` asserts parity.
"""

import math
import os

__all__ = [
    "NUMBA_ENABLED",
    "maybe_njit",
    "mix64",
    "stream_key",
    "uniform_draw",
    "exp_gap",
    "split_seed",
    "KIND_SITE",
    "KIND_LABEL",
    "KIND_INIT",
]

_flag = os.environ.get("TASEP_WALL_NUMBA", "1").strip().lower()
NUMBA_ENABLED = _flag not in ("0", "false", "off", "no")

# Stream kinds.  Site streams drive the graphical construction and are the
# ones shared between coupled processes; label streams drive the law-equal
# per-particle samplers; init streams draw Bernoulli initial conditions.
KIND_SITE = 1
KIND_LABEL = 2
KIND_INIT = 3

_GOLD = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1
_INV53 = 2.0 ** -53


def maybe_njit(*args, **kwargs):
    """``numba.njit`` when the numba backend is active, identity otherwise."""
    if NUMBA_ENABLED:
        import numba

        return numba.njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def deco(fn):
        return fn

    return deco


if NUMBA_ENABLED:
    import numba
    import numpy as _np

    _U = _np.uint64
    _uGOLD = _U(_GOLD)
    _uM1 = _U(_M1)
    _uM2 = _U(_M2)

    @numba.njit(numba.uint64(numba.uint64), inline="always", cache=True)
    def mix64(z):
        z ^= z >> _U(30)
        z *= _uM1
        z ^= z >> _U(27)
        z *= _uM2
        z ^= z >> _U(31)
        return z

    @numba.njit(numba.uint64(numba.int64, numba.int64, numba.int64),
                inline="always", cache=True)
    def stream_key(seed, kind, index):
        k = mix64(_U(seed) ^ (_U(kind) * _uM2))
        return mix64(k ^ (_U(index) * _uM1))

    @numba.njit(numba.float64(numba.uint64, numba.int64),
                inline="always", cache=True)
    def uniform_draw(key, i):
        z = mix64(key + _U(i) * _uGOLD)
        return (_np.float64(z >> _U(11)) + 0.5) * _INV53

    @numba.njit(numba.float64(numba.uint64, numba.int64),
                inline="always", cache=True)
    def exp_gap(key, i):
        z = mix64(key + _U(i) * _uGOLD)
        return -math.log((_np.float64(z >> _U(11)) + 0.5) * _INV53)

    @numba.njit(numba.int64(numba.int64, numba.int64), inline="always",
                cache=True)
    def split_seed(seed, index):
        return numba.int64(mix64(_U(seed) + _U(index) * _uGOLD) >> _U(1))

else:

    def mix64(z):
        z = int(z) & _MASK
        z = (z ^ (z >> 30)) * _M1 & _MASK
        z = (z ^ (z >> 27)) * _M2 & _MASK
        return z ^ (z >> 31)

    def stream_key(seed, kind, index):
        k = mix64((int(seed) & _MASK) ^ ((int(kind) * _M2) & _MASK))
        return mix64(k ^ ((int(index) * _M1) & _MASK))

    def uniform_draw(key, i):
        z = mix64((int(key) + int(i) * _GOLD) & _MASK)
        return ((z >> 11) + 0.5) * _INV53

    def exp_gap(key, i):
        z = mix64((int(key) + int(i) * _GOLD) & _MASK)
        return -math.log(((z >> 11) + 0.5) * _INV53)

    def split_seed(seed, index):
        return mix64((int(seed) + int(index) * _GOLD) & _MASK) >> 1
