"""Hot inner loops over F_p, with a numba path and a pure-numpy path.

The numba kernels are used when numba imports and the environment variable
``PLANARFIELD_DISABLE_JIT`` is unset (or ``0``).  Both paths return
identical results; ``benchmarks/bench_kernels.py`` compares their speed.

All kernels take contiguous ``int64`` arrays with entries in ``[0, p)``.
"""

import os

import numpy as np

from . import _numpy as numpy_impl

_flag = os.environ.get("PLANARFIELD_DISABLE_JIT", "").strip().lower()
JIT_REQUESTED = _flag in ("", "0", "false", "no")

try:
    from . import _numba as numba_impl
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_impl = None

USE_NUMBA = JIT_REQUESTED and numba_impl is not None
backend = numba_impl if USE_NUMBA else numpy_impl
BACKEND_NAME = "numba" if USE_NUMBA else "numpy"

_INT64_MAX = np.iinfo(np.int64).max


def as_i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def keys_fit(p: int, n: int) -> bool:
    """Whether an n x n matrix over F_p packs into one int64 key."""
    return p ** (n * n) - 1 <= _INT64_MAX


def matmul(A, B, p):
    return backend.matmul(as_i64(A), as_i64(B), p)


def matvec(A, v, p):
    return backend.matvec(as_i64(A), as_i64(v), p)


def rref(M, p):
    return backend.rref(as_i64(M), p)


def inverse(A, p):
    return backend.inverse(as_i64(A), p)


def batch_inverse(Ms, p):
    return backend.batch_inverse(as_i64(Ms), p)


def local_minpolys(A, p):
    return backend.local_minpolys(as_i64(A), p)


def encode_keys(Ms, p):
    return backend.encode_keys(as_i64(Ms), p)


def decode_keys(keys, p, n):
    return backend.decode_keys(as_i64(keys), p, n)


def quotient_keys(D, Yinv, p):
    return backend.quotient_keys(as_i64(D), as_i64(Yinv), p)
