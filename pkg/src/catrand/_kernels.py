"""Index-shuffling kernels behind partial trace and partial transpose.

Every operator is viewed as acting on a tripartite space ``a (x) b (x) c``
with the operated-on factor in the middle; multi-party layouts are folded
into that shape by the callers in :mod:`catrand.linalg`.

Two implementations exist with identical signatures: ``*_numpy`` (reshape
and axis juggling) and ``*_numba`` (explicit loops under ``@njit``).  The
public names dispatch on :data:`catrand._config.USE_NUMBA` at call time.
"""
import numpy as np

from catrand import _config


def ptrace_middle_numpy(m, a, b, c):
    t = m.reshape(a, b, c, a, b, c)
    return np.trace(t, axis1=1, axis2=4).reshape(a * c, a * c)


def ptranspose_middle_numpy(m, a, b, c):
    t = m.reshape(a, b, c, a, b, c)
    return np.ascontiguousarray(t.transpose(0, 4, 2, 3, 1, 5)).reshape(a * b * c, a * b * c)


def _ptrace_middle_loops(m, a, b, c):
    out = np.zeros((a * c, a * c), dtype=m.dtype)
    for i in range(a):
        for k in range(c):
            row = i * c + k
            for i2 in range(a):
                for k2 in range(c):
                    col = i2 * c + k2
                    acc = 0.0j
                    for j in range(b):
                        acc += m[(i * b + j) * c + k, (i2 * b + j) * c + k2]
                    out[row, col] = acc
    return out


def _ptranspose_middle_loops(m, a, b, c):
    n = a * b * c
    out = np.empty((n, n), dtype=m.dtype)
    for i in range(a):
        for j in range(b):
            for k in range(c):
                row = (i * b + j) * c + k
                for i2 in range(a):
                    for j2 in range(b):
                        for k2 in range(c):
                            out[row, (i2 * b + j2) * c + k2] = m[(i * b + j2) * c + k, (i2 * b + j) * c + k2]
    return out


if _config.HAVE_NUMBA:
    from numba import njit

    ptrace_middle_numba = njit(cache=_config.ENABLE_JIT_CACHE)(_ptrace_middle_loops)
    ptranspose_middle_numba = njit(cache=_config.ENABLE_JIT_CACHE)(_ptranspose_middle_loops)
else:  # pragma: no cover
    ptrace_middle_numba = _ptrace_middle_loops
    ptranspose_middle_numba = _ptranspose_middle_loops


def ptrace_middle(m, a, b, c):
    m = np.ascontiguousarray(m, dtype=np.complex128)
    if _config.USE_NUMBA:
        return ptrace_middle_numba(m, a, b, c)
    return ptrace_middle_numpy(m, a, b, c)


def ptranspose_middle(m, a, b, c):
    m = np.ascontiguousarray(m, dtype=np.complex128)
    if _config.USE_NUMBA:
        return ptranspose_middle_numba(m, a, b, c)
    return ptranspose_middle_numpy(m, a, b, c)
