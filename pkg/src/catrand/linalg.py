"""Dense complex linear algebra used throughout the package.

Conventions: computational basis, row-major, leftmost tensor factor most
significant.  Every logarithm elsewhere in the package is base 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from catrand import _kernels
from catrand.errors import DimensionError, NotHermitianError

DEFAULT_TOL = 1e-8


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of any number of operators (or vectors)."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def direct_sum(blocks: Sequence[np.ndarray]) -> np.ndarray:
    """Block-diagonal stacking of square blocks (blocks may differ in size)."""
    blocks = [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks]
    for b in blocks:
        if b.shape[0] != b.shape[1]:
            raise DimensionError(f"direct_sum needs square blocks, got {b.shape}")
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=complex)
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


def _check_dims(m: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d <= 0 for d in dims):
        raise DimensionError(f"subsystem dimensions must be positive: {dims}")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if prod(dims) != m.shape[0]:
        raise DimensionError(f"dims {dims} do not factor a {m.shape[0]}-dimensional operator")
    return dims


def partial_trace(m: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``."""
    m = np.asarray(m, dtype=complex)
    dims = list(_check_dims(m, dims))
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionError(f"keep={keep} out of range for {len(dims)} subsystems")
    out = m
    # Trace from the right so that earlier indices stay valid.
    for idx in reversed(range(len(dims))):
        if idx in keep:
            continue
        a = prod(dims[:idx])
        c = prod(dims[idx + 1:])
        out = _kernels.ptrace_middle(out, a, dims[idx], c)
        del dims[idx]
    return out


def partial_transpose(m: np.ndarray, dims: Sequence[int], which: int) -> np.ndarray:
    """Transpose subsystem ``which`` in the computational basis."""
    m = np.asarray(m, dtype=complex)
    dims = _check_dims(m, dims)
    if not 0 <= which < len(dims):
        raise DimensionError(f"subsystem {which} out of range for dims {dims}")
    return _kernels.ptranspose_middle(m, prod(dims[:which]), dims[which], prod(dims[which + 1:]))


def permute_subsystems(m: np.ndarray, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors of an operator: new factor ``k`` is old factor ``order[k]``."""
    m = np.asarray(m, dtype=complex)
    dims = _check_dims(m, dims)
    n = len(dims)
    t = m.reshape(dims + dims)
    axes = list(order) + [n + o for o in order]
    d = m.shape[0]
    return t.transpose(axes).reshape(d, d)


def is_hermitian(m: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.linalg.norm(m - m.conj().T) <= tol * max(1.0, np.linalg.norm(m))


@dataclass(frozen=True)
class EigenBlock:
    """One eigenvalue group: value, orthogonal projector, rank, and an orthonormal basis."""

    value: float
    projector: np.ndarray
    rank: int
    basis: np.ndarray  # columns span the eigenspace


def group_sorted_values(values: np.ndarray, threshold: float) -> list[list[int]]:
    """Transitively group ascending values whose consecutive gaps are <= threshold."""
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if groups and v - values[groups[-1][-1]] <= threshold:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def eig_hermitian_grouped(m: np.ndarray, tol: float = DEFAULT_TOL) -> list[EigenBlock]:
    """Spectral decomposition with near-degenerate eigenvalues merged.

    Eigenvalues within ``tol * max(1, ||m||_2)`` of a neighbour share a block;
    chains of close values land in a single block.  The block value is the
    mean of its members.  Blocks come back in ascending order of value.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.linalg.norm(m, 2))) if m.size else 1.0
    if np.linalg.norm(m - m.conj().T) > max(tol, 1e-9) * scale * max(1, m.shape[0]):
        raise NotHermitianError("eig_hermitian_grouped needs a Hermitian matrix")
    h = (m + m.conj().T) / 2
    vals, vecs = np.linalg.eigh(h)
    out = []
    for idx in group_sorted_values(vals, tol * scale):
        basis = vecs[:, idx]
        out.append(EigenBlock(float(np.mean(vals[idx])), basis @ basis.conj().T, len(idx), basis))
    return out


def is_unitary(m: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    d = m.shape[0]
    return bool(np.linalg.norm(m.conj().T @ m - np.eye(d)) <= tol * d)


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def max_entangled(dim: int) -> np.ndarray:
    """|phi+> = dim^{-1/2} sum_i |ii>."""
    v = np.zeros(dim * dim, dtype=complex)
    v[:: dim + 1] = 1.0 / np.sqrt(dim)
    return v


def shift(dim: int, power: int = 1) -> np.ndarray:
    """Generalized cyclic shift sum_k |k+power mod dim><k|."""
    z = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        z[(k + power) % dim, k] = 1.0
    return z


def support_isometry(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Columns: orthonormal basis of the range of a PSD matrix."""
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    cut = tol * max(1.0, float(np.max(np.abs(vals))) if vals.size else 1.0)
    return vecs[:, vals > cut]


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def sector_projectors(sector_dims: Sequence[int]) -> list[np.ndarray]:
    """Diagonal projectors onto consecutive computational-basis sectors."""
    n = sum(sector_dims)
    out = []
    at = 0
    for d in sector_dims:
        p = np.zeros((n, n), dtype=complex)
        p[at:at + d, at:at + d] = np.eye(d)
        out.append(p)
        at += d
    return out


CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
