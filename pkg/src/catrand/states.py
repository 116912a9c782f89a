"""Single-party randomness sources: catalytic decomposition, catalytic Renyi
entropies, the randomness-exhausting output (REO), and majorization."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from catrand.errors import InvalidStateError
from catrand.linalg import DEFAULT_TOL, eig_hermitian_grouped, sector_projectors

STATE_TOL = 1e-9
ALPHA_LIMIT_WINDOW = 1e-6
# Weights at or below this are treated as exact zeros by the Renyi entropies.
ZERO_WEIGHT = 1e-12


@dataclass(frozen=True)
class SuperselectionStructure:
    """Consecutive computational-basis sectors of the given sizes."""

    sector_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.sector_dims)
        if not dims or any(d <= 0 for d in dims):
            raise InvalidStateError(f"sector dimensions must be positive: {self.sector_dims}")
        object.__setattr__(self, "sector_dims", dims)

    @property
    def dim(self) -> int:
        return sum(self.sector_dims)

    @property
    def count(self) -> int:
        return len(self.sector_dims)

    def projectors(self) -> list[np.ndarray]:
        return sector_projectors(self.sector_dims)

    def slices(self) -> list[slice]:
        out, at = [], 0
        for d in self.sector_dims:
            out.append(slice(at, at + d))
            at += d
        return out

    @classmethod
    def classical(cls, dim: int) -> "SuperselectionStructure":
        return cls((1,) * dim)


def as_ssr(ssr) -> Optional[SuperselectionStructure]:
    if ssr is None or isinstance(ssr, SuperselectionStructure):
        return ssr
    return SuperselectionStructure(tuple(ssr))


def off_sector_norm(m: np.ndarray, ssr: SuperselectionStructure) -> float:
    """Frobenius norm of everything outside the sector-diagonal blocks."""
    masked = np.array(m, dtype=complex, copy=True)
    for s in ssr.slices():
        masked[s, s] = 0
    return float(np.linalg.norm(masked))


@dataclass(frozen=True)
class DensityOperator:
    matrix: np.ndarray
    ssr: Optional[SuperselectionStructure] = None
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidStateError(f"density operator must be square, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidStateError("density operator has non-finite entries")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "ssr", as_ssr(self.ssr))
        if self.validate:
            self._check()

    def _check(self):
        m = self.matrix
        if np.linalg.norm(m - m.conj().T) > STATE_TOL * max(1.0, np.linalg.norm(m)):
            raise InvalidStateError("density operator is not Hermitian")
        if abs(np.trace(m).real - 1.0) > STATE_TOL:
            raise InvalidStateError(f"trace is {np.trace(m).real!r}, expected 1")
        if np.count_nonzero(m - np.diag(np.diag(m))) == 0:
            lowest = float(np.min(np.diag(m).real))
        else:
            lowest = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
        if lowest < -STATE_TOL:
            raise InvalidStateError(f"negative eigenvalue {lowest:.3e}")
        if self.ssr is not None:
            if self.ssr.dim != m.shape[0]:
                raise InvalidStateError(f"sectors {self.ssr.sector_dims} do not add up to dim {m.shape[0]}")
            if off_sector_norm(m, self.ssr) > STATE_TOL:
                raise InvalidStateError("state is not block-diagonal over its superselection sectors")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def spectrum(self) -> np.ndarray:
        """Eigenvalues in descending order, clipped at zero."""
        vals = np.linalg.eigvalsh((self.matrix + self.matrix.conj().T) / 2)[::-1]
        return np.clip(vals, 0.0, None)

    def is_pure(self, tol: float = DEFAULT_TOL) -> bool:
        return bool(np.count_nonzero(self.spectrum() > tol) <= 1)

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        return cls(np.eye(dim) / dim)

    @classmethod
    def diagonal(cls, weights: Sequence[float], ssr=None) -> "DensityOperator":
        return cls(np.diag(np.asarray(weights, dtype=float)), ssr)

    @classmethod
    def pure(cls, vector: np.ndarray) -> "DensityOperator":
        v = np.asarray(vector, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))


@dataclass(frozen=True)
class CatalyticBlock:
    value: float  # eigenvalue lambda_i (per-dimension density)
    projector: np.ndarray
    rank: int
    sector: int


@dataclass(frozen=True)
class CatalyticDecomposition:
    blocks: tuple[CatalyticBlock, ...]
    dim: int

    @property
    def values(self) -> np.ndarray:
        return np.array([b.value for b in self.blocks])

    @property
    def ranks(self) -> np.ndarray:
        return np.array([b.rank for b in self.blocks], dtype=int)


def catalytic_decomposition(sigma: DensityOperator, tol: float = DEFAULT_TOL) -> CatalyticDecomposition:
    """Eigenspaces of ``sigma`` intersected with its superselection sectors.

    Zero-eigenvalue blocks are dropped.  Blocks are ordered by descending
    ``value / rank`` and then by sector index.
    """
    m = sigma.matrix
    ssr = sigma.ssr or SuperselectionStructure((sigma.dim,))
    if off_sector_norm(m, ssr) > STATE_TOL:
        raise InvalidStateError("state is not block-diagonal over the declared sectors")
    blocks = []
    for k, sl in enumerate(ssr.slices()):
        for eb in eig_hermitian_grouped(m[sl, sl], tol):
            if eb.value <= tol:
                continue
            proj = np.zeros_like(m)
            proj[sl, sl] = eb.projector
            blocks.append(CatalyticBlock(eb.value, proj, eb.rank, k))
    blocks.sort(key=lambda b: (-b.value / b.rank, b.sector))
    dec = CatalyticDecomposition(tuple(blocks), sigma.dim)
    total = float(np.sum(dec.values * dec.ranks))
    if abs(total - 1.0) > 1e-6:
        raise InvalidStateError(f"catalytic decomposition weights sum to {total}")
    return dec


def _dispatch_alpha(alpha: float) -> str:
    if alpha < 0 or math.isnan(alpha):
        raise ValueError(f"Renyi order must be non-negative, got {alpha}")
    if math.isinf(alpha):
        return "min"
    if alpha <= ALPHA_LIMIT_WINDOW:
        return "max"
    if abs(alpha - 1.0) <= ALPHA_LIMIT_WINDOW:
        return "vn"
    return "general"


def _bits(x) -> float:
    # Entropies are non-negative; drop rounding noise and the sign of -0.0.
    return max(0.0, float(x))


def catalytic_renyi_entropy(d: CatalyticDecomposition, alpha: float) -> float:
    """Maximum catalytically extractable Renyi-``alpha`` entropy, in bits.

    ``(1-a)^{-1} log2 sum_i lam_i^a r_i^(2-a)``, with closed-form limits at
    ``a -> 0, 1, inf``.
    """
    lam = d.values
    r = d.ranks.astype(float)
    kind = _dispatch_alpha(alpha)
    if kind == "min":
        return _bits(-np.log2(np.max(lam / r)))
    if kind == "max":
        return _bits(np.log2(np.sum(r ** 2)))
    if kind == "vn":
        return _bits(-np.sum(lam * r * np.log2(lam / r)))
    return _bits(np.log2(np.sum(lam ** alpha * r ** (2 - alpha))) / (1 - alpha))


def reo_spectrum(d: CatalyticDecomposition) -> np.ndarray:
    """``lam_i / r_i`` repeated ``r_i^2`` times, in block order."""
    return np.concatenate([np.full(b.rank ** 2, b.value / b.rank) for b in d.blocks])


def reo(d: CatalyticDecomposition) -> DensityOperator:
    """Most disordered state reachable catalytically from a pure input."""
    return DensityOperator(np.diag(reo_spectrum(d)))


def as_probability_vector(p, tol: float = STATE_TOL) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if np.any(p < -tol) or abs(p.sum() - 1.0) > tol * max(1, p.size):
        raise InvalidStateError(f"not a probability vector (sum={p.sum()}, min={p.min() if p.size else 0})")
    return np.clip(p, 0.0, None)


def renyi_entropy(spectrum, alpha: float) -> float:
    """Renyi-``alpha`` entropy in bits of a probability vector."""
    p = np.asarray(spectrum, dtype=float).ravel()
    p = p[p > ZERO_WEIGHT]
    kind = _dispatch_alpha(alpha)
    if kind == "min":
        return _bits(-np.log2(p.max()))
    if kind == "max":
        return _bits(np.log2(p.size))
    if kind == "vn":
        return _bits(-np.sum(p * np.log2(p)))
    return _bits(np.log2(np.sum(p ** alpha)) / (1 - alpha))


def von_neumann_entropy(rho) -> float:
    if isinstance(rho, DensityOperator):
        return renyi_entropy(rho.spectrum(), 1.0)
    vals = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    return renyi_entropy(np.clip(vals, 0, None), 1.0)


def majorizes(p, q, tol: float = STATE_TOL) -> bool:
    """True iff ``p`` majorizes ``q`` (every descending prefix sum of p dominates)."""
    p = np.sort(np.asarray(p, dtype=float).ravel())[::-1]
    q = np.sort(np.asarray(q, dtype=float).ravel())[::-1]
    n = max(p.size, q.size)
    p = np.pad(p, (0, n - p.size))
    q = np.pad(q, (0, n - q.size))
    return bool(np.all(np.cumsum(p) >= np.cumsum(q) - tol))
