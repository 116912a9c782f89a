"""Delocalized randomness sources.

The central object is the essential decomposition of one side of a bipartite
state: the minimal central projectors of the local commutant
``{M : [M (x) 1, rho] = 0}``, each typed as

* type I    - the block's local commutant is trivial (only unitaries act),
* type II   - the block is locally uniform and uncorrelated, ``pi (x) sigma``,
* factorized - neither; the commutant is ``M_m (x) 1_n`` with ``m, n > 1``.

Cutting both sides by their essential decompositions gives the delocalized
catalytic decomposition (DCD) and from it the DREO and the delocalized
catalytic entropies.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from catrand.errors import ClassificationError, DimensionError, InvalidStateError
from catrand.linalg import (
    DEFAULT_TOL,
    eig_hermitian_grouped,
    partial_trace,
    permute_subsystems,
    support_isometry,
)
from catrand.states import (
    STATE_TOL,
    DensityOperator,
    SuperselectionStructure,
    as_ssr,
    off_sector_norm,
    renyi_entropy,
)

STRICT = "strict"
EXTENDED = "extended"


class BlockType(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    FACTORIZED = "factorized"


@dataclass(frozen=True)
class BipartiteState:
    state: DensityOperator
    dim_a: int
    dim_b: int
    ssr_a: Optional[SuperselectionStructure] = None
    ssr_b: Optional[SuperselectionStructure] = None

    def __post_init__(self):
        if not isinstance(self.state, DensityOperator):
            object.__setattr__(self, "state", DensityOperator(self.state))
        object.__setattr__(self, "ssr_a", as_ssr(self.ssr_a))
        object.__setattr__(self, "ssr_b", as_ssr(self.ssr_b))
        if self.dim_a * self.dim_b != self.state.dim:
            raise DimensionError(f"{self.dim_a} x {self.dim_b} does not factor a {self.state.dim}-dim state")
        for side, ssr in (("A", self.ssr_a), ("B", self.ssr_b)):
            if ssr is None:
                continue
            if ssr.dim != self.side_dim(side):
                raise InvalidStateError(f"side {side} sectors {ssr.sector_dims} do not match its dimension")
            m = _side_first(self.matrix, self.dim_a, self.dim_b, side)
            lifted = SuperselectionStructure(tuple(d * self.other_dim(side) for d in ssr.sector_dims))
            if off_sector_norm(m, lifted) > STATE_TOL:
                raise InvalidStateError(f"state is not block-diagonal over the sectors of side {side}")

    @property
    def matrix(self) -> np.ndarray:
        return self.state.matrix

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    def side_dim(self, side: str) -> int:
        return self.dim_a if _side(side) == "A" else self.dim_b

    def other_dim(self, side: str) -> int:
        return self.dim_b if _side(side) == "A" else self.dim_a

    def ssr(self, side: str):
        return self.ssr_a if _side(side) == "A" else self.ssr_b

    def marginal(self, side: str) -> np.ndarray:
        return partial_trace(self.matrix, self.dims, [0 if _side(side) == "A" else 1])

    @classmethod
    def product(cls, rho_a, rho_b, **kw) -> "BipartiteState":
        a = rho_a.matrix if isinstance(rho_a, DensityOperator) else np.asarray(rho_a)
        b = rho_b.matrix if isinstance(rho_b, DensityOperator) else np.asarray(rho_b)
        return cls(DensityOperator(np.kron(a, b)), a.shape[0], b.shape[0], **kw)


def _side(side: str) -> str:
    s = str(side).upper()
    if s not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return s


def _side_first(m, dim_a, dim_b, side):
    """The state's matrix reordered so that ``side`` is the left factor."""
    if _side(side) == "A":
        return np.asarray(m)
    return permute_subsystems(m, (dim_a, dim_b), (1, 0))


def hermitian_basis(d: int) -> np.ndarray:
    """HS-orthonormal real basis of the d x d Hermitian matrices, shape (d*d, d, d)."""
    out = []
    for j in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[j, j] = 1
        out.append(e)
    s = 1 / np.sqrt(2)
    for j in range(d):
        for k in range(j + 1, d):
            e = np.zeros((d, d), dtype=complex)
            e[j, k] = e[k, j] = s
            out.append(e)
            f = np.zeros((d, d), dtype=complex)
            f[j, k] = -1j * s
            f[k, j] = 1j * s
            out.append(f)
    return np.array(out)


def _real_nullspace(columns: np.ndarray, cutoff: float) -> np.ndarray:
    """Orthonormal basis (rows) of {x real : columns @ x = 0} for a complex matrix."""
    stacked = np.vstack([columns.real, columns.imag])
    _, s, vh = np.linalg.svd(stacked, full_matrices=True)
    s = np.concatenate([s, np.zeros(vh.shape[0] - s.size)])
    return vh[s <= cutoff]


def _commutant_hermitian(m: np.ndarray, d: int, e: int, tol: float) -> np.ndarray:
    """Hermitian HS-orthonormal basis, shape (k, d, d), of {M : [M (x) 1_e, m] = 0}."""
    basis = hermitian_basis(d)
    t = m.reshape(d, e, d, e)
    left = np.einsum("kxa,abcd->kxbcd", basis, t)
    right = np.einsum("abcd,kcx->kabxd", t, basis)
    cols = (left - right).reshape(len(basis), -1).T
    cutoff = tol * max(float(np.linalg.norm(m)), 1e-300)
    coeffs = _real_nullspace(cols, cutoff)
    return np.einsum("nk,kxy->nxy", coeffs, basis)


@dataclass(frozen=True)
class OperatorAlgebraBasis:
    side: str
    basis: tuple[np.ndarray, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def commutant(rho: BipartiteState, side: str = "A", tol: float = DEFAULT_TOL) -> OperatorAlgebraBasis:
    """Local commutant ``{M : [M (x) 1, rho] = 0}`` on ``side``, as a Hermitian basis."""
    side = _side(side)
    m = _side_first(rho.matrix, rho.dim_a, rho.dim_b, side)
    herm = _commutant_hermitian(m, rho.side_dim(side), rho.other_dim(side), tol)
    return OperatorAlgebraBasis(side, tuple(herm))


def _algebra_rank(mats: np.ndarray, cutoff: float) -> int:
    if len(mats) == 0:
        return 0
    flat = mats.reshape(len(mats), -1)
    s = np.linalg.svd(np.hstack([flat.real, flat.imag]), compute_uv=False)
    return int(np.sum(s > cutoff))


def _center(alg: np.ndarray, rng: np.random.Generator, tol: float) -> np.ndarray:
    """Hermitian basis of the center of the *-algebra spanned by ``alg``."""
    n = len(alg)
    if n <= 1:
        return alg
    cutoff = 10 * tol

    def solve(gens):
        cols = np.stack([np.concatenate([(c @ g - g @ c).ravel() for g in gens]) for c in alg], axis=1)
        coeffs = _real_nullspace(cols, cutoff)
        return np.einsum("nk,kxy->nxy", coeffs, alg)

    if n <= 16:
        return solve(alg)
    gens = np.einsum("gk,kxy->gxy", rng.standard_normal((3, n)), alg)
    cand = solve(gens)
    # Generic elements generate the algebra; confirm rather than assume.
    worst = max((np.linalg.norm(z @ c - c @ z) for z in cand for c in alg), default=0.0)
    if worst > 100 * cutoff:
        cand = solve(alg)
    return cand


def _minimal_central_projectors(center: np.ndarray, dim: int, rng, tol: float, attempts: int = 20):
    if len(center) <= 1:
        return [np.eye(dim, dtype=complex)]
    for _ in range(attempts):
        z = np.einsum("k,kxy->xy", rng.standard_normal(len(center)), center)
        blocks = eig_hermitian_grouped(z, tol)
        vals = np.array([b.value for b in blocks])
        if len(vals) > 1 and np.min(np.diff(vals)) < 10 * tol * max(1.0, np.abs(vals).max()):
            continue
        if len(blocks) == len(center):
            return [b.projector for b in blocks]
    raise ClassificationError("could not separate the minimal central projectors; tolerance too loose?")


@dataclass(frozen=True)
class EssentialBlock:
    projector: np.ndarray
    dim: int
    kind: BlockType
    weight: float
    conditional: DensityOperator  # normalized state of the other side on this block
    extract_dim: int = 1  # m for factorized blocks
    multiplicity: int = 1  # n for factorized blocks
    sector: Optional[int] = None

    @property
    def uniform_dim(self) -> int:
        """Dimension of the uniform factor this block contributes to the DREO."""
        if self.kind is BlockType.TYPE_II:
            return self.dim ** 2
        if self.kind is BlockType.FACTORIZED:
            return self.extract_dim ** 2
        return 1

    @property
    def first_index(self) -> int:
        return int(np.argmax(np.diag(self.projector).real > 1e-6))

    def basis(self) -> np.ndarray:
        vals, vecs = np.linalg.eigh(self.projector)
        return vecs[:, vals > 0.5]


@dataclass(frozen=True)
class EssentialDecomposition:
    side: str
    blocks: tuple[EssentialBlock, ...]
    dim: int
    support: np.ndarray  # projector onto the support of the local marginal

    def kinds(self) -> list[BlockType]:
        return [b.kind for b in self.blocks]

    def projectors(self) -> list[np.ndarray]:
        return [b.projector for b in self.blocks]

    @property
    def has_factorized(self) -> bool:
        return any(b.kind is BlockType.FACTORIZED for b in self.blocks)


_KIND_ORDER = {BlockType.TYPE_I: 0, BlockType.TYPE_II: 1, BlockType.FACTORIZED: 2}


def _sort_blocks(blocks):
    return tuple(sorted(blocks, key=lambda b: (_KIND_ORDER[b.kind], -round(b.weight, 12), b.first_index)))


def essential_decomposition(
    rho: BipartiteState, side: str = "A", tol: float = DEFAULT_TOL, seed: int = 0
) -> EssentialDecomposition:
    """Essential decomposition of ``side``, computed on the support of its marginal.

    Blocks are ordered type I, type II, factorized; then by descending weight,
    then by first computational-basis index.
    """
    side = _side(side)
    rng = np.random.default_rng(seed)
    d, e = rho.side_dim(side), rho.other_dim(side)
    m = _side_first(rho.matrix, rho.dim_a, rho.dim_b, side)
    marginal = partial_trace(m, (d, e), [0])
    v = support_isometry(marginal, tol)
    s = v.shape[1]
    vv = np.kron(v, np.eye(e))
    m_s = vv.conj().T @ m @ vv

    alg = _commutant_hermitian(m_s, s, e, tol)
    cent = _center(alg, rng, tol)
    projs = _minimal_central_projectors(cent, s, rng, tol)
    cutoff = 10 * tol

    blocks = []
    total_dim = 0
    for p_s in projs:
        n = int(round(np.trace(p_s).real))
        restricted = _algebra_rank(np.einsum("kxy,yz->kxz", alg, p_s), cutoff)
        total_dim += restricted
        p = v @ p_s @ v.conj().T
        pp = np.kron(p, np.eye(e))
        piece = pp @ m @ pp
        weight = float(np.trace(piece).real)
        other = partial_trace(piece, (d, e), [1]) / weight
        other = (other + other.conj().T) / 2
        cond = DensityOperator(other / np.trace(other).real, validate=False)
        if restricted == n * n:
            product = np.kron(p / n, other)
            if np.linalg.norm(piece / weight - product) > max(1e-6, 1e3 * tol):
                raise ClassificationError("block has a full local commutant but is not of product form")
            blocks.append(EssentialBlock(p, n, BlockType.TYPE_II, weight, cond))
        elif restricted == 1:
            blocks.append(EssentialBlock(p, n, BlockType.TYPE_I, weight, cond))
        else:
            mm = math.isqrt(restricted)
            if mm * mm != restricted or n % mm:
                raise ClassificationError(
                    f"block of dimension {n} has a {restricted}-dimensional local commutant; "
                    "not type I, type II or a tensor factor - tolerance breakdown?"
                )
            blocks.append(EssentialBlock(p, n, BlockType.FACTORIZED, weight, cond, mm, n // mm))
    if total_dim != len(alg):
        raise ClassificationError(
            f"restricted commutants add up to {total_dim}, commutant has dimension {len(alg)}"
        )
    return EssentialDecomposition(side, _sort_blocks(blocks), d, v @ v.conj().T)


def refine_with_superselection(ess: EssentialDecomposition, ssr) -> EssentialDecomposition:
    """Split type II blocks along superselection sectors.

    Type I and factorized blocks must sit inside one sector.
    """
    ssr = as_ssr(ssr)
    if ssr is None:
        return ess
    if ssr.dim != ess.dim:
        raise DimensionError(f"sectors {ssr.sector_dims} do not match side dimension {ess.dim}")
    qs = ssr.projectors()
    out = []
    for b in ess.blocks:
        pieces = []
        for j, q in enumerate(qs):
            if np.linalg.norm(b.projector @ q - q @ b.projector) > 1e-6:
                raise InvalidStateError("essential block does not commute with a superselection sector")
            piece = b.projector @ q
            r = int(round(np.trace(piece).real))
            if r:
                pieces.append((j, piece, r))
        if b.kind is BlockType.TYPE_II:
            for j, piece, r in pieces:
                out.append(
                    EssentialBlock(piece, r, BlockType.TYPE_II, b.weight * r / b.dim, b.conditional, sector=j)
                )
        else:
            if len(pieces) != 1:
                raise ClassificationError(f"a {b.kind.value} block straddles a superselection sector boundary")
            out.append(
                EssentialBlock(
                    b.projector, b.dim, b.kind, b.weight, b.conditional, b.extract_dim, b.multiplicity, pieces[0][0]
                )
            )
    return EssentialDecomposition(ess.side, _sort_blocks(out), ess.dim, ess.support)


def embed_ssr_as_extension(rho: BipartiteState) -> BipartiteState:
    """Replace A's superselection rule by a classical flag register E_A.

    Returns ``sum_i |i><i|_E (x) (Q_i (x) 1) rho (Q_i (x) 1)`` on ``(E (x) A) (x) B``.
    The flag is classical, so the composite side carries one sector per flag value.
    """
    if rho.ssr_a is None:
        raise InvalidStateError("embed_ssr_as_extension needs a superselection structure on side A")
    k = rho.ssr_a.count
    ext = np.zeros((k * rho.state.dim, k * rho.state.dim), dtype=complex)
    eye_b = np.eye(rho.dim_b)
    for i, q in enumerate(rho.ssr_a.projectors()):
        flag = np.zeros((k, k))
        flag[i, i] = 1
        qq = np.kron(q, eye_b)
        ext += np.kron(flag, qq @ rho.matrix @ qq)
    return BipartiteState(
        DensityOperator(ext),
        k * rho.dim_a,
        rho.dim_b,
        SuperselectionStructure((rho.dim_a,) * k),
        rho.ssr_b,
    )


@dataclass(frozen=True)
class DCDCell:
    i: int
    j: int
    weight: float
    component: DensityOperator


@dataclass(frozen=True)
class DelocalizedCatalyticDecomposition:
    ess_a: EssentialDecomposition
    ess_b: EssentialDecomposition
    cells: tuple[DCDCell, ...]
    dims: tuple[int, int]

    def reconstruct(self) -> np.ndarray:
        return sum(c.weight * c.component.matrix for c in self.cells)


def local_decomposition(rho: BipartiteState, side: str, tol: float = DEFAULT_TOL, mode: str = STRICT, seed: int = 0):
    """Essential decomposition of ``side`` refined by that side's superselection rule."""
    ess = refine_with_superselection(essential_decomposition(rho, side, tol, seed), rho.ssr(side))
    if mode == STRICT and ess.has_factorized:
        bad = next(k for k, b in enumerate(ess.blocks) if b.kind is BlockType.FACTORIZED)
        b = ess.blocks[bad]
        raise ClassificationError(
            f"side {ess.side} block {bad} (dim {b.dim}) is factorized as {b.extract_dim} x {b.multiplicity}; "
            "rerun in extended mode to treat it as a uniform factor"
        )
    if mode not in (STRICT, EXTENDED):
        raise ValueError(f"mode must be 'strict' or 'extended', got {mode!r}")
    return ess


def dcd(rho: BipartiteState, tol: float = DEFAULT_TOL, mode: str = STRICT, seed: int = 0):
    """Delocalized catalytic decomposition; zero-weight cells are omitted."""
    ess_a = local_decomposition(rho, "A", tol, mode, seed)
    ess_b = local_decomposition(rho, "B", tol, mode, seed)
    cells = []
    for i, ba in enumerate(ess_a.blocks):
        for j, bb in enumerate(ess_b.blocks):
            p = np.kron(ba.projector, bb.projector)
            piece = p @ rho.matrix @ p
            w = float(np.trace(piece).real)
            if w <= tol:
                continue
            comp = piece / w
            cells.append(DCDCell(i, j, w, DensityOperator((comp + comp.conj().T) / 2, validate=False)))
    total = sum(c.weight for c in cells)
    if abs(total - 1) > 1e-6:
        raise ClassificationError(f"DCD weights add up to {total}")
    return DelocalizedCatalyticDecomposition(ess_a, ess_b, tuple(cells), rho.dims)


def dreo_spectrum(d: DelocalizedCatalyticDecomposition) -> np.ndarray:
    parts = []
    for c in d.cells:
        t = d.ess_a.blocks[c.i].uniform_dim * d.ess_b.blocks[c.j].uniform_dim
        parts.append(np.full(t, c.weight / t))
    return np.concatenate(parts)


def dreo(d: DelocalizedCatalyticDecomposition) -> DensityOperator:
    """Delocalized randomness-exhausting output, diagonal in the computational basis."""
    return DensityOperator(np.diag(dreo_spectrum(d)))


def delocalized_catalytic_entropy(d: DelocalizedCatalyticDecomposition, alpha: float) -> float:
    return renyi_entropy(dreo_spectrum(d), alpha)


def delocalized_entropy(rho: BipartiteState, alpha: float, tol: float = DEFAULT_TOL, mode: str = STRICT) -> float:
    """Shortcut: ``delocalized_catalytic_entropy(dcd(rho), alpha)``."""
    return delocalized_catalytic_entropy(dcd(rho, tol, mode), alpha)


def is_tq_tq(rho: BipartiteState, tol: float = DEFAULT_TOL) -> bool:
    """True iff neither side admits a nontrivial non-disturbing local projective measurement
    (on the support of its marginal) nor any nontrivial local symmetry."""
    for side in ("A", "B"):
        ess = essential_decomposition(rho, side, tol)
        if len(ess.blocks) != 1:
            return False
        b = ess.blocks[0]
        if not (b.kind is BlockType.TYPE_I or b.dim == 1):
            return False
    return True


def least_disordered_spectrum(rho: BipartiteState, tol: float = DEFAULT_TOL, mode: str = STRICT) -> np.ndarray:
    """Spectrum of the least disordered state on A reachable by using B as an information source.

    Weight-averaged, index-wise sum of the sorted spectra of A conditioned on
    each block of B's essential decomposition.
    """
    ess_b = local_decomposition(rho, "B", tol, mode)
    acc = np.zeros(rho.dim_a)
    for b in ess_b.blocks:
        acc += b.weight * b.conditional.spectrum()
    return np.sort(acc)[::-1]
