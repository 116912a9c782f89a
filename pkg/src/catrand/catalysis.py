"""Constructing and verifying catalysis.

Covers catalytic unitaries and compatibility, definition-level checks of the
catalyst-invariance conditions, the DREO-achieving plan for delocalized
sources, dynamical catalysis of channels, classical catalytic permutations,
randomness chains and the no-stealth check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from catrand.bipartite import (
    BipartiteState,
    BlockType,
    DelocalizedCatalyticDecomposition,
    EssentialDecomposition,
    delocalized_entropy,
)
from catrand.channels import QuantumChannel
from catrand.errors import (
    ClassificationError,
    DimensionError,
    InvalidObjectError,
    NotCatalyticError,
    ResourceCapError,
)
from catrand.linalg import (
    is_unitary,
    max_entangled,
    partial_trace,
    partial_transpose,
    permute_subsystems,
)
from catrand.sampling import haar_unitary, random_density, random_pure_state, rng_from
from catrand.states import (
    DensityOperator,
    SuperselectionStructure,
    catalytic_decomposition,
    renyi_entropy,
    reo,
    von_neumann_entropy,
)

UNITARY_TOL = 1e-9
CHAIN_DIM_CAP = 64
OUTPUT_MATRIX_CAP = 1024


def _check_unitary(u: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (int(np.prod(dims)),) * 2:
        raise DimensionError(f"unitary of shape {u.shape} does not act on dims {tuple(dims)}")
    if not is_unitary(u, UNITARY_TOL):
        raise InvalidObjectError("operator is not unitary")
    return u


def is_catalytic_unitary(u: np.ndarray, dims: Sequence[int], tol: float = UNITARY_TOL) -> bool:
    """True iff the partial transpose of ``u`` on the catalyst (second) factor is unitary."""
    u = _check_unitary(u, dims)
    return is_unitary(partial_transpose(u, dims, 1), tol)


def _sigma_matrix(sigma) -> np.ndarray:
    return sigma.matrix if isinstance(sigma, DensityOperator) else np.asarray(sigma, dtype=complex)


def is_compatible(u: np.ndarray, sigma_b, dims: Sequence[int], tol: float = UNITARY_TOL) -> bool:
    """True iff ``[u, 1 (x) sigma] = 0``; only defined for catalytic ``u``."""
    if not is_catalytic_unitary(u, dims):
        raise NotCatalyticError("compatibility is only defined for catalytic unitaries")
    s = np.kron(np.eye(dims[0]), _sigma_matrix(sigma_b))
    return bool(np.linalg.norm(u @ s - s @ u) <= tol)


def induced_map(u: np.ndarray, sigma_b, dims: Sequence[int]) -> QuantumChannel:
    """Channel on A: rho -> Tr_B[u (rho (x) sigma) u^dag]."""
    da, db = dims
    u = _check_unitary(u, dims)
    vals, vecs = np.linalg.eigh(_sigma_matrix(sigma_b))
    t = u.reshape(da, db, da, db)
    kraus = []
    for s, v in zip(vals, vecs.T):
        if s <= 1e-14:
            continue
        # (1 (x) <b|) u (1 (x) |v>)
        kv = np.einsum("abcd,d->abc", t, v)
        for b in range(db):
            kraus.append(np.sqrt(s) * kv[:, b, :])
    return QuantumChannel.from_kraus(kraus)


def catalyst_after(u: np.ndarray, rho_a, sigma_b, dims: Sequence[int]) -> np.ndarray:
    """Tr_A[u (rho (x) sigma) u^dag]."""
    joint = u @ np.kron(_sigma_matrix(rho_a), _sigma_matrix(sigma_b)) @ u.conj().T
    return partial_trace(joint, dims, [1])


@dataclass(frozen=True)
class CatalysisReport:
    passed: bool
    product_deviation: float  # max ||Tr_A u(rho (x) sigma)u^dag - sigma|| over product inputs
    correlated_deviation: float  # same with a reference R correlated to A
    samples: int
    tol: float

    @property
    def max_deviation(self) -> float:
        return max(self.product_deviation, self.correlated_deviation)

    @property
    def pictures_agree(self) -> bool:
        return (self.product_deviation <= self.tol) == (self.correlated_deviation <= self.tol)


def verify_catalysis(u: np.ndarray, sigma_b, dims: Sequence[int], samples: int = 20, seed=0,
                     tol: float = 1e-9) -> CatalysisReport:
    """Check catalyst invariance on random product inputs and on full-rank inputs correlated with a reference."""
    rng = rng_from(seed)
    da, db = dims
    u = _check_unitary(u, dims)
    s = _sigma_matrix(sigma_b)
    prod_dev = corr_dev = 0.0
    big = np.kron(np.eye(da), u)  # acts on R (x) A (x) B, with R a copy of A
    for _ in range(samples):
        rho = random_density(da, rng).matrix
        prod_dev = max(prod_dev, float(np.linalg.norm(catalyst_after(u, rho, s, dims) - s)))
        rho_ra = random_density(da * da, rng).matrix
        joint = big @ np.kron(rho_ra, s) @ big.conj().T
        rb = partial_trace(joint, (da, da, db), [0, 2])
        want = np.kron(partial_trace(rho_ra, (da, da), [0]), s)
        corr_dev = max(corr_dev, float(np.linalg.norm(rb - want)))
    return CatalysisReport(prod_dev <= tol and corr_dev <= tol, prod_dev, corr_dev, samples, tol)


def can_generate_randomness(ch: QuantumChannel, tol: float = 1e-9) -> bool:
    """True iff the channel applied to half of a maximally entangled state gives a mixed output."""
    vals = np.linalg.eigvalsh(ch.choi / np.trace(ch.choi).real)
    return bool(np.count_nonzero(vals > tol) > 1)


@dataclass(frozen=True)
class CompatibilityVerdict:
    verdict: str  # "compatible", "up_to_local_unitary", "incompatible"
    alignment: Optional[np.ndarray]  # V with catalyst output = V sigma V^dag, when unique up to phases
    alignment_unique: bool
    panel_deviation: float


def compatibility_up_to_local_unitary(u: np.ndarray, sigma_b, dims: Sequence[int], panel: int = 10, seed=0,
                                      tol: float = 1e-8) -> CompatibilityVerdict:
    """Is the catalyst returned up to a fixed local unitary on B, whatever the input?

    The alignment V is read off a maximally mixed probe and validated on a
    panel of random inputs.  With a degenerate catalyst spectrum V is not
    unique and only the verdict is reported.
    """
    rng = rng_from(seed)
    da, db = dims
    s = _sigma_matrix(sigma_b)
    probe = catalyst_after(u, np.eye(da) / da, s, dims)
    dev = max(float(np.linalg.norm(catalyst_after(u, random_density(da, rng).matrix, s, dims) - probe))
              for _ in range(panel))
    if float(np.linalg.norm(probe - s)) <= tol and dev <= tol:
        return CompatibilityVerdict("compatible", np.eye(db, dtype=complex), True, dev)
    vp, ep = np.linalg.eigh(probe)
    vs, es = np.linalg.eigh(s)
    if dev > tol or np.abs(vp - vs).max() > tol:
        return CompatibilityVerdict("incompatible", None, False, dev)
    unique = bool(np.min(np.diff(vs), initial=np.inf) > tol)
    v = ep @ es.conj().T if unique else None
    return CompatibilityVerdict("up_to_local_unitary", v, unique, dev)


# --- delocalized catalysis -------------------------------------------------

@dataclass(frozen=True)
class CatalysisPlan:
    u0: np.ndarray  # on A0 (x) B0
    u1: np.ndarray  # on A1 (x) B1
    dims: tuple[int, int, int, int]  # (dim A0, dim B0, dim A1, dim B1)
    target_prep: str = "zero"  # pure input |0><0| on A0 (x) A1

    def __post_init__(self):
        a0, b0, a1, b1 = self.dims
        for u, d in ((self.u0, (a0, b0)), (self.u1, (a1, b1))):
            if not is_catalytic_unitary(u, d):
                raise NotCatalyticError("plan unitaries must be catalytic")

    @property
    def dim_a(self) -> tuple[int, int]:
        return (self.dims[0], self.dims[2])


def _plan_unitary(ess: EssentialDecomposition) -> tuple[np.ndarray, int]:
    blocks_i = [b for b in ess.blocks if b.kind is BlockType.TYPE_I]
    blocks_ii = [b for b in ess.blocks if b.kind is BlockType.TYPE_II]
    if any(b.kind is BlockType.FACTORIZED for b in ess.blocks):
        raise ClassificationError("the DREO construction needs a strict-mode decomposition")
    dim_a = len(blocks_i) + sum(b.dim ** 2 for b in blocks_ii)
    d = ess.dim
    idx = np.arange(dim_a)

    def z(power):
        m = np.zeros((dim_a, dim_a), dtype=complex)
        m[(idx + power) % dim_a, idx] = 1
        return m

    u = np.kron(np.eye(dim_a), np.eye(d) - ess.support)
    for i, b in enumerate(blocks_i):
        u += np.kron(z(i), b.projector)
    offset = len(blocks_i)
    for b in blocks_ii:
        n = b.dim
        basis = b.basis()
        omega = np.exp(2j * np.pi / n)
        for j in range(n):
            for k in range(n):
                e = omega ** (j * k) / np.sqrt(n) * np.outer(basis[:, j], basis[:, k].conj())
                u += np.kron(z(offset + j * n + k), e)
        offset += n * n
    return u, dim_a


def construct_dreo_plan(d: DelocalizedCatalyticDecomposition) -> CatalysisPlan:
    """Catalysis unitaries whose output on |0>|0> has the DREO spectrum.

    Each side gets ``sum_I Z^i (x) P_i + sum_II sum_jk Z^(S_i + j n_i + k) (x) E_jk``
    with ``E_jk = w^(jk) n_i^(-1/2) |m_j><m_k|`` on the block and Z the cyclic
    shift on a register of dimension ``|I| + sum_II n_i^2``.
    """
    u0, a0 = _plan_unitary(d.ess_a)
    u1, a1 = _plan_unitary(d.ess_b)
    return CatalysisPlan(u0, u1, (a0, d.dims[0], a1, d.dims[1]))


def identity_plan(dim_b0: int, dim_b1: int, dim_a0: int = 1, dim_a1: int = 1) -> CatalysisPlan:
    return CatalysisPlan(np.eye(dim_a0 * dim_b0, dtype=complex), np.eye(dim_a1 * dim_b1, dtype=complex),
                         (dim_a0, dim_b0, dim_a1, dim_b1))


@dataclass(frozen=True)
class ExecutionResult:
    output: Optional[DensityOperator]  # state on A0 (x) A1; None above the size cap
    output_spectrum: np.ndarray
    catalyst_after: DensityOperator
    deviation: float

    def entropy(self, alpha: float) -> float:
        return renyi_entropy(self.output_spectrum, alpha)

    def __iter__(self):
        return iter((self.output, self.catalyst_after, self.deviation))


def _apply_local_pair(u0, u1, vec, a0, a1, b0, b1):
    """(u0 (x) u1) on a vector ordered (A0, A1, B0, B1)."""
    x = vec.reshape(a0, a1, b0, b1).transpose(0, 2, 1, 3).reshape(a0 * b0, a1 * b1)
    y = u0 @ x @ u1.T
    return y.reshape(a0, b0, a1, b1).transpose(0, 2, 1, 3).reshape(-1)


def run_delocalized_catalysis(plan: CatalysisPlan, rho_in, sigma: BipartiteState) -> ExecutionResult:
    """Apply ``u0 (x) u1`` to ``rho_in (x) sigma`` and split output from catalyst."""
    a0, b0, a1, b1 = plan.dims
    if (b0, b1) != sigma.dims:
        raise DimensionError(f"plan expects a {b0} x {b1} catalyst, got {sigma.dims}")
    r = _sigma_matrix(rho_in) if rho_in is not None else None
    if r is None or (plan.target_prep == "zero" and rho_in is None):
        r = np.zeros((a0 * a1, a0 * a1), dtype=complex)
        r[0, 0] = 1
    if r.shape != (a0 * a1, a0 * a1):
        raise DimensionError(f"input of shape {r.shape}, plan needs {a0 * a1}")
    rv, re_ = np.linalg.eigh((r + r.conj().T) / 2)
    sv, se = np.linalg.eigh(sigma.matrix)
    cols = []
    for p, x in zip(rv, re_.T):
        if p <= 1e-14:
            continue
        for q, y in zip(sv, se.T):
            if q <= 1e-14:
                continue
            w = _apply_local_pair(plan.u0, plan.u1, np.kron(x, y), a0, a1, b0, b1)
            cols.append(np.sqrt(p * q) * w.reshape(a0 * a1, b0 * b1))
    t = np.stack(cols)  # (n, A, B): output = sum_n t_n t_n^dag, catalyst = sum_n t_n^T conj(t_n)
    cat = np.einsum("nab,nac->bc", t, t.conj())
    cat = (cat + cat.conj().T) / 2
    flat = t.transpose(1, 0, 2).reshape(a0 * a1, -1)
    if a0 * a1 <= OUTPUT_MATRIX_CAP:
        out_m = flat @ flat.conj().T
        out_m = (out_m + out_m.conj().T) / 2
        output = DensityOperator(out_m, validate=False)
        spec = output.spectrum()
    else:
        output = None
        spec = np.clip(np.linalg.eigvalsh(flat.conj().T @ flat)[::-1], 0, None)
    dev = float(np.linalg.norm(cat - sigma.matrix))
    return ExecutionResult(output, spec, DensityOperator(cat, validate=False), dev)


# --- dynamical catalysis ---------------------------------------------------

@dataclass(frozen=True)
class SuperunitaryPair:
    """N -> Ad_post o (N (x) R) o Ad_pre, with pre on A_in B_in and post on A_out B_out."""

    pre: np.ndarray
    post: np.ndarray
    dims_pre: tuple[int, int]
    dims_post: tuple[int, int]

    def __post_init__(self):
        _check_unitary(self.pre, self.dims_pre)
        _check_unitary(self.post, self.dims_post)

    @classmethod
    def from_plan(cls, plan: CatalysisPlan) -> "SuperunitaryPair":
        """Read a delocalized plan on a Choi state (output, input copy) as a superunitary.

        The output-side unitary becomes ``post``; the input-copy unitary is the
        transpose of ``pre``.
        """
        a0, b0, a1, b1 = plan.dims
        return cls(plan.u1.T.copy(), plan.u0, (a1, b1), (a0, b0))


def _choi_pair_ordering(j_n, j_r, dims_n, dims_r):
    """J^N (x) J^R reordered to (A_out, B_out, A_in, B_in)."""
    ao, ai = dims_n
    bo, bi = dims_r
    return permute_subsystems(np.kron(j_n, j_r), (ao, ai, bo, bi), (0, 2, 1, 3))


def _joint_choi(pair: SuperunitaryPair, n: QuantumChannel, r: QuantumChannel) -> tuple[np.ndarray, tuple]:
    ai, bi = pair.dims_pre
    ao, bo = pair.dims_post
    if (n.dim_in, n.dim_out, r.dim_in, r.dim_out) != (ai, ao, bi, bo):
        raise DimensionError("channel dimensions do not match the superunitary")
    w = np.kron(pair.post, pair.pre.T)
    j = _choi_pair_ordering(n.choi, r.choi, (ao, ai), (bo, bi))
    return w @ j @ w.conj().T, (ao, bo, ai, bi)


def dynamical_catalysis_apply(pair: SuperunitaryPair, n: QuantumChannel, r: QuantumChannel) -> QuantumChannel:
    """Theta(N) = Tr over the catalyst of the superunitary applied to N (x) R, in Choi form."""
    j, dims = _joint_choi(pair, n, r)
    out = partial_trace(j, dims, [0, 2])
    out = (out + out.conj().T) / 2
    return QuantumChannel.from_choi(out, dims[0], dims[2], subchannel=n.subchannel or r.subchannel)


@dataclass(frozen=True)
class SuperunitaryReport:
    pre_catalytic: bool
    post_catalytic: bool
    commutator_norm: float
    compatible: bool
    catalyst_deviation: float  # definition-level: Tr_A of the joint Choi vs supertrace(N) J^R
    samples: int


def superunitary_checks(pair: SuperunitaryPair, r: QuantumChannel, tol: float = 1e-9, samples: int = 10,
                        seed=0) -> SuperunitaryReport:
    rng = rng_from(seed)
    ai, bi = pair.dims_pre
    ao, bo = pair.dims_post
    w = np.kron(pair.post, pair.pre.T)
    one_jr = permute_subsystems(np.kron(np.eye(ao * ai), r.choi), (ao, ai, bo, bi), (0, 2, 1, 3))
    comm = float(np.linalg.norm(w @ one_jr - one_jr @ w))
    dev = 0.0
    for _ in range(samples):
        # random subchannel A_in -> A_out: a random channel followed by a random survival weight
        v = haar_unitary(ao * ai, rng)[:, :ai]
        k = [v[i * ao:(i + 1) * ao] for i in range(ai)]
        scale = rng.uniform(0.2, 1.0)
        n = QuantumChannel.from_kraus([np.sqrt(scale) * kk for kk in k], subchannel=True)
        j, dims = _joint_choi(pair, n, r)
        left = partial_trace(j, dims, [1, 3])
        dev = max(dev, float(np.linalg.norm(left - np.trace(n.choi).real * r.choi)))
    return SuperunitaryReport(is_catalytic_unitary(pair.pre, pair.dims_pre),
                              is_catalytic_unitary(pair.post, pair.dims_post),
                              comm, comm <= tol, dev, samples)


# --- classical catalysis ---------------------------------------------------

@dataclass(frozen=True)
class ClassicalPermutation:
    """Bijection (i, j) -> (f1, f2) on a product of index sets; table[i, j] = (f1, f2)."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=int)
        if t.ndim != 3 or t.shape[2] != 2:
            raise InvalidObjectError("table must have shape (|I|, |J|, 2)")
        ni, nj = t.shape[:2]
        flat = t[..., 0] * nj + t[..., 1]
        if (t[..., 0] < 0).any() or (t[..., 0] >= ni).any() or (t[..., 1] < 0).any() or (t[..., 1] >= nj).any() \
                or len(np.unique(flat)) != ni * nj:
            raise InvalidObjectError("table is not a bijection")
        object.__setattr__(self, "table", t)

    @classmethod
    def from_families(cls, perms: Sequence[Sequence[int]]) -> "ClassicalPermutation":
        """(i, j) -> (i, perms[i][j]): read i, permute the catalyst conditionally."""
        perms = np.asarray(perms, dtype=int)
        ni, nj = perms.shape
        t = np.stack([np.repeat(np.arange(ni)[:, None], nj, axis=1), perms], axis=2)
        return cls(t)


def classical_catalytic_check(f: ClassicalPermutation, p, tol: float = 1e-12) -> bool:
    """For every i and j: sum over j' with f2(i, j') = j of p_j' equals p_j."""
    p = np.asarray(p, dtype=float)
    ni, nj = f.table.shape[:2]
    if p.size != nj:
        raise DimensionError(f"catalyst distribution has {p.size} entries, table has {nj}")
    for i in range(ni):
        got = np.zeros(nj)
        np.add.at(got, f.table[i, :, 1], p)
        if np.abs(got - p).max() > tol:
            return False
    return True


def all_permutation_families(ni: int, nj: int):
    """Every conditional-permutation family (i, j) -> (i, pi_i(j)); (nj!)^ni of them."""
    perms = list(itertools.permutations(range(nj)))
    for combo in itertools.product(perms, repeat=ni):
        yield ClassicalPermutation.from_families(combo)


# --- randomness chains -----------------------------------------------------

@dataclass(frozen=True)
class ChainTrace:
    steps: tuple[tuple[int, int, float], ...]  # (step, dim, entropy)

    @property
    def entropies(self) -> list[float]:
        return [s[2] for s in self.steps]

    @property
    def dims(self) -> list[int]:
        return [s[1] for s in self.steps]


def simulate_chain(initial: DensityOperator, steps: int, mode: str = "quantum", alpha: float = 1.0,
                   cap: int = CHAIN_DIM_CAP) -> ChainTrace:
    """Feed each system's randomness into the next one, catalytically.

    Quantum mode: the next state is the REO of the current one.  Classical
    mode: the catalyst is a classical system (fully classical sectors), whose
    REO has the same spectrum.
    """
    if mode not in ("quantum", "classical"):
        raise ValueError(f"mode must be 'quantum' or 'classical', got {mode!r}")
    rho = initial
    if mode == "classical":
        rho = DensityOperator(np.diag(np.clip(np.diag(rho.matrix).real, 0, None)), SuperselectionStructure.classical(rho.dim))
    out = [(0, rho.dim, renyi_entropy(rho.spectrum(), alpha))]
    for n in range(1, steps + 1):
        dec = catalytic_decomposition(rho)
        nxt = int(sum(b.rank ** 2 for b in dec.blocks))
        if nxt > cap:
            raise ResourceCapError(f"chain step {n} needs dimension {nxt} > cap {cap}")
        rho = reo(dec)
        if mode == "classical":
            rho = DensityOperator(rho.matrix, SuperselectionStructure.classical(rho.dim))
        out.append((n, rho.dim, renyi_entropy(rho.spectrum(), alpha)))
    return ChainTrace(tuple(out))


# --- no-stealth ------------------------------------------------------------

@dataclass(frozen=True)
class NoStealthReport:
    residual_a: float  # variation of the A A' marginal across the input panel
    residual_b: float  # variation of the B B' (catalyst) marginal
    hides: bool  # never true for mixed inputs
    degenerate: bool  # pure input: nothing to hide
    input_entropy: float
    catalyst_entropy: float  # delocalized catalytic entropy of the pure catalyst
    output_entropy_a: float
    output_entropy_b: float
    panel: int

    @property
    def residual(self) -> float:
        return max(self.residual_a, self.residual_b)

    @property
    def witness(self) -> str:
        return (f"input entropy {self.input_entropy:.6f} > 0 with a pure catalyst (S = {self.catalyst_entropy:.6f}); "
                "catalytic maps are unital and cannot reduce entropy, so the process cannot be hidden")


def no_stealth_check(u0: np.ndarray, u1: np.ndarray, rho: BipartiteState, dim_b: int, panel: int = 10, seed=0,
                     tol: float = 1e-9) -> NoStealthReport:
    """Try to hide rho on A A' by spreading it over u0 on A B and u1 on A' B' with catalyst phi+ on B B'."""
    rng = rng_from(seed)
    da, da2 = rho.dims
    _check_unitary(u0, (da, dim_b))
    _check_unitary(u1, (da2, dim_b))
    phi = max_entangled(dim_b)
    cat = np.outer(phi, phi.conj())
    inputs = [rho.matrix] + [np.outer(v, v.conj()) for v in (random_pure_state(da * da2, rng) for _ in range(panel - 1))]
    # total ordering (A, A', B, B'); u0 acts on (A, B), u1 on (A', B')
    w = permute_subsystems(np.kron(u0, u1), (da, dim_b, da2, dim_b), (0, 2, 1, 3))
    dims = (da, da2, dim_b, dim_b)
    marg_a, marg_b = [], []
    for x in inputs:
        out = w @ np.kron(x, cat) @ w.conj().T
        marg_a.append(partial_trace(out, dims, [0, 1]))
        marg_b.append(partial_trace(out, dims, [2, 3]))
    res_a = max(float(np.linalg.norm(m - marg_a[0])) for m in marg_a)
    res_b = max(float(np.linalg.norm(m - marg_b[0])) for m in marg_b)
    pure = rho.state.is_pure()
    s_in = von_neumann_entropy(rho.state)
    s_cat = delocalized_entropy(BipartiteState(DensityOperator(cat), dim_b, dim_b), 1.0)
    return NoStealthReport(res_a, res_b, bool(pure and max(res_a, res_b) <= tol), pure, s_in, s_cat,
                           von_neumann_entropy(marg_a[0]), von_neumann_entropy(marg_b[0]), panel)
