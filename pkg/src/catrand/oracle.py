"""Brute-force ground truth at small dimension.

These routines never use the closed forms they are meant to check; they
sample or enumerate the operations the closed forms are claims about.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from catrand.bipartite import (
    BipartiteState,
    BlockType,
    dcd,
    essential_decomposition,
    local_decomposition,
)
from catrand.catalysis import construct_dreo_plan
from catrand.linalg import partial_trace
from catrand.sampling import compatible_unitary, haar_unitary, random_unital_channel, rng_from
from catrand.states import DensityOperator, renyi_entropy

DEFAULT_TRIALS = 100
DEFAULT_SEED = 42
ENUMERATION_CAP = 5000


@dataclass(frozen=True)
class TrialReport:
    """Outcome of a randomized check; ``failures`` is empty iff ``max_violation <= tol``."""

    trials: int
    max_violation: float
    failures: tuple[tuple[int, str], ...]
    tol: float
    statistic: float = float("nan")  # check-specific summary, e.g. the minimum displacement

    @property
    def passed(self) -> bool:
        return not self.failures


class _Collector:
    def __init__(self, tol: float):
        self.tol = tol
        self.worst = 0.0
        self.failures: list[tuple[int, str]] = []
        self.count = 0

    def must_fix(self, trial: int, disp: float, what: str):
        self.count += 1
        self.worst = max(self.worst, disp)
        if disp > self.tol:
            self.failures.append((trial, f"{what}: moved by {disp:.3e}"))

    def must_move(self, trial: int, disp: float, threshold: float, what: str):
        # Scaled so that a violation above tol is exactly a displacement below threshold.
        self.count += 1
        v = self.tol * threshold / max(disp, 1e-300)
        self.worst = max(self.worst, v)
        if v > self.tol:
            self.failures.append((trial, f"{what}: moved only {disp:.3e}"))

    def report(self, statistic=float("nan")) -> TrialReport:
        return TrialReport(self.count, self.worst, tuple(self.failures), self.tol, statistic)


def _pure_input_output(u: np.ndarray, sigma: np.ndarray, dim_a: int) -> np.ndarray:
    zero = np.zeros((dim_a, dim_a), dtype=complex)
    zero[0, 0] = 1
    joint = u @ np.kron(zero, sigma) @ u.conj().T
    return partial_trace(joint, (dim_a, sigma.shape[0]), [0])


def _local_achiever(sigma: DensityOperator, dim_a: int):
    """REO-achieving catalysis unitary for a local catalyst, padded to ``dim_a`` if it fits."""
    src = BipartiteState(DensityOperator(np.kron(sigma.matrix, np.ones((1, 1)))), sigma.dim, 1, sigma.ssr, None)
    plan = construct_dreo_plan(dcd(src))
    a0 = plan.dims[0]
    if a0 > dim_a:
        return None
    u = np.eye(dim_a * sigma.dim, dtype=complex)
    n = a0 * sigma.dim
    u[:n, :n] = plan.u0
    return u


def extractable_samples(sigma: DensityOperator, dim_a: int, alphas, trials: int, seed) -> np.ndarray:
    """Rows: S_alpha of the A output for the analytic achiever (if it fits) and ``trials`` sampled compatible unitaries."""
    rng = rng_from(seed)
    rows = []
    ach = _local_achiever(sigma, dim_a)
    us = ([ach] if ach is not None else []) + [compatible_unitary(sigma, dim_a, rng) for _ in range(trials)]
    for u in us:
        out = DensityOperator(_pure_input_output(u, sigma.matrix, dim_a), validate=False).spectrum()
        rows.append([renyi_entropy(out, a) for a in alphas])
    return np.array(rows)


def oracle_max_extractable(sigma: DensityOperator, dim_a: int, alpha: float = 1.0, trials: int = DEFAULT_TRIALS,
                           seed=DEFAULT_SEED) -> float:
    """Best Renyi entropy found on A from a pure input over sampled compatible catalyses."""
    return float(extractable_samples(sigma, dim_a, [alpha], trials, seed)[:, 0].max())


def _displacement(ch, rho: BipartiteState) -> float:
    """|| (N (x) id)(rho) - rho ||_F for a channel N on A."""
    da, db = rho.dims
    t = rho.matrix
    out = np.zeros_like(t)
    for k in ch.kraus_ops():
        kk = np.kron(k, np.eye(db))
        out += kk @ t @ kk.conj().T
    return float(np.linalg.norm(out - t))


def oracle_unital_sensitivity(rho: BipartiteState, trials: int = 50, seed=DEFAULT_SEED,
                              tol: float = 1e-6) -> TrialReport:
    """Random unital channels on A; a TQ-Q side is moved by every one of them."""
    rng = rng_from(seed)
    col = _Collector(tol)
    disps = []
    for t in range(trials):
        d = _displacement(random_unital_channel(rho.dim_a, rng), rho)
        disps.append(d)
        col.must_move(t, d, tol, "random unital channel")
    return col.report(min(disps) if disps else float("nan"))


def _achievable_spectrum(weights, conds, unitaries) -> np.ndarray:
    acc = sum(w * (u @ c @ u.conj().T) for w, c, u in zip(weights, conds, unitaries))
    return np.sort(np.clip(np.linalg.eigvalsh(acc), 0, None))[::-1]


def brute_force_spectra(rho: BipartiteState, trials: int, seed, mode: str = "strict") -> list[np.ndarray]:
    """Output spectra on A from B-conditioned unitaries and unital channels, randomly drawn."""
    rng = rng_from(seed)
    ess = local_decomposition(rho, "B", mode=mode)
    da = rho.dim_a
    out = []
    for _ in range(trials):
        acc = np.zeros((da, da), dtype=complex)
        for b in ess.blocks:
            c = b.conditional.matrix
            if rng.random() < 0.5:
                u = haar_unitary(da, rng)
                acc += b.weight * (u @ c @ u.conj().T)
            else:
                acc += b.weight * random_unital_channel(da, rng).apply(c)
        out.append(np.sort(np.clip(np.linalg.eigvalsh(acc), 0, None))[::-1])
    return out


def oracle_least_disordered(rho: BipartiteState, trials: int = DEFAULT_TRIALS, seed=DEFAULT_SEED,
                            mode: str = "strict") -> np.ndarray:
    """Most ordered A spectrum found by aligning conditional eigenbases (all orderings) and by random actions."""
    ess = local_decomposition(rho, "B", mode=mode)
    da = rho.dim_a
    weights = [b.weight for b in ess.blocks]
    conds = [b.conditional.matrix for b in ess.blocks]
    bases = [np.linalg.eigh(c)[1] for c in conds]
    perms = list(itertools.permutations(range(da)))
    combos = math.factorial(da) ** max(len(conds) - 1, 0)
    rng = rng_from(seed)
    if combos <= ENUMERATION_CAP:
        choices = itertools.product(perms, repeat=max(len(conds) - 1, 0))
    else:
        choices = ([perms[int(rng.integers(len(perms)))] for _ in range(len(conds) - 1)] for _ in range(ENUMERATION_CAP))
    candidates = []
    for choice in choices:
        us = [bases[0].conj().T]
        for basis, p in zip(bases[1:], choice):
            us.append(np.eye(da)[list(p)] @ basis.conj().T)
        candidates.append(_achievable_spectrum(weights, conds, us))
    candidates += brute_force_spectra(rho, trials, rng, mode)
    best = max(candidates, key=lambda s: float(np.sum(np.cumsum(s))))
    return best


def oracle_theorem5_fixture(rho: BipartiteState, seed=DEFAULT_SEED, trials: int = 10,
                            tol: float = 1e-9) -> TrialReport:
    """Unital channels on A that respect the essential decomposition fix rho; ones that break it move rho.

    Respecting: mixtures of unitaries acting arbitrarily inside type II blocks
    and on the marginal's kernel, and as a phase on type I blocks.  Breaking:
    non-unitary mixing inside a type I block, and swapping two blocks of equal
    dimension.
    """
    from catrand.channels import QuantumChannel

    rng = rng_from(seed)
    ess = essential_decomposition(rho, "A")
    d = rho.dim_a
    kernel = np.eye(d) - ess.support
    kv = np.linalg.eigh(kernel)[1][:, np.linalg.eigh(kernel)[0] > 0.5]
    col = _Collector(tol)

    def respecting_unitary():
        u = np.zeros((d, d), dtype=complex)
        for b in ess.blocks:
            if b.kind is BlockType.TYPE_II:
                basis = b.basis()
                u += basis @ haar_unitary(b.dim, rng) @ basis.conj().T
            else:
                u += np.exp(2j * np.pi * rng.random()) * b.projector
        if kv.shape[1]:
            u += kv @ haar_unitary(kv.shape[1], rng) @ kv.conj().T
        return u

    for t in range(trials):
        k = int(rng.integers(2, 5))
        w = rng.dirichlet(np.ones(k))
        ch = QuantumChannel.from_kraus([np.sqrt(x) * respecting_unitary() for x in w])
        col.must_fix(t, _displacement(ch, rho), "structure-respecting unital channel")

    for i, b in enumerate(ess.blocks):
        if b.kind is BlockType.TYPE_I and b.dim > 1:
            for t in range(trials):
                basis = b.basis()
                rest = np.eye(d) - b.projector
                us = [basis @ haar_unitary(b.dim, rng) @ basis.conj().T + rest for _ in range(2)]
                ch = QuantumChannel.from_kraus([np.sqrt(0.5) * u for u in us])
                col.must_move(t, _displacement(ch, rho), 1e-8, f"mixing inside type I block {i}")
    for i, j in itertools.combinations(range(len(ess.blocks)), 2):
        bi, bj = ess.blocks[i], ess.blocks[j]
        if bi.dim != bj.dim:
            continue
        ui, uj = bi.basis(), bj.basis()
        swap = ui @ uj.conj().T + uj @ ui.conj().T + (np.eye(d) - bi.projector - bj.projector)
        ch = QuantumChannel.from_kraus([swap])
        col.must_move(-1, _displacement(ch, rho), 1e-8, f"swap of blocks {i} and {j}")
    return col.report()
