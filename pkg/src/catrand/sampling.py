"""Seeded random objects: Haar unitaries, states, unital channels and
catalytic / compatible unitaries.

Every sampler takes a ``numpy.random.Generator``; nothing here keeps state.
"""
from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from catrand.bipartite import BlockType, EssentialDecomposition
from catrand.channels import QuantumChannel
from catrand.states import DensityOperator, catalytic_decomposition

CATALYTIC_FAMILIES = ("controlled_b", "controlled_a", "weyl")


def rng_from(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1), dtype=complex)
    return unitary_group.rvs(dim, random_state=rng)


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> DensityOperator:
    """Ginibre-induced random state; full rank unless ``rank`` is given."""
    k = dim if rank is None else rank
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real)


def random_probability(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.dirichlet(np.ones(n))


def random_unital_channel(dim: int, rng: np.random.Generator) -> QuantumChannel:
    """Mixture of 2-4 Haar unitaries with Dirichlet(1) weights."""
    k = int(rng.integers(2, 5))
    w = rng.dirichlet(np.ones(k))
    return QuantumChannel.from_kraus([np.sqrt(wi) * haar_unitary(dim, rng) for wi in w])


def _weyl_unitary(dim_a: int, basis: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """sum_jk S^(s + j n + k) (x) w^(jk)/sqrt(n) |m_j><m_k| with S the cyclic shift on A."""
    n = basis.shape[1]
    omega = np.exp(2j * np.pi / n)
    s0 = int(rng.integers(dim_a))
    out = np.zeros((dim_a * basis.shape[0],) * 2, dtype=complex)
    idx = np.arange(dim_a)
    for j in range(n):
        for k in range(n):
            shift = np.zeros((dim_a, dim_a), dtype=complex)
            shift[(idx + s0 + j * n + k) % dim_a, idx] = 1
            e = omega ** (j * k) / np.sqrt(n) * np.outer(basis[:, j], basis[:, k].conj())
            out += np.kron(shift, e)
    return out


def random_catalytic_unitary(dim_a: int, dim_b: int, rng: np.random.Generator, family: str | None = None) -> np.ndarray:
    """A random unitary on A (x) B whose partial transpose on B is unitary.

    Drawn from one of the controlled-on-B, controlled-on-A or Weyl-twirl
    families, dressed with random local unitaries on both sides.
    """
    family = family or CATALYTIC_FAMILIES[int(rng.integers(len(CATALYTIC_FAMILIES)))]
    if family == "controlled_b":
        e = haar_unitary(dim_b, rng)
        u = sum(np.kron(haar_unitary(dim_a, rng), np.outer(e[:, k], e[:, k].conj())) for k in range(dim_b))
    elif family == "controlled_a":
        f = haar_unitary(dim_a, rng)
        u = sum(np.kron(np.outer(f[:, k], f[:, k].conj()), haar_unitary(dim_b, rng)) for k in range(dim_a))
    elif family == "weyl":
        u = _weyl_unitary(dim_a, haar_unitary(dim_b, rng), rng)
    else:
        raise ValueError(f"unknown catalytic family {family!r}")
    pre = np.kron(haar_unitary(dim_a, rng), haar_unitary(dim_b, rng))
    post = np.kron(haar_unitary(dim_a, rng), haar_unitary(dim_b, rng))
    return post @ u @ pre


def _embed_on_block(w: np.ndarray, dim_a: int, basis: np.ndarray) -> np.ndarray:
    iso = np.kron(np.eye(dim_a), basis)
    return iso @ w @ iso.conj().T


def compatible_unitary(sigma: DensityOperator, dim_a: int, rng: np.random.Generator) -> np.ndarray:
    """Random catalytic unitary on A (x) B commuting with 1 (x) sigma.

    A catalytic unitary is drawn independently on every catalysis sector
    (eigenspace of sigma within one superselection sector).
    """
    dec = catalytic_decomposition(sigma)
    d = sigma.dim
    u = np.kron(np.eye(dim_a), np.eye(d) - sum((b.projector for b in dec.blocks), np.zeros((d, d))))
    for b in dec.blocks:
        vals, vecs = np.linalg.eigh(b.projector)
        basis = vecs[:, vals > 0.5]
        u = u + _embed_on_block(random_catalytic_unitary(dim_a, b.rank, rng), dim_a, basis)
    return u


def compatible_unitary_for_side(ess: EssentialDecomposition, dim_a: int, rng: np.random.Generator) -> np.ndarray:
    """Random unitary on A (x) side that returns the whole bipartite catalyst.

    Type I blocks only get a block-controlled unitary on A; type II blocks get
    a random catalytic unitary on A (x) block.
    """
    d = ess.dim
    u = np.kron(np.eye(dim_a), np.eye(d) - ess.support)
    for b in ess.blocks:
        if b.kind is BlockType.FACTORIZED:
            raise ValueError("sampler covers type I and type II blocks only")
        if b.kind is BlockType.TYPE_I or b.dim == 1:
            u = u + np.kron(haar_unitary(dim_a, rng), b.projector)
        else:
            u = u + _embed_on_block(random_catalytic_unitary(dim_a, b.dim, rng), dim_a, b.basis())
    return u
