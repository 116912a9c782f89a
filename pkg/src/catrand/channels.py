"""Dynamical randomness sources: channels, Choi matrices and their entropies.

Choi convention: ``J = (N (x) id)(phi+)`` with ``phi+`` normalized, so the
output factor is on the left and ``Tr J`` is the supertrace.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from catrand.bipartite import BipartiteState, delocalized_entropy
from catrand.errors import DimensionError, InvalidChannelError
from catrand.linalg import DEFAULT_TOL, max_entangled, partial_trace
from catrand.states import DensityOperator, SuperselectionStructure, as_ssr, von_neumann_entropy

CHANNEL_TOL = 1e-9
KRAUS_CUTOFF = 1e-10


def choi_from_kraus_list(kraus: Sequence[np.ndarray], dim_in: int) -> np.ndarray:
    phi = max_entangled(dim_in)
    j = np.zeros((kraus[0].shape[0] * dim_in,) * 2, dtype=complex)
    for k in kraus:
        v = np.kron(k, np.eye(dim_in)) @ phi
        j += np.outer(v, v.conj())
    return j


def kraus_from_choi(choi: np.ndarray, dim_out: int, dim_in: int) -> list[np.ndarray]:
    """Kraus operators from the eigendecomposition of a (normalized) Choi matrix."""
    choi = np.asarray(choi, dtype=complex)
    if choi.shape != (dim_out * dim_in,) * 2:
        raise DimensionError(f"Choi shape {choi.shape} does not match {dim_out} x {dim_in}")
    vals, vecs = np.linalg.eigh((choi + choi.conj().T) / 2)
    if vals.min() < -CHANNEL_TOL * max(1.0, abs(vals).max()):
        raise InvalidChannelError(f"Choi matrix is not positive semidefinite (min eigenvalue {vals.min():.3g})")
    out = []
    for mu, v in sorted(zip(vals, vecs.T), key=lambda t: -t[0]):
        if mu > KRAUS_CUTOFF:
            out.append(np.sqrt(dim_in * mu) * v.reshape(dim_out, dim_in))
    return out


@dataclass(frozen=True)
class QuantumChannel:
    """A completely positive map, trace preserving unless ``subchannel`` is set."""

    dim_in: int
    dim_out: int
    kraus: Optional[tuple[np.ndarray, ...]] = None
    choi_matrix: Optional[np.ndarray] = field(default=None, repr=False)
    subchannel: bool = False
    ssr_in: Optional[SuperselectionStructure] = None
    ssr_out: Optional[SuperselectionStructure] = None

    def __post_init__(self):
        if self.kraus is None and self.choi_matrix is None:
            raise InvalidChannelError("a channel needs Kraus operators or a Choi matrix")
        object.__setattr__(self, "ssr_in", as_ssr(self.ssr_in))
        object.__setattr__(self, "ssr_out", as_ssr(self.ssr_out))
        if self.kraus is not None:
            ks = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
            if not ks:
                raise InvalidChannelError("empty Kraus list")
            for k in ks:
                if k.shape != (self.dim_out, self.dim_in):
                    raise DimensionError(f"Kraus operator of shape {k.shape}, expected {(self.dim_out, self.dim_in)}")
            object.__setattr__(self, "kraus", ks)
        j = choi_from_kraus_list(self.kraus, self.dim_in) if self.kraus is not None else None
        if self.choi_matrix is not None:
            c = np.asarray(self.choi_matrix, dtype=complex)
            if c.shape != (self.dim_out * self.dim_in,) * 2:
                raise DimensionError(f"Choi shape {c.shape} does not match {self.dim_out} x {self.dim_in}")
            if j is not None and np.linalg.norm(c - j) > 1e-8:
                raise InvalidChannelError("Kraus and Choi representations disagree")
            j = c
        if np.linalg.norm(j - j.conj().T) > CHANNEL_TOL:
            raise InvalidChannelError("Choi matrix is not Hermitian")
        if np.linalg.eigvalsh((j + j.conj().T) / 2).min() < -CHANNEL_TOL:
            raise InvalidChannelError("Choi matrix is not positive semidefinite")
        if not self.subchannel:
            marg = partial_trace(j, (self.dim_out, self.dim_in), [1])
            if np.linalg.norm(marg - np.eye(self.dim_in) / self.dim_in) > CHANNEL_TOL:
                raise InvalidChannelError("map is not trace preserving (pass subchannel=True for subchannels)")
        object.__setattr__(self, "choi_matrix", j)

    @classmethod
    def from_kraus(cls, kraus, subchannel: bool = False, **kw) -> "QuantumChannel":
        kraus = [np.atleast_2d(np.asarray(k, dtype=complex)) for k in kraus]
        return cls(kraus[0].shape[1], kraus[0].shape[0], tuple(kraus), subchannel=subchannel, **kw)

    @classmethod
    def from_choi(cls, choi, dim_out: int, dim_in: int, subchannel: bool = False, **kw) -> "QuantumChannel":
        return cls(dim_in, dim_out, None, np.asarray(choi, dtype=complex), subchannel=subchannel, **kw)

    @property
    def choi(self) -> np.ndarray:
        return self.choi_matrix

    def kraus_ops(self) -> tuple[np.ndarray, ...]:
        if self.kraus is not None:
            return self.kraus
        return tuple(kraus_from_choi(self.choi_matrix, self.dim_out, self.dim_in))

    def __call__(self, rho) -> np.ndarray:
        return self.apply(rho)

    def apply(self, rho) -> np.ndarray:
        m = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
        if m.shape != (self.dim_in, self.dim_in):
            raise DimensionError(f"input of shape {m.shape} for a channel on dimension {self.dim_in}")
        if self.kraus is not None:
            return sum(k @ m @ k.conj().T for k in self.kraus)
        # N(m) = d_in * Tr_in[J (1 (x) m^T)]
        prod = self.choi_matrix @ np.kron(np.eye(self.dim_out), m.T)
        return self.dim_in * partial_trace(prod, (self.dim_out, self.dim_in), [0])

    def with_sectors(self, ssr_in=None, ssr_out=None) -> "QuantumChannel":
        return QuantumChannel(self.dim_in, self.dim_out, self.kraus, self.choi_matrix, self.subchannel,
                              ssr_in, ssr_out)

    def choi_state(self) -> BipartiteState:
        """Choi matrix as a bipartite state on (output, input copy) with sectors carried over."""
        j = self.choi_matrix / np.trace(self.choi_matrix).real
        return BipartiteState(DensityOperator((j + j.conj().T) / 2), self.dim_out, self.dim_in,
                              self.ssr_out, self.ssr_in)


def choi_from_kraus(ch: QuantumChannel) -> np.ndarray:
    if ch.kraus is None:
        raise InvalidChannelError("channel has no Kraus representation")
    return choi_from_kraus_list(ch.kraus, ch.dim_in)


def supertrace(ch: QuantumChannel) -> float:
    """Tr J = Tr N(pi_in); 1 for channels, the survival probability for subchannels."""
    return float(np.trace(ch.choi_matrix).real)


def map_entropy(ch: QuantumChannel) -> float:
    return von_neumann_entropy(ch.choi_matrix / np.trace(ch.choi_matrix).real)


def channel_catalytic_entropy(ch: QuantumChannel, alpha: float, ssr_in=None, ssr_out=None,
                              tol: float = DEFAULT_TOL, mode: str = "strict") -> float:
    """Catalytic entropy of a channel: the delocalized catalytic entropy of its Choi state.

    Sectors passed here override those stored on the channel.
    """
    if ssr_in is not None or ssr_out is not None:
        ch = ch.with_sectors(ssr_in if ssr_in is not None else ch.ssr_in,
                             ssr_out if ssr_out is not None else ch.ssr_out)
    return delocalized_entropy(ch.choi_state(), alpha, tol, mode)


def identity_channel(dim: int) -> QuantumChannel:
    return QuantumChannel.from_kraus([np.eye(dim)])


def unitary_channel(u: np.ndarray) -> QuantumChannel:
    return QuantumChannel.from_kraus([np.asarray(u, dtype=complex)])


def make_depolarizing(dim_in: int, dim_out: Optional[int] = None, ssr_in=None, ssr_out=None) -> QuantumChannel:
    """Completely randomizing channel rho -> Tr[rho] pi_out."""
    dim_out = dim_in if dim_out is None else dim_out
    if dim_in <= 0 or dim_out <= 0:
        raise DimensionError("dimensions must be positive")
    kraus = []
    for a in range(dim_out):
        for b in range(dim_in):
            k = np.zeros((dim_out, dim_in), dtype=complex)
            k[a, b] = 1 / np.sqrt(dim_out)
            kraus.append(k)
    return QuantumChannel.from_kraus(kraus, ssr_in=ssr_in, ssr_out=ssr_out)


def make_pinching(projector_ranks: Sequence[int]) -> QuantumChannel:
    """rho -> sum_i P_i rho P_i over consecutive computational-basis blocks of the given ranks."""
    ranks = [int(r) for r in projector_ranks]
    if not ranks or any(r <= 0 for r in ranks):
        raise DimensionError(f"ranks must be positive, got {ranks}")
    d = sum(ranks)
    kraus, at = [], 0
    for r in ranks:
        p = np.zeros((d, d), dtype=complex)
        p[at:at + r, at:at + r] = np.eye(r)
        kraus.append(p)
        at += r
    return QuantumChannel.from_kraus(kraus)


def make_dephasing(dim: int) -> QuantumChannel:
    return make_pinching([1] * dim)


def make_measure_prepare(cond_prob, sectors_in: Sequence[int], sectors_out: Sequence[int],
                         attach_sectors: bool = True) -> QuantumChannel:
    """rho -> sum_ij p(j|i) Tr[P_i rho] pi_{B_j}.

    ``cond_prob[j, i]`` is p(j|i); columns must sum to one.
    """
    p = np.asarray(cond_prob, dtype=float)
    sin, sout = SuperselectionStructure(tuple(sectors_in)), SuperselectionStructure(tuple(sectors_out))
    if p.shape != (sout.count, sin.count):
        raise DimensionError(f"p(j|i) has shape {p.shape}, expected {(sout.count, sin.count)}")
    if (p < -1e-12).any() or np.abs(p.sum(axis=0) - 1).max() > 1e-9:
        raise InvalidChannelError("p(j|i) must be column-stochastic")
    kraus = []
    for i, a_sl in enumerate(sin.slices()):
        for j, b_sl in enumerate(sout.slices()):
            if p[j, i] <= 0:
                continue
            nb = b_sl.stop - b_sl.start
            for a in range(a_sl.start, a_sl.stop):
                for b in range(b_sl.start, b_sl.stop):
                    k = np.zeros((sout.dim, sin.dim), dtype=complex)
                    k[b, a] = np.sqrt(p[j, i] / nb)
                    kraus.append(k)
    kw = dict(ssr_in=sin, ssr_out=sout) if attach_sectors else {}
    return QuantumChannel.from_kraus(kraus, **kw)


def measure_prepare_choi_spectrum(cond_prob, sectors_in, sectors_out) -> np.ndarray:
    """Closed-form Choi spectrum: p(j|i) a_i / (|A_i| |B_j|) with multiplicity |A_i| |B_j|, a_i = |A_i|/|A|."""
    p = np.asarray(cond_prob, dtype=float)
    dim_a = sum(sectors_in)
    parts = []
    for i, na in enumerate(sectors_in):
        for j, nb in enumerate(sectors_out):
            parts.append(np.full(na * nb, p[j, i] * (na / dim_a) / (na * nb)))
    return np.sort(np.concatenate(parts))[::-1]


def make_preparation(sigma) -> QuantumChannel:
    """Channel from a trivial (1-dim) input preparing sigma; its Choi matrix is sigma."""
    s = sigma if isinstance(sigma, DensityOperator) else DensityOperator(sigma)
    vals, vecs = np.linalg.eigh(s.matrix)
    kraus = [np.sqrt(v) * vecs[:, [k]] for k, v in enumerate(vals) if v > KRAUS_CUTOFF]
    ssr_out = s.ssr
    return QuantumChannel.from_kraus(kraus, ssr_out=ssr_out)
