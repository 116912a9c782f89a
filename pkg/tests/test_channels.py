import math

import numpy as np
import pytest

from catrand.bipartite import is_tq_tq
from catrand.channels import (
    QuantumChannel,
    channel_catalytic_entropy,
    choi_from_kraus,
    identity_channel,
    kraus_from_choi,
    make_dephasing,
    make_depolarizing,
    make_measure_prepare,
    make_pinching,
    make_preparation,
    map_entropy,
    measure_prepare_choi_spectrum,
    supertrace,
    unitary_channel,
)
from catrand.errors import InvalidChannelError
from catrand.linalg import partial_trace
from catrand.sampling import haar_unitary, random_density
from catrand.states import DensityOperator, catalytic_decomposition, catalytic_renyi_entropy
from conftest import phi_plus

GRID = (0.0, 0.5, 1.0, 2.0, math.inf)


def test_choi_examples():
    np.testing.assert_allclose(choi_from_kraus(identity_channel(2)), phi_plus(), atol=1e-12)
    np.testing.assert_allclose(choi_from_kraus(make_depolarizing(2)), np.eye(4) / 4, atol=1e-12)


def test_kraus_choi_round_trip(rng):
    v = haar_unitary(6, rng)[:, :3]
    ks = [v[i * 2:(i + 1) * 2] for i in range(3)]  # Stinespring slices: 3 -> 2
    ch = QuantumChannel.from_kraus(ks)
    back = QuantumChannel.from_choi(ch.choi, 2, 3)
    rebuilt = QuantumChannel.from_kraus(back.kraus_ops())
    assert len(back.kraus_ops()) == np.linalg.matrix_rank(ch.choi, tol=1e-10)
    for _ in range(20):
        rho = random_density(3, rng)
        np.testing.assert_allclose(back.apply(rho), ch.apply(rho), atol=1e-9)
        np.testing.assert_allclose(rebuilt.apply(rho), ch.apply(rho), atol=1e-9)


def test_kraus_from_choi_examples():
    ks = kraus_from_choi(phi_plus(), 2, 2)
    assert len(ks) == 1
    assert np.isclose(abs(np.trace(ks[0])), 2)
    np.testing.assert_allclose(ks[0].conj().T @ ks[0], np.eye(2), atol=1e-12)
    ks = kraus_from_choi(np.eye(4) / 4, 2, 2)
    assert len(ks) == 4
    np.testing.assert_allclose(sum(k.conj().T @ k for k in ks), np.eye(2), atol=1e-12)
    with pytest.raises(InvalidChannelError):
        kraus_from_choi(np.diag([1.0, -0.5, 0.25, 0.25]), 2, 2)


def test_invariants_of_constructed_channels():
    for ch in (identity_channel(3), make_depolarizing(2, 3), make_pinching([1, 2]), make_dephasing(3),
               make_measure_prepare([[0.2, 1.0], [0.8, 0.0]], (1, 2), (2, 1)), make_preparation(np.eye(2) / 2)):
        assert abs(supertrace(ch) - 1) < 1e-9
        assert np.linalg.eigvalsh(ch.choi).min() > -1e-9
        np.testing.assert_allclose(partial_trace(ch.choi, (ch.dim_out, ch.dim_in), [1]), np.eye(ch.dim_in) / ch.dim_in,
                                   atol=1e-9)


def test_supertrace_of_subchannels():
    assert abs(supertrace(QuantumChannel.from_kraus([np.sqrt(0.5) * np.eye(2)], subchannel=True)) - 0.5) < 1e-12
    assert abs(supertrace(QuantumChannel.from_kraus([np.diag([1, 0])], subchannel=True)) - 0.5) < 1e-12
    with pytest.raises(InvalidChannelError):
        QuantumChannel.from_kraus([np.diag([1, 0])])


def test_map_entropy(rng):
    assert map_entropy(identity_channel(2)) < 1e-12
    assert abs(map_entropy(make_depolarizing(2)) - 2) < 1e-12
    assert map_entropy(unitary_channel(haar_unitary(3, rng))) < 1e-9


def test_zoo_entropies():
    for a in GRID:
        assert channel_catalytic_entropy(identity_channel(2), a) < 1e-9
        assert abs(channel_catalytic_entropy(make_pinching([2, 2]), a) - 1) < 1e-9
        assert channel_catalytic_entropy(make_pinching([3]), a) < 1e-9
        assert abs(channel_catalytic_entropy(make_dephasing(3), a, (1, 1, 1), (1, 1, 1)) - math.log2(3)) < 1e-9
    assert abs(channel_catalytic_entropy(make_depolarizing(2), 1) - 4) < 1e-9
    assert abs(channel_catalytic_entropy(make_depolarizing(2, 3), 1) - 2 - 2 * math.log2(3)) < 1e-9
    dice = make_depolarizing(6, 6, (1,) * 6, (1,) * 6)
    assert abs(channel_catalytic_entropy(dice, 1) - 2 * math.log2(6)) < 1e-9


def test_measure_prepare(rng):
    ident = make_measure_prepare(np.eye(3), (1, 1, 1), (1, 1, 1))
    assert abs(channel_catalytic_entropy(ident, 1) - math.log2(3)) < 1e-9
    for _ in range(5):
        p = rng.dirichlet(np.ones(2), size=2).T
        ch = make_measure_prepare(p, (2, 2), (2, 2))
        np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(ch.choi))[::-1],
                                   measure_prepare_choi_spectrum(p, (2, 2), (2, 2)), atol=1e-9)
    p = rng.dirichlet(np.ones(3), size=2).T  # p(j|i), 3 outputs, 2 inputs, trivial sectors
    ch = make_measure_prepare(p, (1, 1), (1, 1, 1))
    cc = (p / 2).ravel()  # Choi = sum p(j|i)/|A| |j><j| (x) |i><i|
    from catrand.states import renyi_entropy
    for a in GRID:
        assert abs(channel_catalytic_entropy(ch, a) - renyi_entropy(cc, a)) < 1e-9
    with pytest.raises(InvalidChannelError):
        make_measure_prepare([[0.5, 0.5], [0.6, 0.5]], (1, 1), (1, 1))


def test_preparation_consistency(rng):
    assert abs(channel_catalytic_entropy(make_preparation(np.eye(2) / 2), 1) - 2) < 1e-9
    assert channel_catalytic_entropy(make_preparation(DensityOperator.pure([1, 0])), 1) < 1e-9
    assert abs(channel_catalytic_entropy(make_preparation(np.diag([0.5, 0.25, 0.25])), 1) - 2) < 1e-9
    for _ in range(10):
        s = random_density(int(rng.integers(2, 5)), rng)
        for a in GRID:
            want = catalytic_renyi_entropy(catalytic_decomposition(s), a)
            assert abs(channel_catalytic_entropy(make_preparation(s), a) - want) < 1e-9


def test_zero_entropy_iff_choi_is_tq_tq(rng):
    for ch in (identity_channel(2), unitary_channel(haar_unitary(2, rng)), make_depolarizing(2), make_pinching([1, 1])):
        zero = channel_catalytic_entropy(ch, 1) < 1e-9
        assert zero == is_tq_tq(ch.choi_state())
