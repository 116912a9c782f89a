import numpy as np

from catrand.bipartite import least_disordered_spectrum
from catrand.oracle import (
    brute_force_spectra,
    extractable_samples,
    oracle_least_disordered,
    oracle_max_extractable,
    oracle_theorem5_fixture,
    oracle_unital_sensitivity,
)
from catrand.states import DensityOperator, catalytic_decomposition, catalytic_renyi_entropy, majorizes

from conftest import bip, phi_plus


def test_max_extractable_matches_closed_form():
    sigma = DensityOperator(np.diag([0.5, 0.25, 0.25]))
    dec = catalytic_decomposition(sigma)
    for a in (0.0, 1.0, np.inf):
        assert abs(oracle_max_extractable(sigma, 5, a, 20, 42) - catalytic_renyi_entropy(dec, a)) < 1e-8


def test_samples_never_exceed_bound():
    sigma = DensityOperator(np.diag([0.5, 0.3, 0.2]))
    alphas = [0.0, 1.0, 2.0, np.inf]
    rows = extractable_samples(sigma, 3, alphas, 30, 7)
    dec = catalytic_decomposition(sigma)
    bound = np.array([catalytic_renyi_entropy(dec, a) for a in alphas])
    assert np.all(rows <= bound + 1e-8)


def test_pi2_oracle_gives_two_bits():
    assert abs(oracle_max_extractable(DensityOperator.maximally_mixed(2), 4, 1.0, 10, 42) - 2.0) < 1e-8


def test_oracle_is_seed_deterministic():
    sigma = DensityOperator(np.diag([0.6, 0.4]))
    a = extractable_samples(sigma, 2, [1.0], 10, 5)
    b = extractable_samples(sigma, 2, [1.0], 10, 5)
    np.testing.assert_array_equal(a, b)


def test_unital_sensitivity_on_phi_plus():
    rep = oracle_unital_sensitivity(bip(phi_plus(2), 2, 2), 20, 42)
    assert rep.passed and rep.statistic > 1e-6


def test_unital_sensitivity_fails_on_product():
    # pi (x) sigma is fixed by every unital channel on A
    rep = oracle_unital_sensitivity(bip(np.kron(np.eye(2) / 2, np.diag([0.7, 0.3])), 2, 2), 5, 42)
    assert not rep.passed


def test_theorem5_fixtures():
    cq = 0.5 * np.kron(np.diag([1, 0]), np.diag([0.9, 0.1])) + 0.5 * np.kron(np.diag([0, 1]), np.full((2, 2), 0.5))
    for m in (phi_plus(2), cq, np.eye(4) / 4):
        assert oracle_theorem5_fixture(bip(m, 2, 2), 42, 5).passed


def test_least_disordered_example():
    m = 0.5 * np.kron(np.diag([0.9, 0.1]), np.diag([1, 0])) + 0.5 * np.kron(np.diag([0.2, 0.8]), np.diag([0, 1]))
    src = bip(m, 2, 2)
    np.testing.assert_allclose(oracle_least_disordered(src, 30, 42), [0.85, 0.15], atol=1e-9)
    f = least_disordered_spectrum(src)
    assert all(majorizes(f, s, 1e-9) for s in brute_force_spectra(src, 30, 42))
