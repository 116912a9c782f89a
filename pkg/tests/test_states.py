import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from catrand.errors import InvalidStateError
from catrand.states import (
    DensityOperator,
    SuperselectionStructure,
    catalytic_decomposition,
    catalytic_renyi_entropy,
    majorizes,
    renyi_entropy,
    reo,
    reo_spectrum,
)

GRID = (0.0, 0.5, 1.0, 2.0, math.inf)


def s_cat(sigma, a):
    return catalytic_renyi_entropy(catalytic_decomposition(sigma), a)


def test_density_operator_validation():
    with pytest.raises(InvalidStateError):
        DensityOperator(np.diag([0.6, 0.6]))
    with pytest.raises(InvalidStateError):
        DensityOperator(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidStateError):
        DensityOperator(np.array([[0.5, 0.5], [0, 0.5]]))
    with pytest.raises(InvalidStateError):
        DensityOperator(np.full((2, 2), 0.5), ssr=(1, 1))


def test_hand_values_of_the_three_level_example():
    sigma = DensityOperator.diagonal([0.5, 0.25, 0.25])
    assert abs(s_cat(sigma, 1) - 2.0) < 1e-9
    assert abs(s_cat(sigma, math.inf) - 1.0) < 1e-9
    assert abs(s_cat(sigma, 0) - math.log2(5)) < 1e-9


def test_alpha_near_one_approaches_the_limit():
    sigma = DensityOperator.diagonal([0.5, 0.25, 0.25])
    for a in (1 - 1e-4, 1 + 1e-4):
        assert abs(s_cat(sigma, a) - 2.0) < 1e-3


@pytest.mark.parametrize("d", [2, 3, 4])
def test_maximally_mixed_doubles(d):
    for a in GRID:
        assert abs(s_cat(DensityOperator.maximally_mixed(d), a) - 2 * math.log2(d)) < 1e-9


def test_pure_state_has_nothing_to_lend():
    for a in GRID:
        assert s_cat(DensityOperator.pure([1, 1j]), a) < 1e-12


def test_decomposition_orders_and_drops_zero_blocks():
    dec = catalytic_decomposition(DensityOperator.diagonal([0.25, 0.0, 0.5, 0.25]))
    assert list(dec.ranks) == [1, 2]
    assert np.allclose(dec.values, [0.5, 0.25])


def test_superselection_splits_degenerate_eigenspaces():
    sigma = DensityOperator(np.eye(4) / 4, ssr=(2, 2))
    dec = catalytic_decomposition(sigma)
    assert list(dec.ranks) == [2, 2]
    assert [b.sector for b in dec.blocks] == [0, 1]
    assert abs(catalytic_renyi_entropy(dec, 1.0) - 3.0) < 1e-9  # 1 bit of sector + 2 bits from each 2-dim block
    classical = DensityOperator(np.diag([0.5, 0.25, 0.25]), SuperselectionStructure.classical(3))
    assert abs(s_cat(classical, 1.0) - 1.5) < 1e-9


def test_reo_has_dimension_sum_of_squared_ranks():
    dec = catalytic_decomposition(DensityOperator.diagonal([0.5, 0.25, 0.25]))
    assert reo(dec).dim == 5
    np.testing.assert_allclose(reo_spectrum(dec), [0.5, 0.125, 0.125, 0.125, 0.125])


def test_renyi_limits_and_errors():
    p = [0.5, 0.5]
    assert renyi_entropy(p, 0) == 1.0
    assert renyi_entropy([1.0, 0.0], 1) == 0.0
    with pytest.raises(ValueError):
        renyi_entropy(p, -1)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.01, 1.0), min_size=1, max_size=6), st.integers(0, 2**32 - 1))
def test_catalytic_entropy_is_the_reo_entropy_and_monotone_in_alpha(weights, seed):
    p = np.array(weights) / np.sum(weights)
    u = np.linalg.qr(np.random.default_rng(seed).standard_normal((p.size, p.size)))[0]
    sigma = DensityOperator(u @ np.diag(p) @ u.T)
    dec = catalytic_decomposition(sigma)
    vals = [catalytic_renyi_entropy(dec, a) for a in GRID]
    assert all(x >= y - 1e-9 for x, y in zip(vals, vals[1:]))
    for a, v in zip(GRID, vals):
        assert abs(v - renyi_entropy(reo_spectrum(dec), a)) < 1e-8
        # never less than the ordinary entropy
        assert v >= renyi_entropy(sigma.spectrum(), a) - 1e-9


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=6), st.integers(0, 2**32 - 1))
def test_doubly_stochastic_images_are_majorized(weights, seed):
    p = np.array(weights) + 1e-3
    p /= p.sum()
    rng = np.random.default_rng(seed)
    k = rng.dirichlet(np.ones(3))
    perms = [np.eye(p.size)[rng.permutation(p.size)] for _ in range(3)]
    q = sum(w * (m @ p) for w, m in zip(k, perms))
    assert majorizes(p, q)
    assert majorizes(q, np.full(p.size, 1 / p.size))
