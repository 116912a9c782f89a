import numpy as np
import pytest

from catrand.bipartite import dcd, delocalized_catalytic_entropy
from catrand.catalysis import (
    CatalysisPlan,
    ClassicalPermutation,
    SuperunitaryPair,
    all_permutation_families,
    can_generate_randomness,
    classical_catalytic_check,
    compatibility_up_to_local_unitary,
    construct_dreo_plan,
    dynamical_catalysis_apply,
    identity_plan,
    induced_map,
    is_catalytic_unitary,
    is_compatible,
    no_stealth_check,
    run_delocalized_catalysis,
    simulate_chain,
    superunitary_checks,
    verify_catalysis,
)
from catrand.channels import identity_channel, make_depolarizing, make_pinching, map_entropy
from catrand.errors import DimensionError, NotCatalyticError, ResourceCapError
from catrand.linalg import CNOT, SWAP, is_unitary, partial_transpose
from catrand.sampling import (
    compatible_unitary,
    haar_unitary,
    random_catalytic_unitary,
    random_density,
)
from catrand.states import DensityOperator, majorizes

from conftest import bip, phi_plus


def test_cnot_and_swap():
    assert is_catalytic_unitary(CNOT, (2, 2))
    assert not is_catalytic_unitary(SWAP, (2, 2))


@pytest.mark.parametrize("family", ["controlled_b", "controlled_a", "weyl"])
@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2)])
def test_sampled_catalytic_unitaries(family, dims, rng):
    for _ in range(5):
        u = random_catalytic_unitary(*dims, rng, family=family)
        assert is_unitary(u)
        assert is_unitary(partial_transpose(u, dims, 1))


def test_compatibility_requires_catalytic():
    with pytest.raises(NotCatalyticError):
        is_compatible(SWAP, np.eye(2) / 2, (2, 2))


def test_compatible_sampler_returns_catalyst(rng):
    sigma = DensityOperator(np.diag([0.5, 0.25, 0.25]))
    for da in (2, 3):
        u = compatible_unitary(sigma, da, rng)
        assert is_compatible(u, sigma, (da, 3))
        rep = verify_catalysis(u, sigma, (da, 3), samples=5, seed=1)
        assert rep.passed and rep.pictures_agree


def test_non_compatible_unitary_moves_catalyst(rng):
    sigma = np.diag([0.7, 0.3])
    u = haar_unitary(4, rng)
    assert not verify_catalysis(u, sigma, (2, 2), samples=3, seed=0).passed


def test_induced_maps_are_unital(rng):
    sigma = DensityOperator(np.diag([0.5, 0.25, 0.25]))
    u = compatible_unitary(sigma, 2, rng)
    ch = induced_map(u, sigma, (2, 3))
    np.testing.assert_allclose(ch.apply(np.eye(2) / 2), np.eye(2) / 2, atol=1e-10)
    rho = random_density(2, rng)
    assert majorizes(rho.spectrum(), np.linalg.eigvalsh(ch.apply(rho.matrix)))


def test_randomness_generation_flags():
    assert not can_generate_randomness(identity_channel(2))
    assert can_generate_randomness(make_depolarizing(2))
    assert can_generate_randomness(make_pinching([1, 1]))


def test_local_unitary_verdicts():
    sigma = np.diag([0.6, 0.4])
    cz = np.diag([1, 1, 1, -1]).astype(complex)
    assert compatibility_up_to_local_unitary(cz, sigma, (2, 2)).verdict == "compatible"
    # CNOT flips an unequal-weight catalyst only on |1>: input dependent
    assert compatibility_up_to_local_unitary(CNOT, sigma, (2, 2)).verdict == "incompatible"
    x_on_b = np.kron(np.eye(2), np.array([[0, 1], [1, 0]]))
    v = compatibility_up_to_local_unitary(x_on_b, sigma, (2, 2))
    assert v.verdict == "up_to_local_unitary" and v.alignment_unique
    out = v.alignment @ sigma @ v.alignment.conj().T
    np.testing.assert_allclose(out, np.diag([0.4, 0.6]), atol=1e-10)
    h_on_b = np.kron(np.eye(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    deg = compatibility_up_to_local_unitary(h_on_b, np.eye(2) / 2, (2, 2))
    assert deg.verdict == "compatible"


@pytest.mark.parametrize("name", ["pipi", "phi", "cc"])
def test_dreo_plan_attains_entropy(name, rng):
    src = {
        "pipi": bip(np.eye(4) / 4, 2, 2),
        "phi": bip(phi_plus(2), 2, 2),
        "cc": bip(np.diag([0.4, 0.3, 0.2, 0.1]), 2, 2),
    }[name]
    d = dcd(src)
    plan = construct_dreo_plan(d)
    res = run_delocalized_catalysis(plan, None, src)
    assert res.deviation < 1e-9
    for a in (0.0, 0.5, 1.0, 2.0, np.inf):
        assert abs(res.entropy(a) - delocalized_catalytic_entropy(d, a)) < 1e-8
    a0, _, a1, _ = plan.dims
    for _ in range(3):
        assert run_delocalized_catalysis(plan, random_density(a0 * a1, rng), src).deviation < 1e-9


def test_pipi_plan_dims():
    plan = construct_dreo_plan(dcd(bip(np.eye(4) / 4, 2, 2)))
    assert plan.dims == (4, 2, 4, 2)


def test_identity_plan_passes_input_through(rng):
    src = bip(np.eye(4) / 4, 2, 2)
    rho = random_density(4, rng)
    res = run_delocalized_catalysis(identity_plan(2, 2, 2, 2), rho, src)
    np.testing.assert_allclose(res.output.matrix, rho.matrix, atol=1e-12)
    assert res.deviation < 1e-12


def test_plan_catalyst_mismatch():
    plan = construct_dreo_plan(dcd(bip(np.eye(4) / 4, 2, 2)))
    with pytest.raises(DimensionError):
        run_delocalized_catalysis(plan, None, bip(np.eye(9) / 9, 3, 3))
    wrong = run_delocalized_catalysis(plan, None, bip(phi_plus(2), 2, 2))
    assert wrong.deviation > 1e-3


def test_plan_rejects_non_catalytic():
    with pytest.raises(NotCatalyticError):
        CatalysisPlan(SWAP, np.eye(4), (2, 2, 2, 2))


def test_dynamical_catalysis_identity_with_depolarizing_catalyst():
    r = make_depolarizing(2)
    src = r.choi_state()
    pair = SuperunitaryPair.from_plan(construct_dreo_plan(dcd(src)))
    rep = superunitary_checks(pair, r)
    assert rep.pre_catalytic and rep.post_catalytic
    assert rep.catalyst_deviation < 1e-9
    out = dynamical_catalysis_apply(pair, identity_channel(pair.dims_pre[0]), r)
    assert 0 < map_entropy(out) <= 4 + 1e-9


def test_classical_examples():
    fams = list(all_permutation_families(3, 3))
    assert len(fams) == 216
    assert all(classical_catalytic_check(f, np.full(3, 1 / 3)) for f in fams)
    ident = ClassicalPermutation.from_families([[0, 1, 2]] * 3)
    assert classical_catalytic_check(ident, [0.6, 0.3, 0.1])
    swap = ClassicalPermutation.from_families([[1, 0, 2], [0, 1, 2], [0, 1, 2]])
    assert not classical_catalytic_check(swap, [0.6, 0.3, 0.1])


def test_classical_table_must_be_bijection():
    with pytest.raises(Exception):
        ClassicalPermutation(np.zeros((2, 2, 2), dtype=int))


def test_chain_quantum_and_cap():
    tr = simulate_chain(DensityOperator.maximally_mixed(2), 2)
    assert tr.dims == [2, 4, 16]
    np.testing.assert_allclose(tr.entropies, [1, 2, 4], atol=1e-9)
    with pytest.raises(ResourceCapError):
        simulate_chain(DensityOperator.maximally_mixed(2), 3)


def test_chain_classical_uniform_constant():
    tr = simulate_chain(DensityOperator.maximally_mixed(6), 3, "classical")
    np.testing.assert_allclose(tr.entropies, [np.log2(6)] * 4, atol=1e-9)


def test_no_stealth_on_mixed_input(rng):
    src = bip(np.eye(4) / 4, 2, 2)
    rep = no_stealth_check(haar_unitary(4, rng), haar_unitary(4, rng), src, 2, seed=3)
    assert not rep.hides and rep.residual > 1e-3
    assert rep.input_entropy == pytest.approx(2.0)
    assert rep.catalyst_entropy <= 1e-9
