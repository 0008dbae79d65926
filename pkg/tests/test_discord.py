from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from supent.discord import (LocalBasisSet, SearchConfig, SymmetricBasisParam, basis_from_angles,
                            classical_correlation, correlations_report, dephase,
                            dephased_probabilities, discord_search, total_correlation, w_lambda,
                            w_discord_sweep, w_symmetric_entropy)
from supent.numerics import relative_entropy, von_neumann_entropy
from supent.qstate import DomainError, density, ghz_canonical, w_state
from conftest import haar_unitary, random_density

SMALL = SearchConfig(num_bases=40, num_refine=2)


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_basis_from_angles_unitary(t, p):
    u = basis_from_angles(t, p)
    assert np.allclose(u.conj().T @ u, np.eye(2))


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_dephased_probabilities_match_full_unitary(N, seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, N)
    basis = LocalBasisSet(tuple(haar_unitary(rng) for _ in range(N)))
    U = basis.unitary()
    ref = np.real(np.diag(U.conj().T @ rho @ U))
    p = dephased_probabilities(rho, basis)
    assert np.allclose(p, ref) and np.isclose(p.sum(), 1.0)


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_dephasing_never_lowers_entropy(N, seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, N)
    basis = LocalBasisSet(tuple(haar_unitary(rng) for _ in range(N)))
    chi = dephase(rho, basis).entries
    gap = von_neumann_entropy(chi) - von_neumann_entropy(rho)
    assert gap >= -1e-10
    # S(chi) - S(rho) = S(rho || chi) for a dephasing
    assert np.isclose(gap, relative_entropy(rho, chi), atol=1e-8)


@pytest.mark.parametrize("N", [2, 3, 5])
@given(p=st.floats(0, 1))
def test_w_lambda_matches_dephasing_oracle(N, p):
    u = SymmetricBasisParam(p).basis()
    probs = dephased_probabilities(density(w_state(N)), LocalBasisSet((u,) * N))
    weights = np.array([bin(x).count("1") for x in range(2**N)])
    for k in range(N + 1):
        assert np.allclose(probs[weights == k], w_lambda(N, k, p), atol=1e-12)


@given(st.integers(2, 9), st.floats(0, 1))
def test_w_lambda_normalised(N, p):
    total = sum(comb(N, k) * w_lambda(N, k, p) for k in range(N + 1))
    assert abs(total - 1) < 1e-12


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_w_sweep_minimum_at_endpoints(N):
    sw = w_discord_sweep(N, np.linspace(0, 1, 201))
    assert np.isclose(sw.min, np.log2(N), atol=1e-12)
    assert 0.0 in sw.argmin and 1.0 in sw.argmin


def test_sweep_rejects_out_of_range():
    with pytest.raises(DomainError):
        w_discord_sweep(3, [0.0, 1.5])
    with pytest.raises(DomainError):
        w_lambda(3, 4, 0.5)


def test_w4_sweep_rises_from_endpoint():
    vals = [w_symmetric_entropy(4, p) for p in (0.0, 0.01, 0.02, 0.03)]
    assert np.all(np.diff(vals) > 0)


def test_bell_state_discord_is_one():
    r = discord_search(density(ghz_canonical(2, 0)), SMALL)
    assert abs(r.value - 1.0) < 1e-8


def test_classical_state_has_zero_discord():
    rho = np.diag([0.1, 0.2, 0.3, 0.4])
    assert discord_search(rho, SMALL).value < 1e-9


@given(st.integers(0, 10**4))
def test_search_value_is_achieved_and_nonnegative(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 2, rank=2)
    r = discord_search(rho, SearchConfig(num_bases=10, num_refine=1, max_sweeps=5))
    chi = dephase(rho, r.basis).entries
    assert r.value >= 0
    assert np.isclose(von_neumann_entropy(chi) - von_neumann_entropy(rho), r.value, atol=1e-9)
    assert r.entropy_dephased <= r.start_values.min() + 1e-12


def test_search_deterministic_under_seed():
    rho = density(w_state(3))
    a = discord_search(rho, SearchConfig(num_bases=20, num_refine=1, seed=5))
    b = discord_search(rho, SearchConfig(num_bases=20, num_refine=1, seed=5))
    assert a.value == b.value and np.array_equal(a.angles, b.angles)


def test_total_correlation_of_ghz():
    for N in (2, 3, 4):
        assert np.isclose(total_correlation(density(ghz_canonical(N, 0))), N)


@given(st.integers(0, 10**5))
def test_classical_correlation_bounded_by_total(seed):
    rho = random_density(np.random.default_rng(seed), 2)
    c = classical_correlation(rho, samples=30)
    assert -1e-12 <= c <= total_correlation(rho) + 1e-9


def test_correlations_report_for_ghz():
    rho = density(ghz_canonical(3, 0))
    sigma = 0.5 * (np.diag(np.eye(8)[0]) + np.diag(np.eye(8)[7]))
    rep = correlations_report(rho, e_value=1.0, sigma=sigma, config=SMALL)
    assert np.isclose(rep.T, 3.0) and abs(rep.D - 1.0) < 1e-8
    assert rep.Q < 1e-9 and np.isclose(rep.C_sigma, 2.0)
