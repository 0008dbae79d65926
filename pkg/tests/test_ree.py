import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from supent.gme import OptimizerConfig, pmax_numeric
from supent.numerics import relative_entropy
from supent.qstate import (DomainError, TwoBlockSpec, css_ghz_superposition, density,
                           ghz_canonical, two_block_canonical, w_state)
from supent.ree import (CONFIRMED, REJECTED, bound_report, css_criterion_max, l_sigma,
                        maximize_product_form, subsystem_bound, pmax_lower_bound,
                        ree_ghz_superposition)
from conftest import random_density, random_pure


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_l_sigma_is_frechet_derivative_of_log(N, seed):
    rng = np.random.default_rng(seed)
    sigma, rho = random_density(rng, N), random_density(rng, N)
    # upper-right block of log [[sigma, rho], [0, sigma]] is the derivative of log at sigma along rho
    d = sigma.shape[0]
    big = np.block([[sigma, rho], [np.zeros((d, d)), sigma]])
    ref = scipy.linalg.logm(big)[:d, d:]
    assert np.allclose(l_sigma(sigma, rho), ref, rtol=1e-6, atol=1e-6 * np.abs(ref).max())


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_l_sigma_pairs_to_trace(N, seed):
    rng = np.random.default_rng(seed)
    sigma, rho = random_density(rng, N), random_density(rng, N)
    assert np.isclose(np.trace(sigma @ l_sigma(sigma, rho)).real, 1.0)
    assert np.allclose(l_sigma(sigma, sigma), np.eye(2**N), atol=1e-9)


def test_l_sigma_degenerate_spectrum():
    sigma = np.eye(4) / 4
    rho = random_density(np.random.default_rng(0), 2)
    assert np.allclose(l_sigma(sigma, rho), 4 * rho)


def test_l_sigma_support_violation():
    with pytest.raises(DomainError):
        l_sigma(np.diag([1.0, 0.0]), np.eye(2) / 2)


@given(st.integers(0, 10**6))
def test_product_form_max_of_projector_is_pmax(seed):
    v = random_pure(np.random.default_rng(seed), 3)
    val, _, conv = maximize_product_form(np.outer(v, v.conj()))
    assert conv and abs(val - pmax_numeric(v).value) < 1e-8


@given(st.integers(0, 10**6))
def test_product_form_with_grouped_parties_is_schmidt(seed):
    v = random_pure(np.random.default_rng(seed), 3)
    top = np.linalg.svd(v.reshape(4, 2), compute_uv=False)[0] ** 2
    val, vecs, _ = maximize_product_form(np.outer(v, v.conj()), parties=[[1, 2], [3]])
    assert [x.size for x in vecs] == [4, 2]
    assert np.isclose(val, top, atol=1e-9)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3)])
@pytest.mark.parametrize("alpha", [0.3, 1.2])
def test_diagonal_candidate_confirmed(m, n, alpha):
    rho = density(two_block_canonical(TwoBlockSpec(m, n, alpha, 0.5, -1)))
    sigma = css_ghz_superposition(m, n, alpha)
    r = css_criterion_max(rho, sigma, OptimizerConfig(num_starts=32))
    assert r.verdict == CONFIRMED
    assert np.isclose(relative_entropy(rho, sigma), ree_ghz_superposition(alpha), atol=1e-9)


def test_thin_block_candidate_rejected():
    rho = density(two_block_canonical(TwoBlockSpec(1, 2, 0.5)))
    assert css_criterion_max(rho, css_ghz_superposition(1, 2, 0.5)).verdict == REJECTED


def test_maximally_mixed_rejected_with_exact_value():
    psi = w_state(3)
    r = css_criterion_max(density(psi), np.eye(8) / 8)
    assert r.verdict == REJECTED
    assert np.isclose(r.max_value, 8 * pmax_numeric(psi).value, atol=1e-8)


def test_pmax_bound_below_ree_for_two_block():
    for alpha in np.linspace(0, np.pi / 2, 9):
        pm = max(np.cos(alpha) ** 2, np.sin(alpha) ** 2) / 2
        assert pmax_lower_bound(None, pm) <= ree_ghz_superposition(alpha) + 1e-12


def test_bound_report_flags_impossible_exact():
    with pytest.raises(DomainError):
        bound_report(ghz_canonical(3, 0), 0.25, exact=1.0)


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_ghz_bounds_tight(N):
    psi = ghz_canonical(N, 0)
    rep = bound_report(psi, 0.5, e_sub=0.0, exact=1.0)
    assert rep.tight_pmax and rep.tight_subsystem
    assert np.isclose(subsystem_bound(psi), 1.0)
