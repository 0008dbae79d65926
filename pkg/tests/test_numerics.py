import numpy as np
import pytest
import scipy.linalg
import scipy.stats
from hypothesis import given, strategies as st

from supent.numerics import (binary_entropy, eigh, positive_real_roots, relative_entropy,
                             shannon_entropy, von_neumann_entropy)
from supent.qstate import DomainError
from conftest import random_density

probs = st.lists(st.floats(0, 1), min_size=1, max_size=12).filter(lambda p: sum(p) > 1e-3)


@given(probs)
def test_shannon_matches_scipy(p):
    p = np.array(p) / sum(p)
    assert np.isclose(shannon_entropy(p), scipy.stats.entropy(p, base=2), atol=1e-9)


def test_binary_entropy_values():
    assert binary_entropy(0.0) == 0.0 and binary_entropy(1.0) == 0.0
    assert np.isclose(binary_entropy(0.5), 1.0)
    with pytest.raises(DomainError):
        binary_entropy(1.2)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(DomainError):
        eigh(np.array([[0, 1], [0, 0]]))


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_von_neumann_matches_logm(N, seed):
    rho = random_density(np.random.default_rng(seed), N)
    ref = -np.trace(rho @ scipy.linalg.logm(rho)).real / np.log(2)
    assert np.isclose(von_neumann_entropy(rho), ref, atol=1e-8)


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_relative_entropy_matches_logm_and_is_nonnegative(N, seed):
    rng = np.random.default_rng(seed)
    x, y = random_density(rng, N), random_density(rng, N)
    ref = np.trace(x @ (scipy.linalg.logm(x) - scipy.linalg.logm(y))).real / np.log(2)
    got = relative_entropy(x, y)
    assert got >= 0 and np.isclose(got, ref, atol=1e-7)
    assert relative_entropy(x, x) < 1e-9


def test_relative_entropy_support_violation_is_inf():
    assert relative_entropy(np.diag([0.5, 0.5]), np.diag([1.0, 0.0])) == np.inf
    assert np.isclose(relative_entropy(np.diag([1.0, 0.0]), np.diag([0.5, 0.5])), 1.0)


@given(st.lists(st.floats(0.05, 20), min_size=1, max_size=6, unique=True),
       st.lists(st.floats(-20, -0.05), max_size=3))
def test_positive_roots_recovered(pos, neg):
    c = np.polynomial.polynomial.polyfromroots(pos + neg)
    got = positive_real_roots(c).roots
    assert len(got) == len(pos)
    assert np.allclose(got, sorted(pos), rtol=1e-6)


def test_positive_roots_strips_zero_and_complex():
    # t^2 (t^2 + 1)(t - 3)
    c = np.polynomial.polynomial.polyfromroots([0, 0, 1j, -1j, 3]).real
    rs = positive_real_roots(c)
    assert np.allclose(rs.roots, [3.0]) and abs(rs.residuals[0]) < 1e-10


def test_double_root_reported_once():
    c = np.polynomial.polynomial.polyfromroots([2.0, 2.0, -1.0])
    rs = positive_real_roots(c)
    assert len(rs) == 1 and abs(rs.roots[0] - 2.0) < 1e-6
