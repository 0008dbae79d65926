import itertools

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from supent.qstate import (DensityMatrix, DomainError, GhzSuperpositionSpec, PureState,
                           TwoBlockSpec, binary_rep, css_ghz_superposition, density, dicke,
                           ghz_canonical, ghz_superposition, hamming_split, min_pt_eigenvalue,
                           overlap, partial_trace, partial_transpose, reduce_to_two_block,
                           schmidt_necessary_check, sigma_w, two_block_canonical, w_state,
                           w_tilde, w_superposition, NOT_SD)
from conftest import random_density, random_pure


def test_pure_state_rejects_bad_norm():
    with pytest.raises(DomainError):
        PureState(1, np.array([1.0, 1.0]))


def test_pure_state_repairs_tiny_drift():
    psi = PureState(1, np.array([1.0 + 1e-11, 0.0]))
    assert abs(np.linalg.norm(psi.amplitudes) - 1) < 1e-15


def test_density_rejects_non_psd():
    with pytest.raises(DomainError):
        DensityMatrix(1, np.diag([1.5, -0.5]))


def test_binary_rep_msb_first():
    assert tuple(binary_rep(6, 4)) == (0, 1, 1, 0)


@pytest.mark.parametrize("N,i,sign", [(3, 0, 1), (3, 2, -1), (4, 5, 1)])
def test_ghz_canonical_support(N, i, sign):
    v = ghz_canonical(N, i, sign).amplitudes
    comp = (2**N - 1) ^ i
    assert np.isclose(v[i], 1 / np.sqrt(2)) and np.isclose(v[comp], sign / np.sqrt(2))
    assert np.count_nonzero(np.abs(v) > 1e-14) == 2


def test_ghz_index_range():
    with pytest.raises(DomainError):
        GhzSuperpositionSpec(3, 0, 4)
    with pytest.raises(DomainError):
        GhzSuperpositionSpec(3, 1, 1)


@given(st.integers(2, 8).flatmap(lambda N: st.tuples(
    st.just(N), st.integers(0, 2 ** (N - 1) - 1), st.integers(0, 2 ** (N - 1) - 1))))
def test_hamming_split_counts_agreeing_bits(args):
    N, i, j = args
    assume(i != j)
    m, n = hamming_split(i, j, N)
    bi, bj = binary_rep(i, N), binary_rep(j, N)
    assert n == sum(a != b for a, b in zip(bi, bj)) and m + n == N


@given(st.integers(3, 6).flatmap(lambda N: st.tuples(
    st.just(N), st.integers(0, 2 ** (N - 1) - 1), st.integers(0, 2 ** (N - 1) - 1))),
    st.sampled_from([1, -1]), st.sampled_from([1, -1]),
    st.floats(0, np.pi / 2), st.floats(0, 2 * np.pi))
def test_reduction_preserves_local_spectra(args, si, sj, alpha, gamma):
    N, i, j = args
    assume(i != j)
    spec = GhzSuperpositionSpec(N, i, j, si, sj, alpha, gamma)
    psi = ghz_superposition(spec)
    red, tb = reduce_to_two_block(spec)
    assert (tb.m, tb.n) == hamming_split(i, j, N)
    # same multiset of single-qubit marginal spectra
    a = sorted(tuple(np.round(np.linalg.eigvalsh(partial_trace(psi, [q]).entries), 9)) for q in range(1, N + 1))
    b = sorted(tuple(np.round(np.linalg.eigvalsh(partial_trace(red, [q]).entries), 9)) for q in range(1, N + 1))
    assert a == b


def test_two_block_support():
    v = two_block_canonical(TwoBlockSpec(2, 3, 0.4, 0.0, -1)).amplitudes
    nz = set(np.flatnonzero(np.abs(v) > 1e-14))
    assert nz == {0, 31, 7, 24}


@pytest.mark.parametrize("N", [2, 3, 5])
def test_dicke_norm_and_w(N):
    assert np.allclose(dicke(N, 1).amplitudes, w_state(N).amplitudes)
    assert np.allclose(dicke(N, N - 1).amplitudes, w_tilde(N).amplitudes)
    for k in range(N + 1):
        v = dicke(N, k).amplitudes
        assert np.isclose(np.linalg.norm(v), 1)


def test_w_superposition_endpoints():
    assert np.allclose(w_superposition(4, 0.0).amplitudes, w_state(4).amplitudes)
    assert np.allclose(w_superposition(4, np.pi / 2).amplitudes, w_tilde(4).amplitudes)


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_sigma_w_is_state_with_binomial_weights(N):
    s = sigma_w(N).entries
    assert np.isclose(np.trace(s).real, 1)
    assert np.linalg.eigvalsh(s).min() > -1e-12
    if N == 2:
        # weights 1/4, 1/2, 1/4 on the symmetric subspace
        assert np.allclose(sorted(np.linalg.eigvalsh(s))[-3:], [0.25, 0.25, 0.5])


def test_css_is_diagonal_and_normalised():
    s = css_ghz_superposition(2, 3, 0.7).entries
    assert np.allclose(s, np.diag(np.diag(s)))
    assert np.isclose(np.trace(s).real, 1)


def _trace_oracle(mat, N, keep):
    t = mat.reshape([2] * (2 * N))
    drop = [q for q in range(N) if q not in keep]
    for k, q in enumerate(sorted(drop, reverse=True)):
        n = t.ndim // 2
        t = np.trace(t, axis1=q, axis2=q + n)
    d = 2 ** len(keep)
    return t.reshape(d, d)


@given(st.integers(2, 4), st.data())
def test_partial_trace_matches_oracle(N, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    keep = sorted(data.draw(st.sets(st.integers(1, N), min_size=1, max_size=N - 1)))
    rho = random_density(rng, N)
    got = partial_trace(rho, keep).entries
    assert np.allclose(got, _trace_oracle(rho, N, [q - 1 for q in keep]))


def test_partial_transpose_two_qubit_by_hand():
    bell = np.zeros(4); bell[0] = bell[3] = 1 / np.sqrt(2)
    pt = partial_transpose(np.outer(bell, bell), [2])
    assert np.isclose(np.linalg.eigvalsh(pt).min(), -0.5)


def test_product_state_is_ppt(rng):
    a, b = random_pure(rng, 1), random_pure(rng, 1)
    assert min_pt_eigenvalue(density(PureState(2, np.kron(a, b))), [1]) > -1e-12


def test_overlap_conjugates_first_argument():
    a = PureState(1, np.array([1j, 0]))
    b = PureState(1, np.array([1, 0]))
    assert np.isclose(overlap(a, b), -1j)


def test_schmidt_check_flags_ghz_superposition():
    psi = ghz_superposition(GhzSuperpositionSpec(3, 0, 1, alpha=0.6))
    assert schmidt_necessary_check(psi).verdict == NOT_SD
