"""State families and elementary operations on N-qubit states.

Qubits are labelled 1..N; qubit 1 is the most significant bit of the
amplitude index, so ``|i_1 i_2 ... i_N>`` reads left to right.
Storage is dense everywhere.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

MAX_PURE_QUBITS = 20
MAX_DENSITY_QUBITS = 12

NORM_TOL = 1e-12
REPAIR_TOL = 1e-9
HERM_TOL = 1e-10

BitString = tuple  # tuple[int, ...], qubit 1 first


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


def _num_qubits_for(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if n < 1 or 2**n != dim:
        raise DomainError(f"dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector; index k is the bit string of k."""

    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = int(self.num_qubits)
        if not 1 <= n <= MAX_PURE_QUBITS:
            raise DomainError(f"num_qubits must be in [1, {MAX_PURE_QUBITS}], got {n}")
        amp = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amp.size != 2**n:
            raise DomainError(f"expected {2**n} amplitudes, got {amp.size}")
        norm = np.linalg.norm(amp)
        if abs(norm**2 - 1.0) > NORM_TOL:
            if abs(norm - 1.0) > REPAIR_TOL:
                raise DomainError(f"state norm {norm!r} is not 1")
            amp = amp / norm
        amp.setflags(write=False)
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def from_vector(cls, vec) -> "PureState":
        vec = np.asarray(vec, dtype=complex).reshape(-1)
        return cls(_num_qubits_for(vec.size), vec)

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    def tensor(self) -> np.ndarray:
        """Amplitudes as an N-index array of shape (2, ..., 2)."""
        return self.amplitudes.reshape((2,) * self.num_qubits)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator on 2^N dims."""

    num_qubits: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = int(self.num_qubits)
        if not 1 <= n <= MAX_DENSITY_QUBITS:
            raise DomainError(f"num_qubits must be in [1, {MAX_DENSITY_QUBITS}], got {n}")
        mat = np.array(self.entries, dtype=complex)
        d = 2**n
        if mat.shape != (d, d):
            raise DomainError(f"expected a {d}x{d} matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > HERM_TOL:
            raise DomainError("matrix is not Hermitian")
        mat = 0.5 * (mat + mat.conj().T)
        tr = np.trace(mat).real
        if abs(tr - 1.0) > HERM_TOL:
            raise DomainError(f"trace {tr!r} is not 1")
        if np.linalg.eigvalsh(mat)[0] < -HERM_TOL:
            raise DomainError("matrix has a negative eigenvalue")
        mat.setflags(write=False)
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "entries", mat)

    @classmethod
    def from_matrix(cls, mat) -> "DensityMatrix":
        mat = np.asarray(mat, dtype=complex)
        return cls(_num_qubits_for(mat.shape[0]), mat)

    @property
    def dim(self) -> int:
        return 2**self.num_qubits


def as_vector(psi) -> np.ndarray:
    if isinstance(psi, PureState):
        return psi.amplitudes
    return np.asarray(psi, dtype=complex).reshape(-1)


def as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.entries
    if isinstance(rho, PureState):
        return density(rho).entries
    return np.asarray(rho, dtype=complex)


@dataclass(frozen=True)
class GhzSuperpositionSpec:
    """cos(alpha)|G_i^{sign_i}> + e^{i gamma} sin(alpha)|G_j^{sign_j}>."""

    N: int
    i: int
    j: int
    sign_i: int = 1
    sign_j: int = 1
    alpha: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.N < 2:
            raise DomainError("N must be >= 2")
        top = 2 ** (self.N - 1)
        for name in ("i", "j"):
            v = getattr(self, name)
            if not 0 <= v < top:
                raise DomainError(f"{name}={v} outside [0, {top - 1}]")
        if self.i == self.j:
            raise DomainError("i and j must differ")
        if self.sign_i not in (1, -1) or self.sign_j not in (1, -1):
            raise DomainError("signs must be +1 or -1")

    def two_block(self) -> "TwoBlockSpec":
        """Block sizes and composite sign of the LU-equivalent two-block form."""
        m, n = hamming_split(self.i, self.j, self.N)
        return TwoBlockSpec(m, n, self.alpha, self.gamma, self.sign_i * self.sign_j)


@dataclass(frozen=True)
class TwoBlockSpec:
    m: int
    n: int
    alpha: float = 0.0
    gamma: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError("block sizes must be >= 1")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")


# --------------------------------------------------------------------------
# constructors


def binary_rep(i: int, N: int) -> BitString:
    if N < 1:
        raise DomainError("N must be positive")
    if not 0 <= i < 2**N:
        raise DomainError(f"{i} does not fit in {N} bits")
    return tuple((i >> (N - 1 - k)) & 1 for k in range(N))


def _basis_state(N: int, index: int) -> np.ndarray:
    v = np.zeros(2**N, dtype=complex)
    v[index] = 1.0
    return v


def ghz_canonical(N: int, i: int, sign: int = 1) -> PureState:
    if N < 2:
        raise DomainError("N must be >= 2")
    if not 0 <= i < 2 ** (N - 1):
        raise DomainError(f"i={i} outside [0, {2 ** (N - 1) - 1}]")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    v = np.zeros(2**N, dtype=complex)
    v[i] = 1 / np.sqrt(2)
    v[2**N - 1 - i] = sign / np.sqrt(2)
    return PureState(N, v)


def ghz_superposition(spec: GhzSuperpositionSpec) -> PureState:
    gi = ghz_canonical(spec.N, spec.i, spec.sign_i).amplitudes
    gj = ghz_canonical(spec.N, spec.j, spec.sign_j).amplitudes
    v = np.cos(spec.alpha) * gi + np.exp(1j * spec.gamma) * np.sin(spec.alpha) * gj
    return PureState(spec.N, v)


def hamming_split(i: int, j: int, N: int) -> tuple[int, int]:
    """(agreeing bits, disagreeing bits) of the N-bit strings of i and j."""
    top = 2 ** (N - 1)
    if not (0 <= i < top and 0 <= j < top):
        raise DomainError(f"indices must lie in [0, {top - 1}]")
    if i == j:
        raise DomainError("i and j must differ")
    n = bin(i ^ j).count("1")
    return N - n, n


def two_block_canonical(spec: TwoBlockSpec) -> PureState:
    m, n = spec.m, spec.n
    N = m + n
    c, s = np.cos(spec.alpha), np.sin(spec.alpha)
    ph = np.exp(1j * spec.gamma)
    v = np.zeros(2**N, dtype=complex)
    v[0] = c / np.sqrt(2)
    v[2**N - 1] = spec.sign * c / np.sqrt(2)
    v[2**n - 1] = s * ph / np.sqrt(2)
    v[(2**m - 1) << n] = s * ph / np.sqrt(2)
    return PureState(N, v)


def reduce_to_two_block(spec: GhzSuperpositionSpec) -> tuple[PureState, TwoBlockSpec]:
    """Apply the explicit local unitary taking a GHZ superposition to two-block form.

    Bit flips send the string of ``i`` to all zeros, a phase gate on the
    first agreeing qubit absorbs ``sign_j``, and the qubits are reordered
    so the agreeing block comes first.
    """
    N = spec.N
    psi = ghz_superposition(spec).tensor()
    bits_i = binary_rep(spec.i, N)
    bits_j = binary_rep(spec.j, N)
    for q in range(N):
        if bits_i[q]:
            psi = np.flip(psi, axis=q)
    agree = [q for q in range(N) if bits_i[q] == bits_j[q]]
    differ = [q for q in range(N) if bits_i[q] != bits_j[q]]
    if spec.sign_j == -1:
        phase = np.array([1.0, -1.0]).reshape([2 if q == agree[0] else 1 for q in range(N)])
        psi = psi * phase
    psi = np.transpose(psi, agree + differ)
    return PureState(N, psi.reshape(-1)), spec.two_block()


def _weight_vector(N: int, weights: Iterable[int]) -> np.ndarray:
    w = np.array([bin(k).count("1") for k in range(2**N)])
    return np.isin(w, list(weights))


def dicke(N: int, k: int) -> PureState:
    if N < 1:
        raise DomainError("N must be positive")
    if not 0 <= k <= N:
        raise DomainError(f"k={k} outside [0, {N}]")
    v = _weight_vector(N, [k]).astype(complex) / np.sqrt(comb(N, k))
    return PureState(N, v)


def w_state(N: int) -> PureState:
    if N < 2:
        raise DomainError("W states need N >= 2")
    return dicke(N, 1)


def w_tilde(N: int) -> PureState:
    if N < 2:
        raise DomainError("W states need N >= 2")
    return dicke(N, N - 1)


def w_superposition(N: int, alpha: float, gamma: float = 0.0) -> PureState:
    if N < 2:
        raise DomainError("W states need N >= 2")
    w, wt = w_state(N).amplitudes, w_tilde(N).amplitudes
    return PureState(N, np.cos(alpha) * w + np.exp(1j * gamma) * np.sin(alpha) * wt)


def remove_w_phase(N: int, alpha: float, gamma: float) -> PureState:
    """Phase-free representative of cos a|W> + e^{ig} sin a|W~>.

    The two are related by |1> -> e^{-i gamma/(N-2)}|1> on every qubit,
    up to a global phase, hence the N >= 3 requirement.
    """
    if N < 3:
        raise DomainError("phase removal needs N >= 3")
    return w_superposition(N, alpha, 0.0)


def sigma_w(N: int) -> DensityMatrix:
    """Closest separable state of the N-qubit W state (mixture of Dicke projectors).

    Weights are binomial, C(N,k) (1/N)^k ((N-1)/N)^(N-k): the phase-averaged
    product state (sqrt((N-1)/N)|0> + sqrt(1/N)|1>)^(x)N.
    """
    if N < 2:
        raise DomainError("N must be >= 2")
    d = 2**N
    mat = np.zeros((d, d), dtype=complex)
    for k in range(N + 1):
        # 0.0**0 == 1.0 in python, as the k=0 and k=N terms need
        weight = comb(N, k) * (1 / N) ** k * ((N - 1) / N) ** (N - k)
        s = dicke(N, k).amplitudes
        mat += weight * np.outer(s, s.conj())
    return DensityMatrix(N, mat)


def css_ghz_superposition(m: int, n: int, alpha: float) -> DensityMatrix:
    """Diagonal candidate CSS of the two-block state on m + n qubits."""
    if m < 1 or n < 1:
        raise DomainError("block sizes must be >= 1")
    N = m + n
    c2, s2 = np.cos(alpha) ** 2, np.sin(alpha) ** 2
    diag = np.zeros(2**N)
    diag[0] += c2 / 2
    diag[2**N - 1] += c2 / 2
    diag[2**n - 1] += s2 / 2
    diag[(2**m - 1) << n] += s2 / 2
    return DensityMatrix(N, np.diag(diag))


# --------------------------------------------------------------------------
# operations


def density(psi) -> DensityMatrix:
    v = as_vector(psi)
    return DensityMatrix(_num_qubits_for(v.size), np.outer(v, v.conj()))


def overlap(phi, psi) -> complex:
    a, b = as_vector(phi), as_vector(psi)
    if a.shape != b.shape:
        raise DomainError("qubit count mismatch")
    return complex(np.vdot(a, b))


def _check_qubits(qubits: Sequence[int], N: int, proper: bool) -> list[int]:
    qs = sorted(set(int(q) for q in qubits))
    if not qs:
        raise DomainError("qubit set must be nonempty")
    if qs[0] < 1 or qs[-1] > N:
        raise DomainError(f"qubit labels must lie in 1..{N}")
    if proper and len(qs) == N:
        raise DomainError("qubit set must be a proper subset")
    return qs


def partial_trace(rho, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the qubits in ``keep`` (1-based, returned in ascending order)."""
    mat = as_matrix(rho)
    N = _num_qubits_for(mat.shape[0])
    keep = _check_qubits(keep, N, proper=False)
    drop = [q for q in range(1, N + 1) if q not in keep]
    k0 = [q - 1 for q in keep]
    d0 = [q - 1 for q in drop]
    t = mat.reshape((2,) * (2 * N))
    t = np.transpose(t, k0 + d0 + [N + q for q in k0] + [N + q for q in d0])
    dk, dd = 2 ** len(keep), 2 ** len(drop)
    red = np.einsum("ajbj->ab", t.reshape(dk, dd, dk, dd))
    return DensityMatrix(len(keep), red)


def partial_transpose(rho, subset: Sequence[int]) -> np.ndarray:
    mat = as_matrix(rho)
    N = _num_qubits_for(mat.shape[0])
    subset = _check_qubits(subset, N, proper=True)
    t = mat.reshape((2,) * (2 * N))
    axes = list(range(2 * N))
    for q in subset:
        axes[q - 1], axes[N + q - 1] = axes[N + q - 1], axes[q - 1]
    return np.transpose(t, axes).reshape(2**N, 2**N)


def min_pt_eigenvalue(rho, subset: Sequence[int]) -> float:
    return float(np.linalg.eigvalsh(partial_transpose(rho, subset))[0])


@dataclass(frozen=True)
class SchmidtReport:
    verdict: str
    # (traced qubit, subset of the remaining qubits, min PT eigenvalue)
    npt_cuts: tuple = ()


NOT_SD = "not Schmidt-decomposable"
INCONCLUSIVE = "inconclusive"


def schmidt_necessary_check(psi, tol: float = 1e-10) -> SchmidtReport:
    """Look for an entangled single-qubit-traced marginal.

    A Schmidt-decomposable state has separable marginals after tracing
    any qubit, so one NPT cut rules it out. Finding none proves nothing.
    """
    v = as_vector(psi)
    N = _num_qubits_for(v.size)
    if N < 3:
        raise DomainError("need N >= 3")
    rho = density(v)
    cuts = []
    for traced in range(1, N + 1):
        rest = [q for q in range(1, N + 1) if q != traced]
        red = partial_trace(rho, rest)
        # labels of red are 1..N-1; cuts up to complement
        for r in range(1, (N - 1) // 2 + 1):
            for sub in itertools.combinations(range(1, N), r):
                if 2 * r == N - 1 and 1 not in sub:
                    continue
                ev = min_pt_eigenvalue(red, sub)
                if ev < -tol:
                    cuts.append((traced, tuple(rest[q - 1] for q in sub), ev))
    return SchmidtReport(NOT_SD if cuts else INCONCLUSIVE, tuple(cuts))
