"""Discord, dissonance and classical/total correlations via local dephasing.

Discord of rho is min over product bases of S(chi) - S(rho), chi being rho
dephased in that basis; dissonance is the same quantity for a separable
state. The minimum is searched over seeded Haar bases and refined one
angle at a time, so reported values are upper bounds with a basis witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np
from scipy import optimize

from .gme import _best_index, _start_rng
from .numerics import relative_entropy, shannon_entropy, von_neumann_entropy
from .qstate import DensityMatrix, DomainError, _num_qubits_for, as_matrix, partial_trace


@dataclass(frozen=True)
class LocalBasisSet:
    """One 2x2 unitary per qubit; its columns are the local basis vectors."""

    bases: tuple

    def __post_init__(self):
        bs = tuple(np.array(u, dtype=complex).reshape(2, 2) for u in self.bases)
        for u in bs:
            if np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
                raise DomainError("local basis is not orthonormal")
        object.__setattr__(self, "bases", bs)

    @classmethod
    def computational(cls, N: int) -> "LocalBasisSet":
        return cls(tuple(np.eye(2) for _ in range(N)))

    @classmethod
    def from_angles(cls, angles) -> "LocalBasisSet":
        return cls(tuple(basis_from_angles(t, p) for t, p in np.reshape(angles, (-1, 2))))

    @property
    def num_qubits(self) -> int:
        return len(self.bases)

    def unitary(self) -> np.ndarray:
        u = np.ones((1, 1), dtype=complex)
        for b in self.bases:
            u = np.kron(u, b)
        return u


@dataclass(frozen=True)
class SymmetricBasisParam:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError("p must lie in [0, 1]")

    def basis(self) -> np.ndarray:
        sp, sq = np.sqrt(self.p), np.sqrt(1 - self.p)
        return np.array([[sp, sq], [sq, -sp]])


@dataclass(frozen=True)
class SearchConfig:
    num_bases: int = 200
    num_refine: int = 4
    max_sweeps: int = 30
    grid_points: int = 16
    tolerance: float = 1e-13
    seed: int = 0


@dataclass(frozen=True)
class SweepResult:
    grid: np.ndarray
    entropy: np.ndarray
    argmin: np.ndarray
    min: float


@dataclass(frozen=True)
class SearchResult:
    value: float
    basis: LocalBasisSet
    angles: np.ndarray
    entropy_dephased: float
    entropy_state: float
    # dephased entropies of every random start and every refined candidate
    start_values: np.ndarray = field(default=None, repr=False)
    refined_values: np.ndarray = field(default=None, repr=False)


@dataclass(frozen=True)
class CorrelationsReport:
    T: float
    D: float
    E: float | None
    Q: float | None
    C: float
    C_sigma: float | None = None
    conjecture_holds: bool | None = None
    extra: dict = field(default_factory=dict)


# --------------------------------------------------------------------------
# dephasing


def basis_from_angles(theta: float, phi: float) -> np.ndarray:
    """Columns (cos t, e^{ip} sin t) and (-e^{-ip} sin t, cos t)."""
    c, s, e = np.cos(theta), np.sin(theta), np.exp(1j * phi)
    return np.array([[c, -np.conj(e) * s], [e * s, c]])


def _apply_local(t: np.ndarray, u: np.ndarray, q: int, N: int) -> np.ndarray:
    # t: (2,)*N x (2,)*N operator tensor; rotate rows and columns of qubit q by u^dag . u
    t = np.tensordot(u.conj().T, t, axes=([1], [q]))
    t = np.moveaxis(t, 0, q)
    t = np.tensordot(t, u, axes=([N + q], [0]))
    return np.moveaxis(t, -1, N + q)


def dephased_probabilities(rho, basis: LocalBasisSet) -> np.ndarray:
    """Diagonal of rho in the product basis: <k|rho|k> for every k."""
    mat = as_matrix(rho)
    N = _num_qubits_for(mat.shape[0])
    if basis.num_qubits != N:
        raise DomainError("qubit count mismatch")
    t = mat.reshape((2,) * (2 * N))
    for q, u in enumerate(basis.bases):
        t = _apply_local(t, u, q, N)
    return np.clip(np.real(np.diag(t.reshape(2**N, 2**N))), 0.0, None)


def dephase(rho, basis: LocalBasisSet) -> DensityMatrix:
    mat = as_matrix(rho)
    N = _num_qubits_for(mat.shape[0])
    p = dephased_probabilities(mat, basis)
    U = basis.unitary()
    chi = (U * p) @ U.conj().T
    return DensityMatrix(N, chi)


# --------------------------------------------------------------------------
# basis search


def _haar_unitary(rng: np.random.Generator) -> np.ndarray:
    # Gram-Schmidt on two complex Gaussian vectors
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    a /= np.linalg.norm(a)
    b -= np.vdot(a, b) * a
    b /= np.linalg.norm(b)
    return np.stack([a, b], axis=1)


def _angles_of(u: np.ndarray) -> tuple[float, float]:
    a0, a1 = u[:, 0]
    return float(np.arctan2(abs(a1), abs(a0))), float(np.angle(a1) - np.angle(a0))


def _to_polar(y: np.ndarray) -> np.ndarray:
    out = np.empty_like(y)
    out[0::2] = np.hypot(y[0::2], y[1::2])
    out[1::2] = np.arctan2(y[1::2], y[0::2])
    return out


def _to_cartesian(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    out[0::2] = x[0::2] * np.cos(x[1::2])
    out[1::2] = x[0::2] * np.sin(x[1::2])
    return out


class _Objective:
    """Dephased entropy as a function of 2N Cartesian basis coordinates.

    Qubit q's basis is ``basis_from_angles(r, phi)`` with (r cos phi, r sin phi)
    = (y[2q], y[2q+1]); unlike (theta, phi) these coordinates stay regular
    at the computational basis.
    """

    def __init__(self, mat: np.ndarray):
        self.N = _num_qubits_for(mat.shape[0])
        self.mat = mat

    def __call__(self, y: np.ndarray) -> float:
        x = _to_polar(np.asarray(y, float))
        U = np.ones((1, 1), dtype=complex)
        for q in range(self.N):
            U = np.kron(U, basis_from_angles(x[2 * q], x[2 * q + 1]))
        p = np.einsum("ik,ik->k", U.conj(), self.mat @ U).real
        return shannon_entropy(p)


def _coordinate_descent(obj: _Objective, y: np.ndarray, cfg: SearchConfig):
    """Per coordinate: a coarse scan over one period, then a bounded Brent polish."""
    y = y.copy()
    best = obj(y)
    half = np.pi / 4
    step = 2 * half / cfg.grid_points
    for _ in range(cfg.max_sweeps):
        start = best
        for i in range(len(y)):
            def f(v, i=i):
                z = y.copy()
                z[i] = v
                return obj(z)

            grid = y[i] + np.linspace(-half, half, cfg.grid_points, endpoint=False)
            vals = [f(v) for v in grid]
            j = int(np.argmin(vals))
            res = optimize.minimize_scalar(f, bounds=(grid[j] - step, grid[j] + step),
                                           method="bounded", options={"xatol": 1e-12})
            for v, fv in ((grid[j], vals[j]), (float(res.x), float(res.fun))):
                if fv < best:
                    y[i], best = v, fv
        if start - best <= cfg.tolerance:
            break
    return y, best


def _simplex_polish(obj: _Objective, y: np.ndarray, cfg: SearchConfig):
    # joint moves: coordinate steps stall where the entropy has a cusp
    best = obj(y)
    for _ in range(8):
        res = optimize.minimize(obj, y, method="Nelder-Mead",
                                options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 20_000,
                                         "adaptive": True})
        if best - res.fun <= cfg.tolerance:
            if res.fun < best:
                y, best = res.x, float(res.fun)
            break
        y, best = res.x, float(res.fun)
    return y, best


def _search(rho, cfg: SearchConfig) -> SearchResult:
    mat = as_matrix(rho)
    obj = _Objective(mat)
    N = obj.N
    starts = np.empty((cfg.num_bases, 2 * N))
    vals = np.empty(cfg.num_bases)
    for k in range(cfg.num_bases):
        rng = _start_rng(cfg.seed, k)
        starts[k] = _to_cartesian(np.ravel([_angles_of(_haar_unitary(rng)) for _ in range(N)]))
        vals[k] = obj(starts[k])
    order = np.argsort(vals, kind="stable")[:cfg.num_refine]
    refined = []
    for k in order:
        y, _ = _coordinate_descent(obj, starts[k], cfg)
        y, _ = _simplex_polish(obj, y, cfg)
        refined.append(_coordinate_descent(obj, y, cfg))
    k = _best_index(-np.array([v for _, v in refined]))
    y, s_chi = refined[k]
    x = _to_polar(y)
    s_rho = von_neumann_entropy(mat)
    return SearchResult(max(s_chi - s_rho, 0.0), LocalBasisSet.from_angles(x), x, s_chi, s_rho,
                        vals, np.array([v for _, v in refined]))


def discord_search(rho, config: SearchConfig | None = None) -> SearchResult:
    """Upper bound on the relative-entropy discord of rho, with its basis."""
    return _search(rho, config or SearchConfig())


def dissonance(sigma, config: SearchConfig | None = None) -> SearchResult:
    """Upper bound on the dissonance of a separable state (separability not checked)."""
    return _search(sigma, config or SearchConfig())


# --------------------------------------------------------------------------
# symmetric-basis model for the W state


def w_lambda(N: int, k: int, p: float) -> float:
    """|<x'|W>|^2 for a string x' with k ones in the local basis parametrised by p."""
    if not 0 <= k <= N:
        raise DomainError(f"k={k} outside [0, {N}]")
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    q = 1.0 - p
    # the removable singularities at k = 0 and k = N are cancelled by the bracket
    if k == 0:
        return N * p ** (N - 1) * q
    if k == N:
        return N * p * q ** (N - 1)
    return p ** (N - k - 1) * q ** (k - 1) * (N * q - k) ** 2 / N


def w_symmetric_entropy(N: int, p: float) -> float:
    lam = np.array([w_lambda(N, k, p) for k in range(N + 1)])
    mult = np.array([comb(N, k) for k in range(N + 1)], dtype=float)
    pos = lam > 0
    return float(-np.sum(mult[pos] * lam[pos] * np.log2(lam[pos])))


def w_discord_sweep(N: int, grid: Sequence[float]) -> SweepResult:
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2:
        raise DomainError("grid needs at least two points")
    if grid.min() < 0 or grid.max() > 1:
        raise DomainError("grid must lie in [0, 1]")
    ent = np.array([w_symmetric_entropy(N, p) for p in grid])
    m = float(ent.min())
    return SweepResult(grid, ent, grid[np.flatnonzero(ent <= m + 1e-12)], m)


# --------------------------------------------------------------------------
# total and classical correlations


def _marginals(mat: np.ndarray) -> list[np.ndarray]:
    N = _num_qubits_for(mat.shape[0])
    return [partial_trace(mat, [q]).entries for q in range(1, N + 1)]


def total_correlation(rho) -> float:
    """S(rho || product of its single-qubit marginals) = sum S(rho_i) - S(rho)."""
    mat = as_matrix(rho)
    return max(sum(von_neumann_entropy(m) for m in _marginals(mat)) - von_neumann_entropy(mat), 0.0)


def _log2m(a: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(a)
    return (v * np.log2(np.clip(w, 1e-300, None))) @ v.conj().T


def classical_correlation(rho, samples: int = 200, seed: int = 0) -> float:
    """min over product states pi of S(rho||pi), taken at the product of marginals.

    ``samples`` seeded perturbations of the marginals are checked not to
    beat it by more than 1e-9; a violation raises ``ArithmeticError``.
    """
    mat = as_matrix(rho)
    marg = _marginals(mat)
    s_rho = von_neumann_entropy(mat)
    best = total_correlation(mat)
    rng = _start_rng(seed, 0)
    for _ in range(samples):
        # S(rho||pi1 x ... x piN) = -S(rho) - sum Tr rho_i log pi_i
        val = -s_rho
        for m in marg:
            z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            g = z @ z.conj().T
            g /= np.trace(g).real
            eps = rng.uniform(1e-4, 0.5)
            pi = (1 - eps) * m + eps * g
            val -= float(np.real(np.trace(m @ _log2m(pi))))
        if val < best - 1e-9:
            raise ArithmeticError("a product state beats the product of marginals")
    return best


def correlations_report(rho, e_value: float | None = None, sigma=None,
                        config: SearchConfig | None = None) -> CorrelationsReport:
    """T, D, E, Q, C; Q and C_sigma need the closest separable state ``sigma``.

    C_sigma is the total correlation of the dephased sigma (its closest
    classical state), i.e. S(chi_sigma || pi_chi_sigma).
    """
    mat = as_matrix(rho)
    T = total_correlation(mat)
    D = discord_search(mat, config).value
    C = classical_correlation(mat)
    Q = c_sigma = holds = None
    extra = {}
    if sigma is not None:
        qres = dissonance(sigma, config)
        Q = qres.value
        chi = dephase(sigma, qres.basis)
        c_sigma = total_correlation(chi)
        extra["S(sigma||chi_sigma)"] = relative_entropy(as_matrix(sigma), chi)
    if e_value is not None and Q is not None:
        holds = bool(T > e_value + Q + c_sigma)
    return CorrelationsReport(T, D, e_value, Q, C, c_sigma, holds, extra)
