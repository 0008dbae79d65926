"""Geometric measure of entanglement.

``P_max(psi)`` is the largest squared overlap of ``psi`` with a fully
product pure state and ``G = sqrt(1 - P_max)``. Numeric routes (general,
fully symmetric, two-block symmetric) sit next to the closed forms for
GHZ and W superpositions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import optimize

from .numerics import RootSet, positive_real_roots
from .qstate import DomainError, PureState, as_vector, _num_qubits_for

FREE = "free"
SYMMETRIC = "fully-symmetric"


def block_tag(m: int, n: int) -> str:
    return f"block-symmetric({m},{n})"


@dataclass(frozen=True)
class ProductState:
    """Tensor product of single-qubit states cos(t)|0> + e^{il} sin(t)|1>.

    ``factors`` has shape (N, 2); rows are unit vectors. Global phases of the
    individual factors are kept in ``factors`` but dropped by ``angles``.
    """

    factors: np.ndarray
    symmetry_tag: str = FREE

    def __post_init__(self):
        f = np.array(self.factors, dtype=complex).reshape(-1, 2)
        norms = np.linalg.norm(f, axis=1)
        if np.any(np.abs(norms - 1) > 1e-12):
            f = f / norms[:, None]
        f.setflags(write=False)
        object.__setattr__(self, "factors", f)

    @classmethod
    def from_angles(cls, thetas, lams, symmetry_tag: str = FREE) -> "ProductState":
        thetas, lams = np.asarray(thetas, float), np.asarray(lams, float)
        f = np.stack([np.cos(thetas), np.exp(1j * lams) * np.sin(thetas)], axis=1)
        return cls(f, symmetry_tag)

    @property
    def num_qubits(self) -> int:
        return len(self.factors)

    @property
    def angles(self) -> tuple[np.ndarray, np.ndarray]:
        """(theta in [0, pi/2], lambda in [0, 2 pi)) per qubit."""
        a0, a1 = self.factors[:, 0], self.factors[:, 1]
        theta = np.arctan2(np.abs(a1), np.abs(a0))
        lam = np.mod(np.angle(a1) - np.angle(a0), 2 * np.pi)
        lam = np.where(np.abs(a1) < 1e-15, 0.0, lam)
        return theta, lam

    def vector(self) -> np.ndarray:
        v = np.ones(1, dtype=complex)
        for f in self.factors:
            v = np.kron(v, f)
        return v


@dataclass(frozen=True)
class OptimizerConfig:
    num_starts: int = 64
    max_sweeps: int = 500
    tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.num_starts < 1 or self.max_sweeps < 1 or self.tolerance <= 0:
            raise DomainError("optimizer settings must be positive")


@dataclass(frozen=True)
class PmaxResult:
    value: float
    witness: ProductState
    converged: bool
    starts_agreeing: int

    @property
    def gme(self) -> float:
        return gme_from_pmax(min(max(self.value, 0.0), 1.0))


# --------------------------------------------------------------------------
# seeded starts


def _start_rng(seed: int, start: int) -> np.random.Generator:
    # counter-based stream per (seed, start): independent of execution order
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, start])))


def haar_qubit(rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` Haar-random single-qubit states, shape (size, 2)."""
    z = rng.standard_normal((size, 2)) + 1j * rng.standard_normal((size, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


@lru_cache(maxsize=64)
def _initial_factors(seed: int, num_starts: int, N: int, dim: int = 2) -> np.ndarray:
    out = np.empty((num_starts, N, dim), dtype=complex)
    for k in range(num_starts):
        rng = _start_rng(seed, k)
        z = rng.standard_normal((N, dim)) + 1j * rng.standard_normal((N, dim))
        out[k] = z / np.linalg.norm(z, axis=1, keepdims=True)
    out.setflags(write=False)
    return out


def _best_index(values: np.ndarray) -> int:
    # max value, lowest start index among exact ties
    return int(np.flatnonzero(values >= values.max())[0])


# --------------------------------------------------------------------------
# general product-state maximization (alternating single-site updates)


def _kron_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[:, :, None] * b[:, None, :]).reshape(a.shape[0], -1)


def _ascent(T: np.ndarray, F: np.ndarray, N: int, max_sweeps: int, tol: float):
    """Alternating overlap ascent for many (state, start) rows at once.

    T: (R, 2**N) states, F: (R, N, 2) starting factors. Fixing all factors
    but one, the best remaining factor is the normalised contraction of the
    state against the others, so the overlap never decreases.
    Returns final factors, overlaps and per-row convergence flags.
    """
    R = T.shape[0]
    F = F.copy()
    value = np.full(R, -1.0)
    converged = np.zeros(R, dtype=bool)
    active = np.arange(R)
    Ta, Fa, va = T, F, value.copy()
    ones = np.ones((R, 1), dtype=complex)
    for _ in range(max_sweeps):
        r = len(active)
        Fc = Fa.conj()
        right = [None] * N
        right[N - 1] = ones[:r]
        for q in range(N - 2, -1, -1):
            right[q] = _kron_rows(Fc[:, q + 1], right[q + 1])
        left = ones[:r]
        for q in range(N):
            blk = Ta.reshape(r, 2**q, 2 * 2 ** (N - q - 1))
            tmp = np.matmul(left[:, None, :], blk).reshape(r, 2, 2 ** (N - q - 1))
            v = np.matmul(tmp, right[q][:, :, None])[:, :, 0]
            nv = np.linalg.norm(v, axis=1)
            safe = nv > 1e-300
            Fa[:, q] = np.where(safe[:, None], v / np.where(safe, nv, 1.0)[:, None], Fa[:, q])
            left = _kron_rows(left, Fa[:, q].conj())
        new = nv**2
        done = np.abs(new - va) <= tol
        va = new
        F[active] = Fa
        value[active] = va
        if np.any(done):
            converged[active[done]] = True
            keep = ~done
            active, Ta, Fa, va = active[keep], Ta[keep], Fa[keep], va[keep]
            if not len(active):
                break
    return F, value, converged


def pmax_numeric_many(states: Sequence, config: OptimizerConfig | None = None) -> list[PmaxResult]:
    """``pmax_numeric`` for several states with the same qubit count, batched."""
    config = config or OptimizerConfig()
    vecs = [as_vector(s) for s in states]
    if not vecs:
        return []
    N = _num_qubits_for(vecs[0].size)
    if any(v.size != 2**N for v in vecs):
        raise DomainError("all states must have the same qubit count")
    B = config.num_starts
    init = _initial_factors(config.seed, B, N)
    results = []
    # bound the working set to ~2**22 amplitudes per batch
    chunk = max(1, 2**22 // (B * 2**N))
    for lo in range(0, len(vecs), chunk):
        block = np.stack(vecs[lo:lo + chunk])
        S = block.shape[0]
        T = np.repeat(block, B, axis=0)
        F0 = np.tile(init, (S, 1, 1))
        F, val, conv = _ascent(T, F0, N, config.max_sweeps, config.tolerance)
        for s in range(S):
            sl = slice(s * B, (s + 1) * B)
            vs = val[sl]
            k = _best_index(vs)
            wit = ProductState(F[sl][k])
            exact = abs(np.vdot(wit.vector(), block[s])) ** 2
            agree = int(np.sum(vs >= vs[k] - 1e-8))
            results.append(PmaxResult(float(exact), wit, bool(conv[sl][k]), agree))
    return results


def pmax_numeric(psi, config: OptimizerConfig | None = None) -> PmaxResult:
    """Largest squared overlap with a product state, by multi-start alternating ascent.

    The returned value is achieved by ``witness`` and is therefore a lower
    bound on P_max; it is the global maximum whenever some start lands in
    its basin.
    """
    return pmax_numeric_many([psi], config)[0]


# --------------------------------------------------------------------------
# symmetric reductions


def _invariant_under_swaps(t: np.ndarray, axes: Sequence[int], atol: float = 1e-10) -> bool:
    return all(np.allclose(np.swapaxes(t, a, b), t, atol=atol) for a, b in zip(axes, axes[1:]))


def _weight_sums(psi: np.ndarray, N: int, blocks: Sequence[int]) -> np.ndarray:
    """Sum amplitudes by the Hamming weight inside each block of qubits."""
    idx = np.arange(2**N)
    out = np.zeros(tuple(b + 1 for b in blocks), dtype=complex)
    start = 0
    weights = []
    for b in blocks:
        shift = N - start - b
        part = (idx >> shift) & (2**b - 1)
        weights.append(np.array([bin(x).count("1") for x in part]))
        start += b
    np.add.at(out, tuple(weights), psi)
    return out


def pmax_symmetric(psi, config: OptimizerConfig | None = None) -> PmaxResult:
    """P_max of a permutation-invariant state with nonnegative amplitudes.

    The optimum is searched among |xi>^{(x)N} with xi = cos t|0> + sin t|1>:
    a 10^4-point scan in t followed by a bounded Brent polish.
    """
    v = as_vector(psi)
    N = _num_qubits_for(v.size)
    big = v[np.argmax(np.abs(v))]
    v = v * np.conj(big) / abs(big)
    if np.max(np.abs(v.imag)) > 1e-10 or v.real.min() < -1e-10:
        raise DomainError("amplitudes are not nonnegative up to a global phase")
    if not _invariant_under_swaps(v.reshape((2,) * N), range(N)):
        raise DomainError("state is not permutation invariant")
    a = _weight_sums(v, N, [N]).real
    w = np.arange(N + 1)

    def f(t):
        t = np.asarray(t, float)[..., None]
        return np.sum(a * np.cos(t) ** (N - w) * np.sin(t) ** w, axis=-1) ** 2

    grid = np.linspace(0.0, np.pi / 2, 10_000)
    vals = f(grid)
    k = _best_index(vals)
    h = grid[1] - grid[0]
    lo, hi = max(grid[k] - h, 0.0), min(grid[k] + h, np.pi / 2)
    res = optimize.minimize_scalar(lambda t: -f(t), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-13})
    theta = float(res.x) if -res.fun >= vals[k] else float(grid[k])
    wit = ProductState.from_angles(np.full(N, theta), np.zeros(N), SYMMETRIC)
    value = abs(np.vdot(wit.vector(), as_vector(psi))) ** 2
    return PmaxResult(float(value), wit, True, 1)


def _biblock_overlap(a: np.ndarray, m: int, n: int, x: np.ndarray) -> complex:
    t1, l1, t2, l2 = x
    w1, w2 = np.arange(m + 1), np.arange(n + 1)
    u = np.cos(t1) ** (m - w1) * (np.sin(t1) * np.exp(-1j * l1)) ** w1
    v = np.cos(t2) ** (n - w2) * (np.sin(t2) * np.exp(-1j * l2)) ** w2
    return u @ a @ v


def pmax_biblock(psi, m: int, n: int, config: OptimizerConfig | None = None) -> PmaxResult:
    """P_max of a state symmetric inside the first m and the last n qubits.

    Maximises over (xi_1)^{(x)m} (x) (xi_2)^{(x)n}: four angles, multi-start
    L-BFGS-B on the box [0, pi/2]^2 x [0, 2 pi]^2.
    """
    config = config or OptimizerConfig()
    v = as_vector(psi)
    N = _num_qubits_for(v.size)
    if m < 1 or n < 1 or m + n != N:
        raise DomainError(f"blocks ({m}, {n}) do not split {N} qubits")
    t = v.reshape((2,) * N)
    if not (_invariant_under_swaps(t, range(m)) and _invariant_under_swaps(t, range(m, N))):
        raise DomainError("state is not block symmetric")
    a = _weight_sums(v, N, [m, n])

    def neg(x):
        return -abs(_biblock_overlap(a, m, n, x)) ** 2

    bounds = [(0, np.pi / 2), (0, 2 * np.pi)] * 2
    span = np.array([np.pi / 2, 2 * np.pi] * 2)
    best_val, best_x, values = -np.inf, None, []
    for k in range(config.num_starts):
        x0 = _start_rng(config.seed, k).random(4) * span
        res = optimize.minimize(neg, x0, method="L-BFGS-B", bounds=bounds,
                                options={"ftol": 1e-16, "gtol": 1e-12, "maxiter": config.max_sweeps})
        values.append(-res.fun)
        if -res.fun > best_val:
            best_val, best_x = -res.fun, res.x
    values = np.array(values)
    t1, l1, t2, l2 = best_x
    wit = ProductState.from_angles([t1] * m + [t2] * n, [l1] * m + [l2] * n, block_tag(m, n))
    value = abs(np.vdot(wit.vector(), v)) ** 2
    return PmaxResult(float(value), wit, True, int(np.sum(values >= best_val - 1e-8)))


# --------------------------------------------------------------------------
# closed forms


def pmax_ghz_sup_analytic(m: int, n: int, alpha: float) -> float:
    """P_max of cos a|G_i> + e^{ig} sin a|G_j> with agreement/disagreement sizes (m, n)."""
    if m < 1 or n < 1:
        raise DomainError("block sizes must be >= 1")
    if m == 1 or n == 1:
        return 0.5
    return max(np.cos(alpha) ** 2, np.sin(alpha) ** 2) / 2


def w_stationarity_poly(N: int, alpha: float) -> np.ndarray:
    """Ascending coefficients of s t^N - s(N-1) t^{N-2} + c(N-1) t^2 - c, t = tan(theta)."""
    c, s = np.cos(alpha), np.sin(alpha)
    coeffs = np.zeros(N + 1)
    coeffs[N] += s
    coeffs[N - 2] -= s * (N - 1)
    coeffs[2] += c * (N - 1)
    coeffs[0] -= c
    return coeffs


def w_overlap_at(N: int, alpha: float, t) -> np.ndarray:
    """N t^2 (c + s t^{N-2})^2 / (1 + t^2)^N: squared overlap with the symmetric product at t."""
    c, s = np.cos(alpha), np.sin(alpha)
    t = np.asarray(t, float)
    return N * t**2 * (c + s * t ** (N - 2)) ** 2 / (1 + t**2) ** N


def pmax_w_sup(N: int, alpha: float, degenerate_tol: float = 1e-12) -> tuple[float, RootSet]:
    """P_max of cos a|W> + sin a|W~> from the positive roots of the stationarity polynomial."""
    if N < 3:
        raise DomainError("need N >= 3")
    c, s = np.cos(alpha), np.sin(alpha)
    if abs(s) <= degenerate_tol:
        # c((N-1)t^2 - 1)
        roots = positive_real_roots([-1.0, 0.0, N - 1.0])
    elif abs(c) <= degenerate_tol:
        # s t^{N-2} (t^2 - (N-1))
        roots = positive_real_roots([-(N - 1.0), 0.0, 1.0])
    else:
        roots = positive_real_roots(w_stationarity_poly(N, alpha))
    best = 0.0  # t -> 0+ and t -> inf both give zero overlap
    if len(roots):
        vals = w_overlap_at(N, alpha, roots.roots)
        best = max(best, float(vals[_best_index(vals)]))
    return best, roots


def gme_from_pmax(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability {p!r} outside [0, 1]")
    return float(np.sqrt(1.0 - p))


def superposition_upper_bound(alpha: float) -> float:
    """min(1, 1/2 + cos a sin a): the generic bound for a superposition of two states."""
    return float(min(1.0, 0.5 + np.cos(alpha) * np.sin(alpha)))
