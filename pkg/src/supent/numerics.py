"""Dense Hermitian spectra, entropies (in bits) and positive real roots."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import DomainError, as_matrix

ZERO_EIG = 1e-12
KERNEL_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray

    def __len__(self):
        return len(self.roots)


def eigh(a, herm_tol: float = 1e-8) -> Spectrum:
    a = as_matrix(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("expected a square matrix")
    if a.size and np.max(np.abs(a - a.conj().T)) > herm_tol:
        raise DomainError("matrix is not Hermitian")
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return Spectrum(w, v)


def _entropy_of_probs(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > ZERO_EIG]
    return float(-np.sum(p * np.log2(p)))


def shannon_entropy(p) -> float:
    """-sum p log2 p with 0 log 0 = 0."""
    return max(_entropy_of_probs(p), 0.0)


def von_neumann_entropy(rho) -> float:
    w = np.linalg.eigvalsh(as_matrix(rho))
    return max(_entropy_of_probs(w), 0.0)


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"probability {x!r} outside [0, 1]")
    return shannon_entropy([x, 1.0 - x])


def relative_entropy(x, y) -> float:
    """S(x||y) = Tr x log2 x - Tr x log2 y, or +inf if supp x is not inside supp y."""
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise DomainError("dimension mismatch")
    wx = np.linalg.eigvalsh(x)
    wy, vy = np.linalg.eigh(y)
    on = wy > ZERO_EIG
    xy = vy.conj().T @ x @ vy
    diag = np.real(np.diag(xy))
    if np.sum(diag[~on]) > KERNEL_TOL:
        return float("inf")
    wx = wx[wx > ZERO_EIG]
    val = float(np.sum(wx * np.log2(wx)) - np.sum(diag[on] * np.log2(wy[on])))
    return max(val, 0.0) if val > -1e-9 else val


# --------------------------------------------------------------------------
# roots


def _polyval_asc(coeffs: np.ndarray, t):
    return np.polynomial.polynomial.polyval(t, coeffs)


def _companion_roots(coeffs: np.ndarray) -> np.ndarray:
    # coeffs ascending, leading nonzero
    lead = coeffs[-1]
    deg = len(coeffs) - 1
    comp = np.zeros((deg, deg))
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -coeffs[:-1] / lead
    return np.linalg.eigvals(comp)


def _polish(coeffs, t, scale):
    """Newton iterations, falling back to bisection on a bracket if Newton strays."""
    dcoeffs = np.polynomial.polynomial.polyder(coeffs)
    x = t
    for _ in range(100):
        f = _polyval_asc(coeffs, x)
        if abs(f) <= 1e-15 * scale:
            break
        df = _polyval_asc(dcoeffs, x)
        if df == 0:
            break
        step = f / df
        x_new = x - step
        if not np.isfinite(x_new) or x_new <= 0 or abs(x_new - t) > 0.5 * abs(t) + 1e-8:
            x = _bisect(coeffs, t)
            break
        x = x_new
        if abs(step) <= 1e-16 * abs(x):
            break
    return x


def _bisect(coeffs, t):
    h = max(1e-6 * t, 1e-12)
    lo, hi = t - h, t + h
    for _ in range(60):
        if np.sign(_polyval_asc(coeffs, lo)) != np.sign(_polyval_asc(coeffs, hi)):
            break
        h *= 2
        lo, hi = max(t - h, 0.0), t + h
    else:
        return t
    flo = _polyval_asc(coeffs, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = _polyval_asc(coeffs, mid)
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 4e-16 * hi:
            break
    return 0.5 * (lo + hi)


def positive_real_roots(coefficients, imag_tol: float = 1e-6) -> RootSet:
    """All strictly positive real roots of a polynomial given in ascending degree.

    Companion-matrix eigenvalues give global coverage; near-real positive
    candidates are then polished with Newton steps (bisection fallback).
    """
    c = np.trim_zeros(np.asarray(coefficients, dtype=float), "b")
    if c.size == 0:
        raise DomainError("zero polynomial")
    # strip roots at t = 0
    nz = np.flatnonzero(c)
    c = c[nz[0]:]
    if c.size == 1:
        return RootSet(np.array([]), np.array([]))
    scale = float(np.max(np.abs(c)))
    cand = _companion_roots(c)
    out = []
    for z in cand:
        if z.real <= 0 or abs(z.imag) > imag_tol * max(1.0, abs(z)):
            continue
        out.append(_polish(c, float(z.real), scale))
    out = sorted(x for x in out if x > 0)
    roots = []
    for x in out:
        if roots and abs(x - roots[-1]) <= 1e-6 * max(1.0, x):
            # a double root is only resolved to ~sqrt(eps); keep the smaller residual
            if abs(_polyval_asc(c, x)) < abs(_polyval_asc(c, roots[-1])):
                roots[-1] = x
            continue
        roots.append(x)
    roots = np.array(roots)
    return RootSet(roots, _polyval_asc(c, roots) if roots.size else np.array([]))
