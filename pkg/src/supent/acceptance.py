"""Exit criteria of the library, runnable from pytest and from ``supent verify``.

Each check returns a :class:`Check`; tolerances are fixed here and never
tuned per run. ``seed`` feeds every optimizer so runs are reproducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import log2

import numpy as np

from . import discord as dsc
from . import gme, ree
from .figures import fig1_rows
from .numerics import relative_entropy
from .qstate import (GhzSuperpositionSpec, TwoBlockSpec, css_ghz_superposition, density,
                     ghz_canonical, ghz_superposition, hamming_split, min_pt_eigenvalue,
                     partial_trace, sigma_w, two_block_canonical, w_state)

SIGNS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    passed: bool
    detail: str

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def c01_ghz_closed_form(seed: int = 0) -> Check:
    cfg = gme.OptimizerConfig(seed=seed)
    alphas = np.linspace(0, np.pi / 2, 7)
    worst, count, unconv = 0.0, 0, 0
    for N in (3, 4, 5, 6):
        specs = [GhzSuperpositionSpec(N, i, j, si, sj, a, g)
                 for i, j in itertools.combinations(range(2 ** (N - 1)), 2)
                 for si, sj in SIGNS for a in alphas for g in (0.0, 1.1, 2.7)]
        res = gme.pmax_numeric_many([ghz_superposition(s) for s in specs], cfg)
        for s, r in zip(specs, res):
            m, n = hamming_split(s.i, s.j, N)
            worst = max(worst, abs(r.value - gme.pmax_ghz_sup_analytic(m, n, s.alpha)))
            unconv += not r.converged
        count += len(specs)
    return Check(1, "GHZ-superposition P_max closed form", worst <= 1e-6,
                 f"{count} states, max |numeric - analytic| = {worst:.2e} (tol 1e-6), "
                 f"{unconv} unconverged")


def c02_ghz_equals_w(seed: int = 0) -> Check:
    cfg = gme.OptimizerConfig(seed=seed)
    alpha = float(np.arcsin(np.sqrt(27 / 32)))
    target = np.sqrt(37 / 64)
    m, n = hamming_split(0, 3, 4)
    g_an = gme.gme_from_pmax(gme.pmax_ghz_sup_analytic(m, n, alpha))
    g_num = gme.pmax_numeric(ghz_superposition(GhzSuperpositionSpec(4, 0, 3, alpha=alpha)), cfg).gme
    g_w = gme.pmax_numeric(w_state(4), cfg).gme
    errs = [abs(g_an - target), abs(g_num - target), abs(g_w - g_num)]
    return Check(2, "G(G_03) = sqrt(37/64) = G(W_4)", max(errs) <= 1e-6,
                 f"analytic {g_an:.12f}, numeric {g_num:.12f}, W_4 {g_w:.12f}, "
                 f"max err {max(errs):.2e} (tol 1e-6)")


def omega_w_pair_3() -> np.ndarray:
    w = np.exp(2j * np.pi / 3)
    v = np.zeros(8, dtype=complex)
    # |W1> = (|001> - w|010> + w^2|100>)/sqrt3, |W2> = (-|001> + w^2|010> - w|100>)/sqrt3;
    # the |001> terms cancel in (|W1> + |W2>)/sqrt2
    v[2], v[4] = -w + w**2, w**2 - w
    return v / np.sqrt(6)


def w_pair_4() -> np.ndarray:
    w1 = np.zeros(16)
    w1[[1, 2, 4, 8]] = 0.5
    w2 = np.zeros(16)
    w2[[1, 2]], w2[[4, 8]] = 0.5, -0.5
    return (w1 + w2) / np.sqrt(2)


def c03_w_pairs(seed: int = 0) -> Check:
    cfg = gme.OptimizerConfig(seed=seed)
    g3 = gme.pmax_numeric(omega_w_pair_3(), cfg).gme
    g4 = gme.pmax_numeric(w_pair_4(), cfg).gme
    err = max(abs(g3 - 2**-0.5), abs(g4 - 2**-0.5))
    return Check(3, "superposed W pairs reach G = 1/sqrt2", err <= 1e-6,
                 f"N=3 {g3:.12f}, N=4 {g4:.12f}, max err {err:.2e} (tol 1e-6)")


def c04_w4_closed_form(seed: int = 0) -> Check:
    """Literal check of t^2 = (3(c-s) + sqrt(9-14cs))/(2c) against the roots in t = tan(theta).

    The expression equals 1/t^2 of the true root (c and s exchanged), so the
    root comparison fails as stated; the detail reports both readings.
    """
    alphas = np.linspace(0, np.pi / 2, 102)[1:-1]
    root_err = p_err = recip_err = 0.0
    for a in alphas:
        c, s = np.cos(a), np.sin(a)
        t2 = (3 * (c - s) + np.sqrt(9 - 14 * c * s)) / (2 * c)
        P, roots = gme.pmax_w_sup(4, a)
        r2 = roots.roots**2
        k = int(np.argmin(np.abs(r2 - t2)))
        root_err = max(root_err, abs(r2[k] - t2))
        p_err = max(p_err, abs(P - float(gme.w_overlap_at(4, a, np.sqrt(t2)))))
        recip_err = max(recip_err, float(np.min(np.abs(r2 - 1 / t2))))
    ok = root_err <= 1e-9 and p_err <= 1e-9
    return Check(4, "N=4 W closed form vs stationarity roots", ok,
                 f"max |t^2_closed - t^2_root| = {root_err:.2e}, max |P_max - P(t_closed)| = "
                 f"{p_err:.2e} (tol 1e-9); closed form matches 1/t^2_root to {recip_err:.1e}")


def c05_w_endpoint(seed: int = 0) -> Check:
    cfg = gme.OptimizerConfig(seed=seed)
    e_an = max(abs(gme.pmax_w_sup(N, 0.0)[0] - ((N - 1) / N) ** (N - 1)) for N in range(3, 9))
    e_num = max(abs(gme.pmax_numeric(w_state(N), cfg).value - ((N - 1) / N) ** (N - 1))
                for N in range(3, 7))
    return Check(5, "W endpoint ((N-1)/N)^(N-1)", e_an <= 1e-10 and e_num <= 1e-6,
                 f"root route err {e_an:.2e} (tol 1e-10), numeric err {e_num:.2e} (tol 1e-6)")


def c06_css_confirmed(seed: int = 0) -> Check:
    cfg = gme.OptimizerConfig(seed=seed)
    dev = ent = 0.0
    for (m, n), a, g, sg in itertools.product([(2, 2), (2, 3), (3, 3)], (0.3, 0.7, 1.2),
                                              (0.0, 2.1), (1, -1)):
        rho = density(two_block_canonical(TwoBlockSpec(m, n, a, g, sg)))
        sigma = css_ghz_superposition(m, n, a)
        r = ree.css_criterion_max(rho, sigma, cfg)
        dev = max(dev, abs(r.max_value - 1))
        ent = max(ent, abs(relative_entropy(rho, sigma) - ree.ree_ghz_superposition(a)))
    return Check(6, "CSS criterion confirms the diagonal candidate", dev <= 1e-4 and ent <= 1e-9,
                 f"max |max_value - 1| = {dev:.2e} (tol 1e-4), "
                 f"max |S(rho||sigma) - (1+H(c^2))| = {ent:.2e} (tol 1e-9)")


def c07_css_rejected(seed: int = 0) -> Check:
    cfg = gme.OptimizerConfig(seed=seed)
    ok, margin = True, np.inf
    for (m, n), a, g, sg in itertools.product([(2, 2), (2, 3), (3, 3)], (0.3, 0.7, 1.2),
                                              (0.0, 2.1), (1, -1)):
        rho = density(two_block_canonical(TwoBlockSpec(m, n, a, g, sg)))
        mixed = np.eye(2 ** (m + n)) / 2 ** (m + n)
        r = ree.css_criterion_max(rho, mixed, cfg)
        need = 2 * max(np.cos(a) ** 2, np.sin(a) ** 2) - 1e-6
        ok &= r.max_value >= need and r.max_value > 1 and r.verdict == ree.REJECTED
        margin = min(margin, r.max_value - need)
    return Check(7, "maximally mixed candidate rejected", bool(ok),
                 f"min (max_value - 2 max(c^2,s^2) + 1e-6) = {margin:.3f}")


def c08_bound_orientation(seed: int = 0) -> Check:
    rows = fig1_rows(201)
    ok = True
    for s, bg, g, be, e in rows:
        c = np.sqrt(max(1 - s * s, 0.0))
        ok &= bg <= g + 1e-12 and be <= e + 1e-12
        if c * s != 0:
            ok &= bg < g
    return Check(8, "bounds BG <= G, BE <= E (strict BG < G for cs != 0)", bool(ok),
                 f"{len(rows)} rows")


def c09_w_sweep(seed: int = 0) -> Check:
    grid = np.linspace(0, 1, 1001)
    ok, worst, norm_err, notes = True, 0.0, 0.0, []
    for N in range(2, 9):
        sw = dsc.w_discord_sweep(N, grid)
        ends = sw.entropy[[0, -1]]
        err = max(abs(sw.min - log2(N)), *np.abs(ends - log2(N)))
        worst = max(worst, err)
        ok &= err <= 1e-9
        interior = sw.argmin[(sw.argmin > 0) & (sw.argmin < 1)]
        if interior.size:
            notes.append(f"N={N} also minimal at p=" + ", ".join(f"{x:g}" for x in interior))
        for p in grid:
            tot = sum(dsc.comb(N, k) * dsc.w_lambda(N, k, p) for k in range(N + 1))
            norm_err = max(norm_err, abs(tot - 1))
    ok &= norm_err <= 1e-12
    return Check(9, "W symmetric-basis sweep minimum log2 N at p in {0,1}", bool(ok),
                 f"max err {worst:.2e} (tol 1e-9), lambda normalisation err {norm_err:.1e} "
                 f"(tol 1e-12)" + ("; " + "; ".join(notes) if notes else ""))


def c10_w_conjecture(seed: int = 0) -> Check:
    cfg = dsc.SearchConfig(num_bases=200, seed=seed)
    ok, parts = True, []
    for N in (3, 4, 5):
        r = dsc.discord_search(density(w_state(N)), cfg)
        lowest = min(r.start_values.min(), r.refined_values.min())
        ok &= abs(r.value - log2(N)) <= 1e-6 and lowest >= log2(N) - 1e-6
        parts.append(f"N={N}: D-log2N={r.value - log2(N):.1e}, lowest seen-log2N={lowest - log2(N):.1e}")
    return Check(10, "random-basis discord of W_N is log2 N", bool(ok), "; ".join(parts) + " (tol 1e-6)")


def c11_ghz_discord(seed: int = 0) -> Check:
    cfg = dsc.SearchConfig(seed=seed)
    worst = q_worst = 0.0
    for a in (0.2, 0.5, 0.7, 1.0, 1.3):
        rho = density(two_block_canonical(TwoBlockSpec(2, 2, a, 0.0, 1)))
        d = dsc.discord_search(rho, cfg).value
        e = relative_entropy(rho, css_ghz_superposition(2, 2, a))
        worst = max(worst, abs(d - ree.ree_ghz_superposition(a)), abs(d - e))
        q_worst = max(q_worst, dsc.dissonance(css_ghz_superposition(2, 2, a), cfg).value)
    return Check(11, "two-block discord D = E = 1+H(c^2)", worst <= 1e-5 and q_worst <= 1e-9,
                 f"max |D - (1+H)|, |D - E| = {worst:.2e} (tol 1e-5); max Q(sigma) = {q_worst:.1e}")


def c12_dissonance(seed: int = 0) -> Check:
    cfg = dsc.SearchConfig(seed=seed)
    q3 = dsc.dissonance(sigma_w(3), cfg).value
    q4 = dsc.dissonance(sigma_w(4), cfg).value
    q0 = max(dsc.dissonance(css_ghz_superposition(m, n, a), cfg).value
             for (m, n), a in [((2, 2), 0.4), ((1, 2), 1.1), ((2, 3), 0.9)])
    return Check(12, "Q(sigma_W) > 0, Q(diagonal CSS) = 0", q3 > 1e-3 and q4 > 1e-3 and q0 <= 1e-9,
                 f"Q(sigma_W3) = {q3:.6f}, Q(sigma_W4) = {q4:.6f} (> 1e-3); Q(CSS) = {q0:.1e} (tol 1e-9)")


def c13_npt(seed: int = 0) -> Check:
    evs = []
    for a in (np.pi / 6, np.pi / 4, np.pi / 3):
        rho = density(ghz_superposition(GhzSuperpositionSpec(3, 0, 1, alpha=a)))
        evs.append(min_pt_eigenvalue(partial_trace(rho, [1, 2]), [1]))
    return Check(13, "two-qubit marginal of G_01 is NPT", max(evs) < -1e-6,
                 "min PT eigenvalues " + ", ".join(f"{e:.4f}" for e in evs))


def c14_gamma_invariance(seed: int = 0) -> Check:
    cfg = gme.OptimizerConfig(seed=seed)
    gammas = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    spread, parts = 0.0, []
    for N, i, j, si, sj, a in [(4, 0, 3, 1, 1, 0.6), (5, 1, 6, 1, -1, 1.0), (3, 0, 1, -1, 1, 0.4)]:
        vals = [r.value for r in gme.pmax_numeric_many(
            [ghz_superposition(GhzSuperpositionSpec(N, i, j, si, sj, a, g)) for g in gammas], cfg)]
        spread = max(spread, max(vals) - min(vals))
        parts.append(f"N={N} ({i},{j}) spread {max(vals) - min(vals):.1e}")
    return Check(14, "P_max independent of gamma", spread < 1e-6, "; ".join(parts) + " (tol 1e-6)")


def c15_subsystem_bound(seed: int = 0) -> Check:
    worst = 0.0
    for N in range(2, 7):
        psi = ghz_canonical(N, 0, 1)
        rho = density(psi)
        if N >= 3:
            # marginals after one trace-out are PPT across every cut (classical mixtures)
            red = partial_trace(rho, list(range(2, N + 1)))
            assert all(min_pt_eigenvalue(red, [q]) >= -1e-12 for q in range(1, N))
        bound = ree.subsystem_bound(psi, 0.0)
        exact = relative_entropy(rho, css_ghz_superposition(1, N - 1, 0.0))
        worst = max(worst, abs(bound - 1), abs(exact - 1))
    return Check(15, "reduced-state entropy bound saturated by GHZ_N", worst <= 1e-9,
                 f"max |bound - 1|, |REE - 1| = {worst:.1e} (tol 1e-9)")


def thin_block_report(seed: int = 0) -> list[str]:
    """CSS criterion for block sizes with m = 1 or n = 1 (informational, not an exit criterion)."""
    cfg = gme.OptimizerConfig(seed=seed)
    lines = []
    for m, n in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]:
        vals = []
        for a in (0.3, 0.7, 1.2):
            rho = density(two_block_canonical(TwoBlockSpec(m, n, a, 0.0, 1)))
            vals.append(ree.css_criterion_max(rho, css_ghz_superposition(m, n, a), cfg))
        lines.append(f"(m,n)=({m},{n}): max_value " + ", ".join(f"{r.max_value:.4f}" for r in vals)
                     + " -> " + ", ".join(r.verdict for r in vals))
    return lines


CHECKS = {
    1: c01_ghz_closed_form, 2: c02_ghz_equals_w, 3: c03_w_pairs, 4: c04_w4_closed_form,
    5: c05_w_endpoint, 6: c06_css_confirmed, 7: c07_css_rejected, 8: c08_bound_orientation,
    9: c09_w_sweep, 10: c10_w_conjecture, 11: c11_ghz_discord, 12: c12_dissonance,
    13: c13_npt, 14: c14_gamma_invariance, 15: c15_subsystem_bound,
}

SUITES = {
    "gme": [1, 2, 3, 4, 5, 13, 14],
    "css": [6, 7, 8, 15],
    "discord": [9, 10, 11, 12],
}
SUITES["all"] = sorted(CHECKS)


def run_suite(suite: str, seed: int = 0, echo=None) -> list[Check]:
    out = []
    for k in SUITES[suite]:
        c = CHECKS[k](seed)
        if echo:
            echo(c.line())
        out.append(c)
    return out
