"""Random-basis discord of W_N against log2 N, and the T > E + Q + C_sigma comparison."""
import argparse
import time

import numpy as np

from supent.discord import SearchConfig, correlations_report, discord_search
from supent.qstate import density, sigma_w, w_state

ap = argparse.ArgumentParser()
ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
ap.add_argument("--bases", type=int, default=200)
ap.add_argument("--seed", type=int, default=0)
args = ap.parse_args()

cfg = SearchConfig(num_bases=args.bases, seed=args.seed)
for N in args.n:
    t0 = time.perf_counter()
    r = discord_search(density(w_state(N)), cfg)
    print(f"N={N}: D = {r.value:.12f}, log2 N = {np.log2(N):.12f}, "
          f"diff {r.value - np.log2(N):+.2e}, worst start {r.start_values.max() - r.entropy_state:.4f} "
          f"[{time.perf_counter() - t0:.1f}s]")

# E(W_N) is not known in closed form; -log2 of the W overlap bound is used as a stand-in
for N in args.n:
    psi = w_state(N)
    e_lb = -np.log2(((N - 1) / N) ** (N - 1))
    rep = correlations_report(density(psi), e_value=e_lb, sigma=sigma_w(N), config=cfg)
    print(f"N={N}: T={rep.T:.4f} D={rep.D:.4f} Q(sigma_W)={rep.Q:.4f} C_sigma={rep.C_sigma:.4f} "
          f"C={rep.C:.4f} E>= {e_lb:.4f}  T > E + Q + C_sigma: {rep.conjecture_holds}")
