"""CSS criterion for the diagonal candidate over block sizes m, n in {1, 2, 3}."""
import itertools

import numpy as np

from supent.gme import OptimizerConfig
from supent.numerics import relative_entropy
from supent.qstate import TwoBlockSpec, css_ghz_superposition, density, two_block_canonical
from supent.ree import css_criterion_max, ree_ghz_superposition

cfg = OptimizerConfig(seed=0)
for m, n in itertools.product((1, 2, 3), repeat=2):
    for alpha in (0.3, 0.7, 1.2):
        rho = density(two_block_canonical(TwoBlockSpec(m, n, alpha)))
        sigma = css_ghz_superposition(m, n, alpha)
        r = css_criterion_max(rho, sigma, cfg)
        print(f"(m,n)=({m},{n}) alpha={alpha:.1f}: max {r.max_value:.6f} {r.verdict:<14} "
              f"S(rho||sigma)={relative_entropy(rho, sigma):.6f} 1+H={ree_ghz_superposition(alpha):.6f}")
