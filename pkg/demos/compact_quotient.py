"""Ricci curvature of a fibre-type quotient compared with the ambient Ricci.

For a subalgebra k containing h, with m1 = k ∩ m and m2 its g-orthogonal
complement, the Ricci curvature of (k, h) on m1 equals the ambient value
minus half the squared m1-components of brackets of an m2 frame.  Here both
sides are computed independently, once on a squashed sphere and once on the
diagonal of so(3) x so(3).
"""
import numpy as np

from metriclie import Subspace
from metriclie.catalog import get_entry, product_model
from metriclie.curvature import RicStarSetup

rng = np.random.default_rng(0)

squashed = get_entry("so3_squashed")
for name in ("k_e3", "k_e1"):
    setup = RicStarSetup(squashed.model, squashed.ks[name])
    rep = setup.identity(setup.m1_vector([1.0]))
    print(f"squashed so(3), {name}: Ric* {rep.left:+.4f}, Ric {rep.ricci:+.4f}, "
          f"correction {rep.correction:.4f}, gap {rep.difference:.4f}, "
          f"skew hypothesis met {rep.hypotheses_met}")

g = product_model(get_entry("so3_biinvariant"), get_entry("so3_biinvariant"))
diag = RicStarSetup(g, Subspace(np.hstack([np.eye(3), np.eye(3)])))
diffs = [diag.identity(diag.m1_vector(rng.standard_normal(3))).difference for _ in range(50)]
print(f"diagonal so(3) in so(3)+so(3): max difference over 50 samples {max(diffs):.2e}")
