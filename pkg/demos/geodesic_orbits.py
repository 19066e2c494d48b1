"""Which directions are geodesic orbits?

For each direction X we look for H in the isotropy algebra with
g([H + X, Y]_m, X) = 0 for all Y.  When no H exists the solver returns a
witness Y for which that pairing is the same nonzero number for every H.
"""
import numpy as np

from metriclie import ProbePlan, go_certificate, go_survey, naturally_reductive_check
from metriclie.catalog import get_entry

squashed = get_entry("so3_squashed").model
for x in ([1, 0, 0], [0, 0, 1], [1, 0, 1], [1, 1, 1]):
    cert = go_certificate(squashed, np.array(x, dtype=float))
    status = "geodesic" if cert.feasible else f"not geodesic, witness {cert.witness}"
    print(f"squashed so(3), X = {x}: {status}")

# The Heisenberg group is not GO on its own, but adding the rotation r to the
# isometry algebra makes every direction geodesic.
for name in ("heisenberg", "heisenberg_rotation"):
    m = get_entry(name).model
    survey = go_survey(m, ProbePlan(random_count=50))
    ok = sum(c.feasible for c in survey.certificates)
    print(f"{name:20s} GO survey {survey.verdict} ({ok}/{len(survey.certificates)}), "
          f"naturally reductive {bool(naturally_reductive_check(m))}")

rot = get_entry("heisenberg_rotation").model
cert = go_certificate(rot, np.array([1.0, 0.0, 2.0]))
print(f"heisenberg_rotation, X = e1 + 2 e3 needs H = {cert.h_solution[0]:.3f} r")

# Non-unimodular groups can never be GO; the survey finds a failing direction quickly.
nu = get_entry("nonunimodular2").model
print("nonunimodular2 survey:", go_survey(nu, ProbePlan(random_count=10)).verdict)
