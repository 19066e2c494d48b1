"""Killing fields of constant length.

Lengths are sampled at points a.o with a a product of exponentials, using
|X|_{a.o} = |(Ad_{a^-1} X)_m|.  On a GO space every field in an abelian
ideal has constant length; the squashed sphere shows the sampler does
notice variation when it is there.
"""
from metriclie import OrbitPlan, length_profile, verify_abelian_ideal_theorem
from metriclie.catalog import get_entry

plan = OrbitPlan()
print(f"orbit plan: {len(plan.words(3))} group elements per field")

plane = get_entry("e2_plane")
rep = verify_abelian_ideal_theorem(plane.model, plane.ideals["translations"][0], plan)
print(f"flat plane, translations: {rep.status}, max spread {rep.max_spread:.2e}")

for x in ([1, 0, 0], [0, 0, 1]):
    prof = length_profile(get_entry("so3_squashed").model, x, plan)
    sq = [s.sq_length for s in prof.samples]
    print(f"squashed so(3), X = {x}: {prof.verdict}, |X|^2 ranges over [{min(sq):.3f}, {max(sq):.3f}]")

# The Heisenberg center has constant length, but the group is not GO, so the
# implication is not in force and the check reports that instead of a pass.
heis = get_entry("heisenberg")
rep = verify_abelian_ideal_theorem(heis.model, heis.ideals["center"][0], plan)
print(f"heisenberg center: {rep.status} ({rep.preconditions})")

rot = get_entry("heisenberg_rotation")
rep = verify_abelian_ideal_theorem(rot.model, rot.ideals["center"][0], plan)
print(f"heisenberg_rotation center: {rep.status}, max spread {rep.max_spread:.2e}")
