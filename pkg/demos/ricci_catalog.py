"""Ricci curvature of the built-in models, term by term.

The so(3) line shows where the value 1/2 comes from: the Killing term
contributes 1, the bracket-norm term -1 and the double sum +1/2.
"""
import numpy as np

from metriclie import ricci, ricci_matrix
from metriclie.catalog import catalog_entries

np.set_printoptions(precision=4, suppress=True)

for entry in catalog_entries():
    m = entry.model
    print(f"{m.name:24s} eigenvalues {np.linalg.eigvalsh(ricci_matrix(m))}")

so3 = next(e for e in catalog_entries() if e.name == "so3_biinvariant").model
res = ricci(so3, [1.0, 0.0, 0.0])
print("\nso(3), X = e1:")
for label, term in zip(["-B/2", "-sum|[X,Xi]|^2/2", "sum([Xi,Xj],X)^2/4", "-([Z,X],X)"], res.terms):
    print(f"  {label:22s} {term:+.4f}")
print(f"  {'total':22s} {res.value:+.4f}")

# Squashing the metric along e3 makes two directions flat and one more curved.
squashed = next(e for e in catalog_entries() if e.name == "so3_squashed").model
print("\nsquashed so(3) Ricci matrix:\n", ricci_matrix(squashed))
