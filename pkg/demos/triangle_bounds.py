"""Upper and lower bounds for the two directed triangles.

Both triangles give the same answer, min(delta^(2/3), 2 delta / 3): the hub
branch wins for small delta and the clique branch past delta = 27/8.
"""
import numpy as np

from uptail import analyze, catalog

deltas = np.array([0.5, 1.0, 2.0, 3.375, 8.0, 27.0])

for name, make in [("transitive", catalog.triangle_transitive), ("cyclic", catalog.triangle_cyclic)]:
    print(f"{name} triangle")
    print(f"{'delta':>8} {'F':>10} {'G':>10} {'clique':>10} {'upper':>10} {'formula':>10}  verdict")
    for d in deltas:
        b = analyze(make(), float(d))["bounds"]
        formula = min(d ** (2 / 3), 2 * d / 3)
        print(f"{d:8.3f} {b['F_value']:10.6f} {b['G_value']:10.6f} {b['clique_branch']:10.6f} "
              f"{b['upper_bound']:10.6f} {formula:10.6f}  {b['tightness']}")
    print()
