"""A digraph where the hub bounds F and G do not meet.

Core v_1..v_{k+1}; v_1..v_k point to u_1 and v_{k+1} points to u_2, u_3.
Everything else points from T into the core.
"""
from uptail import analyze, catalog

D = catalog.gap_example(5)
r = analyze(D, 10000.0)
print(f"n = {D.n}, m = {D.m}, |S_H| = {r['n_sets']}")
print("f =", r["polynomials"]["f"]["text"])
print("g =", r["polynomials"]["g"]["text"])
print()
for key in ("F", "G"):
    x1, x2, y1, y2 = r[key]["argmin"]
    print(f"{key} = {r[key]['value']:.6f} at x = ({x1:.4f}, {x2:.4f}), y = ({y1:.4f}, {y2:.4f})")
print("verdict:", r["bounds"]["tightness"])

# at k = 3 the analogous graph has no gap: F and G coincide
for delta in (10.0, 100.0, 1000.0):
    b = analyze(catalog.gap_example(3), delta)["bounds"]
    print(f"k=3 delta={delta:7.0f}  F={b['F_value']:.5f}  G={b['G_value']:.5f}  F/G={b['F_value'] / b['G_value']:.4f}")
