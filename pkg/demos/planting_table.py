"""Planted hub and clique graphons approach their predicted entropy cost.

t_ratio is t(H, W) / p^e(H), which should reach 1 + delta. mass_ratio is the
entropy of W divided by p^Delta log(1/p), which should reach the bound.
"""
from uptail import catalog
from uptail.report import plant_verify

ps = [1e-2, 1e-3, 1e-4, 1e-5]
for name, D, delta in [("triangle", catalog.triangle_transitive(), 1.0),
                       ("cyclic triangle", catalog.triangle_cyclic(), 8.0),
                       ("out-star", catalog.out_star(3), 5.0)]:
    rep = plant_verify(D, delta, ps)
    print(f"{name}, delta = {delta}")
    for row in rep["rows"]:
        if row["error"]:
            print(f"  {row['construction']:7s} p={row['p']:.0e}  infeasible: {row['error']}")
            continue
        print(f"  {row['construction']:7s} p={row['p']:.0e}  t_ratio={row['t_ratio']:.6f}  "
              f"mass_ratio={row['mass_ratio']:.6f}  target={row['mass_target']:.6f}")
    print()
