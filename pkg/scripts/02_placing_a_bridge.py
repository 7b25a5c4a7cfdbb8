"""
Where should the bridge go?
===========================

Two small graphs, one new edge between them.  Each candidate placement gives
a different Kemeny constant.  Placing the bridge at the least accessible vertex
of each side is optimal, and that vertex can be read off without trying every
pair.
"""
import numpy as np

import kemeny_bridges as kb
from kemeny_bridges.fixtures import pentagon_with_chord, two_squares

g1, g2 = two_squares(), pentagon_with_chord()
s1, s2 = kb.summarize(g1, exact=True), kb.summarize(g2, exact=True)

for g, s in ((g1, s1), (g2, s2)):
    print(f"kappa = {s.kemeny} ({float(s.kemeny):.4f})")
    for label, a in zip(g.labels, s.accessibility):
        print(f"  alpha({label}) = {float(a):.4f}")

# %%
# Score the whole grid of placements.
grid = np.empty((g1.vertex_count, g2.vertex_count))
for a in range(g1.vertex_count):
    for b in range(g2.vertex_count):
        joined = kb.generators.join_graphs([g1, g2], [((0, a), (1, b))])
        grid[a, b] = kb.kemeny_direct(joined)
print("\nKemeny constant by placement (rows: squares, cols: chord graph)")
print(np.array2string(grid, precision=3))

# %%
# The shortcut and the exhaustive search agree.
quick = kb.optimal_single_bridge(s1, s2, "min", "shortcut")
full = kb.optimal_single_bridge(s1, s2, "min", "exhaustive")
worst = kb.optimal_single_bridge(s1, s2, "max", "exhaustive")
best_pairs = [(g1.labels[a], g2.labels[b]) for (a, b), in full.ties]
print(f"\nminimum {full.kemeny} = {float(full.kemeny):.4f} at {best_pairs}")
print(f"maximum {worst.kemeny} = {float(worst.kemeny):.4f}")
assert quick.kemeny == full.kemeny
assert abs(grid.min() - float(full.kemeny)) < 1e-9
