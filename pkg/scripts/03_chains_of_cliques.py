"""
Divide and conquer on long chains
=================================

A path of cliques joined end to end.  The direct method solves dense systems
on the whole graph.  The chain method works on each clique separately, so its
cost grows linearly with the number of cliques.
"""
import time

import kemeny_bridges as kb
from kemeny_bridges.generators import chain_of_cliques


def best_of(fn, repeat=3):
    secs = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        secs = min(secs, time.perf_counter() - t0)
    return out, secs


print(f"{'cliques':>8} {'n':>6} {'direct s':>10} {'chain s':>10} {'speedup':>8}")
for k in (8, 16, 32, 64):
    g = chain_of_cliques(k, 20)
    direct, t_direct = best_of(lambda: kb.kemeny_direct(g))
    chain, t_chain = best_of(lambda: kb.kemeny_chain(kb.decompose(g)).total)
    assert abs(direct - chain) <= 1e-9 * abs(direct)
    print(f"{k:>8} {g.vertex_count:>6} {t_direct:>10.4f} {t_chain:>10.4f} {t_direct / t_chain:>7.1f}x")

# %%
# Among trees joining k copies of one graph, the star is cheapest, and every
# bridge sits on a least accessible vertex.
h = kb.summarize(kb.generators.cycle_graph(5), exact=True)
for k in (3, 5, 8):
    placement, tree = kb.optimal_identical_chain(h, k)
    print(f"{k} pentagons joined in a star: kappa = {float(placement.kemeny):.4f}")
