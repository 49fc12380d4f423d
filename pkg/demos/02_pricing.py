"""
Column generation at the root of the five-cycle.

The pricing oracle is the ZDD of all maximal independent sets. Every column
that enters the restricted master is cut out of the ZDD, so the next pricing
call can only return something new.
"""

from zddcolor import rmp
from zddcolor.graph import cycle_graph, maximal_path_ordering
from zddcolor.miszdd import make_mis_zdd
from zddcolor.rmp import Column, RmpModel

g = cycle_graph(5)
mis = make_mis_zdd(g, maximal_path_ordering(g))
print("maximal independent sets:", mis.sets())

# start from three maximal independent sets that cover every vertex
model = RmpModel(g.n)
for k, s in enumerate([[0, 2], [1, 3], [2, 4]]):
    model.add_column(Column(k, frozenset(s)))
    mis.restrict(s)

while True:
    sol = rmp.solve(model)
    best = mis.max_weight_set(sol.duals)
    print(f"LP {sol.objective:.3f}  duals {sol.duals.round(3)}  best new set {best}")
    if best is None or best[1] <= 1 + 1e-7:
        break
    mis.restrict(best[0])
    model.add_column(Column(len(model.columns), frozenset(best[0])))

# the fractional chromatic number of C5 is 5/2, so at least 3 colors are needed
print("root bound", sol.objective, "primal", sol.primal)
