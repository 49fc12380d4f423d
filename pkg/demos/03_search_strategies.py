"""
Same answer, different trees: the four subproblem-selection rules on myciel4.

Cyclic best-first search walks through contours in label order and takes the
best bound inside each; with the positive-assignment contour the label is the
number of columns fixed to 1.
"""

from zddcolor import SolverConfig, solve
from zddcolor.graph import myciel

g = myciel(4)
print(f"myciel4: n={g.n} m={g.m}")
for strategy, contour in [("dfs", "depth"), ("bfs", "depth"), ("cbfs", "depth"), ("cbfs", "positive-assignment")]:
    res = solve(g, SolverConfig(strategy=strategy, contour=contour))
    st = res.stats
    label = strategy if strategy != "cbfs" else f"cbfs/{contour}"
    print(f"{label:26s} chi={res.ub}  explored={st.explored:4d}  identified={st.identified:4d}  "
          f"columns={st.columns_generated:3d}  {st.total_time:.2f}s")
