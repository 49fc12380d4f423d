"""
Benchmark table in the layout of the reporting columns.

Runs every .col file in data/instances (see make_instances.py) and prints
n, m, chi, ZDD build time, search time, tree sizes and ZDD growth.
"""

import sys
from pathlib import Path

from zddcolor import SolverConfig, read_dimacs, solve

folder = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "instances"
paths = sorted(folder.glob("*.col"))
if not paths:
    sys.exit(f"no .col files in {folder}; run demos/make_instances.py first")

print(f"{'instance':12s} {'n':>4s} {'m':>6s} {'LB':>3s} {'UB':>3s} {'t_Z':>6s} {'t':>7s} "
      f"{'exp':>5s} {'id':>5s} {'Z_i':>7s} {'Z_f':>7s} {'%chg':>6s} {'|col|':>6s} {'t_price':>7s}")
for path in paths:
    g = read_dimacs(path)
    res = solve(g, SolverConfig(time_limit=600))
    st = res.stats
    print(f"{path.stem:12s} {g.n:4d} {g.m:6d} {res.lb:3d} {res.ub:3d} {st.zdd_time:6.2f} {st.search_time:7.2f} "
          f"{st.explored:5d} {st.identified:5d} {st.zdd_initial:7d} {st.zdd_final:7d} {st.zdd_growth:6.1f} "
          f"{st.columns_generated:6d} {st.pricing_time:7.2f}")
