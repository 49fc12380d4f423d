"""
Write the benchmark graphs that can be rebuilt from their definitions.

The Mycielski graphs come from iterating the Mycielski construction on K2,
which reproduces the vertex labeling of the DIMACS files. queen9_9 is the
queen's graph on a 9x9 board. Random DIMACS graphs such as DSJC125.9 cannot be
regenerated (they came from a generator whose seeds are not public); drop the
original files into data/instances/ to include them.

    python3 demos/make_instances.py [target_dir]
"""

import sys
from pathlib import Path

from zddcolor.graph import myciel, queen_graph, to_dimacs

target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "instances"
target.mkdir(parents=True, exist_ok=True)

graphs = {
    "myciel3": (myciel(3), "Mycielski graph, chromatic number 4"),
    "myciel4": (myciel(4), "Mycielski graph, chromatic number 5"),
    "queen9_9": (queen_graph(9), "queen graph 9x9, chromatic number 10"),
}

for name, (g, note) in graphs.items():
    path = target / f"{name}.col"
    path.write_text(to_dimacs(g, f"{name}: {note}"))
    print(f"{path}  n={g.n} m={g.m}")
