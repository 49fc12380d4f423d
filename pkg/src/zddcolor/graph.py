"""
Undirected simple graphs, DIMACS ``.col`` I/O, and the combinatorial helpers
used around the solver: clique heuristic, clique-based preprocessing, the
maximal-path-decomposition vertex ordering and DSATUR greedy coloring.

Vertices are ``0..n-1`` internally; DIMACS files use ``1..n``.
"""

from __future__ import annotations

import logging
import random
import time
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

log = logging.getLogger(__name__)


class DimacsError(ValueError):
    """Malformed DIMACS input."""


class Graph:
    """Simple undirected graph with adjacency sets and bitmasks."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.duplicates = 0
        self.self_loops = 0
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        if u == v:
            self.self_loops += 1
            return
        if v in self.adj[u]:
            self.duplicates += 1
            return
        self.adj[u].add(v)
        self.adj[v].add(u)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbor_masks(self) -> list[int]:
        return [sum(1 << u for u in a) for a in self.adj]

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Subgraph on ``vertices``, relabeled ``0..k-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        g = Graph(len(vertices))
        for i, v in enumerate(vertices):
            for u in self.adj[v]:
                j = index.get(u)
                if j is not None and i < j:
                    g.add_edge(i, j)
        return g

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self.adj[v] & vs) for v in vs)

    def is_maximal_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        if not self.is_independent(vs):
            return False
        return all(v in vs or self.adj[v] & vs for v in range(self.n))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(vs[j] in self.adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def is_proper_coloring(self, classes: Sequence[Iterable[int]]) -> bool:
        """Classes must be independent and together cover every vertex."""
        seen = set()
        for c in classes:
            c = set(c)
            if not self.is_independent(c):
                return False
            seen |= c
        return seen == set(range(self.n))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ----------------------------------------------------------------------
# DIMACS


def parse_dimacs(data: bytes | str) -> Graph:
    """Parse a DIMACS ``.col`` graph. Duplicate edges and self-loops are dropped."""
    if isinstance(data, bytes):
        lines = data.splitlines()
    else:
        lines = data.encode().splitlines()
    g = None
    for lineno, raw in enumerate(lines, 1):
        raw = raw.strip()
        if not raw or raw.startswith(b"c"):
            continue
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise DimacsError(f"line {lineno}: non-UTF-8 content outside a comment") from None
        parts = line.split()
        if parts[0] == "p":
            if g is not None:
                raise DimacsError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError(f"line {lineno}: bad problem line {line!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: bad problem line {line!r}") from None
            if n < 0:
                raise DimacsError(f"line {lineno}: negative vertex count")
            g = Graph(n)
        elif parts[0] == "e":
            if g is None:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise DimacsError(f"line {lineno}: bad edge line {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DimacsError(f"line {lineno}: bad edge line {line!r}") from None
            if not (1 <= u <= g.n and 1 <= v <= g.n):
                raise DimacsError(f"line {lineno}: endpoint out of range [1, {g.n}]")
            g.add_edge(u - 1, v - 1)
        else:
            # unknown descriptor lines (e.g. "n" vertex weights) are ignored
            continue
    if g is None:
        raise DimacsError("missing problem line")
    if g.duplicates or g.self_loops:
        log.warning("dropped %d duplicate edges and %d self-loops", g.duplicates, g.self_loops)
    return g


def read_dimacs(path) -> Graph:
    with open(path, "rb") as f:
        return parse_dimacs(f.read())


def to_dimacs(g: Graph, comment: str | None = None) -> str:
    """Canonical DIMACS text: problem line, then sorted ``e u v`` lines with ``u < v``."""
    lines = []
    if comment:
        lines += [f"c {c}" for c in comment.splitlines()]
    edges = g.edges()
    lines.append(f"p edge {g.n} {len(edges)}")
    lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# generators


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def mycielski(g: Graph) -> Graph:
    """Mycielskian: vertices ``0..n-1``, shadows ``n..2n-1``, apex ``2n``."""
    n = g.n
    h = Graph(2 * n + 1)
    for u, v in g.edges():
        h.add_edge(u, v)
        h.add_edge(u, n + v)
        h.add_edge(v, n + u)
    for i in range(n):
        h.add_edge(n + i, 2 * n)
    return h


def myciel(k: int) -> Graph:
    """The DIMACS ``myciel<k>`` graph (iterated Mycielskian of K2, chromatic number k+1)."""
    g = complete_graph(2)
    for _ in range(k - 1):
        g = mycielski(g)
    return g


def queen_graph(rows: int, cols: int | None = None) -> Graph:
    """Queen graph on a board, vertex ``r * cols + c``."""
    cols = rows if cols is None else cols
    g = Graph(rows * cols)
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    for i, (r1, c1) in enumerate(cells):
        for j in range(i + 1, len(cells)):
            r2, c2 = cells[j]
            if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
                g.add_edge(i, j)
    return g


# ----------------------------------------------------------------------
# cliques and preprocessing


def greedy_clique(g: Graph, seeds: int = 16, budget: float = 0.05) -> list[int]:
    """Heuristic large clique: greedy growth from the highest-degree seeds.

    From each seed, repeatedly add the candidate with the most neighbors among
    the remaining candidates (lowest index on ties). Stops early once the time
    budget (seconds) is spent, but always finishes at least one seed.
    """
    if g.n == 0:
        return []
    start = time.perf_counter()
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    best: list[int] = []
    for seed in order[:seeds]:
        if best and time.perf_counter() - start > budget:
            break
        if g.degree(seed) + 1 <= len(best):
            continue
        clique = [seed]
        cand = set(g.adj[seed])
        while cand:
            v = min(cand, key=lambda u: (-len(g.adj[u] & cand), u))
            clique.append(v)
            cand &= g.adj[v]
        if len(clique) > len(best):
            best = sorted(clique)
    return best


@dataclass
class PreprocessResult:
    """Outcome of removing vertices of degree below the clique size."""

    graph: Graph
    clique: list[int]
    # removed vertices (original labels) in removal order, each with its
    # neighbors among vertices still present at removal time
    removed: list[tuple[int, frozenset[int]]]
    kept: list[int]  # reduced label -> original label
    original: Graph = field(repr=False)

    @property
    def index(self) -> dict[int, int]:
        """Original label -> reduced label."""
        return {v: i for i, v in enumerate(self.kept)}


def preprocess(g: Graph, clique: Sequence[int]) -> PreprocessResult:
    """Iteratively remove vertices whose degree is below ``len(clique)``."""
    k = len(clique)
    alive = [True] * g.n
    deg = [g.degree(v) for v in range(g.n)]
    removed = []
    # first-in first-out: initial low-degree vertices in index order, then
    # vertices as they drop below the threshold
    queue = deque(v for v in range(g.n) if deg[v] < k)
    while queue:
        v = queue.popleft()
        nbrs = frozenset(u for u in g.adj[v] if alive[u])
        alive[v] = False
        removed.append((v, nbrs))
        for u in nbrs:
            deg[u] -= 1
            if deg[u] == k - 1:
                queue.append(u)
    kept = [v for v in range(g.n) if alive[v]]
    return PreprocessResult(g.induced(kept), list(clique), removed, kept, g)


def extend_coloring(pre: PreprocessResult, classes: Sequence[Iterable[int]]) -> list[list[int]]:
    """Lift a coloring of the reduced graph back to the original graph.

    ``classes`` use reduced labels and may overlap; each vertex keeps its first
    class. Removed vertices are colored in reverse removal order with the
    smallest color unused by their neighbors, drawing from
    ``max(len(classes), len(clique))`` colors.
    """
    colors = max(len(classes), len(pre.clique))
    color_of: dict[int, int] = {}
    for c, cls in enumerate(classes):
        for v in cls:
            color_of.setdefault(pre.kept[v], c)
    for i, v in enumerate(pre.kept):
        if v not in color_of:
            raise ValueError(f"reduced vertex {i} is uncolored")
    for v, nbrs in reversed(pre.removed):
        used = {color_of[u] for u in nbrs}
        free = next((c for c in range(colors) if c not in used), None)
        if free is None:
            raise AssertionError(f"no free color for removed vertex {v}")
        color_of[v] = free
    out: list[list[int]] = [[] for _ in range(colors)]
    for v in sorted(color_of):
        out[color_of[v]].append(v)
    return [c for c in out if c]


# ----------------------------------------------------------------------
# vertex ordering


@dataclass(frozen=True)
class VertexOrdering:
    order: tuple[int, ...]  # position -> vertex
    position: tuple[int, ...]  # vertex -> position

    @classmethod
    def from_order(cls, order: Sequence[int]) -> VertexOrdering:
        pos = [-1] * len(order)
        for i, v in enumerate(order):
            if not 0 <= v < len(order) or pos[v] != -1:
                raise ValueError("ordering is not a permutation")
            pos[v] = i
        return cls(tuple(order), tuple(pos))

    @classmethod
    def identity(cls, n: int) -> VertexOrdering:
        return cls.from_order(range(n))

    def __len__(self) -> int:
        return len(self.order)


def maximal_paths(g: Graph) -> list[list[int]]:
    """Greedy maximal path decomposition.

    Each path starts at the lowest-index unvisited vertex of maximum residual
    degree and extends from its tail to the lowest-index unvisited neighbor,
    then from its head the same way, until neither end can grow.
    """
    unvisited = set(range(g.n))
    paths = []
    while unvisited:
        start = min(unvisited, key=lambda v: (-len(g.adj[v] & unvisited), v))
        unvisited.discard(start)
        path = [start]
        while True:
            nxt = g.adj[path[-1]] & unvisited
            if not nxt:
                break
            v = min(nxt)
            unvisited.discard(v)
            path.append(v)
        while True:
            nxt = g.adj[path[0]] & unvisited
            if not nxt:
                break
            v = min(nxt)
            unvisited.discard(v)
            path.insert(0, v)
        paths.append(path)
    return paths


def maximal_path_ordering(g: Graph) -> VertexOrdering:
    return VertexOrdering.from_order([v for p in maximal_paths(g) for v in p])


# ----------------------------------------------------------------------
# greedy coloring


def dsatur(g: Graph, rng: random.Random | None = None) -> list[int]:
    """DSATUR coloring; returns the color of each vertex.

    Ties on (saturation, degree) go to the lowest index, or are broken at
    random when ``rng`` is given.
    """
    color = [-1] * g.n
    sat: list[set[int]] = [set() for _ in range(g.n)]
    noise = [rng.random() if rng else 0.0 for _ in range(g.n)]
    uncolored = set(range(g.n))
    while uncolored:
        v = max(uncolored, key=lambda u: (len(sat[u]), g.degree(u), noise[u], -u))
        c = 0
        while c in sat[v]:
            c += 1
        color[v] = c
        uncolored.discard(v)
        for u in g.adj[v]:
            sat[u].add(c)
    return color


def make_maximal(g: Graph, vertices: Iterable[int]) -> list[int]:
    """Extend an independent set to a maximal one, adding vertices in index order."""
    chosen = set(vertices)
    blocked = set(chosen)
    for v in chosen:
        blocked |= g.adj[v]
    for v in range(g.n):
        if v not in blocked:
            chosen.add(v)
            blocked.add(v)
            blocked |= g.adj[v]
    return sorted(chosen)


def greedy_coloring(g: Graph, rng: random.Random | None = None) -> list[list[int]]:
    """DSATUR color classes, each extended to a maximal independent set.

    The extended classes may overlap; they still cover every vertex.
    """
    color = dsatur(g, rng)
    k = max(color, default=-1) + 1
    classes: list[list[int]] = [[] for _ in range(k)]
    for v, c in enumerate(color):
        classes[c].append(v)
    return [make_maximal(g, c) for c in classes]


def classes_to_coloring(n: int, classes: Sequence[Iterable[int]]) -> list[int]:
    """Color per vertex from possibly overlapping classes (first class wins)."""
    color = [-1] * n
    for c, cls in enumerate(classes):
        for v in cls:
            if color[v] < 0:
                color[v] = c
    return color
