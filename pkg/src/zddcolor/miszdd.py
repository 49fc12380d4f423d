"""
Construction of the ZDD whose accepted sets are exactly the maximal
independent sets of a graph.

Ground-set element ``p`` (1-based) is the vertex at ordering position
``p - 1``. The builder works on states ``(U, i)``: ``U`` is the bitmask (over
ordering positions) of vertices left uncovered by some partial independent set
and ``i`` is the position of the next vertex of ``U`` that may still join it.
States with the same ``(U, i)`` have the same completions, so they are memoized.
"""

from __future__ import annotations

from collections.abc import Iterable

from .graph import Graph, VertexOrdering
from .zdd import FALSE, TRUE, Zdd, ZddError

DEFAULT_NODE_BUDGET = 100_000_000


class ZddBudgetExceeded(ZddError):
    """Raised when construction would exceed the node budget."""

    def __init__(self, budget: int, size: int):
        super().__init__(f"ZDD node budget {budget} exceeded (partial size {size})")
        self.budget = budget
        self.size = size


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def canonical_key(uncovered: int, index: int, n: int) -> tuple[int, int]:
    """Memo key for state ``(U, i)``, with ``i`` advanced to the next member of ``U``.

    ``index`` is a 0-based ordering position; ``n`` is returned when no member
    of ``U`` lies at or after it.
    """
    rest = uncovered >> index << index
    return uncovered, (_lowest_bit(rest) if rest else n)


class MisZdd:
    """A ZDD of maximal independent sets together with its vertex ordering."""

    def __init__(self, zdd: Zdd, graph: Graph, ordering: VertexOrdering, states: int = 0):
        self.zdd = zdd
        self.graph = graph
        self.ordering = ordering
        self.states = states

    def to_elements(self, vertices: Iterable[int]) -> list[int]:
        return sorted(self.ordering.position[v] + 1 for v in vertices)

    def to_vertices(self, elements: Iterable[int]) -> list[int]:
        return sorted(self.ordering.order[e - 1] for e in elements)

    def element_weights(self, vertex_weights) -> list[float]:
        return [float(vertex_weights[v]) for v in self.ordering.order]

    def max_weight_set(self, vertex_weights) -> tuple[list[int], float] | None:
        best = self.zdd.max_weight_set(self.element_weights(vertex_weights))
        if best is None:
            return None
        return self.to_vertices(best[0]), best[1]

    def restrict(self, vertices: Iterable[int]) -> None:
        self.zdd.restrict_set(self.to_elements(vertices))

    def accepts(self, vertices: Iterable[int]) -> bool:
        return self.zdd.evaluate(self.to_elements(vertices))

    def sets(self, limit: int | None = None) -> list[list[int]]:
        return [self.to_vertices(s) for s in self.zdd.enumerate(limit)]


def make_mis_zdd(
    g: Graph,
    ordering: VertexOrdering | None = None,
    budget: int = DEFAULT_NODE_BUDGET,
    auto_reduce_factor: float | None = 2.0,
) -> MisZdd:
    """Build the canonical ZDD of all maximal independent sets of ``g``."""
    n = g.n
    if ordering is None:
        ordering = VertexOrdering.identity(n)
    if len(ordering) != n:
        raise ValueError(f"ordering has {len(ordering)} entries, graph has {n} vertices")
    zdd = Zdd(n, auto_reduce_factor=auto_reduce_factor)

    pos = ordering.position
    # neighborhoods in ordering-position space
    nbr = [0] * n
    for v in range(n):
        for u in g.adj[v]:
            nbr[pos[v]] |= 1 << pos[u]
    closed = [nbr[p] | (1 << p) for p in range(n)]

    memo: dict[tuple[int, int], int] = {}

    def terminal(U: int, i: int) -> int | None:
        if U == 0:
            return TRUE
        rest = U >> i << i
        passed = U ^ rest
        # a passed vertex with no neighbor left among the candidates can never be covered
        while passed:
            low = passed & -passed
            if not nbr[low.bit_length() - 1] & rest:
                return FALSE
            passed ^= low
        return None

    def children(U: int, i: int) -> tuple[tuple[int, int], tuple[int, int]]:
        UH = U & ~closed[i]
        return canonical_key(UH, i + 1, n), canonical_key(U, i + 1, n)

    root_key = canonical_key((1 << n) - 1, 0, n)
    stack = [root_key]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        U, i = key
        t = terminal(U, i)
        if t is not None:
            memo[key] = t
            stack.pop()
            continue
        hk, lk = children(U, i)
        pending = False
        if lk not in memo:
            stack.append(lk)
            pending = True
        if hk not in memo:
            stack.append(hk)
            pending = True
        if pending:
            continue
        stack.pop()
        memo[key] = zdd.insert(i + 1, memo[lk], memo[hk])
        if zdd.node_count() > budget:
            raise ZddBudgetExceeded(budget, zdd.node_count())
    zdd.root = memo[root_key]
    zdd.mark_baseline()
    return MisZdd(zdd, g, ordering, states=len(memo))
