"""Brute-force reference implementations used as test oracles.

Everything here is exhaustive and deliberately naive; none of it shares code
with the package under test.
"""

from __future__ import annotations

import random

import numpy as np


def all_subsets(n: int):
    """Every subset of ``1..n`` as a frozenset."""
    for mask in range(1 << n):
        yield frozenset(i + 1 for i in range(n) if mask >> i & 1)


def random_family(n: int, rng: random.Random, density: float | None = None) -> set[frozenset[int]]:
    density = rng.random() if density is None else density
    return {s for s in all_subsets(n) if rng.random() < density}


def canonical_zdd_size(family) -> int:
    """Node count (terminals included) of the reduced ZDD of ``family``.

    Nodes correspond to distinct subfamilies obtained by repeatedly splitting
    on the smallest element that occurs, excluding the terminal families.
    """
    seen = set()
    stack = [frozenset(frozenset(s) for s in family)]
    while stack:
        fam = stack.pop()
        if not fam or fam == {frozenset()} or fam in seen:
            continue
        seen.add(fam)
        top = min(e for s in fam for e in s)
        stack.append(frozenset(s for s in fam if top not in s))
        stack.append(frozenset(s - {top} for s in fam if top in s))
    return len(seen) + 2


def adjacency(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def maximal_independent_sets(n: int, edges) -> set[frozenset[int]]:
    """All maximal independent sets by checking every vertex subset."""
    nbr = [0] * n
    for u, v in edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    out = set()
    for mask in range(1 << n):
        members = [v for v in range(n) if mask >> v & 1]
        if any(nbr[v] & mask for v in members):
            continue
        if all(mask >> v & 1 or nbr[v] & mask for v in range(n)):
            out.add(frozenset(members))
    return out


def chromatic_number(n: int, edges) -> int:
    """Smallest k admitting a proper k-coloring, by backtracking over vertices."""
    if n == 0:
        return 0
    adj = adjacency(n, edges)
    order = sorted(range(n), key=lambda v: -len(adj[v]))

    def colorable(k: int) -> bool:
        color = [-1] * n

        def go(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            taken = {color[u] for u in adj[v]}
            # symmetry: a vertex may open at most one new color
            for c in range(min(k, used + 1)):
                if c not in taken:
                    color[v] = c
                    if go(i + 1, max(used, c + 1)):
                        return True
            color[v] = -1
            return False

        return go(0, 0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def fractional_chromatic_number(n: int, edges) -> float:
    """LP optimum over all maximal independent sets, solved with HiGHS."""
    from scipy.optimize import linprog

    sets = sorted(maximal_independent_sets(n, edges), key=sorted)
    A = np.zeros((n, len(sets)))
    for j, s in enumerate(sets):
        for v in s:
            A[v, j] = 1.0
    res = linprog(np.ones(len(sets)), A_ub=-A, b_ub=-np.ones(n), bounds=(0, None), method="highs")
    assert res.status == 0
    return float(res.fun)


def random_edges(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def sweep_accepted(var, lo, hi, root: int, n: int) -> np.ndarray:
    """Acceptance of every subset of ``1..n`` straight from a node table.

    Entry ``mask`` of the result tells whether the set with bit ``e - 1`` set
    for each member ``e`` is accepted. Written from the ZDD semantics alone:
    follow high edges for members, low edges otherwise, reject a member that a
    long edge skips, accept on reaching node 1 with no members left below.
    """
    var, lo, hi = np.asarray(var), np.asarray(lo), np.asarray(hi)
    masks = np.arange(1 << n, dtype=np.int64)
    node = np.full(masks.shape, root, dtype=np.int64)
    prev = np.zeros(masks.shape, dtype=np.int64)  # last tested element
    ok = np.ones(masks.shape, dtype=bool)
    while True:
        active = ok & (node > 1)
        if not active.any():
            break
        v = np.where(active, var[np.maximum(node, 0)], 0)
        skipped = ((np.int64(1) << np.maximum(v - 1, 0)) - 1) ^ ((np.int64(1) << prev) - 1)
        ok &= ~(active & ((masks & skipped) != 0))
        member = (masks >> np.maximum(v - 1, 0)) & 1
        step = active & ok
        node = np.where(step, np.where(member == 1, hi[np.maximum(node, 0)], lo[np.maximum(node, 0)]), node)
        prev = np.where(step, v, prev)
    return ok & (node == 1) & ((masks >> prev) == 0)


def family_vector(family, n: int) -> np.ndarray:
    out = np.zeros(1 << n, dtype=bool)
    for s in family:
        out[sum(1 << (e - 1) for e in s)] = True
    return out
