"""
Mutable zero-suppressed binary decision diagram (ZDD).

The diagram is stored as a flat node arena (parallel lists for ``var``, ``lo``,
``hi`` and ``indeg``) with a unique table mapping ``(var, lo, hi)`` to node ids.
Ground-set elements are numbered ``1..n``; terminals carry ``var == n + 1``.

Besides the usual queries (membership, counting, enumeration, weighted longest
path) the diagram supports ``restrict_set``, which removes one accepted set in
O(n) time by duplicating the tail of its path, and ``reduce``, which restores
canonical form.

Internal nodes are reference counted through their indegree: a node whose last
incoming edge disappears is released immediately, so every stored node is
reachable from the root and indegrees only count live edges.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

import numpy as np

FALSE = 0
TRUE = 1

_NO_PARENT = -1


class ZddError(Exception):
    """Raised on invalid ZDD operations (bad ids, rejected sets, ...)."""


class Zdd:
    """ZDD over the ordered ground set ``(1, ..., n)``.

    A fresh diagram characterizes the empty family (root is ``FALSE``). Nodes
    are created bottom-up with :meth:`insert` and the root is set with
    :attr:`root`.
    """

    def __init__(self, n: int, auto_reduce_factor: float | None = 2.0):
        if n < 0:
            raise ZddError(f"ground set size must be nonnegative, got {n}")
        self.n = n
        self.var: list[int] = [n + 1, n + 1]
        self.lo: list[int] = [_NO_PARENT, _NO_PARENT]
        self.hi: list[int] = [_NO_PARENT, _NO_PARENT]
        self.indeg: list[int] = [0, 0]
        self.alive: list[bool] = [True, True]
        self.unique: dict[tuple[int, int, int], int] = {}
        # one insertion-ordered bucket of node ids per variable, for DP passes
        self._levels: list[dict[int, None]] = [dict() for _ in range(n + 2)]
        self._root = FALSE
        self._live = 0
        self.auto_reduce_factor = auto_reduce_factor
        self.baseline_size: int | None = None
        self.last_restrict_steps = 0
        self.reductions = 0

    # ------------------------------------------------------------------
    # construction and bookkeeping

    @property
    def root(self) -> int:
        return self._root

    @root.setter
    def root(self, node: int) -> None:
        self._check_id(node)
        old = self._root
        self._root = node
        if old != node and old > TRUE and self.indeg[old] == 0:
            self._release(old)

    def _check_id(self, node: int) -> None:
        if not (0 <= node < len(self.var)) or not self.alive[node]:
            raise ZddError(f"invalid node id {node}")

    def insert(self, var: int, lo: int, hi: int) -> int:
        """Return the node ``(var, lo, hi)``, creating it if needed.

        A high child of ``FALSE`` is suppressed and ``lo`` is returned.
        """
        if not 1 <= var <= self.n:
            raise ZddError(f"variable {var} out of range [1, {self.n}]")
        self._check_id(lo)
        self._check_id(hi)
        if var >= self.var[lo] or var >= self.var[hi]:
            raise ZddError(f"variable order violated: {var} vs children {self.var[lo]}, {self.var[hi]}")
        if hi == FALSE:
            return lo
        key = (var, lo, hi)
        node = self.unique.get(key)
        if node is not None:
            return node
        node = len(self.var)
        self.var.append(var)
        self.lo.append(lo)
        self.hi.append(hi)
        self.indeg.append(0)
        self.alive.append(True)
        self.indeg[lo] += 1
        self.indeg[hi] += 1
        self.unique[key] = node
        self._levels[var][node] = None
        self._live += 1
        return node

    def _release(self, node: int) -> None:
        """Drop an internal node with no parents, cascading to orphaned children."""
        stack = [node]
        while stack:
            a = stack.pop()
            self.alive[a] = False
            self._live -= 1
            del self._levels[self.var[a]][a]
            key = (self.var[a], self.lo[a], self.hi[a])
            if self.unique.get(key) == a:
                del self.unique[key]
            for child in (self.lo[a], self.hi[a]):
                self.indeg[child] -= 1
                if child > TRUE and self.indeg[child] == 0 and child != self._root:
                    stack.append(child)

    def _set_child(self, node: int, high: bool, child: int) -> None:
        """Redirect one edge of ``node``, keeping indegrees and the unique table in sync."""
        old_key = (self.var[node], self.lo[node], self.hi[node])
        if self.unique.get(old_key) == node:
            del self.unique[old_key]
        old = self.hi[node] if high else self.lo[node]
        if high:
            self.hi[node] = child
        else:
            self.lo[node] = child
        self.indeg[child] += 1
        self.indeg[old] -= 1
        if old > TRUE and self.indeg[old] == 0 and old != self._root:
            self._release(old)
        self.unique.setdefault((self.var[node], self.lo[node], self.hi[node]), node)

    def mark_baseline(self) -> None:
        """Record the current size as the reference for automatic reduction."""
        self.baseline_size = self.node_count()

    # ------------------------------------------------------------------
    # queries

    def node_count(self) -> int:
        """Number of live internal nodes plus the two terminals."""
        return self._live + 2

    def edge_count(self) -> int:
        return 2 * self._live

    def _mask(self, subset: Iterable[int]) -> int:
        mask = 0
        for e in subset:
            if not 1 <= e <= self.n:
                raise ZddError(f"element {e} out of range [1, {self.n}]")
            mask |= 1 << e
        return mask

    def _path(self, mask: int) -> tuple[list[int], bool]:
        """Nodes of the induced path and whether the set is accepted."""
        path = []
        node = self._root
        prev = 0
        while node > TRUE:
            v = self.var[node]
            # elements skipped by a long edge must be absent
            if mask & ((1 << v) - (1 << (prev + 1))):
                return path, False
            path.append(node)
            node = self.hi[node] if mask >> v & 1 else self.lo[node]
            prev = v
        if mask & ~((1 << (prev + 1)) - 1):
            return path, False
        return path, node == TRUE

    def evaluate(self, subset: Iterable[int]) -> bool:
        """True iff the diagram accepts ``subset``."""
        return self._path(self._mask(subset))[1]

    __contains__ = evaluate

    def _topological(self) -> Iterator[int]:
        """Internal nodes, deepest variable first."""
        for level in reversed(self._levels[1 : self.n + 1]):
            yield from level

    def count_accepted(self) -> int:
        counts = [0] * len(self.var)
        counts[TRUE] = 1
        lo, hi = self.lo, self.hi
        for a in self._topological():
            counts[a] = counts[lo[a]] + counts[hi[a]]
        return counts[self._root]

    def max_weight_set(self, weights: Sequence[float]) -> tuple[list[int], float] | None:
        """Accepted set of maximum total weight, or None for the empty family.

        ``weights[i]`` is the weight of element ``i + 1``. Ties go to the low
        edge, which picks the lexicographically smallest characteristic vector.
        """
        if len(weights) != self.n:
            raise ZddError(f"expected {self.n} weights, got {len(weights)}")
        if self._root == FALSE:
            return None
        # one vectorized relaxation per level, deepest first
        best = np.full(len(self.var), -np.inf)
        best[TRUE] = 0.0
        take = np.zeros(len(self.var), dtype=bool)
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        for v in range(self.n, 0, -1):
            level = self._levels[v]
            if not level:
                continue
            ids = np.fromiter(level, dtype=np.int64, count=len(level))
            low = best[lo[ids]]
            high = best[hi[ids]] + float(weights[v - 1])
            up = high > low
            best[ids] = np.where(up, high, low)
            take[ids] = up
        var, lo, hi = self.var, self.lo, self.hi
        chosen = []
        node = self._root
        while node > TRUE:
            if take[node]:
                chosen.append(var[node])
                node = hi[node]
            else:
                node = lo[node]
        return chosen, float(best[self._root])

    def enumerate(self, limit: int | None = None) -> list[list[int]]:
        """Up to ``limit`` accepted sets, in lexicographic order of characteristic vectors."""
        out: list[list[int]] = []
        if limit is not None and limit <= 0:
            return out
        stack: list[tuple[int, tuple[int, ...]]] = [(self._root, ())]
        while stack:
            node, chosen = stack.pop()
            if node == TRUE:
                out.append(list(chosen))
                if limit is not None and len(out) >= limit:
                    break
                continue
            if node == FALSE:
                continue
            stack.append((self.hi[node], chosen + (self.var[node],)))
            stack.append((self.lo[node], chosen))
        return out

    def __iter__(self) -> Iterator[list[int]]:
        return iter(self.enumerate())

    # ------------------------------------------------------------------
    # mutation

    def restrict_set(self, subset: Iterable[int]) -> None:
        """Remove one accepted set from the family in place.

        The path of the set is followed to the first node with indegree >= 2
        (the split node). That node and everything below it on the path is
        duplicated, the duplicate chain ends in ``FALSE``, and the parent of the
        split node is pointed at the duplicate. Nodes above the split node have
        a single parent and are safe to modify.
        """
        mask = self._mask(subset)
        path, accepted = self._path(mask)
        if not accepted:
            raise ZddError(f"cannot restrict a set that is not accepted: {sorted(subset)}")
        steps = len(path)
        if not path:
            # root is TRUE and the set is empty
            self._root = FALSE
            self.last_restrict_steps = 1
            return

        indeg = self.indeg
        split = 0
        while split < len(path) and indeg[path[split]] < 2:
            split += 1

        dup = FALSE
        for a in reversed(path[split:]):
            steps += 1
            v = self.var[a]
            if mask >> v & 1:
                dup = self.insert(v, self.lo[a], dup)
            else:
                dup = self.insert(v, dup, self.hi[a])

        # redirect the parent, suppressing nodes whose high edge hits FALSE
        k = split - 1
        while True:
            steps += 1
            node = path[k]
            high = bool(mask >> self.var[node] & 1)
            if not (high and dup == FALSE):
                self._set_child(node, high, dup)
                break
            # node would violate zero-suppression; replace it by its low child
            dup = self.lo[node]
            if k == 0:
                self._root = dup
                self._release(node)
                break
            grand = path[k - 1]
            grand_high = bool(mask >> self.var[grand] & 1)
            self._set_child(grand, grand_high, dup)
            # node lost its only parent and was released; continue only if the
            # grandparent now has a FALSE high child
            if not (grand_high and dup == FALSE):
                break
            k -= 1
        self.last_restrict_steps = steps

        if (
            self.auto_reduce_factor is not None
            and self.baseline_size is not None
            and self.node_count() > self.auto_reduce_factor * self.baseline_size
        ):
            self.reduce()

    def reduce(self) -> None:
        """Merge duplicate nodes and compact the arena; the family is unchanged."""
        n = self.n
        rep = {FALSE: FALSE, TRUE: TRUE}
        var = [n + 1, n + 1]
        lo = [_NO_PARENT, _NO_PARENT]
        hi = [_NO_PARENT, _NO_PARENT]
        unique: dict[tuple[int, int, int], int] = {}
        for a in self._topological():
            l, h = rep[self.lo[a]], rep[self.hi[a]]
            if h == FALSE:
                rep[a] = l
                continue
            key = (self.var[a], l, h)
            b = unique.get(key)
            if b is None:
                b = len(var)
                var.append(self.var[a])
                lo.append(l)
                hi.append(h)
                unique[key] = b
            rep[a] = b
        root = rep[self._root]

        # keep only nodes reachable from the new root
        reach = [False] * len(var)
        reach[FALSE] = reach[TRUE] = True
        stack = [root]
        while stack:
            a = stack.pop()
            if reach[a]:
                continue
            reach[a] = True
            stack.append(lo[a])
            stack.append(hi[a])
        # local ids were assigned deepest level first, so increasing id order
        # visits children before parents
        new_id = {FALSE: FALSE, TRUE: TRUE}
        self.var, self.lo, self.hi = [n + 1, n + 1], [_NO_PARENT, _NO_PARENT], [_NO_PARENT, _NO_PARENT]
        self.indeg, self.alive = [0, 0], [True, True]
        self.unique = {}
        self._levels = [dict() for _ in range(n + 2)]
        self._live = 0
        for a in range(2, len(var)):
            if not reach[a]:
                continue
            new_id[a] = self.insert(var[a], new_id[lo[a]], new_id[hi[a]])
        self._root = new_id[root]
        self.reductions += 1

    # ------------------------------------------------------------------
    # diagnostics

    def check_invariants(self) -> None:
        """Raise ``AssertionError`` if any structural invariant is broken."""
        indeg = [0] * len(self.var)
        live = 0
        for a in range(2, len(self.var)):
            if not self.alive[a]:
                continue
            live += 1
            v, l, h = self.var[a], self.lo[a], self.hi[a]
            assert self.alive[l] and self.alive[h], f"node {a} has a dead child"
            assert h != FALSE, f"node {a} has a FALSE high child"
            assert self.var[l] > v and self.var[h] > v, f"node {a} breaks variable order"
            assert a in self._levels[v]
            indeg[l] += 1
            indeg[h] += 1
        assert live == self._live
        for a in range(2, len(self.var)):
            if self.alive[a]:
                assert indeg[a] == self.indeg[a], f"indegree mismatch at node {a}"
                assert indeg[a] > 0 or a == self._root, f"orphan node {a}"
        for key, a in self.unique.items():
            assert self.alive[a] and key == (self.var[a], self.lo[a], self.hi[a])
        assert self._root <= TRUE or self.indeg[self._root] == 0

    def is_canonical(self) -> bool:
        keys = set()
        for a in self._topological():
            key = (self.var[a], self.lo[a], self.hi[a])
            if key in keys:
                return False
            keys.add(key)
        return True

    def dump(self) -> str:
        """Node table as ``id var lo hi indeg`` lines, root first."""
        lines = [f"root {self._root}"]
        for a in range(len(self.var)):
            if self.alive[a] and a > TRUE:
                lines.append(f"{a} {self.var[a]} {self.lo[a]} {self.hi[a]} {self.indeg[a]}")
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        out = ["digraph zdd {", '  0 [shape=box,label="0"];', '  1 [shape=box,label="1"];']
        for a in range(2, len(self.var)):
            if self.alive[a]:
                out.append(f'  {a} [label="e{self.var[a]}"];')
                out.append(f"  {a} -> {self.lo[a]} [style=dashed];")
                out.append(f"  {a} -> {self.hi[a]};")
        out.append("}")
        return "\n".join(out) + "\n"


def from_family(n: int, family: Iterable[Iterable[int]]) -> Zdd:
    """Build the canonical ZDD of an explicit family of subsets of ``1..n``."""
    z = Zdd(n)
    sets = {frozenset(s) for s in family}
    for s in sets:
        for e in s:
            if not 1 <= e <= n:
                raise ZddError(f"element {e} out of range [1, {n}]")

    # recursive split on the smallest element, memoized on the subfamily
    memo: dict[tuple[int, frozenset[frozenset[int]]], int] = {}

    def build(i: int, fam: frozenset[frozenset[int]]) -> int:
        if not fam:
            return FALSE
        if i > n:
            return TRUE
        key = (i, fam)
        if key in memo:
            return memo[key]
        with_i = frozenset(s - {i} for s in fam if i in s)
        without = frozenset(s for s in fam if i not in s)
        node = z.insert(i, build(i + 1, without), build(i + 1, with_i))
        memo[key] = node
        return node

    z.root = build(1, frozenset(sets))
    z.mark_baseline()
    return z
