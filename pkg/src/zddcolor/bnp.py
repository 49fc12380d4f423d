"""
Branch-and-price for graph coloring with ZDD pricing.

The pricing problem (maximum-weight maximal independent set) is answered by a
ZDD of all maximal independent sets. Every column that enters the pool is
removed from the ZDD right away, so the ZDD always holds exactly the columns
not yet generated and pricing stays exact under plain 0/1 variable branching.
Fixings live only in the RMP bounds.

Subproblems are selected depth-first, best-first, or by cyclic best-first
search over contours (tree depth, or number of ``x_S = 1`` fixings).
"""

from __future__ import annotations

import heapq
import logging
import math
import random
import time
from dataclasses import dataclass

from . import rmp
from .graph import (
    Graph,
    extend_coloring,
    greedy_clique,
    greedy_coloring,
    maximal_path_ordering,
    preprocess,
)
from .miszdd import DEFAULT_NODE_BUDGET, MisZdd, ZddBudgetExceeded, make_mis_zdd
from .rmp import Column, RmpModel, RmpSolution

log = logging.getLogger(__name__)

BOUND_TOL = 1e-6
PRICING_TOL = 1e-7

STRATEGIES = ("dfs", "bfs", "cbfs")
CONTOURS = ("depth", "positive-assignment")


class PoolDesyncError(RuntimeError):
    """The ZDD produced a set that is already in the pool."""


class _TimeUp(Exception):
    pass


@dataclass
class SolverConfig:
    strategy: str = "cbfs"
    contour: str = "positive-assignment"
    time_limit: float | None = 600.0
    zdd_budget: int = DEFAULT_NODE_BUDGET
    pool_filter: float | None = 0.8
    seed: int = 0
    # randomized DSATUR runs whose classes feed the filtered initial pool
    init_colorings: int = 8

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.contour not in CONTOURS:
            raise ValueError(f"unknown contour {self.contour!r}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")
        if self.zdd_budget <= 0:
            raise ValueError("ZDD budget must be positive")


@dataclass
class Subproblem:
    fixings: tuple[tuple[int, int], ...]
    bound: float
    contour: int
    depth: int
    id: int
    branch_column: int | None = None

    @property
    def key(self) -> tuple[float, int, int]:
        """Measure of best: LP bound, then deeper first, then older first."""
        return (self.bound, -self.depth, self.id)

    @property
    def positive(self) -> int:
        return sum(1 for _, v in self.fixings if v == 1)


@dataclass
class SolverStats:
    explored: int = 0
    identified: int = 0
    zdd_initial: int = 0
    zdd_final: int = 0
    columns_generated: int = 0
    initial_pool: int = 0
    pricing_calls: int = 0
    zdd_time: float = 0.0
    pricing_time: float = 0.0
    lp_time: float = 0.0
    search_time: float = 0.0
    total_time: float = 0.0

    @property
    def zdd_growth(self) -> float:
        """Percent change of the ZDD size over the search."""
        if not self.zdd_initial:
            return 0.0
        return 100.0 * (self.zdd_final - self.zdd_initial) / self.zdd_initial


@dataclass
class SolveResult:
    lb: int
    ub: int
    coloring: list[list[int]]  # color classes over original vertices
    status: str  # "optimal", "time_limit" or "zdd_budget"
    clique: list[int]
    stats: SolverStats
    n: int
    m: int
    reduced_n: int = 0
    root_bound: float | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


# ----------------------------------------------------------------------
# subproblem queues


class DfsQueue:
    def __init__(self):
        self._stack: list[Subproblem] = []

    def push(self, sub: Subproblem) -> None:
        self._stack.append(sub)

    def pop(self) -> Subproblem | None:
        return self._stack.pop() if self._stack else None

    def __len__(self) -> int:
        return len(self._stack)

    def __iter__(self):
        return iter(self._stack)


class BfsQueue:
    def __init__(self):
        self._heap: list[tuple[tuple[float, int, int], Subproblem]] = []

    def push(self, sub: Subproblem) -> None:
        heapq.heappush(self._heap, (sub.key, sub))

    def pop(self) -> Subproblem | None:
        return heapq.heappop(self._heap)[1] if self._heap else None

    def __len__(self) -> int:
        return len(self._heap)

    def __iter__(self):
        return (s for _, s in self._heap)


class ContourQueue:
    """Cyclic best-first selection over labeled contours.

    After exploring a subproblem from contour ``i``, the next one comes from the
    first non-empty contour with a label above ``i``, wrapping around to the
    lowest non-empty label; within a contour the measure-of-best minimum wins.
    """

    def __init__(self):
        self.contours: dict[int, list[tuple[tuple[float, int, int], Subproblem]]] = {}
        self.cursor = -1
        self._size = 0

    def push(self, sub: Subproblem) -> None:
        heapq.heappush(self.contours.setdefault(sub.contour, []), (sub.key, sub))
        self._size += 1

    def pop(self) -> Subproblem | None:
        labels = sorted(k for k, h in self.contours.items() if h)
        if not labels:
            return None
        after = [k for k in labels if k > self.cursor]
        j = after[0] if after else labels[0]
        sub = heapq.heappop(self.contours[j])[1]
        self.cursor = j
        self._size -= 1
        return sub

    def __len__(self) -> int:
        return self._size

    def __iter__(self):
        return (s for h in self.contours.values() for _, s in h)


def cbfs_next(queue: ContourQueue) -> Subproblem | None:
    return queue.pop()


def make_queue(strategy: str):
    return {"dfs": DfsQueue, "bfs": BfsQueue, "cbfs": ContourQueue}[strategy]()


# ----------------------------------------------------------------------


def select_branch_variable(sol: RmpSolution, fixed: set[int] | frozenset[int] = frozenset()) -> int:
    """Unfixed fractional column with value closest to 1 (lowest id on ties)."""
    frac = {k: x for k, x in sol.fractional().items() if k not in fixed}
    if not frac:
        raise ValueError("solution has no fractional unfixed column")
    return min(frac, key=lambda k: (-frac[k], k))


def lp_ceil(bound: float) -> int:
    return math.ceil(bound - BOUND_TOL)


class BranchAndPrice:
    """Search state for one (reduced) graph."""

    def __init__(self, g: Graph, config: SolverConfig, floor: int = 0):
        self.g = g
        self.config = config
        self.floor = floor  # known lower bound (clique size)
        self.stats = SolverStats()
        self.model = RmpModel(g.n)
        self.mis: MisZdd | None = None
        self.incumbent: list[list[int]] | None = None
        self.deadline: float | None = None
        self.root_bound: float | None = None
        self._next_column = 0
        self._next_sub = 0

    # ------------------------------------------------------------------
    # setup

    def build_zdd(self) -> None:
        t = time.perf_counter()
        ordering = maximal_path_ordering(self.g)
        self.mis = make_mis_zdd(self.g, ordering, budget=self.config.zdd_budget)
        self.stats.zdd_time = time.perf_counter() - t
        self.stats.zdd_initial = self.mis.zdd.node_count()

    def _admit(self, vertices) -> Column:
        col = Column(self._next_column, frozenset(vertices))
        self.model.add_column(col)
        self._next_column += 1
        return col

    def seed_pool(self) -> None:
        """Initial pool: best greedy coloring plus dual-filtered extra classes."""
        g = self.g
        best = greedy_coloring(g)
        rng = random.Random(self.config.seed)
        extra = []
        for _ in range(self.config.init_colorings):
            classes = greedy_coloring(g, rng)
            if len(classes) < len(best):
                best, classes = classes, best
            extra.extend(classes)
        self.incumbent = [sorted(c) for c in best]
        for c in best:
            if frozenset(c) not in self.model:
                self._admit(c)
        if extra:
            keep = extra
            if self.config.pool_filter is not None:
                sol = rmp.solve(self.model)
                keep = [c for c in extra if 1.0 - rmp.reduced_cost(c, sol.duals) > self.config.pool_filter]
            for c in keep:
                if frozenset(c) not in self.model:
                    self._admit(c)
        for col in self.model.columns:
            self.mis.restrict(col.vertices)
        self.stats.initial_pool = len(self.model.columns)

    # ------------------------------------------------------------------
    # column generation

    def _check_time(self) -> None:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise _TimeUp

    def column_generation(self, sub: Subproblem) -> RmpSolution:
        model = self.model
        model.clear_fixings()
        for cid, value in sub.fixings:
            model.fix(cid, value)
        while True:
            self._check_time()
            t = time.perf_counter()
            sol = rmp.solve(model)
            t2 = time.perf_counter()
            self.stats.lp_time += t2 - t
            best = self.mis.max_weight_set(sol.duals)
            self.stats.pricing_calls += 1
            if best is None or best[1] <= 1.0 + PRICING_TOL:
                self.stats.pricing_time += time.perf_counter() - t2
                return sol
            vertices = best[0]
            if vertices in model:
                raise PoolDesyncError(f"ZDD returned pooled set {vertices}")
            self.mis.restrict(vertices)
            self.stats.pricing_time += time.perf_counter() - t2
            self._admit(vertices)
            self.stats.columns_generated += 1

    def evaluate(self, fixings, depth: int, contour: int) -> tuple[Subproblem, RmpSolution]:
        sub = Subproblem(tuple(fixings), 0.0, contour, depth, self._next_sub)
        self._next_sub += 1
        sol = self.column_generation(sub)
        self.stats.identified += 1
        sub.bound = sol.objective if sol.feasible else math.inf
        if sol.feasible and not sol.is_integral():
            sub.branch_column = select_branch_variable(sol, {c for c, _ in sub.fixings})
        return sub, sol

    def _integral_classes(self, sol: RmpSolution) -> list[list[int]]:
        return [sorted(self.model.column(k).vertices) for k, x in sol.primal.items() if x > 0.5]

    def _consider(self, sub: Subproblem, sol: RmpSolution, queue) -> None:
        """Prune, record as incumbent, or enqueue a freshly evaluated subproblem."""
        if not sol.feasible:
            return
        if sub.branch_column is None:
            classes = self._integral_classes(sol)
            if len(classes) < len(self.incumbent):
                log.debug("incumbent %d -> %d", len(self.incumbent), len(classes))
                self.incumbent = classes
            return
        if lp_ceil(sub.bound) >= len(self.incumbent):
            return
        queue.push(sub)

    # ------------------------------------------------------------------
    # search

    def _done(self) -> bool:
        return len(self.incumbent) <= self.floor

    def search(self) -> tuple[int, str]:
        """Run the tree search; returns (lower bound, status) for the reduced graph."""
        cfg = self.config
        start = time.perf_counter()
        if cfg.time_limit is not None:
            self.deadline = start + cfg.time_limit
        queue = make_queue(cfg.strategy)
        status = "optimal"
        lb_root = self.floor
        try:
            if not self._done():
                root, sol = self.evaluate((), 0, 0)
                self.root_bound = root.bound
                lb_root = max(lb_root, lp_ceil(root.bound))
                self._consider(root, sol, queue)
            while not self._done() and lb_root < len(self.incumbent):
                sub = queue.pop()
                if sub is None:
                    break
                if lp_ceil(sub.bound) >= len(self.incumbent):
                    continue
                try:
                    self._expand(sub, queue)
                except _TimeUp:
                    queue.push(sub)
                    raise
        except _TimeUp:
            status = "time_limit"
        self.stats.search_time = time.perf_counter() - start
        ub = len(self.incumbent)
        if status == "optimal":
            return ub, status
        open_bounds = [lp_ceil(s.bound) for s in queue if lp_ceil(s.bound) < ub]
        lb = min(open_bounds, default=ub) if self.root_bound is not None else self.floor
        return max(lb, lb_root, self.floor), status

    def _expand(self, sub: Subproblem, queue) -> None:
        self.stats.explored += 1
        col = sub.branch_column
        for value in (0, 1):
            contour = sub.depth + 1 if self.config.contour == "depth" else sub.contour + value
            child, sol = self.evaluate(sub.fixings + ((col, value),), sub.depth + 1, contour)
            self._consider(child, sol, queue)


def solve(g: Graph, config: SolverConfig | None = None) -> SolveResult:
    """Color ``g`` optimally (or until a limit), returning bounds and a coloring."""
    config = config or SolverConfig()
    t0 = time.perf_counter()
    clique = greedy_clique(g)
    pre = preprocess(g, clique)
    red = pre.graph
    k = len(clique)
    log.info("clique %d, reduced graph %d/%d vertices", k, red.n, g.n)

    bp = BranchAndPrice(red, config, floor=k)
    status = "optimal"
    lb = k
    if red.n == 0:
        bp.incumbent = []
    else:
        bp.incumbent = [sorted(c) for c in greedy_coloring(red)]
        if len(bp.incumbent) > k:
            try:
                bp.build_zdd()
            except ZddBudgetExceeded as exc:
                log.warning("%s", exc)
                status = "zdd_budget"
                bp.stats.zdd_initial = bp.stats.zdd_final = exc.size
            if status == "optimal":
                bp.seed_pool()
                lb, status = bp.search()
                bp.stats.zdd_final = bp.mis.zdd.node_count()
    coloring = extend_coloring(pre, bp.incumbent)
    ub = len(coloring)
    if status == "optimal":
        lb = ub
    lb = max(lb, k)
    bp.stats.total_time = time.perf_counter() - t0
    return SolveResult(
        lb=lb,
        ub=ub,
        coloring=coloring,
        status=status,
        clique=clique,
        stats=bp.stats,
        n=g.n,
        m=g.m,
        reduced_n=red.n,
        root_bound=bp.root_bound,
    )
