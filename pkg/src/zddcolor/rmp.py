"""
Restricted master problem of the set-covering coloring formulation.

    minimize    sum_S x_S
    subject to  sum_{S containing v} x_S >= 1   for every active vertex v
                lower_S <= x_S <= upper_S

Branching fixings are bounds only. Rows of vertices already covered by a
column fixed to 1 are dropped and report a dual price of 0.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .simplex import FEAS_TOL, BoundedSimplex

INTEGRALITY_TOL = 1e-6


class DuplicateColumnError(ValueError):
    """The column is already in the pool."""


@dataclass(frozen=True)
class Column:
    id: int
    vertices: frozenset[int]

    @property
    def mask(self) -> int:
        return sum(1 << v for v in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass
class RmpSolution:
    objective: float
    primal: dict[int, float]  # column id -> value
    duals: np.ndarray  # one per vertex, 0 on dropped rows
    status: str  # "optimal" or "infeasible"
    artificial: float = 0.0
    dual_objective: float = 0.0
    iterations: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == "optimal"

    def fractional(self, tol: float = INTEGRALITY_TOL) -> dict[int, float]:
        return {k: x for k, x in self.primal.items() if min(x - np.floor(x), np.ceil(x) - x) > tol}

    def is_integral(self, tol: float = INTEGRALITY_TOL) -> bool:
        return not self.fractional(tol)


@dataclass
class RmpModel:
    """Column pool plus per-column 0/1 bounds over ``n`` vertices."""

    n: int
    columns: list[Column] = field(default_factory=list)
    lower: dict[int, float] = field(default_factory=dict)
    upper: dict[int, float] = field(default_factory=dict)
    # warm-start state
    _lp: BoundedSimplex | None = field(default=None, repr=False)
    _rows: tuple[int, ...] = field(default=(), repr=False)
    _synced: int = field(default=0, repr=False)
    _bounds: dict[int, tuple[float, float]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_vertices: dict[frozenset[int], Column] = {c.vertices: c for c in self.columns}
        self._by_id: dict[int, Column] = {c.id: c for c in self.columns}

    def column(self, col_id: int) -> Column:
        return self._by_id[col_id]

    def __contains__(self, vertices: Iterable[int]) -> bool:
        return frozenset(vertices) in self._by_vertices

    def add_column(self, col: Column) -> None:
        if col.vertices in self._by_vertices:
            raise DuplicateColumnError(f"column {sorted(col.vertices)} already in pool")
        if col.id in self._by_id:
            raise DuplicateColumnError(f"column id {col.id} already in pool")
        self.columns.append(col)
        self._by_vertices[col.vertices] = col
        self._by_id[col.id] = col

    def bounds(self, col_id: int) -> tuple[float, float]:
        return self.lower.get(col_id, 0.0), self.upper.get(col_id, 1.0)

    def fix(self, col_id: int, value: int) -> None:
        self.lower[col_id] = self.upper[col_id] = float(value)

    def clear_fixings(self) -> None:
        self.lower.clear()
        self.upper.clear()

    def active_rows(self) -> tuple[int, ...]:
        covered: set[int] = set()
        for c in self.columns:
            if self.bounds(c.id)[0] >= 1.0:
                covered |= c.vertices
        return tuple(v for v in range(self.n) if v not in covered)

    def to_lp_format(self) -> str:
        """CPLEX-LP text of the current model, for cross-checking elsewhere."""
        rows = self.active_rows()
        lines = ["Minimize", " obj: " + (" + ".join(f"x{c.id}" for c in self.columns) or "0"), "Subject To"]
        for v in rows:
            terms = [f"x{c.id}" for c in self.columns if v in c.vertices]
            lines.append(f" v{v}: " + (" + ".join(terms) or "0 x0") + " >= 1")
        lines.append("Bounds")
        for c in self.columns:
            lo, up = self.bounds(c.id)
            lines.append(f" {lo:g} <= x{c.id} <= {up:g}")
        lines.append("End")
        return "\n".join(lines) + "\n"


def _column_vector(col: Column, rows: tuple[int, ...], row_of: dict[int, int]) -> np.ndarray:
    a = np.zeros(len(rows))
    for v in col.vertices:
        i = row_of.get(v)
        if i is not None:
            a[i] = 1.0
    return a


def _lp_bounds(lower: float, upper: float) -> tuple[float, float]:
    """Bounds handed to the simplex.

    With unit costs, ``x_S <= 1`` never binds at an optimum of a covering LP
    (lowering any ``x_S > 1`` to 1 stays feasible and is cheaper). Leaving it
    out keeps free columns off their upper bound, so the row duals carry the
    whole dual solution and are the right pricing weights.
    """
    if lower < 1.0 <= upper:
        return lower, np.inf
    return lower, upper


def solve(model: RmpModel) -> RmpSolution:
    """Solve the LP relaxation, warm-starting when only columns or bounds changed."""
    rows = model.active_rows()
    if model._lp is None or rows != model._rows:
        model._lp = BoundedSimplex(np.ones(len(rows)), capacity=max(64, len(model.columns)))
        model._rows = rows
        model._synced = 0
        model._bounds = {}
    lp = model._lp
    row_of = {v: i for i, v in enumerate(rows)}
    for k in range(model._synced, len(model.columns)):
        col = model.columns[k]
        b = _lp_bounds(*model.bounds(col.id))
        lp.add_column(_column_vector(col, rows, row_of), 1.0, *b)
        model._bounds[col.id] = b
    model._synced = len(model.columns)
    for k, col in enumerate(model.columns):
        b = _lp_bounds(*model.bounds(col.id))
        if model._bounds.get(col.id) != b:
            lp.set_bounds(k, *b)
            model._bounds[col.id] = b

    res = lp.solve()
    duals = np.zeros(model.n)
    for i, v in enumerate(rows):
        duals[v] = res.duals[i]
    primal = {col.id: float(res.x[k]) for k, col in enumerate(model.columns)}
    return RmpSolution(
        objective=res.objective,
        primal=primal,
        duals=duals,
        status="optimal" if res.artificial <= FEAS_TOL else "infeasible",
        artificial=res.artificial,
        dual_objective=res.dual_objective,
        iterations=res.iterations,
    )


def reduced_cost(col: Column | Iterable[int], duals) -> float:
    vertices = col.vertices if isinstance(col, Column) else col
    return 1.0 - float(sum(duals[v] for v in vertices))
