"""
Dense bounded-variable primal simplex for ``min c.x  s.t.  A x >= b,  l <= x <= u``.

Every row gets a surplus variable (cost 0) and an artificial variable (cost
``big_m``), so the artificial basis is always a feasible start and a positive
artificial at the optimum signals infeasibility. The basis inverse is kept
explicitly and updated with rank-one pivots, with periodic refactorization.
Pricing is Dantzig's rule, switching to Bland's rule after a streak of
degenerate pivots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FEAS_TOL = 1e-7
OPT_TOL = 1e-7
PIVOT_TOL = 1e-9
DEGENERATE_STREAK = 200
REFACTOR_EVERY = 64


class LPError(RuntimeError):
    """Numerical failure inside the simplex."""


@dataclass
class LPResult:
    x: np.ndarray  # structural values
    duals: np.ndarray  # one per row, >= 0
    reduced_costs: np.ndarray  # structural reduced costs
    objective: float  # c.x over structurals
    artificial: float  # total artificial value; > FEAS_TOL means infeasible
    dual_objective: float
    iterations: int

    @property
    def feasible(self) -> bool:
        return self.artificial <= FEAS_TOL


class BoundedSimplex:
    """Covering-row LP with columns that can be appended between solves.

    Variables are laid out as ``[surplus (m) | artificial (m) | structural]``.
    Appending a column keeps the current basis, so re-solving after column
    generation only needs a few pivots.
    """

    def __init__(self, b: np.ndarray, big_m: float | None = None, capacity: int = 64):
        self.b = np.asarray(b, dtype=float)
        m = self.m = len(self.b)
        self.big_m = float(m + 1) if big_m is None else big_m
        cap = 2 * m + capacity
        self.A = np.zeros((m, cap))
        self.A[:, :m] = -np.eye(m)
        self.A[:, m : 2 * m] = np.eye(m)
        self.c = np.zeros(cap)
        self.c[m : 2 * m] = self.big_m
        self.lower = np.zeros(cap)
        self.upper = np.full(cap, np.inf)
        self.N = 2 * m
        self.x = np.zeros(cap)
        self.at_upper = np.zeros(cap, dtype=bool)
        self.is_basic = np.zeros(cap, dtype=bool)
        self.basis: np.ndarray | None = None
        self.Binv: np.ndarray | None = None
        self.iterations = 0

    # ------------------------------------------------------------------

    @property
    def n_structural(self) -> int:
        return self.N - 2 * self.m

    def add_column(self, a: np.ndarray, cost: float, lower: float = 0.0, upper: float = np.inf) -> int:
        """Append a structural column; returns its structural index."""
        if lower > upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.N == self.A.shape[1]:
            self._grow()
        j = self.N
        self.A[:, j] = a
        self.c[j] = cost
        self.lower[j] = lower
        self.upper[j] = upper
        self.x[j] = lower
        self.at_upper[j] = False
        self.N += 1
        if self.basis is not None:
            # nonbasic at a nonzero bound shifts the basic solution
            if lower != 0.0:
                self._recompute_basic()
        return j - 2 * self.m

    def set_bounds(self, k: int, lower: float, upper: float) -> None:
        """Change bounds of structural ``k``; the basis is kept only if it stays feasible."""
        j = 2 * self.m + k
        self.lower[j] = lower
        self.upper[j] = upper
        if self.basis is None:
            self.x[j] = lower
            return
        if not self.is_basic[j]:
            self.x[j] = upper if self.at_upper[j] and np.isfinite(upper) else lower
            self.at_upper[j] = self.x[j] == upper and upper != lower
        self._recompute_basic()
        xb = self.x[self.basis]
        lb, ub = self.lower[self.basis], self.upper[self.basis]
        if np.any(xb < lb - FEAS_TOL) or np.any(xb > ub + FEAS_TOL):
            self.basis = None

    def _grow(self) -> None:
        cap = self.A.shape[1]
        extra = max(cap, 64)
        self.A = np.hstack([self.A, np.zeros((self.m, extra))])
        self.c = np.concatenate([self.c, np.zeros(extra)])
        self.lower = np.concatenate([self.lower, np.zeros(extra)])
        self.upper = np.concatenate([self.upper, np.full(extra, np.inf)])
        self.x = np.concatenate([self.x, np.zeros(extra)])
        self.at_upper = np.concatenate([self.at_upper, np.zeros(extra, dtype=bool)])
        self.is_basic = np.concatenate([self.is_basic, np.zeros(extra, dtype=bool)])

    # ------------------------------------------------------------------

    def _cold_start(self) -> None:
        m, N = self.m, self.N
        self.is_basic[:] = False
        self.at_upper[:N] = False
        self.x[:N] = self.lower[:N]
        r = self.b - self.A[:, 2 * m : N] @ self.x[2 * m : N]
        basis = np.where(r >= 0, np.arange(m, 2 * m), np.arange(m))
        self.basis = basis
        self.is_basic[basis] = True
        self.x[:m] = np.where(r < 0, -r, 0.0)
        self.x[m : 2 * m] = np.where(r >= 0, r, 0.0)
        self.Binv = np.linalg.inv(self.A[:, basis])

    def _refactor(self) -> None:
        try:
            self.Binv = np.linalg.inv(self.A[:, self.basis])
        except np.linalg.LinAlgError as exc:
            raise LPError("singular basis") from exc
        self._recompute_basic()

    def _recompute_basic(self) -> None:
        N = self.N
        nb = ~self.is_basic[:N]
        rhs = self.b - self.A[:, :N][:, nb] @ self.x[:N][nb]
        self.x[self.basis] = self.Binv @ rhs

    def solve(self, max_iter: int = 100_000) -> LPResult:
        if self.basis is None:
            self._cold_start()
        else:
            self._refactor()
        degenerate = 0
        bland = False
        since_refactor = 0
        for _ in range(max_iter):
            N = self.N
            A = self.A[:, :N]
            y = self.c[self.basis] @ self.Binv
            d = self.c[:N] - y @ A
            movable = (~self.is_basic[:N]) & (self.upper[:N] > self.lower[:N])
            up = self.at_upper[:N]
            improving = movable & (((~up) & (d < -OPT_TOL)) | (up & (d > OPT_TOL)))
            cand = np.flatnonzero(improving)
            if cand.size == 0:
                return self._result(y, d)
            if bland:
                j = int(cand[0])
            else:
                j = int(cand[np.argmax(np.abs(d[cand]))])
            sigma = -1.0 if up[j] else 1.0
            alpha = self.Binv @ A[:, j]
            rate = -sigma * alpha  # d x_B / d t
            t, leave, to_upper = self._ratio_test(rate, bland)
            flip = self.upper[j] - self.lower[j]
            if flip <= t:
                t, leave = flip, -1
            if not np.isfinite(t):
                raise LPError("LP is unbounded")
            self.iterations += 1
            self.x[self.basis] += t * rate
            self.x[j] += sigma * t
            if leave < 0:
                self.at_upper[j] = not self.at_upper[j]
                self.x[j] = self.upper[j] if self.at_upper[j] else self.lower[j]
            else:
                out = int(self.basis[leave])
                self.x[out] = self.upper[out] if to_upper else self.lower[out]
                self.at_upper[out] = to_upper
                self.is_basic[out] = False
                self.is_basic[j] = True
                self.at_upper[j] = False
                self.basis[leave] = j
                piv = alpha[leave]
                row = self.Binv[leave] / piv
                self.Binv -= np.outer(alpha, row)
                self.Binv[leave] = row
                since_refactor += 1
                if since_refactor >= REFACTOR_EVERY:
                    self._refactor()
                    since_refactor = 0
            if t <= PIVOT_TOL:
                degenerate += 1
                if degenerate >= DEGENERATE_STREAK:
                    bland = True
            else:
                degenerate = 0
                bland = False
        raise LPError(f"simplex did not converge in {max_iter} iterations")

    def _ratio_test(self, rate: np.ndarray, bland: bool) -> tuple[float, int, bool]:
        """Two-pass (Harris) ratio test; returns step, leaving row, leaves-at-upper."""
        xb = self.x[self.basis]
        lb = self.lower[self.basis]
        ub = self.upper[self.basis]
        dec = rate < -PIVOT_TOL
        inc = (rate > PIVOT_TOL) & np.isfinite(ub)
        with np.errstate(divide="ignore", invalid="ignore"):
            t_dec = np.where(dec, (xb - lb + FEAS_TOL) / -rate, np.inf)
            t_inc = np.where(inc, (ub - xb + FEAS_TOL) / rate, np.inf)
        relaxed = min(t_dec.min(initial=np.inf), t_inc.min(initial=np.inf))
        if not np.isfinite(relaxed):
            return np.inf, -1, False
        with np.errstate(divide="ignore", invalid="ignore"):
            e_dec = np.where(dec, np.maximum(xb - lb, 0.0) / -rate, np.inf)
            e_inc = np.where(inc, np.maximum(ub - xb, 0.0) / rate, np.inf)
        exact = np.minimum(e_dec, e_inc)
        ok = np.flatnonzero(exact <= relaxed)
        if bland:
            best = exact[ok].min()
            ties = ok[exact[ok] <= best + 1e-12]
            leave = int(ties[np.argmin(self.basis[ties])])
        else:
            leave = int(ok[np.argmax(np.abs(rate[ok]))])
        return float(exact[leave]), leave, bool(e_inc[leave] <= e_dec[leave])

    def _result(self, y: np.ndarray, d: np.ndarray) -> LPResult:
        m, N = self.m, self.N
        s = slice(2 * m, N)
        x = self.x[s].copy()
        # snap values that sit on a bound within tolerance
        for bound in (self.lower[s], self.upper[s]):
            near = np.abs(x - bound) <= FEAS_TOL
            x[near] = bound[near]
        duals = np.maximum(y, 0.0)
        art = float(np.maximum(self.x[m : 2 * m], 0.0).sum())
        nb = ~self.is_basic[:N]
        dual_obj = float(self.b @ y + d[nb] @ self.x[:N][nb])
        return LPResult(
            x=x,
            duals=duals,
            reduced_costs=d[s].copy(),
            objective=float(self.c[s] @ x),
            artificial=art,
            dual_objective=dual_obj,
            iterations=self.iterations,
        )


def solve_covering_lp(A, b, c, lower=None, upper=None, big_m: float | None = None) -> LPResult:
    """One-shot convenience wrapper around :class:`BoundedSimplex`."""
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    lp = BoundedSimplex(b, big_m=big_m, capacity=n)
    lower = np.zeros(n) if lower is None else lower
    upper = np.full(n, np.inf) if upper is None else upper
    for j in range(n):
        lp.add_column(A[:, j], c[j], lower[j], upper[j])
    return lp.solve()
