import numpy as np
import pytest

from oracles import maximal_independent_sets
from zddcolor import rmp
from zddcolor.graph import cycle_graph
from zddcolor.rmp import Column, DuplicateColumnError, RmpModel


def model_of(n, sets) -> RmpModel:
    m = RmpModel(n)
    for i, s in enumerate(sets):
        m.add_column(Column(i, frozenset(s)))
    return m


def test_identity_cover():
    sol = rmp.solve(model_of(3, [{0}, {1}, {2}]))
    assert sol.feasible
    assert sol.objective == pytest.approx(3.0)
    assert np.allclose(sol.duals, [1.0, 1.0, 1.0])
    assert sol.is_integral()


def test_five_cycle_fractional_cover():
    sets = sorted(maximal_independent_sets(5, cycle_graph(5).edges()), key=sorted)
    sol = rmp.solve(model_of(5, sets))
    assert sol.objective == pytest.approx(2.5, abs=1e-9)
    assert all(x == pytest.approx(0.5) for x in sol.primal.values())
    assert sol.duals.sum() == pytest.approx(2.5)
    assert set(sol.fractional()) == set(range(5))


def test_fixing_drops_covered_rows():
    m = model_of(4, [{0, 1}, {2}, {3}, {1, 2}])
    m.fix(0, 1)
    assert m.active_rows() == (2, 3)
    sol = rmp.solve(m)
    assert sol.primal[0] == 1.0
    assert sol.duals[0] == 0.0 and sol.duals[1] == 0.0
    assert sol.objective == pytest.approx(3.0)


def test_fixing_to_zero_can_make_infeasible():
    m = model_of(2, [{0}, {1}])
    m.fix(1, 0)
    assert rmp.solve(m).status == "infeasible"
    m.clear_fixings()
    assert rmp.solve(m).feasible


def test_warm_start_equals_cold_start():
    sets = sorted(maximal_independent_sets(7, cycle_graph(7).edges()), key=sorted)
    warm = model_of(7, sets[:3])
    rmp.solve(warm)
    for i, s in enumerate(sets[3:], start=3):
        warm.add_column(Column(i, frozenset(s)))
        w = rmp.solve(warm)
        c = rmp.solve(model_of(7, sets[: i + 1]))
        assert w.objective == pytest.approx(c.objective, abs=1e-9)
    # the seven 3-element maximal independent sets of C7 give 7/3
    assert w.objective == pytest.approx(7 / 3, abs=1e-9)


def test_duplicate_columns_rejected():
    m = model_of(2, [{0}, {1}])
    with pytest.raises(DuplicateColumnError):
        m.add_column(Column(5, frozenset({0})))
    with pytest.raises(DuplicateColumnError):
        m.add_column(Column(0, frozenset({0, 1})))
    assert {0} in m and {0, 1} not in m


def test_reduced_cost():
    col = Column(0, frozenset({0, 2}))
    assert rmp.reduced_cost(col, [0.5, 0.1, 0.25]) == pytest.approx(0.25)
    assert rmp.reduced_cost([1], [0.5, 0.1, 0.25]) == pytest.approx(0.9)
    assert col.mask == 0b101 and len(col) == 2


def test_lp_format_lists_rows_and_bounds():
    m = model_of(3, [{0, 1}, {2}])
    m.fix(1, 0)
    text = m.to_lp_format()
    assert " v2: x1 >= 1" in text
    assert " 0 <= x1 <= 0" in text
    assert text.endswith("End\n")
