import math
from fractions import Fraction
from itertools import product

import pytest

from dispersion import (
    BudgetExceededError,
    CellConfig,
    InfeasibleError,
    Metric,
    PointSet,
    PtasParams,
    assign_cells,
    bound_fraction,
    brute_force,
    cell_direction,
    choose_m,
    enumerate_count_matrices,
    enumerate_splits,
    inner_product,
    solve_ptas,
    strip_quotas,
    subset_weight,
)
from dispersion.ptas import worst_case_config_count

from helpers import brute_best, make_instance, naive_l2


class TestBoundFraction:
    @pytest.mark.parametrize(
        "m,expected",
        [(4, Fraction(11, 12)), (5, Fraction(2, 3)), (10, Fraction(41, 144))],
    )
    def test_values(self, m, expected):
        assert bound_fraction(m) == expected

    def test_strictly_decreasing(self):
        for m in range(4, 40):
            assert bound_fraction(m + 1) < bound_fraction(m)

    def test_m4_is_first_nonvacuous(self):
        assert bound_fraction(3) >= 1
        assert bound_fraction(4) < 1

    def test_rejects_small_m(self):
        with pytest.raises(ValueError):
            bound_fraction(2)


class TestChooseM:
    @pytest.mark.parametrize(
        "eps,expected", [(11, 4), (Fraction(1, 2), 9), (2, 5), ("0.5", 9)]
    )
    def test_examples(self, eps, expected):
        assert choose_m(eps) == expected

    def test_is_minimal(self):
        for eps in (Fraction(1, 3), Fraction(3, 4), Fraction(5, 1)):
            m = choose_m(eps)
            assert bound_fraction(m) <= eps / (1 + eps)
            assert bound_fraction(m - 1) > eps / (1 + eps)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            choose_m(0)


class TestEnumerateSplits:
    def test_small_case_listing(self):
        assert list(enumerate_splits(2, 3)) == [
            (0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2),
        ]

    def test_single_point(self):
        assert len(list(enumerate_splits(1, 3))) == 3

    @pytest.mark.parametrize("n,m", [(12, 4), (7, 3), (5, 5)])
    def test_stars_and_bars_count(self, n, m):
        assert len(list(enumerate_splits(n, m))) == math.comb(n + m - 1, m - 1)


class TestStripQuotas:
    def test_divisible(self):
        assert strip_quotas(6, 3) == ((2, 2, 2),)

    def test_remainder(self):
        assert strip_quotas(7, 3) == ((3, 2, 2), (2, 3, 2), (2, 2, 3))

    def test_k_equals_m(self):
        assert strip_quotas(3, 3) == ((1, 1, 1),)

    def test_k_below_m(self):
        with pytest.raises(InfeasibleError):
            strip_quotas(2, 3)

    @pytest.mark.parametrize("k,m", [(10, 4), (11, 3), (9, 5)])
    def test_every_vector_sums_to_k(self, k, m):
        vectors = strip_quotas(k, m)
        lo, rem = divmod(k, m)
        assert len(vectors) == math.comb(m, rem)
        for vec in vectors:
            assert sum(vec) == k
            assert set(vec) <= {lo, lo + 1}


class TestCountMatrices:
    def test_two_by_two(self):
        mats = list(enumerate_count_matrices((1, 1), (1, 1)))
        assert mats == [((1, 0), (0, 1)), ((0, 1), (1, 0))]

    def test_three_by_three_count(self):
        got = set(enumerate_count_matrices((2, 2, 2), (2, 2, 2)))
        expected = set()
        for flat in product(range(3), repeat=9):
            rows = (flat[0:3], flat[3:6], flat[6:9])
            if all(sum(r) == 2 for r in rows) and all(
                sum(rows[j][i] for j in range(3)) == 2 for i in range(3)
            ):
                expected.add(rows)
        assert len(expected) == 21
        assert got == expected

    def test_capacity_pruning(self):
        caps = [[1, 1], [1, 0]]
        mats = list(enumerate_count_matrices((1, 1), (1, 1), caps))
        assert mats == [((0, 1), (1, 0))]

    def test_infeasible_is_empty(self):
        caps = [[0, 0], [0, 0]]
        assert list(enumerate_count_matrices((1, 1), (1, 1), caps)) == []

    def test_margin_mismatch_rejected(self):
        with pytest.raises(ValueError):
            list(enumerate_count_matrices((1, 1), (2, 1)))


class TestCellDirection:
    def test_corner(self):
        assert cell_direction(0, 0, 4) == (-3, -3)

    def test_opposite_corner(self):
        m = 6
        assert cell_direction(m - 1, 0, m) == (m - 1, 1 - m)

    def test_center_is_zero(self):
        assert cell_direction(1, 1, 3) == (0, 0)

    def test_range_checked(self):
        with pytest.raises(ValueError):
            cell_direction(4, 0, 4)


class TestSolvePtas:
    def test_k_equals_n_selects_everything(self):
        ps = make_instance(9, seed=21)
        sol = solve_ptas(ps, 9, PtasParams(m=3))
        assert sol.indices == tuple(range(9))

    def test_identical_points_zero_weight(self):
        ps = PointSet([(4, -2)] * 8)
        sol = solve_ptas(ps, 5, PtasParams(m=3))
        assert sol.weight == 0
        assert len(sol.indices) == 5

    @pytest.mark.parametrize("seed", range(4))
    def test_bounds_nondivisible(self, seed):
        ps = make_instance(12, seed=seed + 30)
        sol = solve_ptas(ps, 6, PtasParams(m=4))
        opt = brute_force(ps, 6)
        assert sol.weight <= opt.weight
        assert 12 * sol.weight >= opt.weight

    @pytest.mark.parametrize("seed", range(4))
    def test_proven_bound_divisible(self, seed):
        ps = make_instance(11, seed=seed + 40, clustered=(seed % 2 == 0))
        sol = solve_ptas(ps, 8, PtasParams(m=4))
        opt = brute_force(ps, 8)
        assert sol.weight <= opt.weight
        # guarantee: weight >= (1 - 11/12) * OPT, exact integer comparison
        assert 12 * sol.weight >= opt.weight

    def test_feasibility_of_best_config(self):
        ps = make_instance(12, seed=77)
        sol = solve_ptas(ps, 8, PtasParams(m=4))
        cfg = sol.stats["best_config"]
        config = CellConfig(
            x_splits=tuple(cfg["x_splits"]),
            y_splits=tuple(cfg["y_splits"]),
            counts=tuple(tuple(r) for r in cfg["counts"]),
        )
        assert len(set(sol.indices)) == 8
        assert config.k() == 8
        # column sums are x-strip quotas, row sums y-strip quotas (all k/m)
        m = config.m
        for j in range(m):
            assert sum(config.counts[j]) == 2
        for i in range(m):
            assert sum(config.counts[j][i] for j in range(m)) == 2
        # every selected point sits in the cell that demanded it, and is one
        # of that cell's top picks along the cell direction
        cells = assign_cells(ps, config)
        selected = set(sol.indices)
        for (i, j), members in cells.items():
            want = config.counts[j][i]
            got = [p for p in members if p in selected]
            assert len(got) == want
            direction = cell_direction(i, j, m)
            ranked = sorted(
                members,
                key=lambda p: (-inner_product(ps[p], direction), p),
            )
            assert set(got) == set(ranked[:want])

    def test_budget_guard_trips_before_running(self):
        ps = make_instance(12, seed=8)
        with pytest.raises(BudgetExceededError):
            solve_ptas(ps, 6, PtasParams(m=4, budget=100))

    def test_worst_case_count_is_a_bound(self):
        ps = make_instance(12, seed=9)
        sol = solve_ptas(ps, 8, PtasParams(m=4))
        assert sol.stats["configs"] <= worst_case_config_count(12, 4, 8)

    def test_preconditions(self):
        ps = make_instance(10, seed=10)
        with pytest.raises(InfeasibleError):
            solve_ptas(ps, 3, PtasParams(m=4))
        with pytest.raises(InfeasibleError):
            solve_ptas(ps, 11, PtasParams(m=4))
        with pytest.raises(InfeasibleError):
            solve_ptas(make_instance(8, d=3, seed=1), 6, PtasParams(m=3))
        with pytest.raises(ValueError):
            PtasParams(m=2)

    def test_deterministic_across_workers(self):
        ps = make_instance(12, seed=12)
        runs = [
            solve_ptas(ps, 6, PtasParams(m=3, workers=w)) for w in (1, 2, 5)
        ]
        assert len({r.indices for r in runs}) == 1
        assert len({r.weight for r in runs}) == 1
        assert len({r.stats["configs"] for r in runs}) == 1

    def test_linf_mode(self):
        ps = make_instance(10, seed=13)
        sol = solve_ptas(ps, 8, PtasParams(m=4, metric=Metric.LINF))
        opt = brute_force(ps, 8, Metric.LINF)
        assert sol.weight <= opt.weight
        assert 12 * sol.weight >= opt.weight
        assert sol.weight == subset_weight(ps, sol.indices, Metric.LINF)

    def test_l2_mode_reports_euclidean(self):
        ps = make_instance(10, seed=14)
        sol = solve_ptas(ps, 6, PtasParams(m=4, metric=Metric.L2_APPROX))
        opt_w, _ = brute_best(ps.points, 6, naive_l2)
        assert sol.weight <= opt_w + 1e-9
        assert sol.weight >= opt_w / (math.sqrt(2) * 12) * (1 - 1e-9)

    def test_stats_echo(self):
        ps = make_instance(8, seed=15)
        sol = solve_ptas(ps, 8, PtasParams(m=4))
        assert sol.stats["bound_fraction"] == "11/12"
        assert sol.stats["m"] == 4
