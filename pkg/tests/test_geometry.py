import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dispersion import (
    COORD_LIMIT,
    InfeasibleError,
    Metric,
    PointSet,
    directional_topk,
    inner_product,
    l1_distance,
    linf_distance,
    rotate_linf_to_l1,
    subset_weight,
)
from dispersion.geometry import axis_pair_sum, translate

from helpers import naive_l1, naive_linf, naive_pair_weight


class TestDistances:
    def test_l1_identical(self):
        assert l1_distance((0, 0), (0, 0)) == 0

    def test_l1_basic(self):
        assert l1_distance((0, 0), (1, 2)) == 3

    def test_l1_three_dims(self):
        assert l1_distance((-3, 4, 1), (2, -1, 1)) == 10

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            l1_distance((0, 0), (1, 2, 3))

    def test_linf(self):
        assert linf_distance((0, 0), (3, -5)) == 5


class TestInnerProduct:
    @pytest.mark.parametrize(
        "p,c,expected",
        [((2, 3), (1, 0), 2), ((2, 3), (0, 0), 0), ((1, -2), (-3, 1), -5)],
    )
    def test_examples(self, p, c, expected):
        assert inner_product(p, c) == expected

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            inner_product((1, 2), (1,))


class TestPointSet:
    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            PointSet([])

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            PointSet([(0, 0), (1, 2, 3)])

    def test_coordinate_bound(self):
        PointSet([(COORD_LIMIT,)])
        with pytest.raises(ValueError):
            PointSet([(COORD_LIMIT + 1,)])

    def test_duplicates_allowed(self):
        ps = PointSet([(1, 1), (1, 1)])
        assert len(ps) == 2


class TestSubsetWeight:
    def test_singleton_is_zero(self):
        ps = PointSet([(5, 7)])
        assert subset_weight(ps, [0]) == 0

    def test_single_pair(self):
        ps = PointSet([(0, 0), (1, 2)])
        assert subset_weight(ps, [0, 1]) == 3

    def test_four_points(self):
        ps = PointSet([(0, 0), (2, 1), (3, 3), (5, 0)])
        expected = naive_pair_weight(ps.points, range(4))
        assert expected == 26
        assert subset_weight(ps, range(4)) == 26

    def test_duplicate_index_rejected(self):
        ps = PointSet([(0, 0), (1, 1)])
        with pytest.raises(ValueError):
            subset_weight(ps, [0, 0])

    def test_out_of_range_rejected(self):
        ps = PointSet([(0, 0)])
        with pytest.raises(ValueError):
            subset_weight(ps, [1])

    def test_empty_rejected(self):
        ps = PointSet([(0, 0)])
        with pytest.raises(ValueError):
            subset_weight(ps, [])

    def test_linf_is_doubled_chebyshev(self):
        ps = PointSet([(0, 0), (3, 1), (-2, 5)])
        internal = subset_weight(ps, [0, 1, 2], Metric.LINF)
        expected = naive_pair_weight(ps.points, range(3), naive_linf)
        assert internal == 2 * expected

    def test_linf_needs_plane(self):
        ps = PointSet([(0, 0, 0), (1, 1, 1)])
        with pytest.raises(InfeasibleError):
            subset_weight(ps, [0, 1], Metric.LINF)

    def test_l2_matches_naive(self):
        from helpers import naive_l2

        ps = PointSet([(0, 0), (3, 4), (-1, 7)])
        w = subset_weight(ps, [0, 1, 2], Metric.L2_APPROX)
        expected = naive_pair_weight(ps.points, range(3), naive_l2)
        assert w == pytest.approx(expected, rel=1e-12)


class TestDirectionalTopk:
    def test_top_by_x(self):
        ps = PointSet([(5,), (1,), (9,)], dim=1)
        assert directional_topk(ps, (1,), 2) == [0, 2]

    def test_zero_direction_ties_by_index(self):
        ps = PointSet([(4, 4), (9, 9), (1, 1), (7, 7)])
        assert directional_topk(ps, (0, 0), 3) == [0, 1, 2]

    def test_tie_goes_to_smaller_index(self):
        ps = PointSet([(0, 0), (3, 0), (0, 3), (2, 2)])
        # projections along (1,1): 0, 3, 3, 4 -> picks 3, then 1 over 2
        assert directional_topk(ps, (1, 1), 2) == [1, 3]

    def test_matches_full_sort(self):
        ps = PointSet([(3, -1), (0, 4), (-2, -2), (5, 5), (1, 0)])
        c = (2, -3)
        ranked = sorted(
            range(len(ps)), key=lambda i: (-inner_product(ps[i], c), i)
        )
        for k in range(1, len(ps) + 1):
            assert directional_topk(ps, c, k) == sorted(ranked[:k])

    def test_k_out_of_range(self):
        ps = PointSet([(0, 0)])
        with pytest.raises(InfeasibleError):
            directional_topk(ps, (1, 0), 2)

    def test_repeat_calls_identical(self):
        ps = PointSet([(i % 3, i % 5) for i in range(10)])
        first = directional_topk(ps, (1, -1), 4)
        assert all(directional_topk(ps, (1, -1), 4) == first for _ in range(5))


class TestRotation:
    def test_horizontal_pair(self):
        ps = PointSet([(0, 0), (1, 0)])
        rot = rotate_linf_to_l1(ps)
        assert rot.points == ((0, 0), (1, 1))
        assert l1_distance(rot[0], rot[1]) == 2 * linf_distance(ps[0], ps[1])

    def test_diagonal_pair(self):
        ps = PointSet([(0, 0), (1, 1)])
        rot = rotate_linf_to_l1(ps)
        assert rot.points == ((0, 0), (2, 0))
        assert l1_distance(rot[0], rot[1]) == 2

    def test_single_point_arithmetic(self):
        assert rotate_linf_to_l1(PointSet([(2, -1)])).points == ((1, 3),)

    def test_requires_plane(self):
        with pytest.raises(InfeasibleError):
            rotate_linf_to_l1(PointSet([(1, 2, 3)]))

    def test_overflow_rejected(self):
        big = COORD_LIMIT
        with pytest.raises(ValueError):
            rotate_linf_to_l1(PointSet([(big, big)]))


coord = st.integers(min_value=-(10**6), max_value=10**6)


def point_lists(dim, min_size=1, max_size=10):
    return st.lists(
        st.tuples(*[coord] * dim), min_size=min_size, max_size=max_size
    )


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: point_lists(d)))
def test_sorted_coefficient_identity(rows):
    ps = PointSet(rows)
    idx = list(range(len(rows)))
    assert subset_weight(ps, idx) == naive_pair_weight(ps.points, idx)


@settings(max_examples=100, deadline=None)
@given(point_lists(1, min_size=1, max_size=12))
def test_axis_pair_sum_identity(rows):
    values = [r[0] for r in rows]
    naive = sum(
        abs(values[a] - values[b])
        for a in range(len(values))
        for b in range(a + 1, len(values))
    )
    assert axis_pair_sum(values) == naive


@settings(max_examples=100, deadline=None)
@given(point_lists(2, min_size=2, max_size=10))
def test_rotation_identity_all_pairs(rows):
    ps = PointSet(rows)
    rot = rotate_linf_to_l1(ps)
    for a in range(len(ps)):
        for b in range(a + 1, len(ps)):
            assert l1_distance(rot[a], rot[b]) == 2 * linf_distance(ps[a], ps[b])


@settings(max_examples=100, deadline=None)
@given(
    point_lists(2, min_size=3, max_size=10),
    st.tuples(coord, coord),
    st.integers(1, 1000),
)
def test_topk_positive_scaling_invariance(rows, direction, factor):
    ps = PointSet(rows)
    k = max(1, len(rows) // 2)
    scaled = tuple(factor * c for c in direction)
    assert directional_topk(ps, direction, k) == directional_topk(ps, scaled, k)


@settings(max_examples=100, deadline=None)
@given(point_lists(2, min_size=2, max_size=10), st.tuples(coord, coord))
def test_translation_invariance(rows, offset):
    ps = PointSet(rows)
    moved = translate(ps, offset)
    idx = list(range(len(rows)))
    assert subset_weight(ps, idx) == subset_weight(moved, idx)
    assert subset_weight(ps, idx, Metric.LINF) == subset_weight(
        moved, idx, Metric.LINF
    )
