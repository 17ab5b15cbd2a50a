from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from src.core import chern, dt, vertex
from src.core.chern import BlowupPoint, ProjSpace, product_of
from src.core.errors import BoundError, VertexError
from src.core.vertex import Character, PlanePartition3D

GENERIC = (1, 100, 10000)


def single_box():
    return PlanePartition3D(frozenset({(0, 0, 0)}))


class TestPlanePartitions:
    def test_counts(self):
        assert vertex.partition_counts(6) == [1, 1, 3, 6, 13, 24, 48]

    def test_empty(self):
        assert vertex.enumerate_partitions(0) == [PlanePartition3D.empty()]

    def test_no_duplicates(self):
        found = vertex.enumerate_partitions(4)
        assert len(set(found)) == len(found) == 13

    def test_order_ideal_enforced(self):
        with pytest.raises(VertexError):
            PlanePartition3D(frozenset({(1, 0, 0)}))
        with pytest.raises(VertexError):
            PlanePartition3D(frozenset({(0, 0, -1)}))

    def test_addable(self):
        assert single_box().addable() == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]

    def test_bound(self):
        with pytest.raises(BoundError):
            vertex.enumerate_partitions(7, bound=6)

    def test_negative(self):
        with pytest.raises(VertexError):
            vertex.enumerate_partitions(-1)


class TestCharacter:
    def test_single_box(self):
        expected = Character({
            (-1, 0, 0): 1, (0, -1, 0): 1, (0, 0, -1): 1,
            (-1, -1, 0): -1, (-1, 0, -1): -1, (0, -1, -1): -1,
        })
        V = vertex.vertex_character(single_box())
        assert V == expected
        assert len(V) == 6

    def test_empty(self):
        assert len(vertex.vertex_character(PlanePartition3D.empty())) == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_no_trivial_weight_and_rank_zero(self, n):
        for _, V in vertex.iter_characters(n):
            assert V.constant_coefficient() == 0
            assert V.rank() == 0

    @pytest.mark.parametrize("n", [2, 3])
    def test_symmetric_group_invariance(self, n):
        for pi in vertex.enumerate_partitions(n):
            V = vertex.vertex_character(pi)
            for perm in permutations(range(3)):
                assert vertex.vertex_character(pi.permute(perm)) == V.permute(perm)

    def test_laurent_arithmetic(self):
        t1 = Character.monomial((1, 0, 0))
        assert (t1 * t1.dual()) == Character.monomial((0, 0, 0))
        assert (t1 - t1).rank() == 0
        assert len(t1 - t1) == 0


class TestWeights:
    def test_single_box_formula(self):
        assert vertex.vertex_weight(single_box(), (1, 2, 3)) == 10

    def test_sign_flip_invariance(self):
        for pi in vertex.enumerate_partitions(3):
            assert vertex.vertex_weight(pi, (2, 5, 11)) == vertex.vertex_weight(pi, (-2, -5, -11))

    def test_zero_weight(self):
        assert vertex.vertex_weight(single_box(), (1, -1, 3)) is None

    def test_empty_partition(self):
        assert vertex.vertex_weight(PlanePartition3D.empty(), (1, 2, 3)) == 1


class TestCharts:
    @pytest.mark.parametrize("expr, count", [("p3", 4), ("p2p1", 6), ("cube", 8)])
    def test_fixed_point_counts(self, request, expr, count):
        assert len(vertex.toric_charts(request.getfixturevalue(expr))) == count

    def test_p3_forms(self, p3):
        charts = vertex.toric_charts(p3)
        assert charts[0].forms == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert charts[1].specialize(GENERIC) == (-1, 99, 9999)

    def test_unsupported(self, blown_p3):
        with pytest.raises(VertexError):
            vertex.toric_charts(blown_p3)
        with pytest.raises(VertexError):
            vertex.toric_charts(ProjSpace(2))

    def test_degenerate_chart(self):
        with pytest.raises(VertexError):
            vertex.ToricChart((0,), ((1, 0, 0), (1, 0, 0), (0, 0, 1)))

    @pytest.mark.parametrize("expr", ["p3", "p2p1", "cube"])
    def test_local_exponents_sum_to_exponent(self, request, expr):
        X = request.getfixturevalue(expr)
        total = sum((vertex.local_exponent(c, GENERIC) for c in vertex.toric_charts(X)), Fraction(0))
        assert total == chern.dt_exponent(X)


class TestLocalization:
    @pytest.mark.parametrize("index", [0, 1, 2, 3])
    def test_local_partition_function(self, p3, index):
        chart = vertex.toric_charts(p3)[index]
        local = vertex.local_partition_function(chart, 3, GENERIC)
        expected = dt.qpow(dt.macmahon(3).at_minus_q(), vertex.local_exponent(chart, GENERIC))
        assert local == expected

    def test_local_zero_weight(self, p3):
        chart = vertex.toric_charts(p3)[0]
        with pytest.raises(VertexError):
            vertex.local_partition_function(chart, 1, (1, -1, 5))

    def test_p3(self, p3):
        assert vertex.n_dt(p3, 0) == 1
        assert vertex.n_dt(p3, 1) == 20
        assert vertex.n_dt(p3, 2) == 150

    @pytest.mark.parametrize("expr", ["p2p1", "cube"])
    def test_matches_macmahon_power(self, request, expr):
        X = request.getfixturevalue(expr)
        assert vertex.n_dt_series(X, 3) == dt.z_absolute(X, 3)

    def test_seed_independent(self, cube):
        values = {vertex.n_dt(cube, 2, seed=seed) for seed in (0, 1, 2, 12345)}
        assert values == {dt.z_absolute(cube, 2).coefficient(2)}

    def test_parallel_matches_serial(self, p2p1):
        assert vertex.n_dt(p2p1, 3, jobs=3) == vertex.n_dt(p2p1, 3, jobs=1)

    def test_bound(self, p3):
        with pytest.raises(BoundError):
            vertex.n_dt(p3, 4, bound=3)

    def test_swapped_product(self):
        X = product_of(ProjSpace(1), ProjSpace(2))
        assert vertex.n_dt(X, 1) == 18

    def test_non_toric(self):
        with pytest.raises(VertexError):
            vertex.n_dt(BlowupPoint(ProjSpace(3)), 1)


def test_specialization_is_seeded():
    a = vertex.draw_specialization(np.random.default_rng(7))
    b = vertex.draw_specialization(np.random.default_rng(7))
    assert a == b
    assert all(1 <= abs(x) <= 1000 for x in a)
