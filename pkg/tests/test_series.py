from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import SeriesError
from src.core.series import (
    MultiSeries,
    VariableTable,
    exp_log_pair,
    expm1,
    log1p,
    reversion,
    sparse_add,
    sparse_mul,
)

UV = VariableTable.build(("u", "v"))
UVW = VariableTable.build(("u", "v", "w"))
T = VariableTable.build(("t",))
Q = VariableTable.build(("q",))


def var(table, name, trunc=6):
    return MultiSeries.variable(table, name, trunc)


def poly(table, terms, trunc=6):
    return MultiSeries(table, terms, trunc)


def random_series(rng, table, trunc):
    """Sparse series with small random rational coefficients below degree ``trunc``."""
    terms = {}
    for _ in range(int(rng.integers(1, 8))):
        exps = tuple(int(e) for e in rng.integers(0, 3, size=len(table)))
        if sum(exps) < trunc:
            terms[exps] = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
    return MultiSeries(table, terms, trunc)


class TestArithmetic:
    def test_additive_inverse(self):
        u, v = var(UV, "u"), var(UV, "v")
        assert (u + v) + (-u) == v

    def test_constants_add(self):
        q = var(Q, "q")
        assert (1 + q) + (1 - q) == 2

    def test_rational_merge(self):
        u, v = var(UV, "u"), var(UV, "v")
        half = Fraction(1, 2)
        assert (u + half * u * v) + half * u * v == u + u * v

    def test_difference_of_squares(self):
        u = var(UV, "u")
        assert (1 + u) * (1 - u) == 1 - u * u

    def test_square(self):
        u, v = var(UV, "u"), var(UV, "v")
        assert (u + v) ** 2 == u * u + 2 * u * v + v * v

    def test_truncation_drops_terms(self):
        u, v = var(UV, "u", 1), var(UV, "v", 1)
        assert (u * v).is_zero()

    def test_trunc_is_minimum(self):
        assert (var(UV, "u", 3) + var(UV, "v", 5)).trunc == 3

    def test_no_zero_coefficients_stored(self):
        u = var(UV, "u")
        s = u - u
        assert len(s) == 0
        assert s.is_zero()

    def test_table_mismatch(self):
        with pytest.raises(SeriesError):
            var(UV, "u") + var(Q, "q")

    @pytest.mark.parametrize("seed", range(6))
    def test_ring_axioms(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = (random_series(rng, UV, 5) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a + (b + c) == (a + b) + c
        assert a - a == MultiSeries.zero(UV, 5)

    def test_negative_power_rejected(self):
        with pytest.raises(SeriesError):
            var(UV, "u") ** -1


class TestRendering:
    def test_canonical_text(self):
        s = poly(Q, {(0,): 1, (1,): 20, (2,): Fraction(1, 2)})
        assert str(s) == "1 + 20 q + 1/2 q^2"

    def test_negative_leading_term(self):
        s = poly(UV, {(1, 0): -1, (0, 1): 1})
        assert str(s) == "-u + v"

    def test_zero(self):
        assert str(MultiSeries.zero(Q, 3)) == "0"


class TestSubstitution:
    def test_square_of_sum(self):
        u, v, w = (var(UVW, n) for n in ("u", "v", "w"))
        assert (u * u).substitute({"u": v + w}) == v * v + 2 * v * w + w * w

    def test_identity_assignment(self):
        u, v = var(UV, "u"), var(UV, "v")
        f = u + 3 * u * v - v ** 3
        assert f.substitute({"u": u, "v": v}) == f

    def test_inverse_series(self):
        t = var(T, "t", 4)
        f = t + t * t
        e = t - t ** 2 + 2 * t ** 3 - 5 * t ** 4
        assert f.substitute({"t": e}) == t

    def test_constant_term_rejected(self):
        u = var(UV, "u")
        with pytest.raises(SeriesError):
            (u * u).substitute({"u": 1 + u})

    def test_associative(self):
        t = var(T, "t", 5)
        f = t + t ** 2 - Fraction(1, 3) * t ** 4
        g = t - 2 * t ** 3
        h = t + Fraction(1, 2) * t ** 2
        left = f.substitute({"t": g}).substitute({"t": h})
        right = f.substitute({"t": g.substitute({"t": h})})
        assert left == right

    def test_simultaneous(self):
        u, v = var(UV, "u"), var(UV, "v")
        assert (u - v).substitute({"u": v, "v": u}) == v - u


class TestReversion:
    def test_identity(self):
        t = var(T, "t")
        assert reversion(t) == t

    def test_catalan_pattern(self):
        t = var(T, "t", 4)
        assert reversion(t + t * t) == t - t ** 2 + 2 * t ** 3 - 5 * t ** 4

    def test_round_trip(self):
        t = var(T, "t", 6)
        f = t + Fraction(1, 2) * t ** 2 - 3 * t ** 5
        g = reversion(f)
        assert f.substitute({"t": g}) == t
        assert g.substitute({"t": f}) == t
        assert reversion(g) == f

    def test_linear_coefficient_must_be_one(self):
        t = var(T, "t")
        with pytest.raises(SeriesError):
            reversion(2 * t)

    def test_constant_term_rejected(self):
        t = var(T, "t")
        with pytest.raises(SeriesError):
            reversion(1 + t)


class TestExpLog:
    def test_log_of_exp(self):
        q = var(Q, "q", 6)
        s = q - Fraction(2, 3) * q ** 2 + q ** 5
        assert log1p(expm1(s)) == s

    def test_expm1_zero(self):
        assert expm1(MultiSeries.zero(Q, 4)).is_zero()

    def test_log1p_expansion(self):
        q = var(Q, "q", 3)
        assert log1p(q + q * q) == q + Fraction(1, 2) * q ** 2 - Fraction(2, 3) * q ** 3

    def test_constant_term_rejected(self):
        with pytest.raises(SeriesError):
            log1p(MultiSeries.constant(Q, 1, 3))

    def test_exp_log_pair(self):
        u, v = var(UV, "u", 4), var(UV, "v", 4)
        s = u + v + Fraction(1, 2) * u * v
        log, exp = exp_log_pair(s)
        assert log == log1p(s)
        assert exp == expm1(s)
        assert expm1(log) == s
        assert log1p(exp) == s

    def test_exp_log_pair_univariate(self):
        q = var(Q, "q", 3)
        log, exp = exp_log_pair(q)
        assert exp == q + Fraction(1, 2) * q ** 2 + Fraction(1, 6) * q ** 3
        assert log == q - Fraction(1, 2) * q ** 2 + Fraction(1, 3) * q ** 3


class TestHelpers:
    def test_sparse_kernels_laurent(self):
        a = {(1, -1): 2, (0, 0): 1}
        b = {(-1, 1): 1}
        assert sparse_mul(a, b) == {(0, 0): 2, (-1, 1): 1}
        assert sparse_add(a, a, -1) == {}

    def test_coefficient_extraction(self):
        table = VariableTable.build(("u", "v", "p1"), (-1, -1, 1), truncation=("u", "v"))
        u, v, p1 = (var(table, n, 4) for n in ("u", "v", "p1"))
        f = u + v - p1 * u * v + 2 * p1 * p1 * u * u * v
        assert f.coefficient({"u": 1, "v": 1}) == -p1
        assert f.coefficient({"u": 2, "v": 1}).is_homogeneous(2)

    def test_embed_by_position(self):
        small = VariableTable.build(("h",))
        big = VariableTable.build(("a", "b"))
        h = var(small, "h", 3)
        assert (h * h).embed(big, positions=[1]) == var(big, "b", 3) ** 2

    def test_homogeneous_part(self):
        u, v = var(UV, "u"), var(UV, "v")
        f = 1 + u + u * v + v ** 3
        assert f.homogeneous_part(2) == u * v
