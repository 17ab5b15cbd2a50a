from fractions import Fraction

import numpy as np
import pytest

from src.core import chern, cobordism, dt
from src.core.chern import BlowupPoint, DivisorClass, ProjSpace, product_of
from src.core.dt import QSeries
from src.core.errors import DTError


class TestQSeries:
    def test_from_coefficients(self):
        f = QSeries.from_coefficients([1, 2, Fraction(1, 3)])
        assert f.order == 2
        assert f.coefficients() == [1, 2, Fraction(1, 3)]
        assert str(f) == "1 + 2 q + 1/3 q^2"

    def test_coefficient_beyond_order(self):
        with pytest.raises(DTError):
            QSeries.one(2).coefficient(3)

    def test_at_minus_q(self):
        f = QSeries.from_coefficients([1, 1, 3, 6])
        assert f.at_minus_q().coefficients() == [1, -1, 3, -6]

    def test_product_truncates(self):
        f = QSeries.from_coefficients([1, 1], order=3)
        assert (f * f * f * f).coefficients() == [1, 4, 6, 4]


class TestMacMahon:
    def test_coefficients(self):
        assert dt.macmahon(6).coefficients() == [1, 1, 3, 6, 13, 24, 48]

    def test_order_zero(self):
        assert dt.macmahon(0).coefficients() == [1]

    def test_negative_order(self):
        with pytest.raises(DTError):
            dt.macmahon(-1)


class TestRationalPowers:
    @pytest.fixture
    def m(self):
        return dt.macmahon(5)

    def test_trivial_exponents(self, m):
        assert dt.qpow(m, 0) == QSeries.one(5)
        assert dt.qpow(m, 1) == m

    def test_inverse(self, m):
        assert dt.qpow(m, -1) * m == QSeries.one(5)

    @pytest.mark.parametrize("seed", range(6))
    def test_exponent_law(self, m, seed):
        rng = np.random.default_rng(seed)
        a, b = (Fraction(int(rng.integers(-30, 31)), int(rng.integers(1, 8))) for _ in range(2))
        assert dt.qpow(m, a + b) == dt.qpow(m, a) * dt.qpow(m, b)
        assert dt.qpow(dt.qpow(m, a), b) == dt.qpow(m, a * b)

    def test_integer_power(self, m):
        assert dt.qpow(m, 3) == m * m * m

    def test_square_root(self, m):
        root = dt.qpow(m, Fraction(1, 2))
        assert root * root == m

    def test_needs_unit_constant(self):
        with pytest.raises(DTError):
            dt.qpow(QSeries.from_coefficients([2, 1]), Fraction(1, 2))


class TestPartitionFunctions:
    def test_p3(self, p3):
        assert dt.z_absolute(p3, 2).coefficients() == [1, 20, 150]

    def test_first_coefficient_is_minus_exponent(self, cube, p2p1):
        assert dt.z_absolute(cube, 1).coefficient(1) == 16
        assert dt.z_absolute(p2p1, 1).coefficient(1) == 18

    def test_relative(self, p3):
        z = dt.z_relative(p3, DivisorClass((Fraction(1),)), 1)
        assert z.coefficient(1) == 8

    def test_relative_empty_divisor(self, p3):
        assert dt.z_relative(p3, DivisorClass((Fraction(0),)), 4) == dt.z_absolute(p3, 4)


class TestDegenerations:
    def test_corpus(self):
        corpus = dt.degeneration_corpus()
        assert len(corpus) == 4
        for entry in corpus:
            assert dt.check_degeneration(entry.X, entry.divisor) == 0
            assert dt.check_degeneration(entry.X, entry.divisor, entry.S, entry.normal) == 0

    def test_bubble(self):
        entry = dt.degeneration_corpus()[0]
        bubble = entry.bubble()
        assert bubble.expression() == "PB(P2; 0, h1)"
        assert chern.log_dt_exponent(bubble, entry.bubble_section()) == -12

    def test_empty_divisor(self, cube):
        assert dt.check_degeneration(cube, DivisorClass.zero(cube)) == 0

    def test_wrong_normal_bundle(self, p3):
        residual = dt.check_degeneration(p3, DivisorClass((Fraction(1),)), ProjSpace(2),
                                         DivisorClass((Fraction(0),)))
        assert residual != 0

    def test_unknown_pair(self, p3):
        with pytest.raises(DTError):
            dt.check_degeneration(p3, DivisorClass((Fraction(2),)))

    def test_explicit_surface_needs_normal(self, p3):
        with pytest.raises(DTError):
            dt.check_degeneration(p3, DivisorClass((Fraction(1),)), ProjSpace(2))

    def test_surface_dimension(self, p3):
        with pytest.raises(DTError):
            dt.check_degeneration(p3, DivisorClass((Fraction(1),)), ProjSpace(1),
                                  DivisorClass((Fraction(1),)))

    @pytest.mark.parametrize("expr", ["p3", "p2p1", "cube", "quadric"])
    def test_blowup_degeneration(self, request, expr):
        assert dt.check_blowup_degeneration(request.getfixturevalue(expr)) == 0

    def test_relative_exceptional(self, p3, cube, quadric):
        for X in (p3, cube, quadric):
            blown = BlowupPoint(X)
            e = DivisorClass.from_mapping(blown, {"e": 1})
            assert chern.log_dt_exponent(blown, e) == chern.dt_exponent(X) + 8


class TestMultiplicativity:
    @pytest.mark.parametrize("expr", ["p3", "p2p1", "cube", "blown_p3", "quadric"])
    def test_blowup_relation(self, request, expr):
        datum = cobordism.blowup_relation(request.getfixturevalue(expr))
        assert dt.check_dp_multiplicativity(datum) == 0

    def test_naive_relation(self, p3):
        assert dt.check_dp_multiplicativity(cobordism.naive_relation(p3)) == 0

    def test_needs_threefolds(self):
        with pytest.raises(DTError):
            dt.check_dp_multiplicativity(cobordism.naive_relation(ProjSpace(2)))

    @pytest.mark.parametrize("expr, expected", [
        ("p3", -20), ("cube", -16), ("p2p1", -18), ("blown_p3", -18), ("bundle", -18),
    ])
    def test_exponent_via_cobordism(self, request, expr, expected):
        assert dt.exponent_via_cobordism(request.getfixturevalue(expr)) == expected

    def test_exponent_of_swapped_product(self):
        X = product_of(ProjSpace(1), ProjSpace(2))
        assert dt.exponent_via_cobordism(X) == chern.dt_exponent(X)
