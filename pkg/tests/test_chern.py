from fractions import Fraction

import pytest

from src.core import chern
from src.core.chern import (
    BlowupPoint,
    DivisorClass,
    Hypersurface,
    Point,
    Product,
    ProjBundle,
    ProjSpace,
    milnor_hypersurface,
    product_of,
)
from src.core.errors import ChernError


def numbers(X):
    return tuple(chern.chern_numbers(X).values())


def divisor(*coefficients):
    return DivisorClass(tuple(Fraction(c) for c in coefficients))


class TestPartitions:
    def test_reverse_lex(self):
        assert chern.partitions_of(3) == [(3,), (2, 1), (1, 1, 1)]
        assert chern.partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_zero(self):
        assert chern.partitions_of(0) == [()]

    def test_column_order(self):
        assert chern.chern_partitions(3) == [(1, 1, 1), (2, 1), (3,)]

    @pytest.mark.parametrize("lam, label", [((1, 1, 1), "c1^3"), ((2, 1), "c1*c2"), ((3,), "c3")])
    def test_labels(self, lam, label):
        assert chern.chern_label(lam) == label


class TestSpaces:
    def test_dimensions(self, p3, cube, bundle, blown_p3):
        assert p3.dim == 3
        assert cube.dim == 3
        assert bundle.dim == 3
        assert blown_p3.dim == 3
        assert Point().dim == 0
        assert milnor_hypersurface(1, 2).dim == 2

    def test_expressions(self, cube, bundle, blown_p3):
        assert cube.expression() == "P1*P1*P1"
        assert Product(ProjSpace(1), product_of(ProjSpace(1), ProjSpace(1))).expression() == "P1*(P1*P1)"
        assert bundle.expression() == "PB(P2; 0, h1)"
        assert milnor_hypersurface(1, 1).expression() == "Hyp(P1*P1; h1+h2)"
        assert blown_p3.expression() == "Bl(P3)"

    def test_empty_product_is_point(self):
        assert product_of() == Point()

    def test_invalid_constructors(self):
        with pytest.raises(ChernError):
            ProjSpace(-1)
        with pytest.raises(ChernError):
            BlowupPoint(ProjSpace(2))
        with pytest.raises(ChernError):
            ProjBundle(ProjSpace(2), ())

    def test_divisor_rendering(self, cube):
        names = chern.cohomology_ring(cube).names
        assert names == ("h1", "h2", "h3")
        assert divisor(1, -2, 0).render(names) == "h1-2h2"
        assert divisor(0, 0, 0).render(names) == "0"
        assert DivisorClass.from_mapping(cube, {"a": 1, "c": 3}) == divisor(1, 0, 3)


class TestRings:
    def test_aliases(self, bundle, blown_p3, cube):
        ring = chern.cohomology_ring(bundle)
        assert ring.names == ("h1", "z1")
        assert ring.resolve("h") == 0
        assert ring.resolve("xi") == 1
        assert chern.cohomology_ring(blown_p3).resolve("e") == 1
        assert chern.cohomology_ring(cube).resolve("b") == 1
        with pytest.raises(ChernError):
            ring.resolve("e")

    def test_bundle_relation(self, bundle):
        ring = chern.cohomology_ring(bundle)
        h, z = ring.generator("h"), ring.generator("z")
        assert z * z == -(h * z)

    def test_vanishing_above_dimension(self, p3):
        h = chern.cohomology_ring(p3).generator("h")
        assert (h ** 4).is_zero()

    def test_blowup_relations(self, blown_p3):
        ring = chern.cohomology_ring(blown_p3)
        h, e = ring.generator("h"), ring.generator("e")
        assert (h * e).is_zero()
        assert e ** 3 == h ** 3

    def test_relations(self, bundle, blown_p3):
        grothendieck = chern.cohomology_ring(bundle).relations()[-1]
        assert dict(grothendieck.terms) == {(0, 2): 1, (1, 1): 1}
        ring = chern.cohomology_ring(blown_p3)
        relations = ring.relations()
        assert len(relations) == 3
        assert all(ring.reduce(r).is_zero() for r in relations)

    def test_basis(self, bundle):
        ring = chern.cohomology_ring(bundle)
        assert ring.basis(1) == [(1, 0), (0, 1)]
        assert ring.basis(3) == [(2, 1)]


class TestIntegration:
    def test_projective_space(self, p3):
        h = chern.cohomology_ring(p3).generator("h")
        assert chern.integrate(p3, h ** 3) == 1

    def test_product(self, cube):
        ring = chern.cohomology_ring(cube)
        a, b, c = (ring.generator(n) for n in "abc")
        assert chern.integrate(cube, a * b * c) == 1
        assert chern.integrate(cube, (a + b + c) ** 3) == 6

    def test_bundle(self, bundle):
        ring = chern.cohomology_ring(bundle)
        h, z = ring.generator("h"), ring.generator("z")
        assert chern.integrate(bundle, z * h * h) == 1
        assert chern.integrate(bundle, z ** 3) == 1

    def test_hypersurface(self):
        H = milnor_hypersurface(1, 1)
        ring = chern.cohomology_ring(H)
        assert chern.integrate(H, ring.generator("a")) == 1

    def test_blowup(self, blown_p3):
        ring = chern.cohomology_ring(blown_p3)
        e, h = ring.generator("e"), ring.generator("h")
        assert chern.integrate(blown_p3, e ** 3) == 1
        assert chern.integrate(blown_p3, h * e * e) == 0

    def test_wrong_degree(self, p3):
        h = chern.cohomology_ring(p3).generator("h")
        with pytest.raises(ChernError):
            chern.integrate(p3, h * h)

    def test_wrong_ring(self, p3, cube):
        a = chern.cohomology_ring(cube).generator("a")
        with pytest.raises(ChernError):
            chern.integrate(p3, a ** 3)


class TestChernNumbers:
    @pytest.mark.parametrize("expr, expected", [
        ("p3", (64, 24, 4)),
        ("p2p1", (54, 24, 6)),
        ("cube", (48, 24, 8)),
        ("blown_p3", (56, 24, 6)),
        ("bundle", (56, 24, 6)),
    ])
    def test_golden_table(self, request, expr, expected):
        assert numbers(request.getfixturevalue(expr)) == expected

    def test_presentation_independent(self, p2p1):
        assert numbers(product_of(ProjSpace(1), ProjSpace(2))) == numbers(p2p1)
        swapped = ProjBundle(ProjSpace(2), (divisor(1), divisor(0)))
        assert numbers(swapped) == (56, 24, 6)
        trivial = ProjBundle(Point(), tuple(DivisorClass(()) for _ in range(4)))
        assert numbers(trivial) == (64, 24, 4)

    def test_blowup_closed_formula(self, p2p1, cube):
        for X in (p2p1, cube):
            c13, c1c2, c3 = numbers(X)
            assert numbers(BlowupPoint(X)) == (c13 - 8, c1c2, c3 + 2)

    def test_quadric_threefold(self):
        Q = Hypersurface(ProjSpace(4), divisor(2))
        assert numbers(Q) == (54, 24, 4)
        assert chern.dt_exponent(Q) == -20

    def test_blowup_of_quadric(self, quadric):
        blown = BlowupPoint(quadric)
        assert numbers(blown) == (46, 24, 6)
        assert chern.dt_exponent(blown) == -18
        ring = chern.cohomology_ring(blown)
        h, e = ring.generator("h"), ring.generator("e")
        assert chern.integrate(blown, e ** 3) == 1
        assert chern.integrate(blown, h ** 3) == 2
        assert (h * e).is_zero()

    def test_blowup_of_blown_quadric(self, quadric):
        c13, c1c2, c3 = numbers(BlowupPoint(quadric))
        assert numbers(BlowupPoint(BlowupPoint(quadric))) == (c13 - 8, c1c2, c3 + 2)

    @pytest.mark.parametrize("n, m", [(1, 1), (1, 2), (2, 2), (1, 3)])
    def test_milnor_euler_numbers(self, n, m):
        H = milnor_hypersurface(n, m)
        top = chern.chern_numbers(H)[(H.dim,)]
        assert top == (min(n, m) + 1) * max(n, m)

    def test_dimension_bound(self):
        with pytest.raises(ChernError):
            chern.chern_numbers(product_of(ProjSpace(3), ProjSpace(2)), bound=4)

    def test_euler_characteristic(self, p3, cube, p2p1, bundle, blown_p3):
        for X in (p3, cube, p2p1, bundle, blown_p3):
            assert chern.chern_numbers(X)[(3,)] == chern.euler_characteristic(X)
        with pytest.raises(ChernError):
            chern.euler_characteristic(milnor_hypersurface(1, 1))

    def test_first_chern_class(self, p3):
        h = chern.cohomology_ring(p3).generator("h")
        assert chern.chern_class(p3, 1) == 4 * h
        assert chern.chern_class(p3, 2) == 6 * h * h


class TestExponents:
    @pytest.mark.parametrize("expr, expected", [
        ("p3", -20), ("cube", -16), ("p2p1", -18), ("blown_p3", -18), ("bundle", -18),
    ])
    def test_absolute(self, request, expr, expected):
        assert chern.dt_exponent(request.getfixturevalue(expr)) == expected

    def test_relative_hyperplane(self, p3):
        assert chern.log_dt_exponent(p3, divisor(1)) == -8

    def test_relative_section_of_bubble(self, bundle):
        zero_section = DivisorClass.from_mapping(bundle, {"z": 1})
        assert chern.log_dt_exponent(bundle, zero_section) == -12

    def test_empty_divisor(self, p3, cube):
        assert chern.log_dt_exponent(p3, divisor(0)) == chern.dt_exponent(p3)
        assert chern.log_dt_exponent(cube, divisor(0, 0, 0)) == -16

    def test_needs_threefold(self):
        with pytest.raises(ChernError):
            chern.dt_exponent(ProjSpace(2))
