from fractions import Fraction

import pytest

from src.core.chern import BlowupPoint, DivisorClass, Hypersurface, ProjBundle, ProjSpace, product_of


@pytest.fixture
def p1():
    return ProjSpace(1)


@pytest.fixture
def p3():
    return ProjSpace(3)


@pytest.fixture
def cube():
    return product_of(ProjSpace(1), ProjSpace(1), ProjSpace(1))


@pytest.fixture
def p2p1():
    return product_of(ProjSpace(2), ProjSpace(1))


@pytest.fixture
def bundle():
    """P(O + O(1)) over P^2."""
    return ProjBundle(ProjSpace(2), (DivisorClass((Fraction(0),)), DivisorClass((Fraction(1),))))


@pytest.fixture
def blown_p3():
    return BlowupPoint(ProjSpace(3))


@pytest.fixture
def quadric():
    """Smooth quadric 3-fold in P^4."""
    return Hypersurface(ProjSpace(4), DivisorClass((Fraction(2),)))
