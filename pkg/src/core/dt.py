"""
Degree-zero Donaldson-Thomas partition functions.

Partition functions of 3-folds are powers of M(-q), so every identity
between them is checked on the exponent (an exact rational) and full
q-series are built only for display and for the localization cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from ..constants import DEFAULT_DIMENSION_BOUND, DEFAULT_Q_ORDER, Q_VARIABLE
from .chern import (
    BlowupPoint,
    DivisorClass,
    ProjBundle,
    ProjSpace,
    Space,
    cohomology_ring,
    dt_exponent,
    log_dt_exponent,
    product_of,
)
from .cobordism import DoublePointDatum, basis_space, decompose
from .errors import DTError
from .series import MultiSeries, VariableTable, expm1, log1p

Q_TABLE = VariableTable.build((Q_VARIABLE,))


class QSeries:
    """Truncated univariate series in q over Q."""

    __slots__ = ("series",)

    def __init__(self, series: MultiSeries):
        if series.table != Q_TABLE:
            raise DTError(f"q-series must live in the table ({Q_VARIABLE},), got {series.table.names}")
        self.series = series

    @classmethod
    def from_coefficients(cls, coefficients: Sequence, order: Optional[int] = None) -> "QSeries":
        order = len(coefficients) - 1 if order is None else order
        terms = {(n,): Fraction(c) for n, c in enumerate(coefficients) if n <= order}
        return cls(MultiSeries(Q_TABLE, terms, max(order, 0)))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls(MultiSeries.constant(Q_TABLE, 1, order))

    @property
    def order(self) -> int:
        return self.series.trunc

    def coefficient(self, n: int) -> Fraction:
        if n > self.order:
            raise DTError(f"coefficient of q^{n} requested beyond order {self.order}")
        return self.series.terms.get((n,), Fraction(0))

    def coefficients(self) -> List[Fraction]:
        return [self.coefficient(n) for n in range(self.order + 1)]

    def at_minus_q(self) -> "QSeries":
        return QSeries(MultiSeries(Q_TABLE, {e: c * (-1) ** e[0] for e, c in self.series.terms.items()},
                                   self.order))

    def truncate(self, n: int) -> "QSeries":
        return QSeries(self.series.truncate(n))

    def __add__(self, other: "QSeries") -> "QSeries":
        return QSeries(self.series + other.series)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return QSeries(self.series - other.series)

    def __mul__(self, other: "QSeries") -> "QSeries":
        return QSeries(self.series * other.series)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.series == other.series

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        return str(self.series)

    def __repr__(self) -> str:
        return f"QSeries({self}, order={self.order})"


def macmahon(N: int) -> QSeries:
    """M(q) = prod_{n>=1} (1 - q^n)^(-n), expanded exactly to order N."""
    if N < 0:
        raise DTError(f"order must be non-negative, got {N}")
    result = MultiSeries.constant(Q_TABLE, 1, N)
    for n in range(1, N + 1):
        geometric = MultiSeries(Q_TABLE, {(n * k,): 1 for k in range(N // n + 1)}, N)
        result = result * geometric ** n
    return QSeries(result)


def qpow(f: QSeries, e) -> QSeries:
    """f^e = exp(e log f) for f(0) = 1 and rational e."""
    if f.coefficient(0) != 1:
        raise DTError(f"rational powers need constant term 1, got {f.coefficient(0)}")
    e = Fraction(e)
    if e == 0:
        return QSeries.one(f.order)
    shifted = f.series - 1
    return QSeries(expm1(log1p(shifted).scale(e)) + 1)


def _minus_macmahon(N: int) -> QSeries:
    return macmahon(N).at_minus_q()


def z_absolute(X: Space, N: int = DEFAULT_Q_ORDER) -> QSeries:
    """Z(X, q) = M(-q)^(integral of c3(T_X tensor K_X))."""
    return qpow(_minus_macmahon(N), dt_exponent(X))


def z_relative(X: Space, s: DivisorClass, N: int = DEFAULT_Q_ORDER) -> QSeries:
    """Z(X/S, q) = M(-q)^(integral of c3(T_X[-S] tensor K_X[S]))."""
    return qpow(_minus_macmahon(N), log_dt_exponent(X, s))


# -- degeneration checks ------------------------------------------------------

@dataclass(frozen=True)
class Degeneration:
    """
    Degeneration of X to the normal cone of a smooth divisor S.

    Args:
        X: The 3-fold.
        divisor: Class of S on X.
        S: S as a space.
        normal: O_S(S) as a divisor class on S.
    """

    X: Space
    divisor: DivisorClass
    S: Space
    normal: DivisorClass

    def bubble(self) -> ProjBundle:
        """P(O_S + O_S(S)) over S."""
        return ProjBundle(self.S, (DivisorClass.zero(self.S), self.normal))

    def bubble_section(self) -> DivisorClass:
        """The section of the bubble with normal bundle O_S(-S); it is the relative class."""
        width = len(cohomology_ring(self.S).names)
        return DivisorClass((Fraction(0),) * width + (Fraction(1),))


def degeneration_corpus() -> List[Degeneration]:
    """Built-in pairs (X, S) with O_S(S) written out."""
    p1, p2, p3 = ProjSpace(1), ProjSpace(2), ProjSpace(3)
    cube = product_of(p1, p1, p1)
    square = product_of(p1, p1)
    p2p1 = product_of(p2, p1)
    one = Fraction(1)
    zero = Fraction(0)
    return [
        Degeneration(p3, DivisorClass((one,)), p2, DivisorClass((one,))),
        Degeneration(cube, DivisorClass((one, zero, zero)), square, DivisorClass.zero(square)),
        Degeneration(p2p1, DivisorClass((zero, one)), p2, DivisorClass.zero(p2)),
        Degeneration(p2p1, DivisorClass((one, zero)), square, DivisorClass((one, zero))),
    ]


def find_degeneration(X: Space, s: DivisorClass) -> Degeneration:
    for entry in degeneration_corpus():
        if entry.X == X and entry.divisor == s:
            return entry
    raise DTError(f"no built-in degeneration for {X} relative to {s.render(cohomology_ring(X).names)}; "
                  "supply S and O_S(S) explicitly")


def check_degeneration(X: Space, s: DivisorClass, S: Optional[Space] = None,
                       normal: Optional[DivisorClass] = None) -> Fraction:
    """
    Exponent residual of Z(X/S) = Z(X) Z(P/S_-)^(-1):

        n(X/S) - n(X) + n(P/S_-)

    with P = P(O_S + O_S(S)). Without S the built-in corpus supplies it.
    """
    if s.is_zero():
        return log_dt_exponent(X, s) - dt_exponent(X)
    if S is None:
        datum = find_degeneration(X, s)
    else:
        if normal is None:
            raise DTError("O_S(S) is required when S is given")
        if S.dim != X.dim - 1:
            raise DTError(f"S must be a divisor: dim S = {S.dim}, dim X = {X.dim}")
        datum = Degeneration(X, s, S, normal)
    bubble = datum.bubble()
    return (log_dt_exponent(X, s) - dt_exponent(X)
            + log_dt_exponent(bubble, datum.bubble_section()))


def check_blowup_degeneration(X: Space) -> Fraction:
    """
    n(X) - n(Bl X / E) - n(P^3 / P^2) for the degeneration of X to the
    normal cone of a point.
    """
    blown = BlowupPoint(X)
    width = len(cohomology_ring(blown).names)
    exceptional = DivisorClass((Fraction(0),) * (width - 1) + (Fraction(1),))
    p3 = ProjSpace(3)
    hyperplane = DivisorClass((Fraction(1),))
    return dt_exponent(X) - log_dt_exponent(blown, exceptional) - log_dt_exponent(p3, hyperplane)


def _exponent_or_zero(X: Optional[Space]) -> Fraction:
    return Fraction(0) if X is None else dt_exponent(X)


def check_dp_multiplicativity(datum: DoublePointDatum) -> Fraction:
    """n(Y) - n(A) - n(B) + n(P(pi)); the empty space contributes 0."""
    if datum.dim != 3:
        raise DTError(f"DT exponents need 3-folds, datum has dimension {datum.dim}")
    return (dt_exponent(datum.Y) - _exponent_or_zero(datum.A)
            - _exponent_or_zero(datum.B) + _exponent_or_zero(datum.P))


def exponent_via_cobordism(X: Space, bound: int = DEFAULT_DIMENSION_BOUND) -> Fraction:
    """The DT exponent of X read off its class in the product basis."""
    cls = decompose(X, bound)
    total = Fraction(0)
    for lam, c in cls.coefficients.items():
        total += c * dt_exponent(basis_space(lam))
    return total
