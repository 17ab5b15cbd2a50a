"""
Formal group laws over Q[p1, ..., pD].

The universal law is built from the cobordism logarithm
l(t) = t + sum_i p_i t^(i+1)/(i+1), with p_i standing for the class of P^i:
F(u, v) = e(l(u) + l(v)) where e is the compositional inverse of l.
Checkers report failures as values and never raise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..constants import FGL_PARAMETER_PREFIX, FGL_SERIES_VARIABLES, UNIVARIATE_VARIABLE
from .errors import FormalGroupLawError
from .series import MultiSeries, VariableTable, reversion


def law_table(D: int, series_vars: Sequence[str] = FGL_SERIES_VARIABLES[:2]) -> VariableTable:
    """Table with series variables of weight -1 and parameters p1..pD of weight k."""
    params = tuple(f"{FGL_PARAMETER_PREFIX}{k}" for k in range(1, D + 1))
    names = tuple(series_vars) + params
    weights = (-1,) * len(series_vars) + tuple(range(1, D + 1))
    return VariableTable.build(names, weights, truncation=series_vars)


def _retable(table: VariableTable, series_vars: Sequence[str]) -> VariableTable:
    """Same parameters as ``table``, new truncation variables of weight -1."""
    params = [i for i in range(len(table)) if i not in table.truncation]
    names = tuple(series_vars) + tuple(table.names[i] for i in params)
    weights = (-1,) * len(series_vars) + tuple(table.weights[i] for i in params)
    return VariableTable.build(names, weights, truncation=series_vars)


def _var(table: VariableTable, name: str, trunc: int) -> MultiSeries:
    return MultiSeries.variable(table, name, trunc)


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    """
    A bivariate series F(u, v) with coefficients polynomial in parameters.

    Args:
        F: Series in u, v (truncation variables) and parameter variables.
        degree_bound: Largest total (u, v)-degree retained.
        name: Label used in reports.
    """

    F: MultiSeries
    degree_bound: int
    name: str = "F"

    @property
    def table(self) -> VariableTable:
        return self.F.table

    @property
    def parameters(self) -> Tuple[str, ...]:
        return tuple(n for i, n in enumerate(self.table.names) if i not in self.table.truncation)

    def u(self) -> MultiSeries:
        return _var(self.table, "u", self.degree_bound)

    def v(self) -> MultiSeries:
        return _var(self.table, "v", self.degree_bound)

    def coefficient(self, i: int, j: int) -> MultiSeries:
        """a_ij as a polynomial in the parameters."""
        return self.F.coefficient({"u": i, "v": j})

    def coefficients(self) -> Dict[Tuple[int, int], MultiSeries]:
        return coefficient_table(self.F, self.degree_bound)

    def __call__(self, x: MultiSeries, y: MultiSeries) -> MultiSeries:
        """F(x, y) for two series sharing a table that contains the parameters."""
        return self.F.substitute({"u": x, "v": y})


@dataclass(frozen=True, eq=False)
class Logarithm:
    """l(t) = t + sum_{i>=1} p_i t^(i+1)/(i+1), truncated at degree_bound."""

    l: MultiSeries
    degree_bound: int

    def exponential(self) -> MultiSeries:
        return reversion(self.l)

    def at(self, x: MultiSeries) -> MultiSeries:
        return self.l.substitute({UNIVARIATE_VARIABLE: x})


@dataclass
class AxiomReport:
    """Outcome of the three formal group law axioms."""

    identity: bool
    commutativity: bool
    associativity: bool
    details: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.identity and self.commutativity and self.associativity


@dataclass
class DifferenceReport:
    """Outcome of the two difference-series identities."""

    translation_invariance: bool  # F-(F(u,w), F(v,w)) = F-(u,v)
    additivity: bool  # F(F-(u1,v1), F-(u2,v2)) = F-(F(u1,u2), F(v1,v2))

    @property
    def passed(self) -> bool:
        return self.translation_invariance and self.additivity


def coefficient_table(series: MultiSeries, D: int) -> Dict[Tuple[int, int], MultiSeries]:
    """Nonzero coefficients of u^i v^j for i + j <= D, in increasing (i+j, i) order."""
    out = {}
    for total in range(D + 1):
        for i in range(total + 1):
            c = series.coefficient({"u": i, "v": total - i})
            if not c.is_zero():
                out[(i, total - i)] = c
    return out


# -- constructors -------------------------------------------------------------

def logarithm(D: int) -> Logarithm:
    """The cobordism logarithm over Q[p1..pD] in the variable t."""
    if D < 1:
        raise FormalGroupLawError(f"degree bound must be >= 1, got {D}")
    table = law_table(D, (UNIVARIATE_VARIABLE,))
    terms = {table.unit(UNIVARIATE_VARIABLE): Fraction(1)}
    for i in range(1, D):
        exps = [0] * len(table)
        exps[0] = i + 1
        exps[table.index(f"{FGL_PARAMETER_PREFIX}{i}")] = 1
        terms[tuple(exps)] = Fraction(1, i + 1)
    return Logarithm(MultiSeries(table, terms, D), D)


def universal_fgl(D: int) -> FormalGroupLaw:
    """F(u, v) = e(l(u) + l(v)) truncated at total (u, v)-degree D."""
    log = logarithm(D)
    exp = log.exponential()
    table = law_table(D)
    total = log.at(_var(table, "u", D)) + log.at(_var(table, "v", D))
    F = exp.substitute({UNIVARIATE_VARIABLE: total})
    return FormalGroupLaw(F, D, name="universal")


def additive_fgl(D: int) -> FormalGroupLaw:
    table = VariableTable.build(("u", "v"), (-1, -1))
    return FormalGroupLaw(_var(table, "u", D) + _var(table, "v", D), D, name="additive")


def multiplicative_fgl(D: int, parameter: str = "beta") -> FormalGroupLaw:
    """u + v - beta*u*v with beta a formal parameter of weight 1."""
    table = VariableTable.build(("u", "v", parameter), (-1, -1, 1), truncation=("u", "v"))
    u, v, beta = (_var(table, n, D) for n in ("u", "v", parameter))
    return FormalGroupLaw(u + v - beta * u * v, D, name="multiplicative")


def from_series(F: MultiSeries, name: str = "F") -> FormalGroupLaw:
    """Wrap an arbitrary series in u, v as a (candidate) formal group law."""
    return FormalGroupLaw(F, F.trunc, name=name)


# -- checkers -----------------------------------------------------------------

def check_axioms(law: FormalGroupLaw) -> AxiomReport:
    """Verify identity, commutativity and associativity as exact series identities."""
    D = law.degree_bound
    table = law.table
    u, v = law.u(), law.v()
    zero = MultiSeries.zero(table, D)
    details = []

    identity = law(u, zero) == u and law(zero, v) == v
    if not identity:
        details.append(f"{law.name}: F(u,0) = {law(u, zero)}")
    commutativity = law(v, u) == law.F
    if not commutativity:
        details.append(f"{law.name}: F(u,v) != F(v,u)")

    t3 = _retable(table, FGL_SERIES_VARIABLES)
    u3, v3, w3 = (_var(t3, n, D) for n in FGL_SERIES_VARIABLES)
    uv = law(u3, v3)
    vw = law(v3, w3)
    associativity = law(uv, w3) == law(u3, vw)
    if not associativity:
        details.append(f"{law.name}: F(F(u,v),w) != F(u,F(v,w))")
    return AxiomReport(identity, commutativity, associativity, details)


def f11(law: FormalGroupLaw) -> MultiSeries:
    """The unique series with F = u + v + u*v*F11(u, v)."""
    table = law.table
    iu, iv = table.index("u"), table.index("v")
    residual = law.F - law.u() - law.v()
    out = {}
    for exps, c in residual.terms.items():
        if exps[iu] < 1 or exps[iv] < 1:
            raise FormalGroupLawError(
                f"{law.name}: F - u - v is not divisible by uv (term {exps}: {c})")
        key = list(exps)
        key[iu] -= 1
        key[iv] -= 1
        out[tuple(key)] = c
    return MultiSeries(table, out, max(law.degree_bound - 2, 0))


def chi(law: FormalGroupLaw) -> MultiSeries:
    """
    Inverse series chi(u) = -u + O(u^2) with F(u, chi(u)) = 0.

    Each step is linear in the new coefficient because F = u + v + O(uv).
    """
    D = law.degree_bound
    inverse = -law.u()
    for k in range(2, D + 1):
        residual = law.F.truncate(k).substitute({"v": inverse.truncate(k)})
        inverse = inverse - residual.homogeneous_part(k).with_trunc(D)
    return inverse


def difference(law: FormalGroupLaw) -> MultiSeries:
    """F-(u, v) = F(u, chi(v))."""
    inverse_v = chi(law).substitute({"u": law.v()})
    return law.F.substitute({"v": inverse_v})


def difference_coefficients(law: FormalGroupLaw) -> Dict[Tuple[int, int], MultiSeries]:
    """b_ij with F-(u, v) = sum b_ij u^i v^j."""
    return coefficient_table(difference(law), law.degree_bound)


def check_difference_identities(law: FormalGroupLaw) -> DifferenceReport:
    """Verify translation invariance and additivity of the difference series."""
    D = law.degree_bound
    minus = FormalGroupLaw(difference(law), D, name=f"{law.name}-")

    t3 = _retable(law.table, FGL_SERIES_VARIABLES)
    u, v, w = (_var(t3, n, D) for n in FGL_SERIES_VARIABLES)
    translation = minus(law(u, w), law(v, w)) == minus(u, v)

    t4 = _retable(law.table, ("u1", "v1", "u2", "v2"))
    u1, v1, u2, v2 = (_var(t4, n, D) for n in ("u1", "v1", "u2", "v2"))
    left = law(minus(u1, v1), minus(u2, v2))
    right = minus(law(u1, u2), law(v1, v2))
    return DifferenceReport(translation, left == right)


def check_logarithm(law: FormalGroupLaw, log: Logarithm) -> bool:
    """l(F(u, v)) = l(u) + l(v)."""
    u, v = law.u(), law.v()
    return log.at(law.F) == log.at(u) + log.at(v)
