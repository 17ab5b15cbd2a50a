"""
Sparse truncated multivariate power series over exact rationals.

A series lives in a VariableTable: an ordered list of named variables with an
integer grading weight each, some of which are designated truncation
variables. Truncation is by total degree in the truncation variables only;
parameter variables (p1, p2, ..., beta) are bounded through the grading.

Values are immutable after construction and can be shared between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp

from .errors import SeriesError

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]


def sparse_add(a: Mapping, b: Mapping, scale: Scalar = 1) -> dict:
    """Return a + scale*b for sparse maps keyed by exponent tuples, dropping zeros."""
    out = dict(a)
    for key, coeff in b.items():
        value = out.get(key, 0) + scale * coeff
        if value:
            out[key] = value
        else:
            out.pop(key, None)
    return out


def sparse_mul(a: Mapping, b: Mapping,
               degree: Optional[Callable[[Exponents], int]] = None,
               bound: Optional[int] = None) -> dict:
    """
    Convolution product of two sparse maps keyed by exponent tuples.

    Exponents may be negative (Laurent). When ``degree`` and ``bound`` are
    given, products whose degree exceeds ``bound`` are never formed; the
    degree function must be additive and non-negative on both inputs.
    """
    out: dict = {}
    if degree is None or bound is None:
        for ka, ca in a.items():
            for kb, cb in b.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                out[key] = out.get(key, 0) + ca * cb
        return {k: c for k, c in out.items() if c}

    buckets: Dict[int, list] = {}
    for kb, cb in b.items():
        buckets.setdefault(degree(kb), []).append((kb, cb))
    levels = sorted(buckets)
    for ka, ca in a.items():
        room = bound - degree(ka)
        for level in levels:
            if level > room:
                break
            for kb, cb in buckets[level]:
                key = tuple(x + y for x, y in zip(ka, kb))
                out[key] = out.get(key, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


@dataclass(frozen=True)
class VariableTable:
    """
    Ordered variable names with grading weights.

    Args:
        names: Variable identifiers, unique.
        weights: Integer grading weight per variable (may be negative).
        truncation: Indices of the truncation variables.
    """

    names: Tuple[str, ...]
    weights: Tuple[int, ...]
    truncation: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise SeriesError(f"duplicate variable names in {self.names}")
        if len(self.weights) != len(self.names):
            raise SeriesError("one weight per variable is required")
        for i in self.truncation:
            if not 0 <= i < len(self.names):
                raise SeriesError(f"truncation index {i} out of range")
            if self.weights[i] == 0:
                raise SeriesError(f"truncation variable '{self.names[i]}' needs a nonzero weight")

    @classmethod
    def build(cls, names: Sequence[str], weights: Optional[Sequence[int]] = None,
              truncation: Optional[Iterable[str]] = None) -> "VariableTable":
        """Build a table; weights default to 1 and every variable truncates by default."""
        names = tuple(names)
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        if truncation is None:
            trunc_idx = tuple(range(len(names)))
        else:
            wanted = set(truncation)
            unknown = wanted - set(names)
            if unknown:
                raise SeriesError(f"unknown truncation variables {sorted(unknown)}")
            trunc_idx = tuple(i for i, n in enumerate(names) if n in wanted)
        return cls(names, weights, trunc_idx)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SeriesError(f"variable '{name}' not in table {self.names}") from None

    def is_truncation(self, name: str) -> bool:
        return self.index(name) in self.truncation

    def degree(self, exps: Exponents) -> int:
        """Total degree in the truncation variables."""
        return sum(exps[i] for i in self.truncation)

    def weight(self, exps: Exponents) -> int:
        """Weighted grading degree of a monomial."""
        return sum(w * e for w, e in zip(self.weights, exps))

    @property
    def zero(self) -> Exponents:
        return (0,) * len(self.names)

    def unit(self, name: str) -> Exponents:
        exps = [0] * len(self.names)
        exps[self.index(name)] = 1
        return tuple(exps)


class MultiSeries:
    """
    Truncated power series with exact rational coefficients.

    Terms are stored sparsely as {exponent vector: Fraction}; zero
    coefficients are never stored and no stored term exceeds ``trunc``
    in the truncation variables.
    """

    __slots__ = ("table", "_terms", "trunc")

    def __init__(self, table: VariableTable, terms: Optional[Mapping] = None, trunc: int = 0):
        if trunc < 0:
            raise SeriesError(f"truncation order must be non-negative, got {trunc}")
        clean: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(table):
                raise SeriesError(f"exponent vector {exps} does not match table {table.names}")
            if any(e < 0 for e in exps):
                raise SeriesError(f"negative exponent in {exps}")
            if table.degree(exps) > trunc:
                continue
            value = clean.get(exps, Fraction(0)) + Fraction(coeff)
            if value:
                clean[exps] = value
            else:
                clean.pop(exps, None)
        self.table = table
        self._terms = clean
        self.trunc = trunc

    @classmethod
    def _raw(cls, table: VariableTable, terms: Dict[Exponents, Fraction], trunc: int) -> "MultiSeries":
        obj = cls.__new__(cls)
        obj.table = table
        obj._terms = terms
        obj.trunc = trunc
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, table: VariableTable, trunc: int) -> "MultiSeries":
        return cls._raw(table, {}, trunc)

    @classmethod
    def constant(cls, table: VariableTable, value: Scalar, trunc: int) -> "MultiSeries":
        value = Fraction(value)
        return cls._raw(table, {table.zero: value} if value else {}, trunc)

    @classmethod
    def variable(cls, table: VariableTable, name: str, trunc: int) -> "MultiSeries":
        return cls(table, {table.unit(name): 1}, trunc)

    @classmethod
    def monomial(cls, table: VariableTable, exponents: Mapping[str, int],
                 coeff: Scalar = 1, trunc: int = 0) -> "MultiSeries":
        exps = [0] * len(table)
        for name, e in exponents.items():
            exps[table.index(name)] = e
        return cls(table, {tuple(exps): coeff}, trunc)

    # -- read access ----------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        """Terms in canonical order: total degree, then descending exponent vector."""
        return sorted(self._terms.items(),
                      key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def constant_coefficient(self) -> Fraction:
        return self._terms.get(self.table.zero, Fraction(0))

    def homogeneous_part(self, d: int) -> "MultiSeries":
        deg = self.table.degree
        return MultiSeries._raw(self.table, {e: c for e, c in self._terms.items() if deg(e) == d},
                                self.trunc)

    def coefficient(self, exponents: Mapping[str, int]) -> "MultiSeries":
        """
        Extract the coefficient of a monomial in some of the variables.

        Returns the series of all terms whose exponents on the named
        variables match, with those exponents set to zero.
        """
        idx = {self.table.index(n): e for n, e in exponents.items()}
        out = {}
        for exps, c in self._terms.items():
            if all(exps[i] == e for i, e in idx.items()):
                key = tuple(0 if i in idx else x for i, x in enumerate(exps))
                out[key] = c
        return MultiSeries._raw(self.table, out, self.trunc)

    def is_homogeneous(self, weight: int) -> bool:
        """True when every term has the given weighted grading degree."""
        return all(self.table.weight(e) == weight for e in self._terms)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            if other.table != self.table:
                raise SeriesError(f"table mismatch: {self.table.names} vs {other.table.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiSeries.constant(self.table, other, self.trunc)
        raise TypeError(f"cannot combine MultiSeries with {type(other).__name__}")

    def __add__(self, other) -> "MultiSeries":
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "MultiSeries":
        return MultiSeries._raw(self.table, {e: -c for e, c in self._terms.items()}, self.trunc)

    def __sub__(self, other) -> "MultiSeries":
        other = self._coerce(other)
        trunc = min(self.trunc, other.trunc)
        return MultiSeries._raw(self.table, sparse_add(self._trunc_terms(trunc),
                                                       other._trunc_terms(trunc), -1), trunc)

    def __rsub__(self, other) -> "MultiSeries":
        return (-self) + other

    def __mul__(self, other) -> "MultiSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, self._coerce(other))

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "MultiSeries":
        factor = Fraction(factor)
        if not factor:
            return MultiSeries.zero(self.table, self.trunc)
        return MultiSeries._raw(self.table, {e: c * factor for e, c in self._terms.items()},
                                self.trunc)

    def __pow__(self, k: int) -> "MultiSeries":
        if not isinstance(k, int) or k < 0:
            raise SeriesError(f"only non-negative integer powers are supported, got {k}")
        result = MultiSeries.constant(self.table, 1, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiSeries.constant(self.table, other, self.trunc)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        if other.table != self.table:
            return False
        trunc = min(self.trunc, other.trunc)
        return self._trunc_terms(trunc) == other._trunc_terms(trunc)

    __hash__ = None  # type: ignore[assignment]

    def _trunc_terms(self, n: int) -> Dict[Exponents, Fraction]:
        if n >= self.trunc:
            return self._terms
        deg = self.table.degree
        return {e: c for e, c in self._terms.items() if deg(e) <= n}

    def truncate(self, n: int) -> "MultiSeries":
        n = min(n, self.trunc)
        return MultiSeries._raw(self.table, dict(self._trunc_terms(n)), n)

    def with_trunc(self, n: int) -> "MultiSeries":
        """Same terms declared exact to order n (terms above n are dropped)."""
        return MultiSeries(self.table, self._terms, n)

    # -- change of table ------------------------------------------------------

    def embed(self, table: VariableTable, positions: Optional[Sequence[int]] = None,
              trunc: Optional[int] = None) -> "MultiSeries":
        """
        Re-key the series into another table.

        Variables are matched by name unless ``positions`` gives, for each
        variable of this series, its index in the target table.
        """
        if positions is None:
            positions = [table.index(n) for n in self.table.names]
        if len(positions) != len(self.table):
            raise SeriesError("position map must cover every variable")
        width = len(table)
        out = {}
        for exps, c in self._terms.items():
            key = [0] * width
            for i, e in enumerate(exps):
                if e:
                    key[positions[i]] += e
            out[tuple(key)] = c
        return MultiSeries(table, out, self.trunc if trunc is None else trunc)

    # -- composition ----------------------------------------------------------

    def substitute(self, assignment: Mapping[str, "MultiSeries"]) -> "MultiSeries":
        """
        Simultaneously replace variables by series.

        All replacement series must share one table, which becomes the table
        of the result; variables of this series that are not replaced are
        carried over by name. Replacements for truncation variables must
        have no degree-zero part.
        """
        if not assignment:
            return self
        targets = list(assignment.values())
        table = targets[0].table
        if any(g.table != table for g in targets):
            raise SeriesError("all substituted series must share a table")

        assigned = {}
        for name, g in assignment.items():
            idx = self.table.index(name)
            if idx in self.table.truncation and not g.homogeneous_part(0).is_zero():
                raise SeriesError(f"substituted series for '{name}' has a nonzero constant term")
            assigned[idx] = name
        kept = [i for i in range(len(self.table)) if i not in assigned]
        kept_pos = {i: table.index(self.table.names[i]) for i in kept}
        trunc = min([self.trunc] + [g.trunc for g in targets])

        groups: Dict[Tuple[int, ...], Dict[Exponents, Fraction]] = {}
        order = sorted(assigned)
        width = len(table)
        for exps, c in self._terms.items():
            signature = tuple(exps[i] for i in order)
            key = [0] * width
            for i in kept:
                if exps[i]:
                    key[kept_pos[i]] += exps[i]
            bucket = groups.setdefault(signature, {})
            key = tuple(key)
            bucket[key] = bucket.get(key, Fraction(0)) + c

        powers: Dict[Tuple[int, int], MultiSeries] = {}

        def power(idx: int, k: int) -> MultiSeries:
            if (idx, k) not in powers:
                g = assignment[assigned[idx]].truncate(trunc)
                powers[(idx, k)] = g if k == 1 else power(idx, k - 1) * g
            return powers[(idx, k)]

        result: Dict[Exponents, Fraction] = {}
        for signature, rest in groups.items():
            factor = MultiSeries(table, rest, trunc)
            for idx, k in zip(order, signature):
                if k:
                    factor = factor * power(idx, k)
                    if factor.is_zero():
                        break
            result = sparse_add(result, factor._terms)
        return MultiSeries._raw(table, result, trunc)

    # -- rendering ------------------------------------------------------------

    def to_sympy(self):
        symbols = [sp.Symbol(n) for n in self.table.names]
        expr = sp.Integer(0)
        for exps, c in self._terms.items():
            mono = sp.Rational(c.numerator, c.denominator)
            for s, e in zip(symbols, exps):
                if e:
                    mono *= s ** e
            expr += mono
        return expr

    def __str__(self) -> str:
        return format_terms(self.items(), self.table.names)

    def __repr__(self) -> str:
        return f"MultiSeries({self}, trunc={self.trunc})"


def format_monomial(exps: Exponents, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(items: Iterable[Tuple[Exponents, Fraction]], names: Sequence[str]) -> str:
    """Canonical text: ``1 + 20 q + 1/2 u*v``, rationals as a/b with b > 0."""
    out = []
    for exps, c in items:
        mono = format_monomial(exps, names)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag} {mono}"
        else:
            body = str(mag)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out) if out else "0"


def add(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    """Coefficient-wise sum; the result keeps the smaller truncation order."""
    if a.table != b.table:
        raise SeriesError(f"table mismatch: {a.table.names} vs {b.table.names}")
    trunc = min(a.trunc, b.trunc)
    return MultiSeries._raw(a.table, sparse_add(a._trunc_terms(trunc), b._trunc_terms(trunc)), trunc)


def mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    """Convolution product; terms beyond the truncation order are never formed."""
    if a.table != b.table:
        raise SeriesError(f"table mismatch: {a.table.names} vs {b.table.names}")
    trunc = min(a.trunc, b.trunc)
    terms = sparse_mul(a._terms, b._terms, degree=a.table.degree, bound=trunc)
    return MultiSeries._raw(a.table, terms, trunc)


def substitute(f: MultiSeries, assignment: Mapping[str, MultiSeries]) -> MultiSeries:
    return f.substitute(assignment)


def _single_truncation_variable(f: MultiSeries) -> str:
    if len(f.table.truncation) != 1:
        raise SeriesError("series must have exactly one truncation variable")
    return f.table.names[f.table.truncation[0]]


def reversion(f: MultiSeries) -> MultiSeries:
    """
    Compositional inverse of f = t + O(t^2).

    Solved degree by degree: once g is known below degree k, the degree-k
    part of f(g) is cancelled by the new coefficient of g.
    """
    name = _single_truncation_variable(f)
    if not f.homogeneous_part(0).is_zero():
        raise SeriesError("reversion needs a zero constant term")
    t = MultiSeries.variable(f.table, name, f.trunc)
    if f.homogeneous_part(1) != t.homogeneous_part(1):
        raise SeriesError("reversion needs linear coefficient exactly 1; normalize first")
    g = t
    for k in range(2, f.trunc + 1):
        residual = f.truncate(k).substitute({name: g.truncate(k)})
        g = g - residual.homogeneous_part(k).with_trunc(f.trunc)
    return g


def _check_no_constant(s: MultiSeries, what: str) -> None:
    if not s.homogeneous_part(0).is_zero():
        raise SeriesError(f"{what} needs a series with zero constant term")


def log1p(s: MultiSeries) -> MultiSeries:
    """log(1 + s) for s with zero constant term."""
    _check_no_constant(s, "log1p")
    result = MultiSeries.zero(s.table, s.trunc)
    power = MultiSeries.constant(s.table, 1, s.trunc)
    for k in range(1, s.trunc + 1):
        power = power * s
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


def expm1(s: MultiSeries) -> MultiSeries:
    """exp(s) - 1 for s with zero constant term."""
    _check_no_constant(s, "expm1")
    result = MultiSeries.zero(s.table, s.trunc)
    power = MultiSeries.constant(s.table, 1, s.trunc)
    for k in range(1, s.trunc + 1):
        power = power * s
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1, factorial(k)))
    return result


def exp_log_pair(s: MultiSeries) -> Tuple[MultiSeries, MultiSeries]:
    """Return (log1p(s), expm1(s))."""
    return log1p(s), expm1(s)
