"""
The rational cobordism ring of the point in the basis of products of
projective spaces.

A class of dimension d is stored as {partition of d: rational}. Chern
numbers are a complete rational invariant, so ``decompose`` matches Chern
numbers against the basis spaces P^lambda.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

import sympy as sp

from ..constants import DEFAULT_DIMENSION_BOUND, FGL_PARAMETER_PREFIX
from .chern import (
    BlowupPoint,
    DivisorClass,
    Partition,
    ProjBundle,
    ProjSpace,
    Space,
    chern_numbers,
    milnor_hypersurface,
    partitions_of,
    product_of,
)
from .errors import CobordismError
from .series import MultiSeries


class CobordismClass:
    """
    Graded Q-linear combination of basis monomials [P^l1 x ... x P^lk].

    Args:
        dim: Dimension of the class.
        coefficients: Mapping partition -> rational; zero entries are dropped.
    """

    __slots__ = ("dim", "_coefficients")

    def __init__(self, dim: int, coefficients: Optional[Mapping[Partition, Fraction]] = None):
        if dim < 0:
            raise CobordismError(f"negative dimension {dim}")
        clean = {}
        for lam, c in (coefficients or {}).items():
            lam = tuple(sorted(lam, reverse=True))
            if sum(lam) != dim or any(p <= 0 for p in lam):
                raise CobordismError(f"{lam} is not a partition of {dim}")
            value = clean.get(lam, Fraction(0)) + Fraction(c)
            if value:
                clean[lam] = value
            else:
                clean.pop(lam, None)
        self.dim = dim
        self._coefficients = clean

    @classmethod
    def zero(cls, dim: int) -> "CobordismClass":
        return cls(dim)

    @classmethod
    def point(cls) -> "CobordismClass":
        return cls(0, {(): Fraction(1)})

    @classmethod
    def basis_element(cls, lam: Partition) -> "CobordismClass":
        return cls(sum(lam), {lam: Fraction(1)})

    @property
    def coefficients(self) -> Dict[Partition, Fraction]:
        """Nonzero coefficients in basis order."""
        order = {lam: i for i, lam in enumerate(basis(self.dim))}
        return dict(sorted(self._coefficients.items(), key=lambda kv: order[kv[0]]))

    def coefficient(self, lam: Partition) -> Fraction:
        return self._coefficients.get(tuple(lam), Fraction(0))

    def is_zero(self) -> bool:
        return not self._coefficients

    def _check_dim(self, other: "CobordismClass") -> None:
        if other.dim != self.dim:
            raise CobordismError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "CobordismClass") -> "CobordismClass":
        self._check_dim(other)
        merged = dict(self._coefficients)
        for lam, c in other._coefficients.items():
            merged[lam] = merged.get(lam, Fraction(0)) + c
        return CobordismClass(self.dim, merged)

    def __neg__(self) -> "CobordismClass":
        return self.scale(-1)

    def __sub__(self, other: "CobordismClass") -> "CobordismClass":
        return self + (-other)

    def scale(self, k) -> "CobordismClass":
        k = Fraction(k)
        return CobordismClass(self.dim, {lam: k * c for lam, c in self._coefficients.items()})

    def product(self, other: "CobordismClass") -> "CobordismClass":
        """Bilinear extension of partition concatenation."""
        out: Dict[Partition, Fraction] = {}
        for la, ca in self._coefficients.items():
            for lb, cb in other._coefficients.items():
                lam = tuple(sorted(la + lb, reverse=True))
                out[lam] = out.get(lam, Fraction(0)) + ca * cb
        return CobordismClass(self.dim + other.dim, out)

    def __mul__(self, other):
        if isinstance(other, CobordismClass):
            return self.product(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CobordismClass):
            return NotImplemented
        return self.dim == other.dim and self._coefficients == other._coefficients

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        if not self._coefficients:
            return "0"
        parts = []
        for lam, c in self.coefficients.items():
            mono = "x".join(f"P{k}" for k in lam) if lam else "pt"
            mag = abs(c)
            body = f"[{mono}]" if mag == 1 else f"{mag}[{mono}]"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"CobordismClass(dim={self.dim}, {self})"


@dataclass(frozen=True)
class DoublePointDatum:
    """
    The four spaces of a double point relation [Y] - [A] - [B] + [P(pi)].

    ``None`` stands for the empty space (zero class).
    """

    Y: Space
    A: Optional[Space]
    B: Optional[Space]
    P: Optional[Space]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        for name in ("A", "B", "P"):
            other = getattr(self, name)
            if other is not None and other.dim != self.Y.dim:
                raise CobordismError(
                    f"double point datum: dim {name} = {other.dim} differs from dim Y = {self.Y.dim}")

    @property
    def dim(self) -> int:
        return self.Y.dim


# -- basis and Chern matrix ---------------------------------------------------

def basis(d: int) -> List[Partition]:
    """Partitions of d in reverse-lexicographic order; d = 0 gives the point."""
    if d < 0:
        raise CobordismError(f"negative dimension {d}")
    return partitions_of(d)


def basis_space(lam: Partition) -> Space:
    """P^l1 x ... x P^lk (the point for the empty partition)."""
    return product_of(*(ProjSpace(k) for k in lam))


@lru_cache(maxsize=None)
def chern_matrix(d: int, bound: int = DEFAULT_DIMENSION_BOUND) -> sp.ImmutableMatrix:
    """Rows: basis partitions; columns: Chern numbers in ``chern_partitions`` order."""
    if d > bound:
        raise CobordismError(f"dimension {d} exceeds the dimension bound {bound}")
    rows = []
    for lam in basis(d):
        numbers = chern_numbers(basis_space(lam), bound)
        rows.append([sp.Rational(c.numerator, c.denominator) for c in numbers.values()])
    return sp.ImmutableMatrix(rows)


@lru_cache(maxsize=None)
def _decompose(X: Space, bound: int) -> CobordismClass:
    d = X.dim
    if d > bound:
        raise CobordismError(f"dimension {d} exceeds the dimension bound {bound}")
    matrix = chern_matrix(d, bound)
    if matrix.det() == 0:
        raise CobordismError(f"Chern matrix in dimension {d} is singular")
    numbers = chern_numbers(X, bound)
    vector = sp.Matrix([sp.Rational(c.numerator, c.denominator) for c in numbers.values()])
    solution = matrix.T.LUsolve(vector)
    coeffs = {lam: Fraction(int(v.p), int(v.q)) for lam, v in zip(basis(d), solution)}
    return CobordismClass(d, coeffs)


def decompose(X: Optional[Space], bound: int = DEFAULT_DIMENSION_BOUND,
              dim: Optional[int] = None) -> CobordismClass:
    """
    Coefficients of [X] in the product basis, matched through Chern numbers.

    ``None`` is the empty space; its dimension has to be given.
    """
    if X is None:
        if dim is None:
            raise CobordismError("the empty space needs an explicit dimension")
        return CobordismClass.zero(dim)
    return _decompose(X, bound)


# -- relations ----------------------------------------------------------------

def blowup_relation(X: Space) -> DoublePointDatum:
    """
    Deformation to the normal cone of a point in a 3-fold.

    Y = X, A = Bl_pt X, B = P^3 and P(pi) = P(O + O(1)) over P^2, so that
    [X] = [Bl_pt X] + [P^3] - [P(O + O(1))].
    """
    if X.dim != 3:
        raise CobordismError(f"point blow-up relation needs a 3-fold, got dimension {X.dim}")
    plane = ProjSpace(2)
    bundle = ProjBundle(plane, (DivisorClass.zero(plane), DivisorClass((Fraction(1),))))
    return DoublePointDatum(X, BlowupPoint(X), ProjSpace(3), bundle, label=f"blowup {X}")


def naive_relation(X: Space) -> DoublePointDatum:
    """The trivial degeneration: special fiber X itself, nothing else."""
    return DoublePointDatum(X, X, None, None, label=f"naive {X}")


def verify_relation(datum: DoublePointDatum, bound: int = DEFAULT_DIMENSION_BOUND) -> CobordismClass:
    """[Y] - [A] - [B] + [P(pi)]; zero for a genuine double point degeneration."""
    d = datum.dim
    return (decompose(datum.Y, bound)
            - decompose(datum.A, bound, dim=d)
            - decompose(datum.B, bound, dim=d)
            + decompose(datum.P, bound, dim=d))


# -- formal group law coefficients --------------------------------------------

def milnor_hypersurface_class(n: int, m: int, bound: int = DEFAULT_DIMENSION_BOUND) -> CobordismClass:
    if n + m < 1:
        raise CobordismError("H_{0,0} is empty")
    return decompose(milnor_hypersurface(n, m), bound)


def projective_class(k: int) -> CobordismClass:
    return CobordismClass.basis_element((k,) if k else ())


def milnor_fgl_coefficients(max_degree: int,
                            bound: int = DEFAULT_DIMENSION_BOUND) -> Dict[Tuple[int, int], CobordismClass]:
    """
    Solve [H_{n,m}] = sum a_ij [P^(n-i)] [P^(m-j)] over (i, j) != (0, 0).

    Unknowns are fixed in increasing (i + j, i) order; each equation
    introduces exactly a_nm. The result is then checked for symmetry and
    for the edge values a_{0,1} = a_{1,0} = 1, a_{0,j} = a_{j,0} = 0 (j > 1).
    """
    if max_degree - 1 > bound:
        raise CobordismError(f"coefficients up to degree {max_degree} need dimension "
                             f"{max_degree - 1} > bound {bound}")
    a: Dict[Tuple[int, int], CobordismClass] = {}
    for total in range(1, max_degree + 1):
        for n in range(total + 1):
            m = total - n
            rhs = milnor_hypersurface_class(n, m, bound)
            for (i, j), coeff in a.items():
                if i <= n and j <= m:
                    rhs = rhs - coeff * projective_class(n - i) * projective_class(m - j)
            a[(n, m)] = rhs

    for (i, j), coeff in a.items():
        if a[(j, i)] != coeff:
            raise CobordismError(f"inconsistent Milnor system: a_{i}{j} = {coeff} but a_{j}{i} = {a[(j, i)]}")
        if i == 0 or j == 0:
            expected = CobordismClass.point() if i + j == 1 else CobordismClass.zero(i + j - 1)
            if coeff != expected:
                raise CobordismError(f"inconsistent Milnor system: a_{i}{j} = {coeff}")
    return {k: v for k, v in a.items()}


def from_lazard(poly: MultiSeries, dim: Optional[int] = None) -> CobordismClass:
    """Map a polynomial in p1, p2, ... to a class via p_k -> [P^k]; ``dim`` types the zero polynomial."""
    params = {}
    for idx, name in enumerate(poly.table.names):
        if name.startswith(FGL_PARAMETER_PREFIX) and name[len(FGL_PARAMETER_PREFIX):].isdigit():
            params[idx] = int(name[len(FGL_PARAMETER_PREFIX):])
    coeffs: Dict[Partition, Fraction] = {}
    dims = set()
    for exps, c in poly.terms.items():
        lam: List[int] = []
        for idx, e in enumerate(exps):
            if not e:
                continue
            if idx not in params:
                raise CobordismError(f"'{poly.table.names[idx]}' is not a Lazard generator")
            lam.extend([params[idx]] * e)
        lam_t = tuple(sorted(lam, reverse=True))
        dims.add(sum(lam_t))
        coeffs[lam_t] = coeffs.get(lam_t, Fraction(0)) + c
    if len(dims) > 1:
        raise CobordismError(f"polynomial {poly} is not homogeneous")
    if dims and dim is not None and dims != {dim}:
        raise CobordismError(f"polynomial {poly} has dimension {dims.pop()}, expected {dim}")
    return CobordismClass(dims.pop() if dims else (dim or 0), coeffs)
