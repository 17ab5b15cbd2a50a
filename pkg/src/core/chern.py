"""
Symbolic cohomology rings and Chern-class calculus.

Spaces are built from a small constructor tree (point, projective space,
product, projective bundle of a sum of line bundles, hypersurface, point
blow-up of a 3-fold). Each space is modelled by a presented ring together
with a fundamental class and a total Chern class:

    integral over X of a  =  top coefficient of normal_form(a * fundamental)

so hypersurfaces are handled entirely inside their ambient ring
(adjunction and push-forward) and never get a ring of their own.

Projective bundles use rank-one quotients: PB(Y; l_1..l_r) has relative
class z with relation prod_j (z + l_j) = 0, fiber integral of z^(r-1) equal
to 1 and c(T_rel) = prod_j (1 + z + l_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions as _sympy_partitions

from ..constants import DEFAULT_DIMENSION_BOUND, HYPERPLANE_LETTER_ALIASES
from .errors import ChernError
from .series import Exponents, MultiSeries, VariableTable, format_terms

Partition = Tuple[int, ...]


def partitions_of(d: int) -> List[Partition]:
    """Partitions of d in reverse-lexicographic order, e.g. 3 -> (3), (2,1), (1,1,1)."""
    if d < 0:
        raise ChernError(f"cannot partition a negative number ({d})")
    if d == 0:
        return [()]
    out = []
    for p in _sympy_partitions(d):
        out.append(tuple(k for k in sorted(p, reverse=True) for _ in range(p[k])))
    return sorted(out, reverse=True)


# -- divisor classes ----------------------------------------------------------

@dataclass(frozen=True)
class DivisorClass:
    """A degree-1 class: a rational linear form in the ring generators of a space."""

    coefficients: Tuple[Fraction, ...]

    @classmethod
    def zero(cls, space: "Space") -> "DivisorClass":
        return cls((Fraction(0),) * len(cohomology_ring(space).names))

    @classmethod
    def from_mapping(cls, space: "Space", mapping: Mapping[str, int]) -> "DivisorClass":
        ring = cohomology_ring(space)
        coeffs = [Fraction(0)] * len(ring.names)
        for name, c in mapping.items():
            coeffs[ring.resolve(name)] += Fraction(c)
        return cls(tuple(coeffs))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if len(other.coefficients) != len(self.coefficients):
            raise ChernError("divisor classes live on different spaces")
        return DivisorClass(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coefficients))

    def scale(self, k) -> "DivisorClass":
        return DivisorClass(tuple(Fraction(k) * a for a in self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def render(self, names: Sequence[str]) -> str:
        parts = []
        for name, c in zip(names, self.coefficients):
            if not c:
                continue
            mag = abs(c)
            body = name if mag == 1 else f"{mag}{name}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if c > 0 else f"-{body}")
        return "".join(parts) if parts else "0"


# -- spaces -------------------------------------------------------------------

class Space:
    """Base class of the constructor tree; subclasses are frozen dataclasses."""

    @cached_property
    def dim(self) -> int:
        return self._dimension()

    def _dimension(self) -> int:
        raise NotImplementedError

    def expression(self) -> str:
        """Render in the space-expression grammar (P3, P2*P1, PB(P2; 0, h), ...)."""
        raise NotImplementedError

    def __str__(self) -> str:
        return self.expression()


@dataclass(frozen=True)
class Point(Space):
    def _dimension(self) -> int:
        return 0

    def expression(self) -> str:
        return "Pt"


@dataclass(frozen=True)
class ProjSpace(Space):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ChernError(f"projective space of negative dimension {self.n}")

    def _dimension(self) -> int:
        return self.n

    def expression(self) -> str:
        return f"P{self.n}"


@dataclass(frozen=True)
class Product(Space):
    left: Space
    right: Space

    def _dimension(self) -> int:
        return self.left.dim + self.right.dim

    def expression(self) -> str:
        right = self.right.expression()
        if isinstance(self.right, Product):
            right = f"({right})"
        return f"{self.left.expression()}*{right}"


@dataclass(frozen=True)
class ProjBundle(Space):
    """P(O(l_1) + ... + O(l_r)) over ``base`` (rank-one quotient convention)."""

    base: Space
    line_classes: Tuple[DivisorClass, ...]

    def __post_init__(self):
        if not self.line_classes:
            raise ChernError("a projective bundle needs at least one line class")

    def _dimension(self) -> int:
        return self.base.dim + len(self.line_classes) - 1

    def expression(self) -> str:
        names = cohomology_ring(self.base).names
        classes = ", ".join(c.render(names) for c in self.line_classes)
        return f"PB({self.base.expression()}; {classes})"


@dataclass(frozen=True)
class Hypersurface(Space):
    """Smooth divisor of the given class in ``ambient``."""

    ambient: Space
    divisor: DivisorClass

    def _dimension(self) -> int:
        return self.ambient.dim - 1

    def expression(self) -> str:
        names = cohomology_ring(self.ambient).names
        return f"Hyp({self.ambient.expression()}; {self.divisor.render(names)})"


@dataclass(frozen=True)
class BlowupPoint(Space):
    """Blow-up of a 3-fold at a point."""

    threefold: Space

    def __post_init__(self):
        if self.threefold.dim != 3:
            raise ChernError(f"point blow-up needs a 3-fold, got dimension {self.threefold.dim}")

    def _dimension(self) -> int:
        return 3

    def expression(self) -> str:
        return f"Bl({self.threefold.expression()})"


def product_of(*spaces: Space) -> Space:
    """Left-nested product; the empty product is the point."""
    if not spaces:
        return Point()
    out = spaces[0]
    for s in spaces[1:]:
        out = Product(out, s)
    return out


def milnor_hypersurface(n: int, m: int) -> Hypersurface:
    """H_{n,m}: a smooth (1,1) divisor in P^n x P^m."""
    ambient = Product(ProjSpace(n), ProjSpace(m))
    return Hypersurface(ambient, DivisorClass((Fraction(1), Fraction(1))))


# -- presented rings ----------------------------------------------------------

class CohomologyRing:
    """
    Q[g_1..g_k] modulo monic rewriting rules, all generators of degree 1.

    Rules map a lead monomial to a replacement polynomial. Normal forms are
    unique: tower relations have pairwise coprime pure-power leads and the
    blow-up rules (e*g -> 0, e^3 -> [pt]) are compatible with them. Every
    monomial above the ambient dimension vanishes.
    """

    def __init__(self, kinds: Sequence[str], rules: Sequence[Tuple[Exponents, Dict[Exponents, Fraction]]],
                 top: Exponents, dim: int):
        self.kinds = tuple(kinds)
        self.names, self.aliases = _canonical_names(self.kinds)
        self.table = VariableTable.build(self.names)
        self.rules = tuple(rules)
        self.top = tuple(top)
        self.dim = dim
        self._memo: Dict[Exponents, Dict[Exponents, Fraction]] = {}

    def __repr__(self) -> str:
        return f"CohomologyRing(gens={self.names}, dim={self.dim})"

    # names

    def resolve(self, name: str) -> int:
        if name in self.names:
            return self.names.index(name)
        if name in self.aliases:
            return self.aliases[name]
        raise ChernError(f"unknown class '{name}'; available: {', '.join(self.names)}")

    # elements

    def element(self, terms: Mapping[Exponents, Fraction]) -> "CohClass":
        return CohClass(self, MultiSeries(self.table, terms, self.dim))

    def one(self) -> "CohClass":
        return self.element({self.table.zero: Fraction(1)})

    def zero(self) -> "CohClass":
        return self.element({})

    def generator(self, name: str) -> "CohClass":
        exps = [0] * len(self.names)
        exps[self.resolve(name)] = 1
        return self.element({tuple(exps): Fraction(1)})

    def divisor(self, d: DivisorClass) -> "CohClass":
        if len(d.coefficients) != len(self.names):
            raise ChernError(f"divisor class has {len(d.coefficients)} coefficients, "
                             f"ring has {len(self.names)} generators")
        terms = {}
        for i, c in enumerate(d.coefficients):
            if c:
                exps = [0] * len(self.names)
                exps[i] = 1
                terms[tuple(exps)] = c
        return self.element(terms)

    # normal forms

    def _reduce_monomial(self, exps: Exponents) -> Dict[Exponents, Fraction]:
        cached = self._memo.get(exps)
        if cached is not None:
            return cached
        out: Dict[Exponents, Fraction] = {}
        for lead, replacement in self.rules:
            if all(e >= l for e, l in zip(exps, lead)):
                quotient = tuple(e - l for e, l in zip(exps, lead))
                for rexps, c in replacement.items():
                    mono = tuple(a + b for a, b in zip(rexps, quotient))
                    if sum(mono) > self.dim:
                        continue
                    for key, value in self._reduce_monomial(mono).items():
                        out[key] = out.get(key, Fraction(0)) + c * value
                out = {k: v for k, v in out.items() if v}
                break
        else:
            out = {exps: Fraction(1)}
        self._memo[exps] = out
        return out

    def reduce(self, poly: MultiSeries) -> MultiSeries:
        out: Dict[Exponents, Fraction] = {}
        for exps, c in poly.terms.items():
            for key, value in self._reduce_monomial(exps).items():
                out[key] = out.get(key, Fraction(0)) + c * value
        return MultiSeries(self.table, {k: v for k, v in out.items() if v}, self.dim)

    def is_standard(self, exps: Exponents) -> bool:
        return not any(all(e >= l for e, l in zip(exps, lead)) for lead, _ in self.rules)

    def basis(self, degree: int) -> List[Exponents]:
        """Standard monomials of a degree, in descending exponent order."""
        return [m for m in _monomials(len(self.names), degree) if self.is_standard(m)]

    def relations(self) -> List[MultiSeries]:
        """Each rule as the polynomial lead - replacement."""
        out = []
        for lead, replacement in self.rules:
            terms = {k: -v for k, v in replacement.items()}
            terms[lead] = terms.get(lead, Fraction(0)) + 1
            out.append(MultiSeries(self.table, terms, max(self.dim, sum(lead))))
        return out

    def top_coefficient(self, poly: MultiSeries) -> Fraction:
        return self.reduce(poly).terms.get(self.top, Fraction(0))


def _monomials(k: int, degree: int) -> List[Exponents]:
    if k == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in _monomials(k - 1, degree - first):
            out.append((first,) + rest)
    return out


def _canonical_names(kinds: Sequence[str]) -> Tuple[Tuple[str, ...], Dict[str, int]]:
    counters = {"h": 0, "z": 0, "e": 0}
    names = []
    for kind in kinds:
        counters[kind] += 1
        names.append(f"{kind}{counters[kind]}")
    aliases: Dict[str, int] = {}
    h_idx = [i for i, k in enumerate(kinds) if k == "h"]
    z_idx = [i for i, k in enumerate(kinds) if k == "z"]
    e_idx = [i for i, k in enumerate(kinds) if k == "e"]
    if len(h_idx) == 1:
        aliases["h"] = h_idx[0]
    for letter, i in zip(HYPERPLANE_LETTER_ALIASES, h_idx):
        aliases[letter] = i
    if len(z_idx) == 1:
        aliases["z"] = z_idx[0]
        aliases["xi"] = z_idx[0]
    if len(e_idx) == 1:
        aliases["e"] = e_idx[0]
    return tuple(names), aliases


class CohClass:
    """A cohomology class kept in normal form."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: CohomologyRing, poly: MultiSeries, reduced: bool = False):
        self.ring = ring
        self.poly = poly if reduced else ring.reduce(poly)

    def _wrap(self, poly: MultiSeries) -> "CohClass":
        return CohClass(self.ring, poly)

    def _other(self, other) -> MultiSeries:
        if isinstance(other, CohClass):
            if other.ring is not self.ring:
                raise ChernError("classes live in different rings")
            return other.poly
        return MultiSeries.constant(self.ring.table, other, self.ring.dim)

    def __add__(self, other) -> "CohClass":
        return CohClass(self.ring, self.poly + self._other(other), reduced=True)

    __radd__ = __add__

    def __sub__(self, other) -> "CohClass":
        return CohClass(self.ring, self.poly - self._other(other), reduced=True)

    def __rsub__(self, other) -> "CohClass":
        return CohClass(self.ring, self._other(other) - self.poly, reduced=True)

    def __neg__(self) -> "CohClass":
        return CohClass(self.ring, -self.poly, reduced=True)

    def __mul__(self, other) -> "CohClass":
        if isinstance(other, (int, Fraction)):
            return CohClass(self.ring, self.poly.scale(other), reduced=True)
        return self._wrap(self.poly * self._other(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CohClass":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (CohClass, int, Fraction)):
            return self.poly == self._other(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def degree_part(self, k: int) -> "CohClass":
        return CohClass(self.ring, self.poly.homogeneous_part(k), reduced=True)

    @property
    def degree(self) -> Optional[int]:
        """Grading degree when homogeneous and nonzero, else None."""
        degrees = {sum(e) for e in self.poly.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def __str__(self) -> str:
        return format_terms(self.poly.items(), self.ring.names)

    def __repr__(self) -> str:
        return f"CohClass({self})"


@dataclass(frozen=True, eq=False)
class SpaceModel:
    """Presented ring, fundamental class and total Chern class of a space."""

    ring: CohomologyRing
    fundamental: CohClass
    chern: CohClass
    dim: int


# -- model construction -------------------------------------------------------

def _lift(poly: Mapping[Exponents, Fraction], offset: int, width: int) -> Dict[Exponents, Fraction]:
    out = {}
    for exps, c in poly.items():
        key = [0] * width
        key[offset:offset + len(exps)] = exps
        out[tuple(key)] = c
    return out


def _lift_rules(rules, offset: int, width: int):
    return [(tuple(_lift({lead: 1}, offset, width))[0], _lift(repl, offset, width))
            for lead, repl in rules]


def _unit(i: int, width: int) -> Exponents:
    exps = [0] * width
    exps[i] = 1
    return tuple(exps)


def _expand(table: VariableTable, factors: Sequence[Dict[Exponents, Fraction]], trunc: int):
    out = MultiSeries.constant(table, 1, trunc)
    for f in factors:
        out = out * MultiSeries(table, f, trunc)
    return dict(out.terms)


def _divisor_terms(d: DivisorClass, width: int) -> Dict[Exponents, Fraction]:
    return {_unit(i, width): c for i, c in enumerate(d.coefficients) if c}


def _point_class(model: SpaceModel) -> Dict[Exponents, Fraction]:
    """A degree-3 class of the ambient ring whose integral over the 3-fold is 1."""
    ring = model.ring
    for mono in ring.basis(3):
        value = ring.top_coefficient((ring.element({mono: Fraction(1)}) * model.fundamental).poly)
        if value:
            return {mono: 1 / value}
    raise ChernError("3-fold has no degree-3 class with nonzero integral")


@lru_cache(maxsize=None)
def space_model(X: Space) -> SpaceModel:
    """Build (and cache) the ring model of a space."""
    if isinstance(X, Point):
        ring = CohomologyRing((), (), (), 0)
        return SpaceModel(ring, ring.one(), ring.one(), 0)

    if isinstance(X, ProjSpace):
        n = X.n
        ring = CohomologyRing(("h",), [((n + 1,), {})], (n,), n)
        h = ring.generator("h1")
        return SpaceModel(ring, ring.one(), (1 + h) ** (n + 1), n)

    if isinstance(X, Product):
        mx, my = space_model(X.left), space_model(X.right)
        kx, ky = len(mx.ring.names), len(my.ring.names)
        width = kx + ky
        rules = _lift_rules(mx.ring.rules, 0, width) + _lift_rules(my.ring.rules, kx, width)
        ring = CohomologyRing(mx.ring.kinds + my.ring.kinds, rules,
                              mx.ring.top + my.ring.top, mx.ring.dim + my.ring.dim)

        def both(a: CohClass, b: CohClass) -> CohClass:
            return ring.element(_lift(a.poly.terms, 0, width)) * ring.element(_lift(b.poly.terms, kx, width))

        return SpaceModel(ring, both(mx.fundamental, my.fundamental), both(mx.chern, my.chern), X.dim)

    if isinstance(X, ProjBundle):
        mb = space_model(X.base)
        k = len(mb.ring.names)
        r = len(X.line_classes)
        for d in X.line_classes:
            if len(d.coefficients) != k:
                raise ChernError(f"line class has {len(d.coefficients)} coefficients, "
                                 f"base ring has {k} generators")
        width = k + 1
        dim = mb.ring.dim + r - 1
        scratch = VariableTable.build([f"g{i}" for i in range(width)])
        z = {_unit(k, width): Fraction(1)}
        shifted = [dict(z, **{}) for _ in range(r)]
        for j, d in enumerate(X.line_classes):
            for key, c in _divisor_terms(d, k).items():
                shifted[j][key + (0,)] = shifted[j].get(key + (0,), Fraction(0)) + c
        relation = _expand(scratch, shifted, max(dim, r))
        lead = tuple([0] * k + [r])
        replacement = {e: -c for e, c in relation.items() if e != lead}
        rules = _lift_rules(mb.ring.rules, 0, width) + [(lead, replacement)]
        ring = CohomologyRing(mb.ring.kinds + ("z",), rules, mb.ring.top + (r - 1,), dim)
        rel_chern = ring.one()
        for s in shifted:
            rel_chern = rel_chern * (1 + ring.element(s))
        base_chern = ring.element(_lift(mb.chern.poly.terms, 0, width))
        fundamental = ring.element(_lift(mb.fundamental.poly.terms, 0, width))
        return SpaceModel(ring, fundamental, base_chern * rel_chern, X.dim)

    if isinstance(X, Hypersurface):
        ma = space_model(X.ambient)
        ring = ma.ring
        d = ring.divisor(X.divisor)
        inverse = ring.one()
        power = ring.one()
        for _ in range(ring.dim):
            power = power * (-d)
            inverse = inverse + power
        return SpaceModel(ring, ma.fundamental * d, ma.chern * inverse, X.dim)

    if isinstance(X, BlowupPoint):
        mx = space_model(X.threefold)
        k = len(mx.ring.names)
        width = k + 1
        rules = _lift_rules(mx.ring.rules, 0, width)
        e_unit = _unit(k, width)
        for i in range(k):
            lead = tuple(a + b for a, b in zip(_unit(i, width), e_unit))
            rules.append((lead, {}))
        rules.append((tuple([0] * k + [3]), _lift(_point_class(mx), 0, width)))
        ring = CohomologyRing(mx.ring.kinds + ("e",), rules, mx.ring.top + (0,), mx.ring.dim)
        e = ring.element({e_unit: Fraction(1)})
        chern = ring.element(_lift(mx.chern.poly.terms, 0, width)) - 2 * e + 2 * e ** 3
        fundamental = ring.element(_lift(mx.fundamental.poly.terms, 0, width))
        return SpaceModel(ring, fundamental, chern, 3)

    raise ChernError(f"unsupported space constructor {type(X).__name__}")


def cohomology_ring(X: Space) -> CohomologyRing:
    """Presentation of the (ambient) ring of X with its integration monomial."""
    return space_model(X).ring


# -- integration and Chern classes --------------------------------------------

def integrate(X: Space, alpha: CohClass) -> Fraction:
    """Integral over X of a class of degree dim X."""
    model = space_model(X)
    if alpha.ring is not model.ring:
        raise ChernError("class does not belong to the ring of this space")
    if alpha.is_zero():
        return Fraction(0)
    if alpha.degree != X.dim:
        raise ChernError(f"integrand must be homogeneous of degree {X.dim}, got {alpha}")
    return model.ring.top_coefficient((alpha * model.fundamental).poly)


def tangent_chern(X: Space) -> CohClass:
    """Total Chern class of the tangent bundle (as a class of the ambient ring)."""
    return space_model(X).chern


def chern_class(X: Space, k: int) -> CohClass:
    return tangent_chern(X).degree_part(k)


def chern_partitions(d: int) -> List[Partition]:
    """Column order of Chern numbers: c1^d first, c_d last."""
    return list(reversed(partitions_of(d)))


def chern_label(partition: Partition) -> str:
    """c1^3, c1*c2, c3 ..."""
    counts: Dict[int, int] = {}
    for part in partition:
        counts[part] = counts.get(part, 0) + 1
    pieces = []
    for part in sorted(counts):
        k = counts[part]
        pieces.append(f"c{part}" if k == 1 else f"c{part}^{k}")
    return "*".join(pieces) if pieces else "1"


def chern_numbers(X: Space, bound: int = DEFAULT_DIMENSION_BOUND) -> Dict[Partition, Fraction]:
    """All Chern numbers of X keyed by partition, in ``chern_partitions`` order."""
    if X.dim > bound:
        raise ChernError(f"dimension {X.dim} exceeds the dimension bound {bound}")
    total = tangent_chern(X)
    classes = {k: total.degree_part(k) for k in range(1, X.dim + 1)}
    out = {}
    for lam in chern_partitions(X.dim):
        integrand = space_model(X).ring.one()
        for part in lam:
            integrand = integrand * classes[part]
        out[lam] = integrate(X, integrand)
    return out


def euler_characteristic(X: Space) -> int:
    """Topological Euler characteristic counted cell by cell (no hypersurfaces)."""
    if isinstance(X, Point):
        return 1
    if isinstance(X, ProjSpace):
        return X.n + 1
    if isinstance(X, Product):
        return euler_characteristic(X.left) * euler_characteristic(X.right)
    if isinstance(X, ProjBundle):
        return euler_characteristic(X.base) * len(X.line_classes)
    if isinstance(X, BlowupPoint):
        return euler_characteristic(X.threefold) + 2
    raise ChernError(f"no combinatorial Euler characteristic for {type(X).__name__}")


def _twisted_top(X: Space, virtual: CohClass, ell: CohClass) -> Fraction:
    """Integral of c3(V tensor L) = c3 + c2 l + c1 l^2 + l^3 for virtual rank 3."""
    c1, c2, c3 = (virtual.degree_part(k) for k in (1, 2, 3))
    return integrate(X, c3 + c2 * ell + c1 * ell * ell + ell * ell * ell)


def _require_threefold(X: Space) -> None:
    if X.dim != 3:
        raise ChernError(f"DT exponents need a 3-fold, got dimension {X.dim}")


def dt_exponent(X: Space) -> Fraction:
    """Integral over X of c3(T_X tensor K_X), i.e. c3 - c1*c2."""
    _require_threefold(X)
    total = tangent_chern(X)
    return _twisted_top(X, total, -total.degree_part(1))


def log_dt_exponent(X: Space, s: DivisorClass) -> Fraction:
    """
    Integral of c3(T_X[-S] tensor K_X[S]).

    T_X[-S] = T_X - O(S) + O in K-theory, so c(V) = c(T_X)/(1 + S) and the
    log canonical class is S - c1(T_X).
    """
    _require_threefold(X)
    model = space_model(X)
    ring = model.ring
    total = model.chern
    div = ring.divisor(s)
    inverse = ring.one()
    power = ring.one()
    for _ in range(ring.dim):
        power = power * (-div)
        inverse = inverse + power
    virtual = total * inverse
    return _twisted_top(X, virtual, div - total.degree_part(1))
