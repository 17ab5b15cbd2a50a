"""
Localization oracle for degree-zero DT invariants of toric 3-folds.

Torus-fixed ideal sheaves of length n on a toric 3-fold are tuples of
plane partitions, one per fixed point. Each plane partition contributes
e(-V) where V is the virtual tangent character

    V = F - F^ t^(-1,-1,-1) + F F^ (1-t1)(1-t2)(1-t3) t^(-1,-1,-1)

with F the box character and F^ its dual. Weights are specialized at a
random integer point, so every contribution is an exact rational.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from itertools import product as cartesian
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from ..constants import (
    DEFAULT_ENUMERATION_BOUND,
    DEFAULT_SEED,
    DEFAULT_VERTEX_N_BOUND,
    MAX_SPECIALIZATION_ATTEMPTS,
    SPECIALIZATION_RANGE,
)
from .chern import Point, Product, ProjSpace, Space
from .dt import QSeries
from .errors import BoundError, VertexError
from .series import sparse_add, sparse_mul

Box = Tuple[int, int, int]
Weight = Tuple[int, int, int]
LinearForm = Tuple[int, ...]


@dataclass(frozen=True)
class PlanePartition3D:
    """Finite order ideal of N^3, stored as its set of boxes."""

    boxes: FrozenSet[Box]

    def __post_init__(self):
        for (i, j, k) in self.boxes:
            if min(i, j, k) < 0:
                raise VertexError(f"box {(i, j, k)} has a negative coordinate")
            for below in ((i - 1, j, k), (i, j - 1, k), (i, j, k - 1)):
                if min(below) >= 0 and below not in self.boxes:
                    raise VertexError(f"box {(i, j, k)} is not supported by {below}")

    @classmethod
    def empty(cls) -> "PlanePartition3D":
        return cls(frozenset())

    @property
    def size(self) -> int:
        return len(self.boxes)

    def addable(self) -> List[Box]:
        """Boxes whose addition keeps the order-ideal property."""
        candidates = {(0, 0, 0)}
        for (i, j, k) in self.boxes:
            candidates.update({(i + 1, j, k), (i, j + 1, k), (i, j, k + 1)})
        out = []
        for (i, j, k) in candidates - self.boxes:
            below = ((i - 1, j, k), (i, j - 1, k), (i, j, k - 1))
            if all(min(b) < 0 or b in self.boxes for b in below):
                out.append((i, j, k))
        return sorted(out)

    def add(self, box: Box) -> "PlanePartition3D":
        return PlanePartition3D(self.boxes | {box})

    def permute(self, perm: Sequence[int]) -> "PlanePartition3D":
        return PlanePartition3D(frozenset(tuple(b[p] for p in perm) for b in self.boxes))

    def sort_key(self) -> Tuple[Box, ...]:
        return tuple(sorted(self.boxes))


@lru_cache(maxsize=None)
def _enumerate(n: int) -> Tuple[PlanePartition3D, ...]:
    if n == 0:
        return (PlanePartition3D.empty(),)
    seen = set()
    for smaller in _enumerate(n - 1):
        for box in smaller.addable():
            seen.add(smaller.add(box))
    return tuple(sorted(seen, key=PlanePartition3D.sort_key))


def enumerate_partitions(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> List[PlanePartition3D]:
    """All plane partitions with n boxes, each listed once."""
    if n < 0:
        raise VertexError(f"negative size {n}")
    if n > bound:
        raise BoundError("enumeration", n, bound)
    return list(_enumerate(n))


class Character:
    """Laurent polynomial in t1, t2, t3 with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Weight, int]] = None):
        self._terms = {tuple(k): int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, weight: Weight, coeff: int = 1) -> "Character":
        return cls({weight: coeff})

    @property
    def terms(self) -> Dict[Weight, int]:
        return dict(self._terms)

    def __add__(self, other: "Character") -> "Character":
        return Character(sparse_add(self._terms, other._terms))

    def __sub__(self, other: "Character") -> "Character":
        return Character(sparse_add(self._terms, other._terms, -1))

    def __mul__(self, other: "Character") -> "Character":
        return Character(sparse_mul(self._terms, other._terms))

    def dual(self) -> "Character":
        return Character({tuple(-e for e in k): v for k, v in self._terms.items()})

    def constant_coefficient(self) -> int:
        return self._terms.get((0, 0, 0), 0)

    def rank(self) -> int:
        return sum(self._terms.values())

    def permute(self, perm: Sequence[int]) -> "Character":
        return Character({tuple(k[p] for p in perm): v for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, v in sorted(self._terms.items()):
            mono = "*".join(f"t{i + 1}^{e}" if e != 1 else f"t{i + 1}" for i, e in enumerate(k) if e)
            body = mono or "1"
            if abs(v) != 1:
                body = f"{abs(v)} {body}"
            parts.append(("- " if v < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


_INVERSE_VOLUME = Character.monomial((-1, -1, -1))
_KOSZUL = (Character.monomial((0, 0, 0)) - Character.monomial((1, 0, 0))) \
    * (Character.monomial((0, 0, 0)) - Character.monomial((0, 1, 0))) \
    * (Character.monomial((0, 0, 0)) - Character.monomial((0, 0, 1)))


@lru_cache(maxsize=None)
def _vertex_character(partition: PlanePartition3D) -> Character:
    F = Character({box: 1 for box in partition.boxes})
    Fd = F.dual()
    V = F - Fd * _INVERSE_VOLUME + F * Fd * _KOSZUL * _INVERSE_VOLUME
    if V.constant_coefficient():
        raise VertexError(f"virtual tangent space of {sorted(partition.boxes)} has a trivial weight")
    if V.rank():
        raise VertexError(f"virtual tangent space of {sorted(partition.boxes)} has rank {V.rank()}")
    return V


def vertex_character(partition: PlanePartition3D) -> Character:
    """The virtual tangent character at a fixed point, as a Laurent polynomial."""
    return _vertex_character(partition)


def vertex_weight(partition: PlanePartition3D, weights: Sequence[int]) -> Optional[Fraction]:
    """
    e(-V) at integer tangent weights; None when some weight vanishes.

    Each monomial t^mu with multiplicity m contributes (mu . weights)^(-m).
    """
    numerator, denominator = 1, 1
    for mu, m in vertex_character(partition).terms.items():
        value = sum(a * w for a, w in zip(mu, weights))
        if value == 0:
            return None
        if m > 0:
            denominator *= value ** m
        else:
            numerator *= value ** (-m)
    return Fraction(numerator, denominator)


# -- toric charts -------------------------------------------------------------

@dataclass(frozen=True)
class ToricChart:
    """
    Tangent weights at one torus-fixed point, as linear forms in s1, s2, s3.

    Args:
        label: Fixed point in homogeneous-coordinate terms, e.g. ``(0, 2)``.
        forms: Three integer linear forms.
    """

    label: Tuple[int, ...]
    forms: Tuple[LinearForm, LinearForm, LinearForm]

    def __post_init__(self):
        if len(self.forms) != 3:
            raise VertexError(f"a 3-fold chart needs three weights, got {len(self.forms)}")
        if sp.Matrix(self.forms).det() == 0:
            raise VertexError(f"degenerate fixed point {self.label}: weights {self.forms}")

    def specialize(self, s: Sequence[int]) -> Weight:
        return tuple(sum(a * b for a, b in zip(form, s)) for form in self.forms)  # type: ignore[return-value]


def _projective_factors(X: Space) -> List[int]:
    if isinstance(X, ProjSpace):
        return [X.n]
    if isinstance(X, Product):
        return _projective_factors(X.left) + _projective_factors(X.right)
    if isinstance(X, Point):
        return []
    raise VertexError(f"{X} is not a product of projective spaces")


def toric_charts(X: Space) -> List[ToricChart]:
    """
    Fixed-point charts of a product of projective spaces of dimension 3.

    The factor P^n gets homogeneous weights (0, s_a, ..., s_(a+n-1)); at the
    fixed point i the tangent weights are lambda_j - lambda_i for j != i.
    """
    factors = [n for n in _projective_factors(X) if n > 0]
    if sum(factors) != 3:
        raise VertexError(f"toric charts need a 3-fold, got dimension {sum(factors)}")
    homogeneous: List[List[LinearForm]] = []
    offset = 0
    for n in factors:
        lam = [(0, 0, 0)]
        for k in range(n):
            form = [0, 0, 0]
            form[offset + k] = 1
            lam.append(tuple(form))
        homogeneous.append(lam)
        offset += n

    charts = []
    for label in cartesian(*(range(n + 1) for n in factors)):
        forms = []
        for lam, i in zip(homogeneous, label):
            for j, lj in enumerate(lam):
                if j != i:
                    forms.append(tuple(a - b for a, b in zip(lj, lam[i])))
        charts.append(ToricChart(tuple(label), tuple(forms)))  # type: ignore[arg-type]
    return charts


# -- localization -------------------------------------------------------------

def _log(message: str) -> None:
    print(f"[VertexOracle] {message}", file=sys.stderr, flush=True)


def local_exponent(chart: ToricChart, s: Sequence[int]) -> Fraction:
    """-(w1+w2)(w1+w3)(w2+w3)/(w1 w2 w3): the fixed-point share of the DT exponent."""
    w1, w2, w3 = chart.specialize(s)
    if 0 in (w1, w2, w3):
        raise VertexError(f"zero tangent weight at {chart.label} for s = {tuple(s)}")
    return -Fraction((w1 + w2) * (w1 + w3) * (w2 + w3), w1 * w2 * w3)


def _local_coefficients(chart: ToricChart, n: int, s: Sequence[int]) -> Optional[List[Fraction]]:
    weights = chart.specialize(s)
    coeffs = []
    for k in range(n + 1):
        total = Fraction(0)
        for pi in _enumerate(k):
            w = vertex_weight(pi, weights)
            if w is None:
                return None
            total += w
        coeffs.append(total)
    return coeffs


def local_partition_function(chart: ToricChart, n: int, s: Sequence[int]) -> QSeries:
    """Sum over plane partitions of e(-V) q^|pi| at one fixed point, to order n."""
    coeffs = _local_coefficients(chart, n, s)
    if coeffs is None:
        raise VertexError(f"specialization {tuple(s)} hits a zero weight at {chart.label}")
    return QSeries.from_coefficients(coeffs, n)


def draw_specialization(rng: np.random.Generator) -> Tuple[int, int, int]:
    lo, hi = SPECIALIZATION_RANGE
    signs = rng.choice([-1, 1], size=3)
    values = rng.integers(lo, hi, size=3, endpoint=True)
    return tuple(int(a * b) for a, b in zip(signs, values))  # type: ignore[return-value]


def _multiply(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> List[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(n + 1 - i):
            out[i + j] += x * b[j]
    return out


def n_dt(X: Space, n: int, seed: int = DEFAULT_SEED, jobs: int = 1,
         bound: int = DEFAULT_VERTEX_N_BOUND) -> int:
    """
    N_{n,0} of a toric 3-fold: coefficient of q^n in the product over fixed
    points of the local partition functions.

    The torus weights are drawn from a generator seeded with ``seed``; a draw
    that makes any weight vanish is discarded and redrawn.
    """
    if n < 0:
        raise VertexError(f"negative n = {n}")
    if n > bound:
        raise BoundError("vertex_n", n, bound)
    charts = toric_charts(X)
    if n == 0:
        return 1
    rng = np.random.default_rng(seed)
    for attempt in range(1, MAX_SPECIALIZATION_ATTEMPTS + 1):
        s = draw_specialization(rng)
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                locals_ = list(pool.map(partial(_local_coefficients, n=n, s=s), charts))
        else:
            locals_ = [_local_coefficients(c, n, s) for c in charts]
        if any(c is None for c in locals_):
            _log(f"zero weight at s = {s} (attempt {attempt}), redrawing")
            continue
        total = [Fraction(1)] + [Fraction(0)] * n
        for coeffs in locals_:
            total = _multiply(total, coeffs, n)  # type: ignore[arg-type]
        value = total[n]
        if value.denominator != 1:
            raise VertexError(f"non-integral N_{n} = {value} for {X} at s = {s}")
        return int(value)
    raise VertexError(f"every one of {MAX_SPECIALIZATION_ATTEMPTS} specializations hit a zero weight")


def n_dt_series(X: Space, n: int, seed: int = DEFAULT_SEED, jobs: int = 1,
                bound: int = DEFAULT_VERTEX_N_BOUND) -> QSeries:
    """1 + N_1 q + ... + N_n q^n."""
    return QSeries.from_coefficients([n_dt(X, k, seed, jobs, bound) for k in range(n + 1)], n)


def partition_counts(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> List[int]:
    return [len(enumerate_partitions(k, bound)) for k in range(n + 1)]


def iter_characters(n: int) -> Iterable[Tuple[PlanePartition3D, Character]]:
    for pi in _enumerate(n):
        yield pi, vertex_character(pi)
