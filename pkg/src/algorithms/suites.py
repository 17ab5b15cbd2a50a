"""
Acceptance suites: every headline identity checked exactly, each through
two independent routes where one exists.
"""

from fractions import Fraction
from typing import Dict, List

from ..core import chern, cobordism, dt, fgl, vertex
from ..core.chern import BlowupPoint, DivisorClass, Hypersurface, Partition, ProjBundle, ProjSpace, product_of
from ..core.config import Config
from ..core.series import MultiSeries
from .base import CheckResult, VerificationSuite

P1, P2, P3 = ProjSpace(1), ProjSpace(2), ProjSpace(3)
CUBE = product_of(P1, P1, P1)
P2P1 = product_of(P2, P1)
THREEFOLDS = [P3, P2P1, CUBE]
QUADRIC = Hypersurface(ProjSpace(4), DivisorClass((Fraction(2),)))


def _bundle_over_plane(*classes: int) -> ProjBundle:
    return ProjBundle(P2, tuple(DivisorClass((Fraction(c),)) for c in classes))


def _check(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def _triple(numbers: Dict[Partition, Fraction]) -> tuple:
    return tuple(int(c) if c.denominator == 1 else c for c in numbers.values())


class FormalGroupLawAxioms(VerificationSuite):
    name = "fgl-axioms"
    description = "universal law: axioms, edge coefficients, symmetry and grading"

    def run(self, config: Config) -> List[CheckResult]:
        D = config.fgl_degree
        law = fgl.universal_fgl(D)
        report = fgl.check_axioms(law)
        out = [
            _check("identity", report.identity, "; ".join(report.details)),
            _check("commutativity", report.commutativity),
            _check("associativity", report.associativity),
        ]
        coeffs = {(i, j): law.coefficient(i, j) for i in range(D + 1) for j in range(D + 1 - i)}
        out.append(_check("a_0,1 = 1", coeffs[(0, 1)] == 1))
        out.append(_check("a_0,j = 0 for j > 1",
                          all(coeffs[(0, j)].is_zero() for j in range(2, D + 1))))
        out.append(_check("a_i,j = a_j,i", all(c == coeffs[(j, i)] for (i, j), c in coeffs.items())))
        graded = all(c.is_homogeneous(i + j - 1) for (i, j), c in coeffs.items() if not c.is_zero())
        out.append(_check("a_i,j has degree i+j-1", graded))
        out.append(_check("logarithm", fgl.check_logarithm(law, fgl.logarithm(D))))
        return out


class DualOracleCoefficients(VerificationSuite):
    name = "fgl-milnor"
    description = "a_ij from Milnor hypersurfaces against the universal law"

    def run(self, config: Config) -> List[CheckResult]:
        top = min(4, config.dimension_bound + 1)
        milnor = cobordism.milnor_fgl_coefficients(top, config.dimension_bound)
        law = fgl.universal_fgl(top)
        out = []
        for (i, j), cls in milnor.items():
            expected = cobordism.from_lazard(law.coefficient(i, j), dim=i + j - 1)
            out.append(_check(f"a_{i},{j}", cls == expected, f"milnor {cls}, universal {expected}"))
        minus_p1 = cobordism.projective_class(1).scale(-1)
        out.append(_check("a_1,1 = -[P1]", milnor[(1, 1)] == minus_p1, str(milnor[(1, 1)])))
        return out


class DifferenceSeriesSuite(VerificationSuite):
    name = "difference"
    description = "inverse series, difference series and its two identities"

    def run(self, config: Config) -> List[CheckResult]:
        D = config.fgl_degree
        law = fgl.universal_fgl(D)
        inverse = fgl.chi(law)
        zero = MultiSeries.zero(law.table, D)
        out = [_check("F(u, chi(u)) = 0", law.F.substitute({"v": inverse}) == zero)]
        minus = fgl.difference(law)
        u, v = law.u(), law.v()
        linear = minus.truncate(1) == (u - v).truncate(1)
        out.append(_check("F- = u - v mod (u,v)^2", linear))
        b = fgl.difference_coefficients(law)
        out.append(_check("b_0,0 = 0", (0, 0) not in b))
        out.append(_check("b_1,0 = 1", b.get((1, 0)) == 1))
        out.append(_check("b_0,1 = -1", b.get((0, 1)) == -1))
        report = fgl.check_difference_identities(law)
        out.append(_check("F-(F(u,w), F(v,w)) = F-(u,v)", report.translation_invariance))
        out.append(_check("F(F-(u1,v1), F-(u2,v2)) = F-(F(u1,u2), F(v1,v2))", report.additivity))
        return out


class ChernGoldenTable(VerificationSuite):
    name = "chern-golden"
    description = "Chern numbers of the 3-fold corpus, each by two presentations"

    def run(self, config: Config) -> List[CheckResult]:
        bound = config.dimension_bound
        golden = {
            "P3": (64, 24, 4),
            "P2*P1": (54, 24, 6),
            "P1*P1*P1": (48, 24, 8),
            "Bl(P3)": (56, 24, 6),
            "PB(P2; 0, h)": (56, 24, 6),
        }
        p3 = chern.chern_numbers(P3, bound)
        closed_blowup = (p3[(1, 1, 1)] - 8, p3[(2, 1)], p3[(3,)] + 2)
        presentations = {
            "P3": [P3, ProjBundle(chern.Point(), tuple(DivisorClass(()) for _ in range(4)))],
            "P2*P1": [P2P1, product_of(P1, P2)],
            "P1*P1*P1": [CUBE, chern.Product(P1, product_of(P1, P1))],
            "Bl(P3)": [BlowupPoint(P3), None],
            "PB(P2; 0, h)": [_bundle_over_plane(0, 1), _bundle_over_plane(1, 0)],
        }
        out = []
        for label, spaces in presentations.items():
            for k, X in enumerate(spaces):
                got = closed_blowup if X is None else _triple(chern.chern_numbers(X, bound))
                route = "closed formula" if X is None else str(X)
                out.append(_check(f"{label} via {route}", tuple(got) == golden[label], str(tuple(got))))
        for X in THREEFOLDS + [BlowupPoint(P3), _bundle_over_plane(0, 1)]:
            numbers = chern.chern_numbers(X, bound)
            out.append(_check(f"c1c2[{X}] = 24", numbers[(2, 1)] == 24))
            out.append(_check(f"euler number of {X}",
                              numbers[(3,)] == chern.euler_characteristic(X)))
        return out


class BlowupRelationSuite(VerificationSuite):
    name = "blowup-relation"
    description = "point blow-up double point relation and Chern matrix invertibility"

    def run(self, config: Config) -> List[CheckResult]:
        bound = config.dimension_bound
        out = []
        for d in (3, 4):
            if d > bound:
                continue
            det = cobordism.chern_matrix(d, bound).det()
            out.append(_check(f"chern_matrix({d}) invertible", det != 0, f"det = {det}"))
        for X in THREEFOLDS + [QUADRIC]:
            residual = cobordism.verify_relation(cobordism.blowup_relation(X), bound)
            out.append(_check(f"relation for {X}", residual.is_zero(), str(residual)))
            naive = cobordism.verify_relation(cobordism.naive_relation(X), bound)
            out.append(_check(f"naive relation for {X}", naive.is_zero(), str(naive)))
        return out


class ConjectureOneSuite(VerificationSuite):
    name = "dt-absolute"
    description = "DT exponents and the localization oracle against M(-q)^n"

    seeds_per_space = 3

    def run(self, config: Config) -> List[CheckResult]:
        expected = {P3: -20, CUBE: -16, P2P1: -18}
        out = []
        n_max = min(config.vertex_n_bound, 3)
        for X, value in expected.items():
            exponent = chern.dt_exponent(X)
            out.append(_check(f"n({X}) = {value}", exponent == value, str(exponent)))
            via = dt.exponent_via_cobordism(X, config.dimension_bound)
            out.append(_check(f"n({X}) via cobordism", via == exponent, str(via)))
            z = dt.z_absolute(X, n_max)
            for n in range(1, n_max + 1):
                values = {vertex.n_dt(X, n, seed=config.seed + k, jobs=config.jobs,
                                      bound=config.vertex_n_bound)
                          for k in range(self.seeds_per_space)}
                agree = len(values) == 1 and values == {z.coefficient(n)}
                out.append(_check(f"N_{n}({X})", agree,
                                  f"vertex {sorted(values)}, M(-q) {z.coefficient(n)}"))
        return out


class DegenerationSuite(VerificationSuite):
    name = "dt-relative"
    description = "log exponents, degeneration formula and double point multiplicativity"

    def run(self, config: Config) -> List[CheckResult]:
        hyperplane = DivisorClass((Fraction(1),))
        out = [_check("n(P3/P2) = -8", chern.log_dt_exponent(P3, hyperplane) == -8)]
        corpus = dt.degeneration_corpus()
        bubble = corpus[0].bubble()
        n_bubble = chern.log_dt_exponent(bubble, corpus[0].bubble_section())
        out.append(_check("n(P/S-) = -12", n_bubble == -12, str(n_bubble)))
        for entry in corpus:
            residual = dt.check_degeneration(entry.X, entry.divisor, entry.S, entry.normal)
            label = entry.divisor.render(chern.cohomology_ring(entry.X).names)
            out.append(_check(f"degeneration of {entry.X} along {label}", residual == 0, str(residual)))
        for X in THREEFOLDS + [QUADRIC]:
            residual = dt.check_dp_multiplicativity(cobordism.blowup_relation(X))
            out.append(_check(f"multiplicativity for blowup of {X}", residual == 0, str(residual)))
            residual = dt.check_blowup_degeneration(X)
            out.append(_check(f"blow-up degeneration of {X}", residual == 0, str(residual)))
        return out


class MacMahonSuite(VerificationSuite):
    name = "macmahon"
    description = "MacMahon coefficients against plane-partition counts"

    def run(self, config: Config) -> List[CheckResult]:
        N = min(5, config.q_order)
        series = dt.macmahon(N).coefficients()
        counts = vertex.partition_counts(N)
        out = [_check(f"coefficient q^{n}", series[n] == counts[n], f"{series[n]} vs {counts[n]}")
               for n in range(N + 1)]
        out.append(_check("first coefficients 1,1,3,6,13,24",
                          series[:6] == [1, 1, 3, 6, 13, 24][:N + 1]))
        return out


ALL_SUITES = [
    FormalGroupLawAxioms(),
    DualOracleCoefficients(),
    DifferenceSeriesSuite(),
    ChernGoldenTable(),
    BlowupRelationSuite(),
    ConjectureOneSuite(),
    DegenerationSuite(),
    MacMahonSuite(),
]


def suite_by_name(name: str) -> VerificationSuite:
    for suite in ALL_SUITES:
        if suite.name == name:
            return suite
    raise KeyError(name)
