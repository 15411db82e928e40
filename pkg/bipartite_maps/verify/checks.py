"""
Named verification checks, grouped in suites.

A check takes the MapEngine and returns a short detail string. It fails by
raising a BipartiteMapsError whose message names the identity that broke.
"""

import logging
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from bipartite_maps.census.census import disymmetry_defect
from bipartite_maps.coords.derivatives import diff_table
from bipartite_maps.coords.greek_series import combo_series, greek_series
from bipartite_maps.coords.kernel import count_small_zeros, kernel_build
from bipartite_maps.coords.taylor import lattice_oracles, taylor_kernel
from bipartite_maps.coords.theta import (
    LaurentS,
    check_theta_inverse as verified_theta_inverse,
    d_op,
    d_series,
    laurent,
    theta_closed,
    theta_series,
)
from bipartite_maps.errors import BipartiteMapsError, InconsistentSystemError, StructuralError
from bipartite_maps.fit.basis import enumerate_basis
from bipartite_maps.fit.solver import fit_determined
from bipartite_maps.greek.field import GreekElem, closed_form_elem, closed_form_terms, gf_eval
from bipartite_maps.greek.gamma import (
    degree_drop_holds,
    gamma_calc,
    gamma_of_s,
    gamma_of_u,
    gamma_of_z,
    gamma_series_check,
    random_monomial,
)
from bipartite_maps.greek.toprec import (
    check_pole_bounds,
    closed_form_f,
    compare_closed_forms,
    reference_f1,
)
from bipartite_maps.greek.unroot import closed_form_series, reference_l2
from bipartite_maps.map_engine import MapEngine
from bipartite_maps.models import CheckResult
from bipartite_maps.series.partitions import max_part_at_most
from bipartite_maps.tutte.engine import (
    GenusFamily,
    census_coefficients,
    closed_f0_f02,
    compute_F,
    rooting_defect,
    unroot_series,
    vertex_series,
)
from bipartite_maps.tutte.quadrangulations import (
    planar_quadrangulation_oracle,
    quadrangulation_series,
    torus_quadrangulation_oracle,
)
from bipartite_maps.utils.file_io import suite_report
from bipartite_maps.utils.types import SuiteReport

logger = logging.getLogger(__name__)

SUITES = ("census", "genus0", "kernel", "greek", "toprec", "unroot", "fit")
GREEK_ATOMS = ["gamma", "eta", "zeta"] + [f"{f}_{i}" for f in ("eta", "zeta") for i in range(1, 5)]
KERNEL_CUTOFFS = range(2, 6)
FIT_CUTOFFS = (3, 4, 5)
QUADRANGULATION_ORDER = 10
DEGREE_SAMPLES = 1000

Check = Callable[[MapEngine], str]


@dataclass(frozen=True)
class RegisteredCheck:
    suite: str
    name: str
    func: Check
    slow: bool = False


def verification_check(suite: str, slow: bool = False):
    """Register a function as a named check of the given suite."""

    def decorator(func: Check) -> Check:
        VerificationChecks.register(suite, func.__name__.removeprefix("check_"), func, slow)
        return func

    return decorator


class VerificationChecks:
    _registry: dict[str, dict[str, RegisteredCheck]] = {}

    @classmethod
    def register(cls, suite, name, func, slow=False):
        cls._registry.setdefault(suite, {})[name] = RegisteredCheck(suite, name, func, slow)

    @classmethod
    def get(cls, suite, name):
        return cls._registry.get(suite, {}).get(name)

    @classmethod
    def suites(cls) -> list[str]:
        return [s for s in SUITES if s in cls._registry]

    @classmethod
    def checks(cls, suite: str, slow: bool = False) -> list[RegisteredCheck]:
        if suite not in cls._registry:
            raise ValueError(f"Unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
        return [c for _, c in sorted(cls._registry[suite].items()) if slow or not c.slow]


def _require(condition: bool, identity: str) -> None:
    if not condition:
        raise StructuralError(identity)


# ----------------------------------------------------------------------
# census: enumeration against the Tutte engine
# ----------------------------------------------------------------------


def _census_agrees(engine: MapEngine, family: GenusFamily, n: int) -> None:
    table, _ = engine.census(n)
    rooted = engine.rooted_census(n)
    for g in range(family.G + 1):
        F = family.F[g]
        L = unroot_series(F)
        ours = {mu: c for mu, c in census_coefficients(L, n).items() if c}
        theirs = {mu: Fraction(c) for (h, mu), c in table.entries.items() if h == g}
        _require(ours == theirs, f"n! [t^{n} p_mu] L_{g} = l_{g}(mu) at n = {n}")
        ours_rooted = {(k, mu): c for (m, k, mu), c in F.terms.items() if m == n and c}
        theirs_rooted = {(k, mu): Fraction(c) for (h, k, mu), c in rooted.entries.items() if h == g}
        _require(ours_rooted == theirs_rooted, f"[t^{n} x^k p_mu] F_{g} = b_{g}(k, mu) at n = {n}")


def _census_family(engine: MapEngine, n: int) -> GenusFamily:
    G = (n - 1) // 2
    if engine.N >= n:
        return engine.family(G)
    return compute_F(G, n)


@verification_check("census")
def check_labelled_and_rooted(engine: MapEngine) -> str:
    family = _census_family(engine, engine.n)
    for n in range(1, engine.n + 1):
        _census_agrees(engine, family, n)
    return f"n <= {engine.n}, g <= {family.G}"


@verification_check("census", slow=True)
def check_labelled_and_rooted_n7(engine: MapEngine) -> str:
    _census_agrees(engine, compute_F(3, 7), 7)
    return "n = 7, g <= 3"


@verification_check("census")
def check_disymmetry(engine: MapEngine) -> str:
    checked = 0
    for n in range(1, engine.n + 1):
        table, marked = engine.census(n)
        for g, mu in table.entries:
            defect = disymmetry_defect(table, marked, g, mu)
            _require(defect == 0, f"(2-2g) l_g(mu) = vertex + face - edge at g = {g}, mu = {list(mu)}")
            checked += 1
    return f"{checked} (g, mu) pairs"


@verification_check("census")
def check_vertex_marked(engine: MapEngine) -> str:
    family = _census_family(engine, engine.n)
    for g in range(family.G + 1):
        F = family.F[g]
        series = vertex_series(g, unroot_series(F), F)
        for n in range(1, engine.n + 1):
            _, marked = engine.census(n)
            ours = {mu: c for mu, c in census_coefficients(series, n).items() if c}
            theirs = {
                mu: Fraction(counts.vertex)
                for (h, mu), counts in marked.entries.items()
                if h == g and counts.vertex
            }
            _require(ours == theirs, f"vertex-marked series of genus {g} at n = {n}")
    return f"g <= {family.G}"


@verification_check("census")
def check_grading(engine: MapEngine) -> str:
    family = _census_family(engine, engine.n)
    for g in range(family.G + 1):
        F = family.F[g]
        L = unroot_series(F)
        _require(F.check_grading(), f"n = k + |mu| on every key of F_{g}")
        _require(L.check_grading(), f"m = |mu| on every key of L_{g}")
        _require(not rooting_defect(L, F), f"Gamma L_{g} = F_{g}")
        if g >= 1:
            pure = L.restrict(lambda mu: bool(mu) and set(mu) == {1})
            _require(not pure, f"L_{g} vanishes on pure p_1 monomials")
    return f"g <= {family.G}"


# ----------------------------------------------------------------------
# genus0: closed forms and the quadrangulation specialization
# ----------------------------------------------------------------------


@verification_check("genus0")
def check_closed_forms(engine: MapEngine) -> str:
    family = engine.family(0)
    f0, f02 = closed_f0_f02(engine.N)
    ours = engine.coords.to_zu(family.F[0])
    ours_2 = engine.coords.to_zu(family.F2[0])
    trunc = min(ours.trunc, f0.trunc)
    _require(ours.truncate(trunc) == f0.truncate(trunc), "F_0 equals its closed form")
    trunc = min(ours_2.trunc, f02.trunc)
    _require(ours_2.truncate(trunc) == f02.truncate(trunc), "Gamma F_0 = (uz)^2 / (1-uz)^4")
    return f"through z^{trunc}"


@verification_check("genus0")
def check_quadrangulations(engine: MapEngine) -> str:
    order = QUADRANGULATION_ORDER
    _require(
        quadrangulation_series(0, order) == planar_quadrangulation_oracle(order),
        "planar general maps = sigma (4 - sigma) / 3",
    )
    _require(
        quadrangulation_series(1, order) == torus_quadrangulation_oracle(order),
        "genus-one general maps match the torus formula",
    )
    return f"through t^{order}"


# ----------------------------------------------------------------------
# kernel
# ----------------------------------------------------------------------


@verification_check("kernel")
def check_kernel_structure(engine: MapEngine) -> str:
    for K in KERNEL_CUTOFFS:
        kernel = kernel_build(K)
        _require(kernel.factorization_holds(), f"kernel factorization for K = {K}")
        _require(kernel.antisymmetry_holds(), f"Y(u) + Y(1/(z^2 u)) = 0 for K = {K}")
        small, large = count_small_zeros(kernel, engine.seed + K)
        _require(small == K - 1, f"{K - 1} small zeros for K = {K}, found {small}")
        logger.debug(f"K = {K}: {small} small and {large} large zeros")
    return f"K = {KERNEL_CUTOFFS.start}..{KERNEL_CUTOFFS.stop - 1}"


@verification_check("kernel")
def check_taylor_coefficients(engine: MapEngine) -> str:
    for sign in (1, -1):
        for a in range(5):
            taylor_kernel(sign, a)
    for a in range(2, 5):
        lattice_oracles(a, engine.N)
    return "a <= 4"


# ----------------------------------------------------------------------
# greek: operator calculus
# ----------------------------------------------------------------------


@verification_check("greek")
def check_theta_on_atoms(engine: MapEngine) -> str:
    N = engine.N
    for name in GREEK_ATOMS:
        _require(
            theta_closed(name).to_series(N) == theta_series(greek_series(name, N)),
            f"closed form of Theta {name}",
        )
    return f"{len(GREEK_ATOMS)} atoms through z^{N}"


@verification_check("greek")
def check_d_on_atoms(engine: MapEngine) -> str:
    N = engine.N
    for name in GREEK_ATOMS:
        _require(
            d_series(greek_series(name, N)) == combo_series(d_op({name: 1}), N),
            f"closed form of D {name}",
        )
    return f"{len(GREEK_ATOMS)} atoms through z^{N}"


@verification_check("greek")
def check_derivative_table(engine: MapEngine) -> str:
    table = diff_table(engine.coords)
    for row in table:
        _require(row.holds, f"implicit differentiation {row.name}")
    return f"{len(table)} identities"


@verification_check("greek")
def check_gamma_on_atoms(engine: MapEngine) -> str:
    elems = {name: GreekElem.atom(name) for name in GREEK_ATOMS}
    elems["s"] = GreekElem.s(1)
    for name, e in elems.items():
        _require(gamma_series_check(e, engine.coords), f"Gamma {name} against the series Gamma")
    s = GreekElem.s(1)
    _require(
        gamma_of_s() == (s * s - 1) / 2 * (gamma_of_u() + gamma_of_z()),
        "Gamma s from Gamma u and Gamma z",
    )
    return f"{len(elems)} generators"


@verification_check("greek")
def check_gamma_derivation(engine: MapEngine) -> str:
    rng = random.Random(engine.seed)
    for _ in range(20):
        a = random_monomial(rng).to_elem()
        b = random_monomial(rng).to_elem()
        _require(
            gamma_calc(a * b) == gamma_calc(a) * b + a * gamma_calc(b),
            "Gamma(AB) = Gamma(A) B + A Gamma(B)",
        )
    return "20 random products"


@verification_check("greek")
def check_gamma_degrees(engine: MapEngine) -> str:
    rng = random.Random(engine.seed)
    for _ in range(DEGREE_SAMPLES):
        term = random_monomial(rng)
        _require(degree_drop_holds(term), f"degree bounds of Gamma on {term}")
    return f"{DEGREE_SAMPLES} random monomials"


def _random_odd_laurent(rng: random.Random) -> LaurentS:
    even = laurent(*((2 * j, Fraction(rng.randint(-9, 9), rng.randint(1, 9))) for j in range(-3, 3)))
    return laurent((-1, 1), (1, -1)) * even


@verification_check("greek")
def check_theta_inverse(engine: MapEngine) -> str:
    rng = random.Random(engine.seed)
    for _ in range(20):
        verified_theta_inverse(_random_odd_laurent(rng))
    return "20 random odd Laurent polynomials"


# ----------------------------------------------------------------------
# toprec: residue recursion against the Tutte engine
# ----------------------------------------------------------------------


def _same_series(ours, theirs, identity: str) -> None:
    trunc = min(ours.trunc, theirs.trunc)
    _require(ours.truncate(trunc) == theirs.truncate(trunc), identity)


@verification_check("toprec")
def check_genus_one(engine: MapEngine) -> str:
    F1 = engine.symbolic_F(1)
    _same_series(gf_eval(F1, engine.N), engine.rooted(1, "zup"), "series of the residue F_1")
    _require(check_pole_bounds(1, F1), "pole bounds of F_1")
    diffs = compare_closed_forms(closed_form_terms(F1), closed_form_terms(reference_f1()))
    if not diffs:
        return "matches the printed display"
    shown = "; ".join(f"{term}: {ours} vs {theirs}" for term, ours, theirs in diffs)
    return f"printed display differs on {len(diffs)} terms: {shown}"


@verification_check("toprec", slow=True)
def check_genus_two(engine: MapEngine) -> str:
    F2 = engine.symbolic_F(2)
    _same_series(gf_eval(F2, engine.N), engine.rooted(2, "zup"), "series of the residue F_2")
    _require(check_pole_bounds(2, F2), "pole bounds of F_2")
    _require(F2.is_odd_in_s(), "F_2 is odd in s")
    return f"{len(closed_form_terms(F2))} closed-form terms"


# ----------------------------------------------------------------------
# unroot
# ----------------------------------------------------------------------


@verification_check("unroot")
def check_genus_one_logs(engine: MapEngine) -> str:
    L1 = engine.symbolic_L(1)
    _same_series(closed_form_series(L1, engine.N), engine.unrooted(1, "zup"), "series of L_1")
    return f"log coefficients {L1.log_eta}, {L1.log_zeta}"


@verification_check("unroot", slow=True)
def check_genus_two_unrooted(engine: MapEngine) -> str:
    L2 = engine.symbolic_L(2)
    _require(not L2.log_eta and not L2.log_zeta, "L_2 is free of logarithms")
    _same_series(closed_form_series(L2, engine.N), engine.unrooted(2, "zup"), "series of L_2")
    table, _ = engine.census(5)
    ours = census_coefficients(engine.unrooted(2), 5).get((5,), Fraction(0))
    _require(ours == table.count(2, (5,)), "5! [p_5 t^5] L_2 = l_2((5))")
    diffs = compare_closed_forms(L2.terms, closed_form_terms(reference_l2()))
    detail = f"l_2((5)) = {table.count(2, (5,))}"
    if diffs:
        detail += f"; printed display differs on {len(diffs)} terms"
    return detail


# ----------------------------------------------------------------------
# fit
# ----------------------------------------------------------------------


def _restricted_series(terms, N: int, K: int):
    return gf_eval(closed_form_elem(terms), N).restrict(max_part_at_most(K))


@verification_check("fit")
def check_genus_one_fit(engine: MapEngine) -> str:
    basis = enumerate_basis(1, "F")
    terms, report = engine.fit(1, "F")
    expected = closed_form_f(1, engine.symbolic_F(1)).as_dict()
    _require({t.term: t.coeff for t in terms} == expected, "fitted F_1 equals the residue F_1")
    stable = []
    for K in FIT_CUTOFFS:
        restricted, _ = engine.fit(1, "F", K)
        _require(
            _restricted_series(restricted, engine.N, K) == _restricted_series(terms, engine.N, K),
            f"fit of F_1 restricted to p_1..p_{K}",
        )
        if {t.term: t.coeff for t in restricted} == expected:
            stable.append(K)
    return f"rank {report.rank} of {len(basis)}; identical coefficients for K in {stable}"


@verification_check("fit")
def check_log_obstruction(engine: MapEngine) -> str:
    try:
        fit_determined(
            engine.fit_series(1, "L"), enumerate_basis(2, "L"), engine.N, workers=engine.workers
        )
    except InconsistentSystemError as e:
        return str(e)
    raise StructuralError("L_1 is not a rational function of the Greek variables")


@verification_check("fit", slow=True)
def check_genus_two_fit(engine: MapEngine) -> str:
    terms, report = engine.fit(2, "F")
    expected = closed_form_f(2, engine.symbolic_F(2)).as_dict()
    _require({t.term: t.coeff for t in terms} == expected, "fitted F_2 equals the residue F_2")
    unrooted, l_report = engine.fit(2, "L")
    _require(
        {t.term: t.coeff for t in unrooted} == engine.symbolic_L(2).as_dict(),
        "fitted L_2 equals the unrooted L_2",
    )
    diffs = compare_closed_forms(unrooted, closed_form_terms(reference_l2()))
    return (
        f"F_2 rank {report.rank}, L_2 rank {l_report.rank}; "
        f"printed L_2 differs on {len(diffs)} terms"
    )


# ----------------------------------------------------------------------
# Runner
# ----------------------------------------------------------------------


def run_check(engine: MapEngine, check: RegisteredCheck) -> CheckResult:
    start = time.perf_counter()
    try:
        detail = check.func(engine)
        passed = True
    except BipartiteMapsError as e:
        detail, passed = str(e), False
    seconds = time.perf_counter() - start
    if passed:
        logger.info(f"[{check.suite}] {check.name} passed in {seconds:.2f}s")
    else:
        logger.error(f"[{check.suite}] {check.name} failed: {detail}")
    return CheckResult(check.suite, check.name, passed, seconds, detail)


def run_suites(engine: MapEngine, suite: str = "all", slow: bool = False) -> list[SuiteReport]:
    names = VerificationChecks.suites() if suite == "all" else [suite]
    reports = []
    for name in names:
        results = [run_check(engine, check) for check in VerificationChecks.checks(name, slow)]
        reports.append(suite_report(name, results))
    return reports
