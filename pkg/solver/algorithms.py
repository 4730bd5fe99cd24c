"""
Solution truncations of autonomous first-order ODEs F(y, y') = 0.

puiseux_solve collects the determined solution truncations expanded around
a finite point, puiseux_solve_infinity the truncations expanded around
x = oo (in powers of 1/x).  Both go through the same pipeline: critical
centers, places, the order condition n(1 - h) = k - r, reparametrization.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from algebra.algnum import RATIONALS, AlgebraicElement, adjoin_root, run_with_splits
from algebra.errors import DegenerateEquationError, PreconditionError
from algebra.parser import RootSpec
from algebra.poly import (
    INFINITY,
    P,
    Y,
    BivariatePolynomial,
    CurvePoint,
    critical_set,
    factor_roots,
    is_infinite,
    split_content,
    squarefree_part,
    transform_infinity_parts,
)
from algebra.series import PuiseuxTruncation
from solver.briot import SolutionKind
from solver.places import fiber_centers, places_at_point, ramification_data
from solver.reparam import ReparamProblem, reparametrize, solution_series

try:
    from config.settings import LARGE_TERMS_WARNING
except ImportError:
    LARGE_TERMS_WARNING = 200
    print("⚠️  Using fallback truncation warning threshold")

logger = logging.getLogger(__name__)


class TruncationKind(str, Enum):
    CONSTANT = "Constant"
    GENERIC = "GenericNonCritical"
    DETERMINED = "Determined"
    FAMILY = "Family"


class Chart(str, Enum):
    FINITE = "finite"
    INFINITY = "infinity"
    RECIPROCAL = "reciprocal"


_CHART_ORDER = {Chart.FINITE: 0, Chart.RECIPROCAL: 1, Chart.INFINITY: 2}
_KIND_ORDER = {TruncationKind.CONSTANT: 0, TruncationKind.GENERIC: 1, TruncationKind.DETERMINED: 2,
               TruncationKind.FAMILY: 3}


@dataclass
class SolutionTruncation:
    center: Optional[CurvePoint]
    kind: TruncationKind
    ramification: int
    series: Optional[PuiseuxTruncation]
    guaranteed_terms: int
    chart: Chart = Chart.FINITE
    parameters: list = field(default_factory=list)
    note: Optional[str] = None
    branch: int = 0
    h: int = 0

    @property
    def tower(self):
        if self.series is not None:
            return self.series.tower
        return self.center.tower if self.center is not None else RATIONALS

    def sort_key(self):
        center = self.center.sort_key() if self.center is not None else ()
        series = self.series.key() if self.series is not None else ()
        return (_CHART_ORDER[self.chart], _KIND_ORDER[self.kind], center, self.ramification, self.branch,
                repr(series), self.note or "")


@dataclass
class SolveResult:
    equation: BivariatePolynomial
    mode: str
    truncation_bound: int
    solutions: list
    removed_factors: list = field(default_factory=list)
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class CountBound:
    total: int
    bound: int

    @property
    def holds(self):
        return self.total <= self.bound


def truncation_bound(F, infinity=False):
    """2 (deg_p F - 1) deg_y F + 1, at infinity at least deg_y F + 1."""
    bound = 2 * (F.deg_p - 1) * F.deg_y + 1
    if infinity:
        bound = max(bound, F.deg_y + 1)
    return max(bound, 1)


def prepare(F):
    """Squarefree, content-free part of F and the removed content factors."""
    G, report = split_content(squarefree_part(F))
    if G is None:
        raise DegenerateEquationError(report.descriptions())
    return G, report


def is_solution_place(place, h=0):
    """(condition holds, n); for h >= 2 only a candidate test."""
    data = ramification_data(place, h)
    return data.admissible, int(data.n) if data.admissible else None


def _choose_terms(F, terms, infinity):
    N = truncation_bound(F, infinity)
    if terms is not None:
        N = terms
    if N > LARGE_TERMS_WARNING:
        logger.warning("truncation bound N = %d is large; pass a smaller term count to explore", N)
    return N


def _local(compute, tower):
    return [item for chunk in run_with_splits(compute, tower) for item in chunk]


def _places_with_margin(G, center, N, h):
    places = places_at_point(G, center, N)
    need = N
    for place in places:
        data = ramification_data(place, h)
        if data.admissible and place.r > place.k and not place.exact:
            need = max(need, place.r - place.k + 1)
    if need > N:
        logger.debug("recomputing places at %s with %d terms", center, need)
        places = places_at_point(G, center, need)
    return places


def _kind_of(series):
    return TruncationKind.FAMILY if series.free_parameters() else TruncationKind.DETERMINED


def solutions_at_center(G, center, N, h=0, sign=1, chart=Chart.FINITE, expand_conjugates=True):
    """Nonconstant solution truncations through one center of G."""
    report_center = CurvePoint(INFINITY, INFINITY) if chart == Chart.RECIPROCAL else None

    def compute(tower):
        local = center.lift(tower)
        out = []
        for index, place in enumerate(_places_with_margin(G.lift(tower), local, N, h)):
            admissible, n = is_solution_place(place, h)
            if not admissible:
                logger.info("place k=%d r=%d at %s fails the order condition for h=%d", place.k, place.r, local, h)
                continue
            problem = ReparamProblem.from_place(place, h, sign)
            solutions = reparametrize(problem, N, via_symmetry=True)
            if solutions and solutions[0].kind == SolutionKind.EMPTY:
                logger.info("place k=%d r=%d at %s passes the order condition but has no solution", place.k,
                            place.r, local)
                continue
            if not expand_conjugates:
                solutions = solutions[:1]
            for branch, sol in enumerate(solutions):
                y = solution_series(place, sol.s, n)
                if chart == Chart.RECIPROCAL:
                    y = y.reciprocal()
                note = None
                if not expand_conjugates and problem.nu > 1:
                    note = f"represents {problem.nu} solutions s(w t), w^{problem.nu} = 1"
                if chart == Chart.INFINITY:
                    note = "extension not guaranteed unique at infinity"
                out.append(SolutionTruncation(
                    center=(report_center or local).lift(y.tower),
                    kind=_kind_of(y),
                    ramification=n,
                    series=y,
                    guaranteed_terms=N,
                    chart=chart,
                    parameters=y.free_parameters(),
                    note=note,
                    branch=index * 1000 + branch,
                    h=h,
                ))
        return out

    return _local(compute, center.tower)


def _constant(y0, N, chart=Chart.FINITE):
    series = PuiseuxTruncation.constant(y0)
    return SolutionTruncation(CurvePoint(y0, y0.tower.zero), TruncationKind.CONSTANT, 1, series, N, chart)


def _content_solutions(report, N, chart):
    out = []
    for factor in report.y_factors:
        for y0 in factor_roots(factor.as_expr(), Y):
            out.append(_constant(y0, N, chart))
    for factor in report.p_factors:
        description = f"y0 + p0*x for every y0, where {factor.as_expr()} = 0 at p0"
        out.append(SolutionTruncation(None, TruncationKind.GENERIC, 1, None, N, chart, note=description))
    return out


def _generic_description(G, N):
    note = f"y0 + p0*x for every non-critical point (y0, p0) of {G} = 0"
    return SolutionTruncation(None, TruncationKind.GENERIC, 1, None, N, Chart.FINITE, note=note)


def _pole_solutions(G, N, expand_conjugates):
    """Solutions with y -> oo at x = 0: y = 1/w for w(0) = 0 solving the transformed equation."""
    H, report = transform_infinity_parts(G)
    out = []
    for factor in report.p_factors:
        if factor.TC() == 0:
            continue
        for p0 in factor_roots(factor.as_expr(), P):
            w = PuiseuxTruncation({1: p0}, None)
            out.append(SolutionTruncation(CurvePoint(INFINITY, INFINITY), TruncationKind.DETERMINED, 1,
                                          w.reciprocal(), N, Chart.RECIPROCAL))
    if H is None:
        return out
    terms = max(N, truncation_bound(H))

    def compute(tower):
        found = []
        for center in fiber_centers(H.lift(tower), tower.zero):
            found.extend(solutions_at_center(H, center, terms, chart=Chart.RECIPROCAL,
                                             expand_conjugates=expand_conjugates))
        return found

    return out + _local(compute, RATIONALS)


def _distinct_constants(solutions):
    seen, kept = set(), []
    for sol in solutions:
        if sol.kind == TruncationKind.CONSTANT:
            levels = tuple(str(lv.poly.as_expr()) for lv in sol.series.tower.levels)
            key = (sol.chart, levels, sol.series.key())
            if key in seen:
                continue
            seen.add(key)
        kept.append(sol)
    return kept


def _finalize(G, mode, N, solutions, report, notes=()):
    solutions = sorted(_distinct_constants(solutions), key=SolutionTruncation.sort_key)
    return SolveResult(G, mode, N, solutions, report.descriptions(), list(notes))


def _report(progress, done, total):
    if progress is not None:
        progress(done, total)


def puiseux_solve(F, terms=None, expand_conjugates=True, progress=None):
    """
    All determined solution truncations expanded around a finite point.

    progress(done, total) is called after each critical center; the
    reciprocal chart counts as one more center.
    """
    G, report = prepare(F)
    N = _choose_terms(G, terms, infinity=False)
    solutions = [_generic_description(G, N)] + _content_solutions(report, N, Chart.FINITE)
    points, reaches_infinity = critical_set(G)
    total = len(points) + (1 if reaches_infinity else 0)
    for done, center in enumerate(points, start=1):
        if not is_infinite(center.p0) and center.p0.is_syntactic_zero():
            solutions.append(_constant(center.y0, N))
        solutions.extend(solutions_at_center(G, center, N, expand_conjugates=expand_conjugates))
        _report(progress, done, total)
    if reaches_infinity:
        solutions.extend(_pole_solutions(G, N, expand_conjugates))
        _report(progress, total, total)
    return _finalize(G, "finite", N, solutions, report)


def _dedupe_infinity(solutions):
    seen, unique = {}, []
    for sol in solutions:
        if sol.series is None:
            unique.append(sol)
            continue
        key = (sol.ramification, _renamed_key(sol))
        if key in seen:
            logger.info("merging duplicate truncation at infinity: %s", sol.series)
            first = seen[key]
            first.note = (first.note + "; " if first.note else "") + "reported once for several places"
            continue
        seen[key] = sol
        unique.append(sol)
    return unique


def _renamed_key(sol):
    names = {name: f"_c{k}" for k, name in enumerate(sol.parameters)}
    ram, coeffs, known = sol.series.key()
    renamed = tuple(
        (j, tuple(sorted((tuple((names.get(g, g), e) for g, e in monom), c) for monom, c in canon)))
        for j, canon in coeffs
    )
    return ram, renamed, known


def puiseux_solve_infinity(F, terms=None, expand_conjugates=True, progress=None):
    """Solution truncations in powers of 1/x bounded at x = oo."""
    G, report = prepare(F)
    N = _choose_terms(G, terms, infinity=True)
    solutions = _content_solutions(report, N, Chart.INFINITY)
    poly = G.to_sympy()
    roots = factor_roots(poly.as_expr().subs(P, 0), Y)
    for done, y0 in enumerate(roots, start=1):
        center = CurvePoint(y0, y0.tower.zero)
        solutions.append(_constant(y0, N, Chart.INFINITY))
        solutions.extend(solutions_at_center(G, center, N, h=2, sign=-1, chart=Chart.INFINITY,
                                             expand_conjugates=expand_conjugates))
        _report(progress, done, len(roots))
    notes = ["uniqueness of the extensions is not guaranteed at infinity"]
    return _finalize(G, "infinity", N, _dedupe_infinity(solutions), report, notes)


# -- single center ---------------------------------------------------------------

def _matches(p0, spec):
    if spec is None:
        return True
    if spec is INFINITY:
        return is_infinite(p0)
    if is_infinite(p0):
        return False
    if isinstance(spec, RootSpec):
        value = p0.tower.zero
        for c in reversed(spec.coefficients):
            value = value * p0 + c
        return value.vanishes()
    return (p0 - (spec if isinstance(spec, AlgebraicElement) else Fraction(spec))).vanishes()


def _resolve_y(tower, spec):
    if isinstance(spec, RootSpec):
        return adjoin_root(tower, list(spec.coefficients))[1]
    if isinstance(spec, AlgebraicElement):
        return spec.lift(tower)
    return tower.element(Fraction(spec))


def resolve_centers(G, y_spec, p_spec=None):
    """Curve points matching a (y0, p0) request; root specs open dynamic-evaluation branches."""
    def compute(tower):
        y0 = _resolve_y(tower, y_spec)
        return [c for c in fiber_centers(G.lift(y0.tower), y0) if _matches(c.p0, p_spec)]

    return _local(compute, RATIONALS)


def _is_regular(G, center):
    if is_infinite(center.p0) or center.p0.vanishes():
        return False
    return not G.derivative("p").evaluate(center.y0, center.p0).vanishes()


def puiseux_solve_at(F, y_spec, p_spec=None, terms=None, expand_conjugates=True, expand_regular=False,
                    progress=None):
    """Solutions with initial tuple (y0, p0); y_spec = oo selects the poles at x = 0."""
    G, report = prepare(F)
    N = _choose_terms(G, terms, infinity=False)
    if y_spec is INFINITY:
        solutions = _pole_solutions(G, N, expand_conjugates)
        return _finalize(G, "finite", N, solutions, report)
    solutions = []
    for factor in report.y_factors:
        for y0 in factor_roots(factor.as_expr(), Y):
            if _matches(y0.tower.zero, p_spec) and _same_value(y0, y_spec):
                solutions.append(_constant(y0, N))
    centers = resolve_centers(G, y_spec, p_spec)
    if not centers and not solutions:
        raise PreconditionError("the requested point is not on the curve F = 0")
    for done, center in enumerate(centers, start=1):
        solutions.extend(_solve_center(G, center, N, expand_conjugates, expand_regular))
        _report(progress, done, len(centers))
    return _finalize(G, "finite", N, solutions, report)


def _same_value(y0, spec):
    if isinstance(spec, RootSpec):
        value = y0.tower.zero
        for c in reversed(spec.coefficients):
            value = value * y0 + c
        return value.vanishes()
    return (y0 - Fraction(spec)).vanishes()


def _solve_center(G, center, N, expand_conjugates, expand_regular):
    def compute(tower):
        local = center.lift(tower)
        if not is_infinite(local.p0) and local.p0.vanishes():
            return [_constant(local.y0, N)] + solutions_at_center(G, local, N, expand_conjugates=expand_conjugates)
        if _is_regular(G.lift(tower), local) and not expand_regular:
            series = PuiseuxTruncation({0: local.y0, 1: local.p0}, 2)
            return [SolutionTruncation(local, TruncationKind.GENERIC, 1, series, N,
                                       note="non-critical point: y0 + p0*x extends uniquely")]
        return solutions_at_center(G, local, N, expand_conjugates=expand_conjugates)

    return _local(compute, center.tower)


def solution_count_bound(F, y0):
    """
    Sum over solution places centered over y0 of their ramification orders, against deg_p F.

    The total counts solutions (n per place), not places.  Over centers with
    p0 = oo a place of order k carries n = k - r > k solutions, so the total
    can exceed deg_p F there: y*p^2 - 1 at y0 = 0 has 3 solutions
    y = w (3x/2)^(2/3) against deg_p = 2, and holds is False.  Summing k
    instead of n stays within deg_p.
    """
    G, _ = prepare(F)
    N = truncation_bound(G)
    y0 = y0 if isinstance(y0, AlgebraicElement) else RATIONALS.element(Fraction(y0))

    base = y0.tower.height

    def compute(tower):
        total = 0
        for center in fiber_centers(G.lift(tower), y0.lift(tower)):
            for place in places_at_point(G, center, N):
                admissible, n = is_solution_place(place, 0)
                if admissible:
                    total += n * _class_degree(place.tower, base)
        return [(tuple(lv.key for lv in tower.levels[:base]), total)]

    # branches over the same y0 add up; different conjugates of y0 are compared
    per_y0 = {}
    for key, total in _local(compute, y0.tower):
        per_y0[key] = per_y0.get(key, 0) + total
    return CountBound(max(per_y0.values()), G.deg_p)


def _class_degree(tower, start):
    degree = 1
    for level in tower.levels[start:]:
        if level.role == "class":
            degree *= level.degree
    return degree
