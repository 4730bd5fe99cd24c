"""
Independent checks of solution truncations.

residual_order substitutes a truncation into F(y, x^h y') with honest
order bookkeeping.  brute_force_solutions solves the undetermined
coefficient equations of the ansatz y0 + sum c_j x^(j/n) with plain sympy
symbols, sharing no code with the Newton polygon pipeline.  The numeric
helpers evaluate towers under every complex embedding with mpmath.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

import mpmath
from sympy import Poly, Rational, expand, solve, symbols, sympify

from algebra.errors import VerificationError
from algebra.poly import P, Y
from algebra.series import OrderBound, PuiseuxTruncation, substitute_into

try:
    from config.settings import (
        NUMERIC_PRECISION,
        NUMERIC_SAMPLE,
        ORACLE_MAX_RAMIFICATION,
        ORACLE_TERMS,
        PARAMETER_SAMPLE,
    )
except ImportError:
    NUMERIC_PRECISION = 100
    NUMERIC_SAMPLE = "1/10000"
    PARAMETER_SAMPLE = "1/7"
    ORACLE_MAX_RAMIFICATION = 4
    ORACLE_TERMS = 8
    print("⚠️  Using fallback oracle settings")

logger = logging.getLogger(__name__)


# -- residuals -----------------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    residual_order: object  # Fraction, or OrderBound when every known coefficient vanishes
    evaluated_terms: int
    residual: Optional[PuiseuxTruncation] = None

    @property
    def vanishes(self):
        return isinstance(self.residual_order, OrderBound)


def derivative_term(y, h=0, sign=1):
    """sign * x^h * y'(x) for a series in x."""
    return y.derivative().shift(h * y.ram).scale(sign)


def residual_order(F, y, h=0, sign=1):
    """Order in x of F(y, sign x^h y') with propagated known order."""
    p = derivative_term(y, h, sign)
    R = substitute_into(F, y, p)
    return ResidualReport(R.order(), len(y.coeffs), R)


@dataclass
class VerificationFailure:
    solution: object
    report: ResidualReport

    def __str__(self):
        return f"{self.solution.series}: residual order {self.report.residual_order}"


def verify_solution(F, solution):
    """None when no known residual coefficient survives, else the failure."""
    if solution.series is None:
        return None
    h, sign = (2, -1) if solution.chart == "infinity" else (0, 1)
    report = residual_order(F, solution.series, h, sign)
    if report.vanishes:
        return None
    return VerificationFailure(solution, report)


def verify_solutions(F, solutions, raise_on_failure=True):
    failures = [f for f in (verify_solution(F, sol) for sol in solutions) if f is not None]
    for failure in failures:
        logger.warning("verification failed: %s", failure)
    if failures and raise_on_failure:
        raise VerificationError(failures)
    return failures


# -- brute force ---------------------------------------------------------------

@dataclass
class BruteForceSolution:
    ramification: int
    coefficients: dict  # Fraction exponent in x -> sympy expression
    order: Fraction  # coefficients are final below x^order
    free: list = field(default_factory=list)

    @property
    def is_constant(self):
        return all(e == 0 for e in self.coefficients)


def _coefficient_equations(F, y0, n, count, h, sign):
    t, w = symbols("t w")
    unknowns = symbols(f"c1:{count + 1}")
    tail = sum(c * t ** j for j, c in enumerate(unknowns, start=1)) + w * t ** (count + 1)
    shift = h * n + 1 - n
    p = sign * Rational(1, n) * t ** shift * tail.diff(t)
    expr = F.to_sympy().as_expr().subs({Y: y0 + tail, P: p}, simultaneous=True)
    expr = expand(expr * t ** max(0, -shift * F.deg_p))
    poly = Poly(expr, t)
    degree = poly.degree()
    equations = [poly.coeff_monomial(t ** e) for e in range(degree + 1)]
    return equations, unknowns, w


def _resolve(value, assignment):
    for _ in range(len(assignment) + 1):
        updated = value.subs(assignment)
        if updated == value:
            break
        value = updated
    return expand(value)


def _branches(equations, unknowns, w):
    index = {c: k for k, c in enumerate(unknowns)}
    active, finished = [dict()], []
    for eq in equations:
        if not active:
            break
        following = []
        for assignment in active:
            value = _resolve(eq, assignment)
            if value == 0:
                following.append(assignment)
                continue
            if value.has(w):
                finished.append(assignment)
                continue
            pending = [c for c in unknowns if value.has(c)]
            if not pending:
                continue
            target = max(pending, key=index.get)
            for root in solve(value, target):
                following.append({**assignment, target: root})
        active = following
    return finished + active


def brute_force_solutions(F, y0=0, h=0, n_max=None, N=None, sign=1):
    """All truncated solutions y0 + sum c_j x^(j/n), n <= n_max, found coefficient by coefficient."""
    n_max = n_max or ORACLE_MAX_RAMIFICATION
    N = N or ORACLE_TERMS
    y0 = sympify(Rational(y0.numerator, y0.denominator) if isinstance(y0, Fraction) else y0)
    found, constant_seen = [], False
    for n in range(1, n_max + 1):
        count = N + n
        equations, unknowns, w = _coefficient_equations(F, y0, n, count, h, sign)
        for assignment in _branches(equations, unknowns, w):
            solution = _collect(assignment, unknowns, n, y0)
            if solution is None:
                continue
            if solution.is_constant:
                if not constant_seen:
                    constant_seen = True
                    found.append(solution)
                continue
            support = [int(e * n) for e in solution.coefficients if e != 0]
            g = n
            for j in support:
                g = gcd(g, j)
            if g == 1:
                found.append(solution)
    return found


def _collect(assignment, unknowns, n, y0):
    assigned = [k for k, c in enumerate(unknowns) if c in assignment]
    last = max(assigned, default=-1)
    coefficients = {Fraction(0): y0} if y0 != 0 else {}
    free = []
    for k in range(last + 1):
        c = unknowns[k]
        if c in assignment:
            value = _resolve(assignment[c], assignment)
        else:
            value = c
            free.append(str(c))
        if value != 0:
            coefficients[Fraction(k + 1, n)] = value
    if not coefficients:
        coefficients = {Fraction(0): y0}
    return BruteForceSolution(n, coefficients, Fraction(last + 2, n), free)


# -- numeric evaluation ------------------------------------------------------------

def _mp(value):
    return mpmath.mpf(int(value.numerator)) / int(value.denominator)


def _evaluate_rep(rep, env):
    names = [str(s) for s in rep.ring.symbols]
    total = mpmath.mpc(0)
    for monom, coeff in rep.items():
        term = mpmath.mpc(_mp(coeff))
        for k, e in enumerate(monom):
            if e:
                term *= env[names[k]] ** e
        total += term
    return total


def embeddings(tower, parameter_value=None):
    """Every assignment of complex values to the generators, level by level."""
    sample = _mp(Fraction(parameter_value or PARAMETER_SAMPLE))
    base = {name: mpmath.mpc(sample) for name in tower.parameters}
    base["_"] = mpmath.mpc(0)
    envs = [base]
    for level in tower.levels:
        extended = []
        for env in envs:
            coeffs = [_evaluate_rep(c, env) for c in level.coefficients()]
            for root in mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=2 * mpmath.mp.dps):
                extended.append({**env, level.name: mpmath.mpc(root)})
        envs = extended
    return envs


def evaluate_element(element, env):
    return _evaluate_rep(element.rep, env)


@dataclass(frozen=True)
class NumericReport:
    minimum: object
    maximum: object
    embeddings: int


def numeric_check(y, F, h=0, x_sample=None, precision=None, sign=1):
    """|F(y, sign x^h y')| at x_sample over all embeddings of the series tower."""
    x_sample = Fraction(x_sample or NUMERIC_SAMPLE)
    with mpmath.workdps(precision or NUMERIC_PRECISION):
        root = mpmath.root(_mp(x_sample), y.ram)
        x = _mp(x_sample)
        values = []
        for env in embeddings(y.tower):
            yv, dv = mpmath.mpc(0), mpmath.mpc(0)
            for j, c in y.coeffs.items():
                cv = evaluate_element(c, env)
                yv += cv * root ** j
                if j:
                    dv += cv * mpmath.mpf(j) / y.ram * root ** (j - y.ram)
            pv = sign * x ** h * dv
            total = mpmath.mpc(0)
            for (i, k), c in F.terms.items():
                total += evaluate_element(c, env) * yv ** i * pv ** k
            values.append(abs(total))
        return NumericReport(min(values), max(values), len(values))


def _numeric_vectors(series, cutoff):
    vectors = []
    for env in embeddings(series.tower):
        vec = {}
        for j, c in series.coeffs.items():
            e = Fraction(j, series.ram)
            if e < cutoff:
                vec[e] = evaluate_element(c, env)
        vectors.append(vec)
    return vectors


def _sympy_to_mpc(value, precision):
    real, imag = value.evalf(precision).as_real_imag()
    return mpmath.mpc(mpmath.mpf(str(real)), mpmath.mpf(str(imag)))


def _close(a, b, tol):
    keys = set(a) | set(b)
    return all(abs(a.get(k, 0) - b.get(k, 0)) < tol for k in keys)


def _dedupe(vectors, tol):
    unique = []
    for vec in vectors:
        if not any(_close(vec, other, tol) for other in unique):
            unique.append(vec)
    return unique


@dataclass
class ComparisonReport:
    matched: int
    only_solver: list
    only_brute_force: list

    @property
    def agree(self):
        return not self.only_solver and not self.only_brute_force


def compare_solution_sets(solver_solutions, brute_solutions, cutoff, precision=50):
    """Numeric set comparison of the non-family truncations below x^cutoff."""
    cutoff = Fraction(cutoff)
    with mpmath.workdps(precision):
        tol = mpmath.mpf(10) ** (-(precision // 2))
        ours = []
        for sol in solver_solutions:
            if sol.series is None or sol.parameters:
                continue
            ours.extend(_numeric_vectors(sol.series, cutoff))
        theirs = []
        for sol in brute_solutions:
            if sol.free:
                continue
            vec = {}
            for e, value in sol.coefficients.items():
                if e < cutoff:
                    vec[e] = _sympy_to_mpc(value, precision)
            theirs.append({k: v for k, v in vec.items() if abs(v) > tol})
        ours = [{k: v for k, v in vec.items() if abs(v) > tol} for vec in _dedupe(ours, tol)]
        theirs = _dedupe(theirs, tol)
        only_ours = [vec for vec in ours if not any(_close(vec, other, tol) for other in theirs)]
        only_theirs = [vec for vec in theirs if not any(_close(vec, other, tol) for other in ours)]
        return ComparisonReport(len(ours) - len(only_ours), only_ours, only_theirs)
