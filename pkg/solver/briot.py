"""
Power series solutions z(t) = sum_{m>=1} zeta_m t^m of

    g(t, z) * t * z'(t) = f(t, z),     g(0, 0) != 0,  f(0, 0) = 0.

Comparing coefficients of t^m gives g00 * (m - lambda) * zeta_m = Q_m where
Q_m only involves zeta_1 .. zeta_{m-1}.  At a positive integer m = lambda
the equation either has no solution (Q_m != 0) or zeta_m becomes a free
parameter.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from algebra.algnum import join_towers, new_parameter, run_with_splits
from algebra.errors import PreconditionError
from algebra.poly import BivariatePolynomial
from algebra.series import PuiseuxTruncation, substitute_into

logger = logging.getLogger(__name__)


class SolutionKind(str, Enum):
    UNIQUE = "unique"
    FAMILY = "family"
    EMPTY = "empty"


@dataclass
class BriotBouquetProblem:
    """g, f in (t, z): BivariatePolynomial exponents (i, j) = (t-degree, z-degree)."""

    g: BivariatePolynomial
    f: BivariatePolynomial
    N: int
    known_order: Optional[int] = None  # f and g are exact modulo t^known_order

    def __post_init__(self):
        self.tower = join_towers(self.g.tower, self.f.tower)
        self.g = self.g.lift(self.tower)
        self.f = self.f.lift(self.tower)

    @property
    def g00(self):
        return self.g.coefficient(0, 0)

    @property
    def lam(self):
        return self.f.coefficient(0, 1) / self.g00

    def validate(self):
        if self.g00.vanishes():
            raise PreconditionError("g(0, 0) must be nonzero")
        if not self.f.coefficient(0, 0).vanishes():
            raise PreconditionError("f(0, 0) must vanish")
        if self.known_order is not None and self.N >= self.known_order:
            raise PreconditionError(f"inputs known to O(t^{self.known_order}) cannot give {self.N} terms")

    def lift(self, tower):
        return BriotBouquetProblem(self.g.lift(tower), self.f.lift(tower), self.N, self.known_order)


@dataclass
class BriotBouquetSolution:
    kind: SolutionKind
    coeffs: dict = field(default_factory=dict)
    tower: object = None
    resonance: Optional[int] = None
    parameter: Optional[str] = None
    order: int = 0

    @property
    def series(self):
        """z(t), known to O(t^(order + 1))."""
        return PuiseuxTruncation(self.coeffs, self.order + 1, 1, self.tower)


def _integer_resonance(lam):
    if lam.is_rational():
        value = lam.to_fraction()
        if value > 0 and value.denominator == 1:
            return int(value)
    return None


def solve_briot(problem):
    """
    One dynamic-evaluation branch; zero tests on the tower may raise
    TowerSplit (see solve_briot_branches).
    """
    problem.validate()
    tower = problem.tower
    f, g = problem.f, problem.g
    g00 = problem.g00
    f01 = f.coefficient(0, 1)
    resonance = _integer_resonance(problem.lam)
    if resonance is None and not problem.lam.is_rational():
        logger.debug("lambda %s is irrational; resonance checked term by term", problem.lam)
    top = max(problem.N, resonance or 0)
    depth = max(f.deg_p, g.deg_p, 1)

    # zpow[j][s] = [t^s] z(t)^j
    zpow = [[tower.one], [tower.zero]] + [[tower.zero] for _ in range(depth - 1)]
    G = [g00]
    zeta = {}
    kind, parameter, found = SolutionKind.UNIQUE, None, None

    for m in range(1, top + 1):
        for j in range(2, depth + 1):
            acc = tower.zero
            for l in range(1, m):
                if j - 1 <= m - l:
                    acc = acc + zpow[1][l] * zpow[j - 1][m - l]
            zpow[j].append(acc)
        zpow[0].append(tower.zero)

        q = tower.zero
        for (i, j), c in f.terms.items():
            if (i, j) == (0, 1) or i > m:
                continue
            if j == 1:
                if m - i >= 1:
                    q = q + c * zpow[1][m - i]
            else:
                q = q + c * zpow[j][m - i]
        for l in range(1, m):
            if l in zeta:
                q = q - zeta[l] * l * G[m - l]

        divisor = g00 * m - f01
        if m == resonance or (resonance is None and divisor.vanishes()):
            if q.vanishes():
                tower, value = new_parameter(tower, "c")
                parameter, found, kind = value.free_parameters()[0], m, SolutionKind.FAMILY
                zpow = [[v.lift(tower) for v in row] for row in zpow]
                G = [v.lift(tower) for v in G]
                zeta = {k: v.lift(tower) for k, v in zeta.items()}
                f, g, g00 = f.lift(tower), g.lift(tower), g00.lift(tower)
                f01 = f01.lift(tower)
                logger.debug("resonance at %d: free parameter %s", m, parameter)
            else:
                logger.debug("resonance at %d with nonzero compatibility value", m)
                return BriotBouquetSolution(SolutionKind.EMPTY, {}, tower, resonance=m, order=m - 1)
        else:
            value = q / divisor
        zeta[m] = value
        zpow[1].append(value)

        s = m
        acc = tower.zero
        for (i, j), c in g.terms.items():
            if i <= s:
                acc = acc + c * zpow[j][s - i]
        G.append(acc)

    order = problem.N if kind == SolutionKind.UNIQUE or found <= problem.N else top
    kept = {m: v for m, v in zeta.items() if m <= order and not v.is_syntactic_zero()}
    return BriotBouquetSolution(kind, kept, tower, resonance=found, parameter=parameter, order=order)


def solve_briot_branches(problem):
    """All dynamic-evaluation branches of solve_briot, in canonical order."""
    return run_with_splits(lambda tower: solve_briot(problem.lift(tower)), problem.tower)


def residual(problem, solution):
    """g(t, z) t z' - f(t, z) for the computed z."""
    z = solution.series
    t = PuiseuxTruncation.monomial(solution.tower.one)
    lhs = substitute_into(problem.g.lift(solution.tower), t, z) * t * z.derivative_t()
    return lhs - substitute_into(problem.f.lift(solution.tower), t, z)
