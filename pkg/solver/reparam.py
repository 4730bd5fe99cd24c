"""
Reparametrization of a solution place.

For a place (y0 + t^k, b(t)) with n(1 - h) = k - r the solutions through it
are y = y0 + s(x^(1/n))^k where s(t) = t(sigma + z(t)) solves

    k s^(k-1) s' = C t^(k-r-1) b(s),      C = sign * n.

Substituting s = tW, W = sigma + z and dividing by t^(k-1) W^d,
d = min(k - 1, r), gives the Briot-Bouquet form

    k W^(k-1-d) t z' = C sum_i b_i t^i W^(r+i-d) - k W^(k-d).
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Optional

from algebra.algnum import join_towers, nth_root, nth_roots, root_of_unity, run_with_splits
from algebra.errors import PreconditionError
from algebra.poly import BivariatePolynomial
from algebra.series import PuiseuxTruncation, compose
from solver.briot import BriotBouquetProblem, SolutionKind, solve_briot
from solver.places import ramification_data

logger = logging.getLogger(__name__)


@dataclass
class ReparamProblem:
    place: object
    h: int
    n: int
    nu: int
    sign: int = 1

    @classmethod
    def from_place(cls, place, h=0, sign=1):
        data = ramification_data(place, h)
        if not data.admissible:
            raise PreconditionError(f"place with k={data.k}, r={data.r} is not a solution place for h={h}")
        return cls(place, h, int(data.n), abs(place.k - place.r), sign)

    @property
    def constant(self):
        return self.sign * self.n

    @property
    def tower(self):
        return self.place.tower

    @property
    def growing(self):
        """True in the regime h >= 2 (r > k)."""
        return self.place.r > self.place.k


@dataclass
class ReparamSolution:
    sigma: object
    s: PuiseuxTruncation
    kind: SolutionKind
    parameter: Optional[str] = None
    resonance: Optional[int] = None

    @property
    def tower(self):
        return self.s.tower


def _sigma_power(problem):
    place = problem.place
    b0 = place.b0
    if problem.growing:
        return (b0 * problem.constant).inverse() * place.k
    return b0 * problem.constant / place.k


def sigma1_candidates(problem, expand=True):
    """Roots of sigma^nu = C b0 / k (h <= 0) or k / (C b0) (h >= 2)."""
    value = _sigma_power(problem)
    if expand:
        _, roots = nth_roots(value, problem.nu)
        return roots
    _, root = nth_root(value, problem.nu)
    return [root]


def _w_powers(sigma, top):
    """Coefficient lists (in z) of (sigma + z)^e for e = 0..top."""
    spow = [sigma.tower.one]
    for _ in range(top):
        spow.append(spow[-1] * sigma)
    return [[spow[e - m] * comb(e, m) for m in range(e + 1)] for e in range(top + 1)]


def assemble(problem, sigma):
    """(g, f, known_order) of the Briot-Bouquet equation for one sigma."""
    place = problem.place
    k, r = place.k, place.r
    b = place.b.lift(sigma.tower)
    d = min(k - 1, r)
    if b.known_order is None:
        count = max(b.coeffs) - r + 1
        known = None
    else:
        count = b.known_order - r
        known = count
    top = max(k - d, r + count - 1 - d, k - 1 - d)
    W = _w_powers(sigma, top)
    C = problem.constant

    f_terms = {}
    for i in range(count):
        bi = b.term(r + i)
        if bi.is_syntactic_zero():
            continue
        for m, w in enumerate(W[r + i - d]):
            f_terms[(i, m)] = f_terms.get((i, m), sigma.tower.zero) + bi * w * C
    for m, w in enumerate(W[k - d]):
        f_terms[(0, m)] = f_terms.get((0, m), sigma.tower.zero) - w * k
    g_terms = {(0, m): w * k for m, w in enumerate(W[k - 1 - d])}
    return BivariatePolynomial(g_terms), BivariatePolynomial(f_terms), known


def solve_for_sigma(problem, sigma, N):
    """s(t) = t(sigma + z(t)) known to O(t^(N+1)), or an Empty solution."""
    g, f, known = assemble(problem, sigma)
    briot = BriotBouquetProblem(g, f, max(N - 1, 0), known)
    if problem.growing and known is not None and problem.nu >= known:
        raise PreconditionError(f"place needs at least {problem.nu + 1} terms to decide solvability")
    solution = solve_briot(briot)
    tower = join_towers(solution.tower, sigma.tower)
    if solution.kind == SolutionKind.EMPTY:
        empty = PuiseuxTruncation({}, 0, 1, tower)
        return ReparamSolution(sigma, empty, solution.kind, resonance=solution.resonance)
    z = solution.series.lift(tower)
    s = (z + sigma.lift(tower)).shift(1)
    return ReparamSolution(sigma, s, solution.kind, solution.parameter, solution.resonance)


def reparametrize(problem, N, via_symmetry=True):
    """
    All reparametrizations s through the place, one per sigma.

    With via_symmetry the series is solved once and the other nu solutions
    are s(w^j t), w a primitive nu-th root of unity; otherwise every sigma
    is solved separately.
    """
    def compute(tower):
        local = ReparamProblem(problem.place.lift(tower), problem.h, problem.n, problem.nu, problem.sign)
        if not via_symmetry:
            return [solve_for_sigma(local, sigma, N) for sigma in sigma1_candidates(local, expand=True)]
        (sigma,) = sigma1_candidates(local, expand=False)
        first = solve_for_sigma(local, sigma, N)
        if first.kind == SolutionKind.EMPTY or local.nu == 1:
            return [first]
        extended, omega = root_of_unity(first.tower, local.nu)
        s = first.s.lift(extended)
        solutions, power = [], extended.one
        for _ in range(local.nu):
            solutions.append(ReparamSolution(sigma.lift(extended) * power, s.substitute_scale(power),
                                             first.kind, first.parameter, first.resonance))
            power = power * omega
        return solutions

    return [sol for branch in run_with_splits(compute, problem.tower) for sol in branch]


def solution_series(place, s, n):
    """y0 + s(t)^k as a series in x = t^n."""
    y = (s ** place.k) + place.center.y0.lift(s.tower)
    return y.with_ram(n)


def associated_residual(problem, s):
    """k s^(k-1) s' - C t^(k-r-1) b(s), the defining relation of s."""
    place = problem.place
    k, r = place.k, place.r
    lhs = (s ** (k - 1)) * s.derivative_t() * k
    rhs = compose(place.b.lift(s.tower), s).shift(k - r - 1) * problem.constant
    return lhs - rhs
