#!/usr/bin/env python3
"""Reparametrizations s(t) of solution places."""

import sys
from fractions import Fraction
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from algebra.algnum import RATIONALS
from algebra.errors import PreconditionError
from algebra.parser import parse
from algebra.poly import CurvePoint
from solver.briot import SolutionKind
from solver.places import places_at_point
from solver.reparam import (
    ReparamProblem,
    associated_residual,
    reparametrize,
    sigma1_candidates,
    solution_series,
)

ORIGIN = CurvePoint(RATIONALS.zero, RATIONALS.zero)


def place_of(text, N=4, pick=0):
    return places_at_point(parse(text).polynomial, ORIGIN, N)[pick]


def test_cusp_reparametrization():
    place = place_of("p^2 - 4*y")
    problem = ReparamProblem.from_place(place, 0)
    assert (problem.n, problem.nu) == (1, 1)
    assert sigma1_candidates(problem) == [1]

    (solution,) = reparametrize(problem, 4)
    assert solution.kind == SolutionKind.UNIQUE
    assert solution.s.term(1) == 1
    assert all(solution.s.term(j) == 0 for j in range(2, 5))
    assert associated_residual(problem, solution.s).valuation() is None

    y = solution_series(place, solution.s, problem.n)
    assert y.term(2) == 1 and y.ram == 1


def test_two_reparametrizations_of_a_k_three_place():
    places = places_at_point(parse("64*p^6 - 729*y^2").polynomial, ORIGIN, 4)
    (place,) = [pl for pl in places if pl.b0 == Fraction(3, 2)]
    problem = ReparamProblem.from_place(place, 0)
    assert (problem.n, problem.nu) == (2, 2)

    for via_symmetry in (True, False):
        solutions = reparametrize(problem, 4, via_symmetry=via_symmetry)
        assert len(solutions) == 2
        assert sorted(sol.s.term(1).to_fraction() for sol in solutions) == [-1, 1]
        for sol in solutions:
            assert sol.s.term(2) == 0 and sol.s.term(3) == 0

    y = solution_series(place, solutions[0].s, problem.n)
    assert y.ram == 2
    assert y.valuation() == 3


def test_family_at_infinity():
    place = place_of("p + y^2")
    assert (place.k, place.r) == (1, 2)
    problem = ReparamProblem.from_place(place, h=2, sign=-1)
    assert problem.growing and problem.nu == 1
    assert sigma1_candidates(problem) == [1]

    (solution,) = reparametrize(problem, 4)
    assert solution.kind == SolutionKind.FAMILY
    s = solution.s
    assert s.term(1) == 1
    assert s.term(2).free_parameters() == [solution.parameter]
    assert s.term(3) == s.term(2) * s.term(2)


def test_no_solution_through_place_at_infinity():
    place = place_of("(1 + y)*p + y^2")
    problem = ReparamProblem.from_place(place, h=2, sign=-1)
    (solution,) = reparametrize(problem, 4)
    assert solution.kind == SolutionKind.EMPTY


def test_order_condition_required():
    place = place_of("p^2 - 4*y")
    try:
        ReparamProblem.from_place(place, h=2)
    except PreconditionError:
        return
    raise AssertionError("accepted a place failing the order condition")


TESTS = [
    test_cusp_reparametrization,
    test_two_reparametrizations_of_a_k_three_place,
    test_family_at_infinity,
    test_no_solution_through_place_at_infinity,
    test_order_condition_required,
]


def main():
    passed = 0
    for test in TESTS:
        try:
            test()
            passed += 1
            print(f"[PASS] {test.__name__}")
        except Exception as e:
            print(f"[FAIL] {test.__name__}: {e!r}")
    print(f"Test Results: {passed}/{len(TESTS)} tests passed")
    return passed == len(TESTS)


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
