#!/usr/bin/env python3
"""Residual verification, the brute-force solver and numeric evaluation."""

import sys
from fractions import Fraction
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from algebra.errors import VerificationError
from algebra.parser import parse
from algebra.series import PuiseuxTruncation
from solver.algorithms import (
    SolutionTruncation,
    TruncationKind,
    puiseux_solve,
    puiseux_solve_at,
    puiseux_solve_infinity,
)
from solver.oracle import (
    brute_force_solutions,
    compare_solution_sets,
    numeric_check,
    residual_order,
    verify_solutions,
)


def poly(text):
    return parse(text).polynomial


def test_residual_of_exact_solution():
    report = residual_order(poly("p^2 - 4*y"), PuiseuxTruncation.monomial(1, 2))
    assert report.vanishes


def test_residual_of_wrong_series():
    report = residual_order(poly("p - y"), PuiseuxTruncation.monomial(1, 1))
    assert not report.vanishes
    assert report.residual_order == 0


def test_residual_respects_known_order():
    y = PuiseuxTruncation.from_list([1, 1], known_order=2)
    assert residual_order(poly("p - y"), y).vanishes


def test_solver_output_verifies():
    F = poly("64*p^6 - 729*y^2")
    assert verify_solutions(F, puiseux_solve(F).solutions) == []
    F = poly("p + y^2")
    assert verify_solutions(F, puiseux_solve_infinity(F).solutions) == []
    F = poly("p - y^2")
    assert verify_solutions(F, puiseux_solve(F).solutions) == []


def test_verification_failure_raises():
    bogus = SolutionTruncation(None, TruncationKind.DETERMINED, 1, PuiseuxTruncation.monomial(1, 1), 3)
    try:
        verify_solutions(poly("p - y"), [bogus])
    except VerificationError as e:
        assert len(e.failures) == 1
        return
    raise AssertionError("wrong truncation passed verification")


def test_brute_force_finds_constant_and_square():
    found = brute_force_solutions(poly("p^2 - 4*y"), n_max=2, N=4)
    assert len(found) == 2
    constant = [sol for sol in found if sol.is_constant]
    moving = [sol for sol in found if not sol.is_constant]
    assert len(constant) == 1 and len(moving) == 1
    assert moving[0].coefficients == {Fraction(2): 1}


def test_brute_force_agrees_with_solver():
    F = poly("p^2 - 4*y")
    brute = brute_force_solutions(F, n_max=2, N=4)
    report = compare_solution_sets(puiseux_solve(F).solutions, brute, cutoff=3)
    assert report.agree, (report.only_solver, report.only_brute_force)
    assert report.matched == 2


# equation, largest ramification tried, brute-force terms, comparison cutoff in x
ORACLE_CORPUS = [
    ("p - y", 2, 4, 3),
    ("p^2 - 4*y", 2, 4, 3),
    ("p^2 - y", 2, 4, 3),
    ("p^3 - y^2", 3, 4, 4),
    ("p^3 - y", 2, 4, 2),
    ("64*p^6 - 729*y^2", 2, 3, 2),
    ("p - y^2", 2, 4, 3),
    ("p + y^2", 2, 4, 3),
    ("p^2 - y^3", 2, 4, 3),
    ("p^2 + p - y", 2, 4, 3),
    ("p^2 - 4*y*(1 + y)", 2, 5, 5),
]


def test_oracle_corpus():
    """Every truncation with y0 = 0, regular points expanded, against the coefficient-by-coefficient solver."""
    for equation, n_max, brute_terms, cutoff in ORACLE_CORPUS:
        F = poly(equation)
        ours = puiseux_solve_at(F, 0, terms=8, expand_regular=True).solutions
        brute = brute_force_solutions(F, 0, n_max=n_max, N=brute_terms)
        report = compare_solution_sets(ours, brute, cutoff)
        assert report.agree, (equation, report.only_solver, report.only_brute_force)
        assert report.matched >= 1, equation


def test_numeric_check():
    F = poly("64*p^6 - 729*y^2")
    for sol in puiseux_solve(F).solutions:
        if sol.kind != TruncationKind.DETERMINED:
            continue
        report = numeric_check(sol.series, F)
        assert report.embeddings >= 1
        assert report.maximum < 1e-50


TESTS = [
    test_residual_of_exact_solution,
    test_residual_of_wrong_series,
    test_residual_respects_known_order,
    test_solver_output_verifies,
    test_verification_failure_raises,
    test_brute_force_finds_constant_and_square,
    test_brute_force_agrees_with_solver,
    test_oracle_corpus,
    test_numeric_check,
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
