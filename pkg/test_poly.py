#!/usr/bin/env python3
"""Input grammar, bivariate polynomials, eliminants and the critical set."""

import sys
from fractions import Fraction
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from algebra.algnum import RATIONALS
from algebra.errors import DegenerateEquationError, ParseError
from algebra.parser import RootSpec, parse, parse_point
from algebra.poly import (
    INFINITY,
    BivariatePolynomial,
    CurvePoint,
    critical_points,
    critical_set,
    discriminant,
    is_infinite,
    meets_infinity,
    newton_polygon,
    resultant,
    split_content,
    squarefree_part,
    strip_content,
    transform_infinity,
    transform_infinity_parts,
)


def poly(text):
    return parse(text).polynomial


def expect_parse_error(text, position=None):
    try:
        parse(text)
    except ParseError as e:
        if position is not None:
            assert e.position == position, f"{text!r}: position {e.position}"
        return e
    raise AssertionError(f"{text!r} parsed")


def test_parse_accepts_both_power_spellings():
    assert poly("p^2 - 4*y") == poly("p**2 - 4*y")
    assert poly("(y + p)^2 / 2") == poly("y^2/2 + y*p + p^2/2")


def test_parse_errors_carry_position():
    expect_parse_error("2y", position=1)
    expect_parse_error("p^2 - x", position=6)
    expect_parse_error("p^2 -")
    error = expect_parse_error("y/p")
    assert "rational constant" in error.message
    assert error.pointer().endswith("^")


def test_zero_equation_rejected():
    expect_parse_error("0")
    expect_parse_error("y*p - p*y")


def test_parse_point():
    y0, p0 = parse_point("0, oo")
    assert y0 == Fraction(0) and is_infinite(p0)
    y0, p0 = parse_point("root(z^2 - 2), 1/2")
    assert isinstance(y0, RootSpec) and y0.coefficients == (-2, 0, 1)
    assert p0 == Fraction(1, 2)
    try:
        parse_point("1")
    except ParseError:
        return
    raise AssertionError("single coordinate accepted as a point")


def test_arithmetic_and_shift():
    F = poly("p - y")
    assert F * F == poly("p^2 - 2*p*y + y^2")
    assert F.shift(0, 1) == poly("p - y + 1")
    assert F.derivative("y") == BivariatePolynomial({(0, 0): -1})
    assert poly("p^2 - 4*y").evaluate(1, 2).vanishes()


def test_squarefree_part():
    G = squarefree_part(poly("(p - y)^2"))
    F = poly("p - y")
    assert G == F or G == -F


def test_split_content():
    G, report = split_content(poly("y*(p^2 - 4*y)"))
    assert G == poly("p^2 - 4*y")
    assert report.descriptions() == ["y"]


def test_pure_p_content_is_degenerate():
    try:
        strip_content(poly("p^2 - p"))
    except DegenerateEquationError as e:
        assert e.removed_factors
        return
    raise AssertionError("p^2 - p was not reported as degenerate")


def test_resultant_in_p():
    F = poly("p^2 - 4*y")
    assert resultant(F, F.derivative("p")) == BivariatePolynomial({(1, 0): -16})


def test_discriminant_in_p():
    assert discriminant(poly("p^2 - 4*y")) == BivariatePolynomial({(1, 0): 16})
    assert discriminant(poly("y*p^2 - 1")) == BivariatePolynomial({(1, 0): 4})
    assert discriminant(poly("p^2 + y^2 - 3")) == BivariatePolynomial({(2, 0): -4, (0, 0): 12})


def test_newton_polygon():
    edges = newton_polygon(poly("p^2 - 4*y"))
    assert [e.slope for e in edges] == [Fraction(1, 2)]

    edges = newton_polygon(poly("y^3 + y*p + p^3"))
    assert [e.slope for e in edges] == [Fraction(1, 2), Fraction(2)]
    assert edges[0].contains((1, 1)) and edges[0].contains((0, 3))


def test_transform_infinity():
    assert transform_infinity(poly("p - y")) == poly("p + y")
    assert transform_infinity(poly("p^2 - 4*y")) == poly("y^3 - p^2/4")


def test_transform_infinity_pure_p_content():
    G, report = transform_infinity_parts(poly("p + y^2"))
    assert G is None
    assert len(report.p_factors) == 1
    try:
        transform_infinity(poly("p + y^2"))
    except DegenerateEquationError:
        return
    raise AssertionError("empty transformed equation accepted")


def test_critical_set():
    points, at_infinity = critical_set(poly("p^2 - 4*y"))
    assert len(points) == 1
    assert points[0].y0 == 0 and points[0].p0 == 0
    assert at_infinity


def test_critical_points_include_infinity():
    points = critical_points(poly("p - y"))
    assert len(points) == 2
    assert points[0].y0 == 0 and points[0].p0 == 0
    assert is_infinite(points[-1].y0) and is_infinite(points[-1].p0)


def test_meets_infinity():
    assert meets_infinity(poly("p - y"))
    assert meets_infinity(poly("p + y^2"))


def test_curve_point_membership():
    F = poly("p^2 - 4*y")
    assert CurvePoint(RATIONALS.element(1), RATIONALS.element(2)).on_curve(F)
    assert not CurvePoint(RATIONALS.element(1), RATIONALS.element(1)).on_curve(F)
    assert CurvePoint(RATIONALS.element(0), INFINITY).on_curve(poly("y*p - 1"))


TESTS = [
    test_parse_accepts_both_power_spellings,
    test_parse_errors_carry_position,
    test_zero_equation_rejected,
    test_parse_point,
    test_arithmetic_and_shift,
    test_squarefree_part,
    test_split_content,
    test_pure_p_content_is_degenerate,
    test_resultant_in_p,
    test_discriminant_in_p,
    test_newton_polygon,
    test_transform_infinity,
    test_transform_infinity_pure_p_content,
    test_critical_set,
    test_critical_points_include_infinity,
    test_meets_infinity,
    test_curve_point_membership,
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
