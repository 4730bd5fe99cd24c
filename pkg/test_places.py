#!/usr/bin/env python3
"""Places of the curve F(y, p) = 0 at a point."""

import sys
from fractions import Fraction
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from algebra.algnum import RATIONALS
from algebra.errors import PreconditionError
from algebra.parser import parse
from algebra.poly import INFINITY, CurvePoint, is_infinite
from algebra.series import substitute_into
from solver.places import expand_conjugates, fiber_centers, places_at_point, ramification_data


def poly(text):
    return parse(text).polynomial


def point(y0, p0):
    y0 = RATIONALS.element(Fraction(y0))
    return CurvePoint(y0, p0 if p0 is INFINITY else RATIONALS.element(Fraction(p0)))


def test_cusp_place_is_exact():
    (place,) = places_at_point(poly("p^2 - 4*y"), point(0, 0), 4)
    assert (place.k, place.r) == (2, 1)
    assert place.exact
    assert place.b.term(1) == 2
    assert place.a.term(2) == 1


def test_place_satisfies_the_curve():
    F = poly("p^2 - 4*y")
    (place,) = places_at_point(F, point(0, 0), 4)
    assert substitute_into(F, place.a, place.b).valuation() is None


def test_regular_point():
    (place,) = places_at_point(poly("p - y"), point(1, 1), 4)
    assert (place.k, place.r) == (1, 0)
    assert place.b.term(0) == 1 and place.b.term(1) == 1
    assert place.b.known_order == 4


def test_two_sign_classes_with_k_three():
    places = places_at_point(poly("64*p^6 - 729*y^2"), point(0, 0), 4)
    assert len(places) == 2
    assert all((pl.k, pl.r) == (3, 1) for pl in places)
    leading = sorted(pl.b0.to_fraction() for pl in places)
    assert leading == [Fraction(-3, 2), Fraction(3, 2)]


def test_pole_of_p():
    F = poly("y*p - 1")
    (center,) = fiber_centers(F, RATIONALS.zero)
    assert is_infinite(center.p0)
    (place,) = places_at_point(F, center, 3)
    assert place.r == -1
    assert place.b.term(-1) == 1


def test_fiber_centers():
    centers = fiber_centers(poly("p^2 - 4*y"), RATIONALS.one)
    assert sorted(c.p0.to_fraction() for c in centers) == [-2, 2]


def test_ramification_data():
    (place,) = places_at_point(poly("p^2 - 4*y"), point(0, 0), 4)
    data = ramification_data(place, 0)
    assert data.n == 1 and data.admissible
    assert not ramification_data(place, 2).admissible
    try:
        ramification_data(place, 1)
    except PreconditionError:
        return
    raise AssertionError("h = 1 accepted")


def test_conjugate_expansion():
    (place,) = places_at_point(poly("p^2 - 4*y"), point(0, 0), 4)
    branches = expand_conjugates(place)
    assert len(branches) == 2
    assert sorted(b.term(1).to_fraction() for b in branches) == [-2, 2]


def test_point_off_the_curve():
    try:
        places_at_point(poly("p^2 - 4*y"), point(1, 1), 4)
    except PreconditionError:
        return
    raise AssertionError("expanded at a point off the curve")


TESTS = [
    test_cusp_place_is_exact,
    test_place_satisfies_the_curve,
    test_regular_point,
    test_two_sign_classes_with_k_three,
    test_pole_of_p,
    test_fiber_centers,
    test_ramification_data,
    test_conjugate_expansion,
    test_point_off_the_curve,
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
