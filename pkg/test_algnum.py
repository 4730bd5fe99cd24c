#!/usr/bin/env python3
"""Tower arithmetic and dynamic evaluation."""

import sys
from fractions import Fraction
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from algebra.algnum import (
    RATIONALS,
    ZeroTestOutcome,
    adjoin_root,
    deserialize_element,
    is_zero,
    new_parameter,
    nth_root,
    nth_roots,
    polynomial_roots,
    root_of_unity,
    run_with_splits,
)
from algebra.errors import AlgebraError, ZeroDivisorError


def sqrt2():
    return adjoin_root(RATIONALS, [-2, 0, 1])


def test_rational_arithmetic():
    half = RATIONALS.element(Fraction(1, 2))
    assert half + Fraction(1, 3) == Fraction(5, 6)
    assert (half * 4).to_fraction() == 2
    assert (half / 3) == Fraction(1, 6)


def test_defining_relation():
    tower, g = sqrt2()
    assert tower.height == 1
    assert g * g == 2
    assert not g.is_rational()


def test_inverse_of_one_plus_root():
    _, g = sqrt2()
    inverse = (g + 1).inverse()
    assert inverse == g - 1
    assert inverse * (g + 1) == 1


def test_linear_defining_polynomial_adds_no_level():
    tower, root = adjoin_root(RATIONALS, [-5, 1])
    assert tower is RATIONALS
    assert root == 5


def test_constant_defining_polynomial_rejected():
    try:
        adjoin_root(RATIONALS, [3])
    except AlgebraError:
        return
    raise AssertionError("constant polynomial accepted")


def test_zero_divisor_message():
    try:
        RATIONALS.zero.inverse()
    except ZeroDivisorError as e:
        assert "zero divisor" in str(e)
        return
    raise AssertionError("inverting zero succeeded")


def test_zero_tests():
    _, g = sqrt2()
    assert is_zero(g * g - 2).outcome == ZeroTestOutcome.ZERO
    assert is_zero(RATIONALS.element(Fraction(3, 7))).outcome == ZeroTestOutcome.NONZERO


def test_split_on_reducible_level():
    tower, g = adjoin_root(RATIONALS, [-1, 0, 1])
    outcome = is_zero(g - 1)
    assert outcome.outcome == ZeroTestOutcome.SPLIT
    assert len(outcome.branches) == 2

    results = run_with_splits(lambda t: (g.lift(t) - 1).vanishes(), tower)
    assert sorted(results) == [False, True]


def test_tower_of_height_two():
    tower, beta = adjoin_root(RATIONALS, [-3, 0, 1])
    tower, gamma = adjoin_root(tower, [19, -54, 27])
    assert tower.height == 2
    assert beta * beta == 3
    assert gamma * gamma * 27 - gamma * 54 + 19 == 0


def test_nth_root_rational_shortcuts():
    tower, root = nth_root(RATIONALS.element(4), 2)
    assert tower is RATIONALS and root == 2
    _, root = nth_root(RATIONALS.element(1), 4)
    assert root == 1
    _, root = nth_root(RATIONALS.element(Fraction(-8, 27)), 3)
    assert root == Fraction(-2, 3)


def test_nth_root_reuses_generator():
    tower, g = sqrt2()
    again, root = nth_root(tower.element(2), 2)
    assert again is tower
    assert root == g


def test_root_of_unity():
    tower, omega = root_of_unity(RATIONALS, 3)
    assert omega ** 3 == 1
    assert not (omega - 1).vanishes()
    _, minus_one = root_of_unity(RATIONALS, 2)
    assert minus_one == -1


def test_root_of_unity_replayed_after_split():
    tower, g = adjoin_root(RATIONALS, [3, 0, 1])

    def compute(t):
        _, w = root_of_unity(t, 3)
        # 2w + 1 = +-g, so the cyclotomic level splits over QQ(g)
        (2 * w + 1 - g.lift(t)).vanishes()
        return w.tower.height, (w * w + w + 1).vanishes()

    assert run_with_splits(compute, tower) == [(1, True)]


def test_serialization_round_trip():
    tower, beta = adjoin_root(RATIONALS, [-3, 0, 1])
    tower, gamma = adjoin_root(tower, [19, -54, 27])
    data = (beta * gamma + Fraction(1, 2)).serialize()
    assert data["tower"][0] == {"generator": "g1", "role": "class", "coeffs": ["-3", "0", "1"]}
    assert data["tower"][1]["coeffs"] == ["19/27", "-2", "1"]

    element = deserialize_element(data)
    assert element.serialize() == data
    b, c = element.tower.generator(0), element.tower.generator(1)
    assert (element - b * c - Fraction(1, 2)).vanishes()
    assert (c * c * 27 - c * 54 + 19).vanishes()


def test_serialization_of_parameters():
    _, c = new_parameter(RATIONALS)
    data = (c * 2 + 1).serialize()
    assert data == {"tower": [], "value": "2*c + 1"}
    element = deserialize_element(data)
    assert element.free_parameters() == ["c"]


def test_nth_roots_are_distinct():
    _, roots = nth_roots(RATIONALS.element(2), 2)
    assert len(roots) == 2
    assert all(r * r == 2 for r in roots)
    assert roots[0] + roots[1] == 0


def test_polynomial_roots():
    roots = polynomial_roots([0, -2, 0, 1])
    assert len(roots) == 3
    assert roots[0] == 0
    assert all(r * r == 2 for r in roots[1:])


def test_parameters():
    tower, c = new_parameter(RATIONALS)
    assert c.free_parameters() == ["c"]
    _, c2 = new_parameter(tower)
    assert c2.free_parameters() == ["c2"]
    assert (c * c - c * c).is_syntactic_zero()


def test_parameter_dependent_inverse_rejected():
    _, c = new_parameter(RATIONALS)
    try:
        (c + 1).inverse()
    except AlgebraError:
        return
    raise AssertionError("inverted a parameter-dependent element")


TESTS = [
    test_rational_arithmetic,
    test_defining_relation,
    test_inverse_of_one_plus_root,
    test_linear_defining_polynomial_adds_no_level,
    test_constant_defining_polynomial_rejected,
    test_zero_divisor_message,
    test_zero_tests,
    test_split_on_reducible_level,
    test_tower_of_height_two,
    test_nth_root_rational_shortcuts,
    test_nth_root_reuses_generator,
    test_root_of_unity,
    test_root_of_unity_replayed_after_split,
    test_serialization_round_trip,
    test_serialization_of_parameters,
    test_nth_roots_are_distinct,
    test_polynomial_roots,
    test_parameters,
    test_parameter_dependent_inverse_rejected,
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
