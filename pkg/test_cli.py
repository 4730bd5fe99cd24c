#!/usr/bin/env python3
"""Command-line front end: output formats and exit codes."""

import io
import json
import sys
from contextlib import redirect_stderr
from fractions import Fraction
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

import cli
from algebra.algnum import RATIONALS, adjoin_root, deserialize_element, nth_root
from solver.render import format_element


def run(*argv, stdin=None):
    stdout, stderr = io.StringIO(), io.StringIO()
    saved = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        with redirect_stderr(stderr):
            code = cli.run(list(argv), stdout=stdout)
    finally:
        sys.stdin = saved
    return code, stdout.getvalue(), stderr.getvalue()


def test_text_output():
    code, out, _ = run("solve", "p^2 - 4*y")
    assert code == 0
    assert "F(y, p) = p^2 - 4*y" in out
    assert "N = 3" in out
    assert "3 solution(s)" in out
    assert "x^2" in out


def test_json_document():
    code, out, _ = run("solve", "p^2 - 4*y", "--json")
    assert code == 0
    document = json.loads(out)
    assert document["equation"] == "p^2 - 4*y"
    assert document["mode"] == "finite"
    assert document["truncation_bound"] == 3
    kinds = sorted(sol["kind"] for sol in document["solutions"])
    assert kinds == ["Constant", "Determined", "GenericNonCritical"]


def test_infinity_family_json():
    code, out, _ = run("solve-infinity", "p + y^2", "--json", "--verify")
    assert code == 0
    document = json.loads(out)
    (family,) = [sol for sol in document["solutions"] if sol["kind"] == "Family"]
    assert family["free_parameters"] == ["c"]
    assert family["chart"] == "infinity"


def test_point_and_terms():
    code, out, _ = run("solve", "p^2 - 4*y", "--point", "0,0", "--terms", "6", "--json")
    assert code == 0
    document = json.loads(out)
    assert document["truncation_bound"] == 6
    assert len(document["solutions"]) == 2


def test_stdin_equation():
    code, out, _ = run("solve", "-", "--json", stdin="p - y\n")
    assert code == 0
    assert json.loads(out)["equation"] == "p - y"


def test_parse_error_exit_code():
    code, out, err = run("solve", "p^2 - 4y")
    assert code == cli.EXIT_INPUT
    assert out == ""
    assert "implicit multiplication" in err
    assert "^" in err


def test_degenerate_exit_code():
    code, _, err = run("solve", "p^2 - p")
    assert code == cli.EXIT_DEGENERATE
    assert "degenerate" in err


def test_point_off_the_curve_exit_code():
    code, _, _ = run("solve", "p^2 - 4*y", "--point", "1,1")
    assert code == cli.EXIT_INPUT


def test_terms_cap():
    code, out, _ = run("solve", "p^2 - 4*y", "--terms", "50", "--max-denominator-terms", "5", "--json")
    assert code == 0
    assert json.loads(out)["truncation_bound"] == 5


def test_json_tower_levels():
    code, out, _ = run("solve", "p^2 + y^2 - 3", "--json")
    assert code == 0
    (constant,) = [sol for sol in json.loads(out)["solutions"] if sol["kind"] == "Constant"]
    (level,) = constant["tower"]
    assert level == {"generator": "g1", "role": "class", "coeffs": ["-3", "0", "1"]}
    assert constant["center"] == {"y0": "g1", "p0": "0"}
    element = deserialize_element({"tower": constant["tower"], "value": constant["series"]["terms"][0]["coeff"]})
    assert (element * element - 3).vanishes()


def test_class_generators_stay_symbolic():
    _, g = adjoin_root(RATIONALS, [Fraction(-16, 27), 0, 1])
    assert format_element(g * 3) == "3*g1"
    _, root = nth_root(RATIONALS.element(2), 2)
    assert format_element(root) == "sqrt(2)"
    assert format_element(root, radicals=False) == "g1"


def test_term_counts_must_be_positive():
    for argv in (["--terms", "-3"], ["--terms", "0"], ["--max-denominator-terms", "0"], ["--terms", "six"]):
        code, out, err = run("solve", "p^2 - 4*y", *argv)
        assert code == cli.EXIT_INPUT, argv
        assert out == ""
        assert "usage:" in err


TESTS = [
    test_text_output,
    test_json_document,
    test_infinity_family_json,
    test_point_and_terms,
    test_stdin_equation,
    test_parse_error_exit_code,
    test_degenerate_exit_code,
    test_point_off_the_curve_exit_code,
    test_terms_cap,
    test_json_tower_levels,
    test_class_generators_stay_symbolic,
    test_term_counts_must_be_positive,
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
