"""Human-readable and JSON renderings of a SolveResult."""

import json
from fractions import Fraction

from sympy import Rational, Symbol, expand, root, sstr

from algebra.poly import is_infinite
from solver.algorithms import Chart


def _radicals(tower):
    """Generator symbol -> radical for choice levels X^nu - w with w rational."""
    table = {}
    for level in tower.levels:
        # a class level stands for all its conjugates and stays symbolic
        if level.role != "choice":
            continue
        binomial = level.binomial()
        if binomial is None:
            continue
        nu, w = binomial
        table[Symbol(level.name)] = root(Rational(w.numerator, w.denominator), nu)
    return table


def element_expr(element, radicals=True):
    expr = element.rep.as_expr()
    if radicals:
        table = _radicals(element.tower)
        if table:
            expr = expand(expr.subs(table))
    return expr


def format_element(element, radicals=True):
    return sstr(element_expr(element, radicals))


def format_coordinate(value, radicals=True):
    if is_infinite(value):
        return "oo"
    return format_element(value, radicals)


def _power(variable, exponent, x0):
    base = variable if not x0 else f"({variable} - {x0})"
    if exponent == 1:
        return base
    if exponent.denominator == 1:
        return f"{base}^{exponent.numerator}"
    return f"{base}^({exponent})"


def format_series(series, chart=Chart.FINITE, x0=0, radicals=True):
    """Terms in lowest-terms exponents; the infinity chart is written in powers of 1/x."""
    flip = -1 if chart == Chart.INFINITY else 1
    parts = []
    for j, c in series.coeffs.items():
        exponent = flip * Fraction(j, series.ram)
        coeff = element_expr(c, radicals)
        if exponent == 0:
            parts.append(f"({sstr(coeff)})")
            continue
        monomial = _power("x", exponent, x0)
        if coeff == 1:
            parts.append(monomial)
        elif coeff == -1:
            parts.append(f"-{monomial}")
        else:
            parts.append(f"({sstr(coeff)})*{monomial}")
    if series.known_order is not None:
        parts.append(f"O({_power('x', flip * Fraction(series.known_order, series.ram), x0)})")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def tower_polynomials(tower):
    return [f"{sstr(level.poly.as_expr())} = 0" for level in tower.levels]


def solution_to_dict(solution):
    center = None
    if solution.center is not None:
        center = {"y0": format_coordinate(solution.center.y0, radicals=False),
                  "p0": format_coordinate(solution.center.p0, radicals=False)}
    series = None
    if solution.series is not None:
        series = solution.series.to_json(formatter=lambda c: sstr(c.rep.as_expr()))
    return {
        "center": center,
        "kind": solution.kind.value,
        "ramification": solution.ramification,
        "free_parameters": list(solution.parameters),
        "tower": solution.tower.serialize(),
        "series": series,
        "guaranteed_terms": solution.guaranteed_terms,
        "chart": solution.chart.value,
        "note": solution.note,
    }


def result_to_dict(result, source_text=None):
    return {
        "equation": source_text or sstr(result.equation.to_sympy().as_expr()),
        "mode": result.mode,
        "truncation_bound": result.truncation_bound,
        "removed_factors": list(result.removed_factors),
        "notes": list(result.notes),
        "solutions": [solution_to_dict(sol) for sol in result.solutions],
    }


def render_json(result, source_text=None):
    return json.dumps(result_to_dict(result, source_text), indent=2, ensure_ascii=False)


def render_text(result, source_text=None, x0=0):
    equation = source_text or sstr(result.equation.to_sympy().as_expr())
    lines = [f"F(y, p) = {equation}", f"mode: {result.mode}, N = {result.truncation_bound}"]
    for factor in result.removed_factors:
        lines.append(f"removed factor: {factor}")
    for note in result.notes:
        lines.append(f"note: {note}")
    lines.append(f"{len(result.solutions)} solution(s)")
    for index, sol in enumerate(result.solutions, start=1):
        head = f"[{index}] {sol.kind.value}"
        if sol.center is not None:
            head += f" at ({format_coordinate(sol.center.y0)}, {format_coordinate(sol.center.p0)})"
        head += f", ramification {sol.ramification}, chart {sol.chart.value}"
        lines.append(head)
        if sol.series is not None:
            lines.append(f"    y = {format_series(sol.series, sol.chart, x0)}")
        if sol.parameters:
            lines.append(f"    free parameters: {', '.join(sol.parameters)}")
        for poly in tower_polynomials(sol.tower):
            lines.append(f"    where {poly}")
        if sol.note:
            lines.append(f"    note: {sol.note}")
    return "\n".join(lines)
