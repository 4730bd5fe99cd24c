"""
Bivariate polynomials F(y, p) over tower coefficients, plus the classical
eliminants over QQ (squarefree part, content, resultant, discriminant) and
the critical set of the curve F = 0.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import comb

from sympy import Poly, Rational, Symbol, factor_list, fraction, gcd, together
from sympy import discriminant as sympy_discriminant
from sympy import resultant as sympy_resultant
from sympy.polys.domains import QQ

from algebra.algnum import (
    RATIONALS,
    AlgebraicElement,
    adjoin_root,
    as_element,
    dot,
    join_towers,
    polynomial_gcd,
    polynomial_roots,
    run_with_splits,
    squarefree_coefficients,
)
from algebra.errors import DegenerateEquationError

logger = logging.getLogger(__name__)

Y = Symbol("y")
P = Symbol("p")


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinite(coordinate):
    return coordinate is INFINITY


class BivariatePolynomial:
    """F = sum F[i, j] y^i p^j; (i, j) = (y-degree, p-degree)."""

    __slots__ = ("terms", "tower", "deg_y", "deg_p")

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = as_element(c)
            if not c.is_syntactic_zero():
                clean[key] = c
        self.tower = join_towers(*(c.tower for c in clean.values()))
        self.terms = {k: c.lift(self.tower) for k, c in clean.items()}
        self.deg_y = max((i for i, _ in self.terms), default=-1)
        self.deg_p = max((j for _, j in self.terms), default=-1)

    # -- construction ----------------------------------------------------

    @classmethod
    def from_sympy(cls, poly):
        if not isinstance(poly, Poly):
            poly = Poly(poly, Y, P)
        elif poly.gens != (Y, P):
            poly = Poly(poly.as_expr(), Y, P)
        return cls({monom: Fraction(int(c.p), int(c.q)) for monom, c in poly.as_dict().items()})

    @classmethod
    def from_univariate(cls, coeffs, variable="p"):
        if variable == "p":
            return cls({(0, j): c for j, c in enumerate(coeffs)})
        return cls({(i, 0): c for i, c in enumerate(coeffs)})

    def to_sympy(self):
        """Poly over QQ in (y, p); coefficients must be rational."""
        if not self.is_rational():
            raise ValueError("polynomial has algebraic coefficients")
        data = {}
        for monom, c in self.terms.items():
            f = c.to_fraction()
            data[monom] = Rational(f.numerator, f.denominator)
        if not data:
            return Poly(0, Y, P, domain=QQ)
        return Poly.from_dict(data, Y, P, domain=QQ)

    # -- queries -----------------------------------------------------------

    def is_rational(self):
        return all(c.is_rational() for c in self.terms.values())

    def is_zero(self):
        return not self.terms

    def coefficient(self, i, j):
        return self.terms.get((i, j), self.tower.zero)

    def support(self):
        return sorted(self.terms)

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def lift(self, tower):
        return BivariatePolynomial({k: c.lift(tower) for k, c in self.terms.items()})

    def drop_vanishing(self):
        """Remove coefficients that are zero on this branch (zero tests may split)."""
        return BivariatePolynomial({k: c for k, c in self.terms.items() if not c.vanishes()})

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return BivariatePolynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        buckets = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                buckets.setdefault((i1 + i2, j1 + j2), []).append((a, b))
        return BivariatePolynomial({k: dot(pairs) for k, pairs in buckets.items()})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = BivariatePolynomial({(0, 0): 1})
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            other = _coerce(other)
        return self.terms.keys() == other.terms.keys() and all(
            self.terms[k] == other.terms[k] for k in self.terms
        )

    def __hash__(self):
        return hash(frozenset((k, hash(c)) for k, c in self.terms.items()))

    def __repr__(self):
        if self.is_rational():
            return str(self.to_sympy().as_expr())
        parts = [f"({c})*y^{i}*p^{j}" for (i, j), c in sorted(self.terms.items())]
        return " + ".join(parts) or "0"

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self, variable="p"):
        terms = {}
        for (i, j), c in self.terms.items():
            if variable == "p" and j:
                terms[(i, j - 1)] = c * j
            elif variable == "y" and i:
                terms[(i - 1, j)] = c * i
        return BivariatePolynomial(terms)

    def evaluate(self, y, p):
        y, p = as_element(y), as_element(p)
        pairs = []
        ypow, ppow = _powers(y, self.deg_y), _powers(p, self.deg_p)
        for (i, j), c in self.terms.items():
            pairs.append((c, ypow[i] * ppow[j]))
        return dot(pairs, self.tower)

    def specialize_y(self, value):
        """Coefficient list (low to high) of F(value, p) in p."""
        value = as_element(value)
        powers = _powers(value, self.deg_y)
        rows = [[] for _ in range(self.deg_p + 1)]
        for (i, j), c in self.terms.items():
            rows[j].append((c, powers[i]))
        return [dot(row, join_towers(self.tower, value.tower)) for row in rows]

    def specialize_p(self, value):
        """Coefficient list (low to high) of F(y, value) in y."""
        value = as_element(value)
        powers = _powers(value, self.deg_p)
        rows = [[] for _ in range(self.deg_y + 1)]
        for (i, j), c in self.terms.items():
            rows[i].append((c, powers[j]))
        return [dot(row, join_towers(self.tower, value.tower)) for row in rows]

    def leading_coefficient_p(self):
        """lc of F viewed in p, as a coefficient list in y."""
        row = {i: c for (i, j), c in self.terms.items() if j == self.deg_p}
        return [row.get(i, self.tower.zero) for i in range(max(row) + 1)] if row else []

    def shift(self, y0, p0):
        """F(y0 + y, p0 + p)."""
        y0, p0 = as_element(y0), as_element(p0)
        ypow, ppow = _powers(y0, self.deg_y), _powers(p0, self.deg_p)
        buckets = {}
        for (i, j), c in self.terms.items():
            for a in range(i + 1):
                for b in range(j + 1):
                    buckets.setdefault((a, b), []).append((c * (comb(i, a) * comb(j, b)), ypow[i - a] * ppow[j - b]))
        return BivariatePolynomial({k: dot(pairs) for k, pairs in buckets.items()})

    def reverse_p(self):
        """p^deg_p * F(y, 1/p)."""
        return BivariatePolynomial({(i, self.deg_p - j): c for (i, j), c in self.terms.items()})


def _powers(value, top):
    powers = [value.tower.one]
    for _ in range(max(top, 0)):
        powers.append(powers[-1] * value)
    return powers


def _coerce(other):
    if isinstance(other, BivariatePolynomial):
        return other
    return BivariatePolynomial({(0, 0): other})


# -- eliminants over QQ ---------------------------------------------------------

def squarefree_part(F):
    """F / gcd(F, F_y, F_p): drops repeated factors without factoring."""
    poly = F.to_sympy()
    if poly.is_ground:
        raise DegenerateEquationError([str(poly.as_expr())])
    common = poly.gcd(poly.diff(Y)).gcd(poly.diff(P))
    return BivariatePolynomial.from_sympy(poly.quo(common))


@dataclass
class ContentReport:
    y_factors: list = field(default_factory=list)
    p_factors: list = field(default_factory=list)

    def descriptions(self):
        return [str(f.as_expr()) for f in self.y_factors + self.p_factors]


def _content(poly, keep, drop):
    rows = {}
    for monom, c in poly.as_dict().items():
        rows.setdefault(monom[drop], 0)
        rows[monom[drop]] += c * (Y, P)[keep] ** monom[keep]
    return reduce(gcd, rows.values())


def _irreducible_factors(expr, variable):
    _, factors = factor_list(Poly(expr, variable))
    return [f for f, _ in factors if f.degree() > 0]


def split_content(F):
    """(G, ContentReport) with factors in y alone or p alone removed; G is None when nothing remains."""
    poly = F.to_sympy()
    y_content = Poly(_content(poly, 0, 1), Y)
    p_content = Poly(_content(poly, 1, 0), P)
    report = ContentReport()
    if y_content.degree() > 0:
        report.y_factors = _irreducible_factors(y_content.as_expr(), Y)
    if p_content.degree() > 0:
        report.p_factors = _irreducible_factors(p_content.as_expr(), P)
    stripped = poly.quo(Poly(y_content.as_expr() * p_content.as_expr(), Y, P))
    if report.y_factors or report.p_factors:
        logger.info("removed content factors: %s", ", ".join(report.descriptions()))
    if stripped.total_degree() <= 0:
        return None, report
    return BivariatePolynomial.from_sympy(stripped), report


def strip_content(F):
    """Remove factors in y alone or p alone; returns (G, ContentReport)."""
    G, report = split_content(F)
    if G is None:
        raise DegenerateEquationError(report.descriptions())
    return G, report


def resultant(F, G, variable="p"):
    """Sylvester resultant over QQ (sympy subresultant PRS)."""
    var = P if variable == "p" else Y
    res = sympy_resultant(F.to_sympy().as_expr(), G.to_sympy().as_expr(), var)
    return BivariatePolynomial.from_sympy(Poly(res, Y, P))


def discriminant(F, variable="p"):
    var = P if variable == "p" else Y
    disc = sympy_discriminant(F.to_sympy().as_expr(), var)
    return BivariatePolynomial.from_sympy(Poly(disc, Y, P))


def transform_infinity_parts(F):
    """Numerator of F(1/y, -p/y^2) split into its content-free part and content report."""
    expr = F.to_sympy().as_expr().subs({Y: 1 / Y, P: -P / Y ** 2}, simultaneous=True)
    numerator, _ = fraction(together(expr))
    G, report = split_content(BivariatePolynomial.from_sympy(Poly(numerator, Y, P)))
    if G is not None:
        G = BivariatePolynomial.from_sympy(G.to_sympy().monic())
    return G, report


def transform_infinity(F, h=0):
    """
    Numerator of F(1/y, -p/y^2), content stripped and normalized to leading
    coefficient 1.  p stands for x^h y' of the reciprocal unknown, so the
    polynomial is the same for every h.
    """
    G, report = transform_infinity_parts(F)
    if G is None:
        raise DegenerateEquationError(report.descriptions())
    return G


# -- Newton polygon -------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygonEdge:
    """Edge of the lower-left hull; slope = -(di/dj), the order of p in y."""

    start: tuple
    end: tuple
    slope: Fraction

    def contains(self, point):
        q, e = self.slope.numerator, self.slope.denominator
        return e * point[0] + q * point[1] == e * self.start[0] + q * self.start[1]


def newton_polygon_vertices(F):
    rows = {}
    for i, j in F.terms:
        rows[j] = min(i, rows.get(j, i))
    points = sorted((i, j) for j, i in rows.items())
    points.sort(key=lambda pt: pt[1])
    chain = []
    for pt in points:
        while len(chain) >= 2:
            (i0, j0), (i1, j1) = chain[-2], chain[-1]
            cross = (i1 - i0) * (pt[1] - j0) - (j1 - j0) * (pt[0] - i0)
            if cross >= 0:
                chain.pop()
            else:
                break
        chain.append(pt)
    return chain


def newton_polygon(F):
    """Edges of the lower-left convex hull of the support, by increasing slope."""
    chain = newton_polygon_vertices(F)
    edges = []
    for (i0, j0), (i1, j1) in zip(chain, chain[1:]):
        edges.append(NewtonPolygonEdge((i0, j0), (i1, j1), Fraction(-(i1 - i0), j1 - j0)))
    return sorted(edges, key=lambda e: e.slope)


# -- curve points -----------------------------------------------------------------

@dataclass(frozen=True)
class CurvePoint:
    y0: object
    p0: object

    @property
    def tower(self):
        return join_towers(*(c.tower for c in (self.y0, self.p0) if isinstance(c, AlgebraicElement)))

    def lift(self, tower):
        return CurvePoint(*(c.lift(tower) if isinstance(c, AlgebraicElement) else c for c in (self.y0, self.p0)))

    def on_curve(self, F):
        if is_infinite(self.y0):
            return True
        if is_infinite(self.p0):
            lc = F.leading_coefficient_p()
            return BivariatePolynomial.from_univariate(lc, "y").evaluate(self.y0, 0).vanishes()
        return F.evaluate(self.y0, self.p0).vanishes()

    def sort_key(self):
        tower = self.tower
        return (
            tower.height,
            tuple(lv.sort_key() for lv in tower.levels),
            _coordinate_key(self.y0),
            _coordinate_key(self.p0),
        )

    def __repr__(self):
        return f"({self.y0}, {self.p0})"


def _coordinate_key(c):
    if is_infinite(c):
        return (2, Fraction(0), "")
    if c.is_rational():
        return (0, c.to_fraction(), "")
    return (1, Fraction(0), str(c))


def fractions_low_to_high(poly):
    return [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]


def factor_roots(expr, variable):
    """Root classes of a univariate rational polynomial, factor by factor over QQ."""
    roots = []
    for factor in _irreducible_factors(expr, variable):
        roots.extend(polynomial_roots(fractions_low_to_high(factor)))
    return roots


def critical_set(F):
    """Finite critical points and whether the closure meets (oo, oo)."""
    poly = F.to_sympy()
    points = []

    # p0 = 0
    for y0 in factor_roots(poly.as_expr().subs(P, 0), Y):
        points.append(CurvePoint(y0, y0.tower.zero))

    # F = F_p = 0, p0 != 0
    res = discriminant(F).to_sympy().as_expr()
    Fp = F.derivative("p")
    if Poly(res, Y).degree() > 0:
        for factor in _irreducible_factors(res, Y):
            coeffs = fractions_low_to_high(factor)
            tower, y0 = adjoin_root(RATIONALS, coeffs)

            def centers(tower, y0=y0):
                y0 = y0.lift(tower)
                common = polynomial_gcd(F.specialize_y(y0), Fp.specialize_y(y0))
                common = squarefree_coefficients(common)
                if len(common) > 1 and common[0].vanishes():
                    common = common[1:]
                if len(common) < 2:
                    return []
                return [CurvePoint(y0.lift(p0.tower), p0) for p0 in polynomial_roots(common, include_zero=False)]

            for found in run_with_splits(centers, tower):
                points.extend(found)

    # p0 = oo
    lc = Poly(poly.as_expr(), P).LC()
    if Poly(lc, Y).degree() > 0:
        for y0 in factor_roots(lc, Y):
            points.append(CurvePoint(y0, INFINITY))

    return sorted(_dedupe(points), key=CurvePoint.sort_key), meets_infinity(F)


def critical_points(F):
    """The critical set as curve points, (oo, oo) included when the curve reaches it."""
    points, at_infinity = critical_set(F)
    return points + ([CurvePoint(INFINITY, INFINITY)] if at_infinity else [])


def meets_infinity(F):
    """Whether the closure of the curve reaches (oo, oo)."""
    G, report = transform_infinity_parts(F)
    if any(factor.TC() != 0 for factor in report.p_factors):
        return True
    if G is None:
        return False
    on_axis = G.specialize_y(0)
    while on_axis and on_axis[-1].vanishes():
        on_axis.pop()
    return len(on_axis) > 1 or len(on_axis) - 1 < G.deg_p


def _dedupe(points):
    seen, unique = set(), []
    for pt in points:
        key = (str(pt.y0), str(pt.p0), repr(pt.tower))
        if key not in seen:
            seen.add(key)
            unique.append(pt)
    return unique
