"""
Newton-Puiseux expansion of the curve F(y, p) = 0 at a point.

Every place through (y0, p0) is written as (y0 + t^k, b(t)).  The expansion
follows the rational (Duval) variant: one root per Newton polygon factor,
conjugate roots kept together as one symbolic class, every zero test under
dynamic evaluation.  Centers with p0 = oo are expanded on the p-reversed
curve and reported with ord_t b < 0.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from algebra.algnum import join_towers, nth_root, polynomial_roots, root_of_unity, run_with_splits
from algebra.errors import PreconditionError
from algebra.poly import INFINITY, BivariatePolynomial, CurvePoint, is_infinite, newton_polygon
from algebra.poly import transform_infinity  # noqa: F401  (re-exported for callers)
from algebra.series import PuiseuxTruncation, implicit_series_root

logger = logging.getLogger(__name__)


@dataclass
class Place:
    center: CurvePoint
    a: PuiseuxTruncation
    b: PuiseuxTruncation
    k: int
    r: int
    tower: object
    multiplicity: int = 1
    exact: bool = False

    @property
    def b0(self):
        return self.b.term(self.r)

    def lift(self, tower):
        return Place(self.center.lift(tower), self.a.lift(tower), self.b.lift(tower), self.k, self.r,
                     tower, self.multiplicity, self.exact)

    def sort_key(self):
        return (self.k, self.r, self.b.key())

    def __repr__(self):
        return f"Place(k={self.k}, r={self.r}, b={self.b})"


@dataclass(frozen=True)
class RamificationData:
    k: int
    r: int
    n: Fraction

    @property
    def admissible(self):
        return self.n > 0 and self.n.denominator == 1


def ramification_data(place, h=0):
    """(k, r, (k - r)/(1 - h)) for a place and the weight h of x^h y'."""
    if h == 1:
        raise PreconditionError("h = 1 is excluded")
    return RamificationData(place.k, place.r, Fraction(place.k - place.r, 1 - h))


@dataclass(frozen=True)
class _Branch:
    """State of one expansion path: p = known(T) + T^Q * P, y = y0 + T^K."""

    H: BivariatePolynomial
    K: int
    known: dict = field(default_factory=dict)
    Q: int = 0

    def lift(self, tower):
        return _Branch(self.H.lift(tower), self.K, {j: c.lift(tower) for j, c in self.known.items()}, self.Q)


@dataclass
class _Context:
    center: CurvePoint
    N: int
    reversed: bool
    base_height: int


def _local(compute, tower):
    return [item for chunk in run_with_splits(compute, tower) for item in chunk]


def _divide_content(H):
    low_i = min(i for i, _ in H.terms)
    low_j = min(j for _, j in H.terms)
    if low_i or low_j:
        H = BivariatePolynomial({(i - low_i, j - low_j): c for (i, j), c in H.terms.items()})
    return H, low_j


def _edge_polynomial(H, edge):
    q, e = edge.slope.numerator, edge.slope.denominator
    j_lo = edge.start[1]
    top = (edge.end[1] - j_lo) // e
    coeffs = [H.tower.zero] * (top + 1)
    for point, c in H.terms.items():
        if edge.contains(point):
            coeffs[(point[1] - j_lo) // e] = c
    return coeffs


def _substitute_edge(H, e, q, c):
    """H(T^e, T^q (c + P)) / T^L for the edge e*i + q*j = L."""
    L = min(e * i + q * j for i, j in H.terms)
    powers = [c.tower.one]
    for _ in range(H.deg_p):
        powers.append(powers[-1] * c)
    buckets = {}
    for (i, j), h in H.terms.items():
        shift = e * i + q * j - L
        for m in range(j + 1):
            buckets.setdefault((shift, m), []).append(h * (comb(j, m) * powers[j - m]))
    terms = {}
    for key, parts in buckets.items():
        total = parts[0]
        for part in parts[1:]:
            total = total + part
        terms[key] = total
    return BivariatePolynomial(terms)


def _step(branch, ctx):
    H = branch.H.drop_vanishing()
    places = []
    if not H.terms:
        return places
    H, exact_factor = _divide_content(H)
    if exact_factor:
        places.append(_emit(branch, None, ctx))
    if (0, 0) in H.terms:
        return places
    if (0, 1) in H.terms:
        regular = _Branch(H, branch.K, branch.known, branch.Q)
        places.extend(_local(lambda tower: [_regular(regular.lift(tower), ctx)], H.tower))
        return places
    for edge in newton_polygon(H):
        if edge.slope <= 0:
            continue
        places.extend(_local(lambda tower, edge=edge: _follow_edge(_Branch(H, branch.K, branch.known, branch.Q).lift(tower), edge, ctx), H.tower))
    return places


def _follow_edge(branch, edge, ctx):
    q, e = edge.slope.numerator, edge.slope.denominator
    places = []
    for W in polynomial_roots(_edge_polynomial(branch.H, edge), include_zero=False):
        def descend(tower, W=W):
            local = branch.lift(tower)
            extended, c = nth_root(W.lift(tower), e)
            local = local.lift(extended)
            H = _substitute_edge(local.H, e, q, c)
            Q = local.Q * e + q
            known = {j * e: v for j, v in local.known.items()}
            known[Q] = c
            return _step(_Branch(H, local.K * e, known, Q), ctx)
        places.extend(_local(descend, W.tower))
    return places


def _regular(branch, ctx):
    H = branch.H
    if branch.known:
        r = min(branch.known)
        series = implicit_series_root(H, max(r + ctx.N - branch.Q, 1))
        return _emit(branch, series, ctx)
    terms = ctx.N
    while True:
        series = implicit_series_root(H, terms)
        v = series.valuation()
        if v is not None:
            break
        terms *= 2
    series = implicit_series_root(H, v + ctx.N)
    return _emit(branch, series, ctx)


def _emit(branch, series, ctx):
    tower = join_towers(branch.H.tower, *(c.tower for c in branch.known.values()),
                        series.tower if series is not None else None)
    part = PuiseuxTruncation(branch.known, None, 1, tower)
    if series is not None:
        part = part + series.shift(branch.Q)
    tower = part.tower
    center = ctx.center.lift(tower)
    if ctx.reversed:
        if part.valuation() is None:
            raise PreconditionError("reversed branch with vanishing q")
        b = part.reciprocal(terms=None if part.known_order is not None else ctx.N)
    else:
        b = part + center.p0
        if not center.p0.vanishes() and b.known_order is not None:
            b = b.truncate(ctx.N)
    K = branch.K
    g = K
    for j in b.coeffs:
        g = gcd(g, j)
    if g > 1:
        logger.debug("reducing ramification %d by %d", K, g)
        b = PuiseuxTruncation({j // g: c for j, c in b.coeffs.items()},
                              None if b.known_order is None else -((-b.known_order) // g), 1, b.tower)
        K //= g
    a = PuiseuxTruncation({0: center.y0, K: 1}, None, 1, b.tower)
    multiplicity = 1
    for level in b.tower.levels[ctx.base_height:]:
        if level.role == "class":
            multiplicity *= level.degree
    r = b.valuation()
    return Place(center, a, b, K, 0 if r is None else r, b.tower, multiplicity, exact=b.known_order is None)


def _local_polynomial(F, point):
    if is_infinite(point.p0):
        return F.reverse_p().shift(point.y0, 0), True
    return F.shift(point.y0, point.p0), False


def places_at_point(F, point, N):
    """All places of F = 0 centered at point (finite y0), b to N terms past its first."""
    if is_infinite(point.y0):
        raise PreconditionError("center with y0 = oo: transform the equation first")
    base = join_towers(point.tower, F.tower)

    def compute(tower):
        center = point.lift(tower)
        if not center.on_curve(F.lift(tower)):
            raise PreconditionError(f"{point} is not on the curve")
        G, reversed_p = _local_polynomial(F.lift(tower), center)
        ctx = _Context(center, N, reversed_p, tower.height)
        return _step(_Branch(G, 1), ctx)

    places = _local(compute, base)
    return sorted(places, key=Place.sort_key)


def fiber_centers(F, y0):
    """Curve points (y0, p0) over y0, p0 = oo included when the leading coefficient vanishes."""
    coeffs = F.specialize_y(y0)
    centers = [CurvePoint(y0.lift(p0.tower), p0) for p0 in polynomial_roots(coeffs)]
    if coeffs[-1].vanishes():
        centers.append(CurvePoint(y0, INFINITY))
    return centers


def expand_conjugates(place):
    """The k parametrizations (y0 + t^k, b(w^j t)), w a primitive k-th root of unity."""
    if place.k == 1:
        return [place.b]
    tower, omega = root_of_unity(place.b.tower, place.k)
    b = place.b.lift(tower)
    branches, power = [], tower.one
    for _ in range(place.k):
        branches.append(b.substitute_scale(power))
        power = power * omega
    return branches
