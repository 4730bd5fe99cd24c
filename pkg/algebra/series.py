"""
Truncated Puiseux / Laurent series with guaranteed-order bookkeeping.

A truncation stores coefficients in the local variable t (x = t^ram) with
integer exponents and a known order T: the series is exact modulo O(t^T).
known_order None means the stored polynomial is the whole series.  Every
operation propagates T pessimistically, so extending the inputs never
changes a reported coefficient.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf, lcm

from algebra.algnum import RATIONALS, AlgebraicElement, as_element, dot, join_towers
from algebra.errors import PreconditionError


def _finite(value):
    return None if value == inf else int(value)


@dataclass(frozen=True)
class OrderBound:
    """Every known coefficient vanishes; order >= bound (None: exactly zero)."""

    bound: object

    def __repr__(self):
        return "oo" if self.bound is None else f">= {self.bound}"


class PuiseuxTruncation:
    __slots__ = ("coeffs", "known_order", "ram", "tower")

    def __init__(self, coeffs=None, known_order=None, ram=1, tower=None):
        if ram < 1:
            raise PreconditionError("ramification index must be positive")
        limit = inf if known_order is None else known_order
        clean = {}
        for j, c in (coeffs or {}).items():
            c = as_element(c)
            if j < limit and not c.is_syntactic_zero():
                clean[j] = c
        self.tower = join_towers(tower, *(c.tower for c in clean.values()))
        self.coeffs = {j: c.lift(self.tower) for j, c in sorted(clean.items())}
        self.known_order = known_order
        self.ram = ram

    # -- construction ----------------------------------------------------

    @classmethod
    def constant(cls, value, tower=None):
        return cls({0: value}, None, 1, tower)

    @classmethod
    def monomial(cls, value, exponent=1, ram=1):
        return cls({exponent: value}, None, ram)

    @classmethod
    def from_list(cls, values, known_order=None, ram=1, start=0):
        return cls({start + k: v for k, v in enumerate(values)}, known_order, ram)

    # -- queries -----------------------------------------------------------

    @property
    def low(self):
        return next(iter(self.coeffs), None)

    @property
    def _k(self):
        return inf if self.known_order is None else self.known_order

    @property
    def _floor(self):
        return self.low if self.coeffs else self._k

    def term(self, j):
        return self.coeffs.get(j, self.tower.zero)

    def is_exact(self):
        return self.known_order is None

    def order(self):
        """ord_x as a Fraction, or an OrderBound when nothing known survives."""
        for j, c in self.coeffs.items():
            if not c.vanishes():
                return Fraction(j, self.ram)
        return OrderBound(None if self.known_order is None else Fraction(self.known_order, self.ram))

    def valuation(self):
        """First definitely nonzero exponent in t, or None."""
        for j, c in self.coeffs.items():
            if not c.vanishes():
                return j
        return None

    def free_parameters(self):
        names = set()
        for c in self.coeffs.values():
            names.update(c.free_parameters())
        return sorted(names)

    # -- reshaping ---------------------------------------------------------

    def truncate(self, order):
        if order is None:
            return self
        new = order if self.known_order is None else min(order, self.known_order)
        return PuiseuxTruncation(self.coeffs, new, self.ram, self.tower)

    def lift(self, tower):
        return PuiseuxTruncation({j: c.lift(tower) for j, c in self.coeffs.items()}, self.known_order, self.ram, tower)

    def align(self, ram):
        """Same series written with ramification index `ram` (a multiple of self.ram)."""
        if ram == self.ram:
            return self
        if ram % self.ram:
            raise PreconditionError(f"cannot align ramification {self.ram} to {ram}")
        f = ram // self.ram
        known = None if self.known_order is None else self.known_order * f
        return PuiseuxTruncation({j * f: c for j, c in self.coeffs.items()}, known, ram, self.tower)

    def with_ram(self, ram):
        """Reinterpret the local variable: same t-coefficients, x = t^ram."""
        return PuiseuxTruncation(self.coeffs, self.known_order, ram, self.tower)

    def shift(self, k):
        """Multiply by t^k."""
        known = None if self.known_order is None else self.known_order + k
        return PuiseuxTruncation({j + k: c for j, c in self.coeffs.items()}, known, self.ram, self.tower)

    def substitute_scale(self, alpha):
        """s(alpha * t)."""
        alpha = as_element(alpha)
        out = {}
        for j, c in self.coeffs.items():
            out[j] = c * alpha ** j
        return PuiseuxTruncation(out, self.known_order, self.ram, join_towers(self.tower, alpha.tower))

    def reduce_ramification(self):
        """Rewrite with the minimal ramification index (gcd of support and n)."""
        g = self.ram
        for j in self.coeffs:
            g = gcd(g, j)
        if g <= 1:
            return self
        known = None if self.known_order is None else -((-self.known_order) // g)
        return PuiseuxTruncation({j // g: c for j, c in self.coeffs.items()}, known, self.ram // g, self.tower)

    # -- arithmetic ----------------------------------------------------------

    def _pair(self, other):
        if not isinstance(other, PuiseuxTruncation):
            other = PuiseuxTruncation.constant(other, self.tower)
        m = lcm(self.ram, other.ram)
        return self.align(m), other.align(m), m

    def __add__(self, other):
        a, b, m = self._pair(other)
        known = min(a._k, b._k)
        out = dict(a.coeffs)
        for j, c in b.coeffs.items():
            out[j] = out[j] + c if j in out else c
        return PuiseuxTruncation(out, _finite(known), m, join_towers(a.tower, b.tower))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxTruncation({j: -c for j, c in self.coeffs.items()}, self.known_order, self.ram, self.tower)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PuiseuxTruncation) else -as_element(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value):
        value = as_element(value)
        if value.is_syntactic_zero():
            return PuiseuxTruncation({}, self.known_order, self.ram, join_towers(self.tower, value.tower))
        return PuiseuxTruncation({j: c * value for j, c in self.coeffs.items()}, self.known_order, self.ram,
                                 join_towers(self.tower, value.tower))

    def __mul__(self, other):
        if not isinstance(other, PuiseuxTruncation):
            return self.scale(other)
        a, b, m = self._pair(other)
        known = min(a._k + b._floor, b._k + a._floor)
        buckets = {}
        for i, ai in a.coeffs.items():
            for j, bj in b.coeffs.items():
                if i + j < known:
                    buckets.setdefault(i + j, []).append((ai, bj))
        tower = join_towers(a.tower, b.tower)
        return PuiseuxTruncation({e: dot(pairs, tower) for e, pairs in buckets.items()}, _finite(known), m, tower)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = PuiseuxTruncation.constant(1, self.tower).align(self.ram)
        for _ in range(exponent):
            result = result * self
        return result

    def reciprocal(self, terms=None):
        """1/s for s = t^v u(t), u(0) invertible; Laurent result."""
        v = self.valuation()
        if v is None:
            raise PreconditionError("reciprocal of a series with no known nonzero term")
        if self.known_order is None:
            if len(self.coeffs) == 1:
                return PuiseuxTruncation({-v: self.coeffs[v].inverse()}, None, self.ram, self.tower)
            if terms is None:
                raise PreconditionError("reciprocal of an exact non-monomial series needs a term count")
        count = terms if self.known_order is None else self.known_order - v
        if terms is not None:
            count = min(count, terms)
        u = [self.term(v + i) for i in range(count)]
        inv0 = u[0].inverse()
        w = [inv0]
        for m in range(1, count):
            w.append(-inv0 * dot([(u[i], w[m - i]) for i in range(1, m + 1)], self.tower))
        return PuiseuxTruncation({k - v: c for k, c in enumerate(w)}, count - v, self.ram, self.tower)

    def derivative(self):
        """d/dx: a_j x^(j/n) -> (j/n) a_j x^(j/n - 1)."""
        n = self.ram
        out = {j - n: c * Fraction(j, n) for j, c in self.coeffs.items() if j}
        known = None if self.known_order is None else self.known_order - n
        return PuiseuxTruncation(out, known, n, self.tower)

    def derivative_t(self):
        out = {j - 1: c * j for j, c in self.coeffs.items() if j}
        known = None if self.known_order is None else self.known_order - 1
        return PuiseuxTruncation(out, known, self.ram, self.tower)

    # -- comparison and output -------------------------------------------------

    def key(self):
        reduced = self.reduce_ramification()
        known = None if reduced.known_order is None else Fraction(reduced.known_order, reduced.ram)
        return reduced.ram, tuple((j, c.canonical()) for j, c in reduced.coeffs.items()), known

    def agrees_with(self, other, order=None):
        """Coefficients coincide below `order` (a Fraction in x), default: both known orders."""
        a, b, m = self._pair(other)
        limit = min(a._k, b._k) if order is None else order * m
        exps = {j for j in list(a.coeffs) + list(b.coeffs) if j < limit}
        return all(a.term(j) == b.term(j) for j in exps)

    def __eq__(self, other):
        return isinstance(other, PuiseuxTruncation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self, formatter=str):
        terms = []
        for j, c in self.coeffs.items():
            e = Fraction(j, self.ram)
            terms.append({"exp_num": e.numerator, "exp_den": e.denominator, "coeff": formatter(c)})
        if self.known_order is None:
            known = None
        else:
            k = Fraction(self.known_order, self.ram)
            known = {"exp_num": k.numerator, "exp_den": k.denominator}
        return {"terms": terms, "known_order": known}

    def __repr__(self):
        parts = []
        for j, c in self.coeffs.items():
            e = Fraction(j, self.ram)
            parts.append(f"({c})*x^({e})")
        if self.known_order is not None:
            parts.append(f"O(x^({Fraction(self.known_order, self.ram)}))")
        return " + ".join(parts) or "0"


ZERO = PuiseuxTruncation({}, None, 1, RATIONALS)
T = PuiseuxTruncation.monomial(1)


def compose(outer, inner):
    """outer(inner(t)) for ord(inner) >= 1; result uses inner's ramification."""
    v = inner.low
    if v is None or v < 1:
        raise PreconditionError("compose needs an inner series of positive order")
    nonzero = [j for j in outer.coeffs if j]
    target = inf if outer.known_order is None else outer.known_order * v
    if nonzero and inner.known_order is not None:
        target = min(target, inner.known_order + (min(nonzero) - 1) * v)
    limit = _finite(target)
    result = PuiseuxTruncation({}, limit, inner.ram, join_towers(outer.tower, inner.tower))
    positive = [j for j in outer.coeffs if j > 0]
    negative = [j for j in outer.coeffs if j < 0]
    if 0 in outer.coeffs:
        result = result + PuiseuxTruncation.constant(outer.coeffs[0]).align(inner.ram)
    power = None
    for j in range(1, max(positive, default=0) + 1):
        power = inner.truncate(limit) if power is None else (power * inner).truncate(limit)
        if j in outer.coeffs:
            result = result + power.scale(outer.coeffs[j])
    if negative:
        recip = inner.reciprocal(terms=None if inner.known_order is not None else _span(limit, v))
        power = None
        for j in range(-1, min(negative) - 1, -1):
            power = recip.truncate(limit) if power is None else (power * recip).truncate(limit)
            if j in outer.coeffs:
                result = result + power.scale(outer.coeffs[j])
    return result.truncate(limit)


def compositional_inverse(s, terms=None):
    """r with r(s(t)) = t, for s = s_1 t + s_2 t^2 + ... in the local variable t.

    Coefficients are solved one order at a time against the powers of s:
    [t^m] sum_j r_j s^j = 0 for m >= 2, where [t^m] s^m = s_1^m.
    """
    if s.low is None or s.low != 1 or s.term(1).vanishes():
        raise PreconditionError("compositional inverse needs a series of order exactly 1")
    s1 = s.term(1)
    if s.known_order is None:
        if len(s.coeffs) == 1:
            return PuiseuxTruncation({1: s1.inverse()}, None, s.ram, s.tower)
        if terms is None:
            raise PreconditionError("compositional inverse of an exact non-linear series needs a term count")
    limit = s._k if terms is None else min(s._k, terms + 1)
    limit = int(limit)
    base = s.truncate(limit)
    powers = [None, base]
    for _ in range(2, limit):
        powers.append((powers[-1] * base).truncate(limit))
    inv1 = s1.inverse()
    r = {1: inv1}
    lead = inv1
    for m in range(2, limit):
        lead = lead * inv1
        acc = dot([(r[j], powers[j].term(m)) for j in range(1, m)], s.tower)
        r[m] = -acc * lead
    return PuiseuxTruncation(r, limit, s.ram, s.tower)


def _span(limit, v):
    return 64 if limit is None else max(limit + 2 * v, 1)


def substitute_into(F, a, b):
    """F(a(t), b(t)) by Horner in b; a and b are pre-aligned by _pair."""
    m = lcm(a.ram, b.ram)
    a, b = a.align(m), b.align(m)
    tower = join_towers(F.tower, a.tower, b.tower)
    a_powers = [PuiseuxTruncation.constant(1, tower).align(m)]
    for _ in range(max(F.deg_y, 0)):
        a_powers.append(a_powers[-1] * a)
    rows = {}
    for (i, j), c in F.terms.items():
        rows.setdefault(j, []).append(a_powers[i].scale(c))
    result = PuiseuxTruncation({}, None, m, tower)
    for j in range(F.deg_p, -1, -1):
        row = PuiseuxTruncation({}, None, m, tower)
        for piece in rows.get(j, []):
            row = row + piece
        result = result * b + row if j < F.deg_p else row
    return result


def implicit_series_root(H, terms):
    """
    The power series P(t), P(0) = 0, with H(t, P(t)) = 0, known to O(t^terms).

    H is a BivariatePolynomial in (t, P) with H(0, 0) = 0 and H_P(0, 0)
    invertible; solved by Newton iteration with doubling precision.
    """
    tower = H.tower
    HP = H.derivative("p")
    t = PuiseuxTruncation.monomial(tower.one)
    root = PuiseuxTruncation({}, min(1, terms), 1, tower)
    prec = min(1, terms)
    while prec < terms:
        prec = min(2 * prec, terms)
        current = PuiseuxTruncation(root.coeffs, prec, 1, root.tower)
        value = substitute_into(H, t, current).truncate(prec)
        slope = substitute_into(HP, t, current).truncate(prec)
        root = (current - value * slope.reciprocal()).truncate(prec)
    return root
