"""
Exact arithmetic in towers of simple algebraic extensions of QQ.

A tower is a chain of levels, each adjoining a generator that is a root of a
monic squarefree polynomial over the levels below it.  Defining polynomials
need not be irreducible: when a zero test meets a zero divisor it raises
TowerSplit, and run_with_splits reruns the computation once per factor of
the offending polynomial (dynamic evaluation).  Formal parameters (the free
constants of solution families) are transcendental symbols carried in the
same polynomial ring, after all generators.

Elements are sympy PolyElements over QQ in lex order (top generator first),
reduced modulo the defining polynomials.  The triangular set of monic
defining polynomials is a Groebner basis for that order, so reduction is a
plain multivariate remainder and the reduced form is canonical.
"""

import contextvars
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from sympy import Poly, Rational, Symbol, cyclotomic_poly, integer_nthroot, sympify
from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from algebra.errors import AlgebraError, ZeroDivisorError

try:
    from config.settings import MAX_SPLIT_REPLAYS
except ImportError:
    MAX_SPLIT_REPLAYS = 4096
    print("⚠️  Using fallback split replay limit")

logger = logging.getLogger(__name__)

_PLACEHOLDER = "_"


def to_qq(value):
    """Convert int / Fraction / sympy Rational / QQ element to a QQ element."""
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    if QQ.of_type(value):
        return value
    raise AlgebraError(f"not a rational number: {value!r}")


def qq_to_fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


def transfer(poly, ring):
    """Map a polynomial into another ring, matching generators by name."""
    if poly.ring is ring:
        return poly
    source = [str(s) for s in poly.ring.symbols]
    target = {str(s): k for k, s in enumerate(ring.symbols)}
    width = ring.ngens
    mapped = {}
    for monom, coeff in poly.items():
        exps = [0] * width
        for k, e in enumerate(monom):
            if e:
                if source[k] not in target:
                    raise AlgebraError(f"generator {source[k]} is not available in the target tower")
                exps[target[source[k]]] = e
        mapped[tuple(exps)] = coeff
    return ring.from_dict(mapped)


def _level_ring(name, lower_names):
    return PolyRing([Symbol(name)] + [Symbol(n) for n in lower_names], QQ, lex)


class Level:
    """One simple extension: generator name, defining polynomial, provenance."""

    __slots__ = ("name", "poly", "origin", "role", "key")

    def __init__(self, name, poly, origin=None, role="class"):
        self.name = name
        # poly lives in the ring (name, lower generators top->bottom)
        self.poly = poly
        self.key = (name, tuple(str(s) for s in poly.ring.symbols), frozenset(poly.items()))
        self.origin = origin if origin is not None else self.key
        # "class": root stands for a conjugacy class of distinct objects
        # "choice": root is an arbitrary representative (nth roots, roots of unity)
        self.role = role

    @property
    def degree(self):
        return self.poly.degree(0)

    def coefficients(self):
        """Dense coefficients in the generator, low to high, as lower-tower polynomials."""
        ring = self.poly.ring
        buckets = {}
        for monom, coeff in self.poly.items():
            rest = (0,) + monom[1:]
            buckets.setdefault(monom[0], {})[rest] = coeff
        return [ring.from_dict(buckets.get(e, {})) for e in range(self.degree + 1)]

    def binomial(self):
        """(nu, w) when the defining polynomial is X^nu - w with w rational, else None."""
        coeffs = self.coefficients()
        if any(c for c in coeffs[1:-1]) or not coeffs[0].is_ground:
            return None
        constant = coeffs[0].coeff(1) if coeffs[0] else QQ.zero
        return self.degree, -qq_to_fraction(constant)

    def sort_key(self):
        key = []
        for c in self.coefficients():
            if c.is_ground:
                key.append((0, qq_to_fraction(c.coeff(1)) if c else Fraction(0), ""))
            else:
                key.append((1, Fraction(0), str(c.as_expr())))
        return (self.degree, tuple(key))

    def __eq__(self, other):
        return isinstance(other, Level) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Level({self.name}: {self.poly.as_expr()})"


class Tower:
    """Immutable tower of extensions of QQ plus formal parameters."""

    __slots__ = ("levels", "parameters", "parent", "ring", "_defpolys", "_hash", "_inverses")

    def __init__(self, levels=(), parameters=(), parent=None):
        self.levels = tuple(levels)
        self.parameters = tuple(parameters)
        self.parent = parent
        names = [lv.name for lv in reversed(self.levels)] + list(self.parameters)
        self.ring = PolyRing([Symbol(n) for n in names] or [Symbol(_PLACEHOLDER)], QQ, lex)
        self._defpolys = [transfer(lv.poly, self.ring) for lv in self.levels]
        self._hash = hash((tuple(lv.key for lv in self.levels), self.parameters))
        # per instance; refined towers are new instances
        self._inverses = {}

    # -- structure -----------------------------------------------------

    @property
    def height(self):
        return len(self.levels)

    @property
    def degree(self):
        total = 1
        for level in self.levels:
            total *= level.degree
        return total

    def is_rational(self):
        return not self.levels and not self.parameters

    def _pos(self, index):
        return self.height - 1 - index

    def generator_names(self):
        return [lv.name for lv in self.levels]

    def descends_from(self, other):
        tower = self
        while tower is not None:
            if tower is other or tower == other:
                return True
            tower = tower.parent
        return False

    def extend(self, level):
        return Tower(self.levels + (level,), self.parameters, parent=self)

    def with_parameter(self, name):
        if name in self.parameters or name in self.generator_names():
            raise AlgebraError(f"symbol {name} already used in tower")
        return Tower(self.levels, self.parameters + (name,), parent=self)

    def fresh_parameter_name(self, stem="c"):
        used = set(self.parameters) | set(self.generator_names())
        if stem not in used:
            return stem
        k = 2
        while f"{stem}{k}" in used:
            k += 1
        return f"{stem}{k}"

    def refine(self, index, factor):
        """Replace the defining polynomial of level `index` by one of its factors."""
        old = self.levels[index]
        poly = transfer(factor, old.poly.ring)
        levels = list(self.levels)
        levels[index] = Level(old.name, poly, origin=old.origin, role=old.role)
        return Tower(levels, self.parameters, parent=self)

    # -- elements ------------------------------------------------------

    def element(self, value):
        if isinstance(value, AlgebraicElement):
            return value.lift(self)
        return AlgebraicElement(self, self.ring.ground_new(to_qq(value)))

    @property
    def zero(self):
        return AlgebraicElement(self, self.ring.zero)

    @property
    def one(self):
        return AlgebraicElement(self, self.ring.one)

    def generator(self, index):
        return AlgebraicElement(self, self.reduce(self.ring.gens[self._pos(index)]))

    def parameter(self, name):
        return AlgebraicElement(self, self.ring.gens[self.height + self.parameters.index(name)])

    def serialize(self):
        """One entry per level: dense coefficients of the defining polynomial, low to high."""
        return [
            {"generator": lv.name, "role": lv.role, "coeffs": [str(c.as_expr()) for c in lv.coefficients()]}
            for lv in self.levels
        ]

    @classmethod
    def deserialize(cls, data, parameters=()):
        tower = RATIONALS
        for entry in data:
            name = entry["generator"]
            ring = _level_ring(name, [lv.name for lv in reversed(tower.levels)])
            x = ring.gens[0]
            poly = ring.zero
            for e, text in enumerate(entry["coeffs"]):
                poly += transfer(tower.ring.from_expr(sympify(text)), ring) * x ** e
            tower = tower.extend(Level(name, poly, role=entry.get("role", "class")))
        for name in parameters:
            tower = tower.with_parameter(name)
        return tower

    # -- rep level machinery -------------------------------------------

    def reduce(self, rep, upto=None):
        polys = self._defpolys if upto is None else self._defpolys[:upto]
        if not polys or rep.is_ground:
            return rep
        return rep.rem(polys)

    def _top_level(self, rep, upto):
        top = None
        for monom in rep.itermonoms():
            for index in range(upto - 1, -1 if top is None else top, -1):
                if monom[self._pos(index)]:
                    top = index
                    break
        return top

    def _split_parameters(self, rep):
        groups = {}
        h = self.height
        for monom, coeff in rep.items():
            groups.setdefault(monom[h:], {})[monom[:h] + (0,) * (len(monom) - h)] = coeff
        return {k: self.ring.from_dict(v) for k, v in groups.items()}

    def _univariate(self, rep, index):
        pos = self._pos(index)
        buckets = {}
        for monom, coeff in rep.items():
            buckets.setdefault(monom[pos], {})[monom[:pos] + (0,) + monom[pos + 1:]] = coeff
        if not buckets:
            return []
        return [self.ring.from_dict(buckets.get(e, {})) for e in range(max(buckets) + 1)]

    def _assemble(self, coeffs, index):
        gen = self.ring.gens[self._pos(index)]
        rep = self.ring.zero
        power = self.ring.one
        for c in coeffs:
            if c:
                rep += c * power
            power = power * gen
        return rep

    def _trim(self, coeffs, upto):
        coeffs = list(coeffs)
        while coeffs and self._vanishes(coeffs[-1], upto):
            coeffs.pop()
        return coeffs

    def _scale(self, coeffs, factor, upto):
        return [self.reduce(c * factor, upto) for c in coeffs]

    def _sub(self, a, b, upto):
        size = max(len(a), len(b))
        zero = self.ring.zero
        out = [(a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero) for i in range(size)]
        while out and not out[-1]:
            out.pop()
        return out

    def _mul(self, a, b, upto):
        if not a or not b:
            return []
        out = [self.ring.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        return [self.reduce(c, upto) for c in out]

    def _divmod(self, a, b, upto):
        # b monic
        a = list(a)
        db = len(b) - 1
        q = [self.ring.zero] * max(len(a) - db, 0)
        for shift in range(len(a) - len(b), -1, -1):
            c = a[shift + db]
            if c:
                q[shift] = c
                for i, bc in enumerate(b):
                    a[shift + i] = self.reduce(a[shift + i] - c * bc, upto)
        rem = a[:db]
        while rem and not rem[-1]:
            rem.pop()
        return q, rem

    def _monic(self, coeffs, upto):
        lead = coeffs[-1]
        if lead == self.ring.one:
            return coeffs
        inv = self._inverse_rep(lead, upto)
        return self._scale(coeffs[:-1], inv, upto) + [self.ring.one]

    def _gcd(self, a, b, upto):
        a = self._trim(a, upto)
        b = self._trim(b, upto)
        if not a:
            return self._monic(b, upto) if b else []
        a = self._monic(a, upto)
        while b:
            b = self._monic(b, upto)
            _, r = self._divmod(a, b, upto)
            a, b = b, self._trim(r, upto)
        return a

    def _vanishes(self, rep, upto):
        """True iff rep is zero; False if it is a unit; TowerSplit otherwise."""
        if not rep:
            return True
        parts = self._split_parameters(rep).values() if self.parameters else (rep,)
        pending = None
        for part in parts:
            if not part:
                continue
            try:
                self._inverse_rep(part, upto)
                return False
            except TowerSplit as split:
                pending = pending or split
        raise pending

    def _inverse_rep(self, rep, upto):
        if rep.is_ground:
            if not rep:
                raise ZeroDivisorError()
            return self.ring.ground_new(QQ.one / rep.coeff(1))
        cached = self._inverses.get((rep, upto))
        if cached is not None:
            return cached
        h = self.height
        if self.parameters and any(any(m[h:]) for m in rep.itermonoms()):
            raise AlgebraError("cannot invert an element depending on formal parameters")
        level = self._top_level(rep, upto)
        m = self._univariate(self._defpolys[level], level)
        r0, r1 = m, self._trim(self._univariate(rep, level), level)
        s0, s1 = [], [self.ring.one]
        while r1:
            inv = self._inverse_rep(r1[-1], level)
            r1 = self._scale(r1, inv, level)
            s1 = self._scale(s1, inv, level)
            q, r = self._divmod(r0, r1, level)
            r0, r1 = r1, self._trim(r, level)
            s0, s1 = s1, self._sub(s0, self._mul(q, s1, level), level)
        if len(r0) > 1:
            cofactor, _ = self._divmod(m, r0, level)
            raise TowerSplit(self, level, [r0, cofactor])
        result = self.reduce(self._assemble(s0, level), upto)
        self._inverses[(rep, upto)] = result
        return result

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Tower)
            and self._hash == other._hash
            and self.parameters == other.parameters
            and all(a.key == b.key for a, b in zip(self.levels, other.levels))
            and self.height == other.height
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        parts = [f"{lv.name}: {lv.poly.as_expr()} = 0" for lv in self.levels]
        if self.parameters:
            parts.append("params " + ", ".join(self.parameters))
        return "Tower(" + "; ".join(parts) + ")" if parts else "Tower(QQ)"


RATIONALS = Tower()


def join_towers(*towers):
    """The deepest tower among lineage-related towers."""
    result = None
    for tower in towers:
        if tower is None or tower is result:
            continue
        if result is None or tower.descends_from(result):
            result = tower
        elif not result.descends_from(tower):
            raise AlgebraError("elements live in incompatible towers")
    return result if result is not None else RATIONALS


class TowerSplit(Exception):
    """A zero divisor was met: level `level` factors as `factors`."""

    def __init__(self, tower, level, factors):
        self.tower = tower
        self.level = level
        self.origin = tower.levels[level].origin
        ring = tower.levels[level].poly.ring
        polys = [transfer(tower._assemble(f, level), ring) for f in factors]
        self.factors = sorted(polys, key=lambda p: Level("_k", p).sort_key())
        super().__init__(f"tower split at level {level} into {len(factors)} branches")

    def branch_towers(self):
        return [self.tower.refine(self.level, f) for f in self.factors]


class AlgebraicElement:
    __slots__ = ("tower", "rep")

    def __init__(self, tower, rep):
        self.tower = tower
        self.rep = rep

    # -- coercion ------------------------------------------------------

    def lift(self, tower):
        if tower is self.tower:
            return self
        if self.rep.is_ground:
            return AlgebraicElement(tower, tower.ring.ground_new(self.rep.coeff(1)) if self.rep else tower.ring.zero)
        if tower == self.tower:
            return AlgebraicElement(tower, transfer(self.rep, tower.ring))
        if not tower.descends_from(self.tower):
            raise AlgebraError("cannot move element into an unrelated tower")
        return AlgebraicElement(tower, tower.reduce(transfer(self.rep, tower.ring)))

    def _pair(self, other):
        if isinstance(other, AlgebraicElement):
            if other.tower is self.tower:
                return self.tower, self.rep, other.rep
            tower = join_towers(self.tower, other.tower)
            return tower, self.lift(tower).rep, other.lift(tower).rep
        return self.tower, self.rep, self.tower.ring.ground_new(to_qq(other))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        tower, a, b = self._pair(other)
        return AlgebraicElement(tower, a + b)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicElement(self.tower, -self.rep)

    def __sub__(self, other):
        tower, a, b = self._pair(other)
        return AlgebraicElement(tower, a - b)

    def __rsub__(self, other):
        tower, a, b = self._pair(other)
        return AlgebraicElement(tower, b - a)

    def __mul__(self, other):
        tower, a, b = self._pair(other)
        if a.is_ground or b.is_ground:
            return AlgebraicElement(tower, a * b)
        return AlgebraicElement(tower, tower.reduce(a * b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, AlgebraicElement):
            other = self.tower.element(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.tower.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def inverse(self):
        return AlgebraicElement(self.tower, self.tower._inverse_rep(self.rep, self.tower.height))

    # -- predicates ----------------------------------------------------

    def vanishes(self):
        """Zero test; raises TowerSplit when self is a zero divisor."""
        return self.tower._vanishes(self.rep, self.tower.height)

    def is_syntactic_zero(self):
        return not self.rep

    def is_rational(self):
        return self.rep.is_ground

    def to_fraction(self):
        if not self.rep.is_ground:
            raise AlgebraError(f"{self} is not rational")
        return qq_to_fraction(self.rep.coeff(1)) if self.rep else Fraction(0)

    def free_parameters(self):
        h = self.tower.height
        used = set()
        for monom in self.rep.itermonoms():
            for k, e in enumerate(monom[h:]):
                if e:
                    used.add(self.tower.parameters[k])
        return sorted(used)

    def canonical(self):
        """Tower-independent key: monomials by generator name."""
        names = [str(s) for s in self.rep.ring.symbols]
        terms = []
        for monom, coeff in self.rep.items():
            terms.append((tuple((names[k], e) for k, e in enumerate(monom) if e), qq_to_fraction(coeff)))
        return tuple(sorted(terms))

    def __eq__(self, other):
        if isinstance(other, AlgebraicElement):
            try:
                _, a, b = self._pair(other)
            except AlgebraError:
                return False
            return a == b
        try:
            return self.rep.is_ground and self.rep == to_qq(other)
        except AlgebraError:
            return NotImplemented

    def __hash__(self):
        if self.rep.is_ground:
            return hash(self.to_fraction())
        return hash(self.canonical())

    def __repr__(self):
        return str(self.rep.as_expr())

    def serialize(self):
        return {"tower": self.tower.serialize(), "value": str(self.rep.as_expr())}


def deserialize_element(data):
    """Inverse of AlgebraicElement.serialize; unknown symbols in the value become formal parameters."""
    value = sympify(data["value"])
    generators = {entry["generator"] for entry in data["tower"]}
    parameters = sorted(str(s) for s in value.free_symbols if str(s) not in generators)
    tower = Tower.deserialize(data["tower"], parameters)
    return AlgebraicElement(tower, tower.reduce(tower.ring.from_expr(value)))


def as_element(value, tower=None):
    if isinstance(value, AlgebraicElement):
        return value if tower is None else value.lift(tower)
    return (tower or RATIONALS).element(value)


def dot(pairs, tower=None):
    """Sum of products with a single reduction."""
    pairs = [(as_element(a), as_element(b)) for a, b in pairs]
    towers = [tower] + [x.tower for pair in pairs for x in pair]
    tower = join_towers(*towers)
    acc = tower.ring.zero
    for a, b in pairs:
        acc += a.lift(tower).rep * b.lift(tower).rep
    return AlgebraicElement(tower, tower.reduce(acc))


class ZeroTestOutcome(str, Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    SPLIT = "split"


@dataclass(frozen=True)
class ZeroTest:
    outcome: ZeroTestOutcome
    branches: tuple = field(default=())


def is_zero(x):
    """Zero test with an explicit Split outcome instead of an exception."""
    try:
        return ZeroTest(ZeroTestOutcome.ZERO if x.vanishes() else ZeroTestOutcome.NONZERO)
    except TowerSplit as split:
        return ZeroTest(ZeroTestOutcome.SPLIT, tuple(split.branch_towers()))


# -- dynamic evaluation driver ---------------------------------------------

_REFINEMENTS = contextvars.ContextVar("tower_refinements", default=None)


def run_with_splits(compute, tower):
    """
    Run compute(tower) on every branch opened by zero tests.

    compute must lift everything it captured into the tower it receives.
    Splits of levels below the base height refine the base; splits of
    levels created inside compute are replayed through adjoin_root.
    Returns the list of per-branch results in canonical branch order.
    """
    outputs = []
    inherited = dict(_REFINEMENTS.get() or {})
    pending = [(tower, inherited)]
    replays = 0
    while pending:
        base, refinements = pending.pop(0)
        token = _REFINEMENTS.set(refinements)
        try:
            outputs.append(compute(base))
        except TowerSplit as split:
            replays += 1
            if replays > MAX_SPLIT_REPLAYS:
                raise AlgebraError("too many tower splits; giving up")
            logger.debug("split at level %d into %d branches", split.level, len(split.factors))
            factors = split.factors
            if split.tower.levels[split.level].role == "choice":
                # any root is as good as another
                factors = factors[:1]
            if split.level < base.height:
                branches = [(base.refine(split.level, f), refinements) for f in factors]
            else:
                key = (split.level, split.origin)
                branches = [(base, {**refinements, key: f}) for f in factors]
            pending[0:0] = branches
        finally:
            _REFINEMENTS.reset(token)
    return outputs


# -- extensions ------------------------------------------------------------

def _common_tower(tower, values):
    towers = [tower] + [v.tower for v in values if isinstance(v, AlgebraicElement)]
    return join_towers(*towers)


def _reps(tower, values):
    return [as_element(v).lift(tower).rep for v in values]


def adjoin_root(tower, defpoly, role="class"):
    """
    Adjoin a root of defpoly (coefficients low to high).

    The polynomial is made monic and squarefree; a linear result returns the
    root itself without a new level.
    """
    tower = _common_tower(tower, defpoly)
    top = tower.height
    coeffs = tower._trim(_reps(tower, defpoly), top)
    if len(coeffs) < 2:
        raise AlgebraError("constant defining polynomial")
    h = tower.height
    if tower.parameters and any(any(m[h:]) for c in coeffs for m in c.itermonoms()):
        raise AlgebraError("defining polynomial depends on formal parameters")
    coeffs = tower._monic(coeffs, top)
    derivative = [tower.reduce(c * e, top) for e, c in enumerate(coeffs)][1:]
    common = tower._gcd(coeffs, derivative, top)
    if len(common) > 1:
        coeffs, _ = tower._divmod(coeffs, common, top)
    if len(coeffs) == 2:
        return tower, AlgebraicElement(tower, tower.reduce(-coeffs[0]))
    name = f"g{tower.height + 1}"
    ring = _level_ring(name, [lv.name for lv in reversed(tower.levels)])
    x = ring.gens[0]
    poly = ring.zero
    for e, c in enumerate(coeffs):
        poly += transfer(c, ring) * x ** e
    origin = Level(name, poly).key
    refined = (_REFINEMENTS.get() or {}).get((top, origin))
    if refined is not None:
        poly = transfer(refined, ring)
        logger.debug("replaying refinement of level %d", top)
        if poly.degree(0) == 1:
            root = -transfer(poly - x, tower.ring)
            return tower, AlgebraicElement(tower, tower.reduce(root))
    new = tower.extend(Level(name, poly, origin=origin, role=role))
    return new, new.generator(top)


def _rational_root(q, nu):
    if q < 0 and nu % 2 == 0:
        return None
    num, exact_num = integer_nthroot(abs(q.numerator), nu)
    den, exact_den = integer_nthroot(q.denominator, nu)
    if not (exact_num and exact_den):
        return None
    return Fraction(-int(num) if q < 0 else int(num), int(den))


def nth_root(x, nu):
    """One root of X^nu - x; reuses an existing generator satisfying the relation."""
    x = as_element(x)
    tower = x.tower
    if x.is_syntactic_zero():
        return tower, tower.zero
    if nu == 1:
        return tower, x
    if x.is_rational():
        root = _rational_root(x.to_fraction(), nu)
        if root is not None:
            return tower, tower.element(root)
    for index in range(tower.height):
        gen = tower.ring.gens[tower._pos(index)]
        if tower.levels[index].degree == nu and tower._defpolys[index] == gen ** nu - x.rep:
            return tower, tower.generator(index)
    return adjoin_root(tower, [-x] + [0] * (nu - 1) + [1], role="choice")


def root_of_unity(tower, nu):
    """A primitive nu-th root of unity, adjoined through the cyclotomic polynomial."""
    if nu == 1:
        return tower, tower.one
    if nu == 2:
        return tower, -tower.one
    z = Symbol("z")
    coeffs = [int(c) for c in reversed(Poly(cyclotomic_poly(nu, z), z).all_coeffs())]
    for index in range(tower.height):
        gen = tower.ring.gens[tower._pos(index)]
        target = tower.ring.zero
        for e, c in enumerate(coeffs):
            target += c * gen ** e
        if tower._defpolys[index] == target:
            return tower, tower.generator(index)
    return adjoin_root(tower, coeffs, role="choice")


def nth_roots(x, nu):
    """All nu roots of X^nu - x as root * omega^j, j = 0..nu-1."""
    tower, root = nth_root(x, nu)
    if nu == 1 or root.is_syntactic_zero():
        return tower, [root]
    tower, omega = root_of_unity(tower, nu)
    root = root.lift(tower)
    roots = []
    power = tower.one
    for _ in range(nu):
        roots.append(root * power)
        power = power * omega
    return tower, roots


def new_parameter(tower, stem="c"):
    name = tower.fresh_parameter_name(stem)
    extended = tower.with_parameter(name)
    return extended, extended.parameter(name)


# -- univariate helpers over a tower ---------------------------------------

def polynomial_gcd(a, b):
    """Monic gcd of two coefficient lists (low to high)."""
    tower = _common_tower(RATIONALS, list(a) + list(b))
    top = tower.height
    g = tower._gcd(_reps(tower, a), _reps(tower, b), top)
    return [AlgebraicElement(tower, c) for c in g]


def polynomial_divmod(a, b):
    tower = _common_tower(RATIONALS, list(a) + list(b))
    top = tower.height
    b = tower._monic(tower._trim(_reps(tower, b), top), top) if b else []
    if not b:
        raise ZeroDivisorError()
    q, r = tower._divmod(_reps(tower, a), b, top)
    return [AlgebraicElement(tower, c) for c in q], [AlgebraicElement(tower, c) for c in r]


def _trim_elements(coeffs):
    coeffs = [as_element(c) for c in coeffs]
    while coeffs and coeffs[-1].vanishes():
        coeffs.pop()
    return coeffs


def squarefree_coefficients(coeffs):
    """Squarefree part (monic) of a univariate polynomial over a tower."""
    coeffs = _trim_elements(coeffs)
    if len(coeffs) < 2:
        return coeffs
    derivative = [c * e for e, c in enumerate(coeffs)][1:]
    common = polynomial_gcd(coeffs, derivative)
    tower = _common_tower(RATIONALS, coeffs + common)
    top = tower.height
    monic = tower._monic(_reps(tower, coeffs), top)
    if len(common) > 1:
        monic, _ = tower._divmod(monic, _reps(tower, common), top)
    return [AlgebraicElement(tower, c) for c in monic]


def polynomial_roots(coeffs, include_zero=True):
    """
    Roots of a univariate polynomial over a tower.

    Zero and binomial cases are enumerated explicitly; any other factor is
    represented by a single symbolic root standing for all its conjugates.
    """
    coeffs = _trim_elements(coeffs)
    if len(coeffs) < 2:
        return []
    tower = _common_tower(RATIONALS, coeffs)
    coeffs = [c.lift(tower) for c in coeffs]
    low = 0
    while coeffs[low].vanishes():
        low += 1
    roots = [tower.zero] if low and include_zero else []
    rest = coeffs[low:]
    if len(rest) == 1:
        return roots
    if all(c.vanishes() for c in rest[1:-1]):
        _, found = nth_roots(-rest[0] / rest[-1], len(rest) - 1)
        return roots + found
    rest = squarefree_coefficients(rest)
    if len(rest) == 2:
        return roots + [-rest[0]]
    _, root = adjoin_root(tower, rest)
    return roots + [root]
