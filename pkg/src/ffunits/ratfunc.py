"""The rational function field K = F_q(t): reduced fractions, places,
valuations, divisor vectors and residue-ring reduction.

Values are canonical: a RatFunc keeps a reduced fraction with monic
denominator, so equality and hashing are structural.  Places of K over
F_q are the monic irreducible polynomials plus one place at infinity;
local completions are never materialized, only the finite-precision
residue rings F_q[t]/(base**e) described by Modulus.
"""

from dataclasses import dataclass
from functools import cached_property

from .field import GF
from .poly import (
    DEFAULT_SEED,
    Poly,
    factor,
    is_irreducible,
    poly_gcd,
    poly_invmod,
)


@dataclass(frozen=True)
class RatFunc:
    """A reduced fraction num/den with monic denominator (zero is 0/1)."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if not self.den.is_monic:
            raise ValueError("denominator must be monic")
        if self.num.is_zero and not self.den.is_one:
            raise ValueError("zero must be represented as 0/1")

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "RatFunc":
        """Build the canonical reduced form of num/den."""
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        f = num.field
        if num.is_zero:
            return cls(num, Poly.one(f))
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, den = num // g, den // g
        lc = den.leading
        if lc != 1:
            inv = f.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return cls(num, den)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.field))

    @classmethod
    def zero(cls, field: GF) -> "RatFunc":
        return cls(Poly.zero(field), Poly.one(field))

    @classmethod
    def one(cls, field: GF) -> "RatFunc":
        return cls(Poly.one(field), Poly.one(field))

    @classmethod
    def constant(cls, field: GF, c: int) -> "RatFunc":
        return cls(Poly.constant(field, c), Poly.one(field))

    @classmethod
    def t(cls, field: GF) -> "RatFunc":
        return cls(Poly.x(field), Poly.one(field))

    @property
    def field(self) -> GF:
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    def sort_key(self):
        return (self.den.sort_key(), self.num.sort_key())

    def __repr__(self):
        return f"RatFunc({list(self.num.coeffs)} / {list(self.den.coeffs)}, q={self.field.q})"

    # -- field operations --

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero:
            raise ZeroDivisionError("division by zero")
        return RatFunc.make(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc.make(self.den, self.num)

    def __pow__(self, e: int) -> "RatFunc":
        if e == 0:
            return RatFunc.one(self.field)
        base = self if e > 0 else self.inverse()
        # num and den stay coprime and the denominator stays monic
        return RatFunc(base.num ** abs(e), base.den ** abs(e))


def rf_normalize(num: Poly, den: Poly) -> RatFunc:
    """Reduced fraction with monic denominator and the unit in the numerator."""
    return RatFunc.make(num, den)


# -- places and divisors --


@dataclass(frozen=True)
class Place:
    """A place of F_q(t): a monic irreducible polynomial, or None for infinity."""

    poly: Poly | None = None

    def __post_init__(self):
        if self.poly is not None:
            if not self.poly.is_monic:
                raise ValueError("finite places carry monic polynomials")
            if not is_irreducible(self.poly):
                raise ValueError("finite places carry irreducible polynomials")

    @classmethod
    def at_infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, poly: Poly) -> "Place":
        return cls(poly)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree()

    def sort_key(self):
        # finite places first, then the unique infinite place
        if self.poly is None:
            return (1, 0, ())
        return (0,) + self.poly.sort_key()


@dataclass(frozen=True)
class Divisor:
    """Finitely supported Place -> exponent map; entries sorted, exponents nonzero."""

    entries: tuple[tuple[Place, int], ...]

    @classmethod
    def from_dict(cls, d: dict[Place, int]) -> "Divisor":
        items = [(pl, e) for pl, e in d.items() if e != 0]
        items.sort(key=lambda pe: pe[0].sort_key())
        return cls(tuple(items))

    def as_dict(self) -> dict[Place, int]:
        return dict(self.entries)

    def get(self, place: Place) -> int:
        for pl, e in self.entries:
            if pl == place:
                return e
        return 0

    def degree(self) -> int:
        return sum(e * pl.degree() for pl, e in self.entries)

    def __add__(self, other: "Divisor") -> "Divisor":
        d = self.as_dict()
        for pl, e in other.entries:
            d[pl] = d.get(pl, 0) + e
        return Divisor.from_dict(d)

    def __neg__(self) -> "Divisor":
        return Divisor(tuple((pl, -e) for pl, e in self.entries))

    def finite_support(self) -> tuple[Place, ...]:
        return tuple(pl for pl, _ in self.entries if not pl.is_infinite)


def valuation(x: RatFunc, v: Place) -> int:
    """Order of vanishing of x at the place v."""
    if x.is_zero:
        raise ValueError("valuation of zero")
    if v.is_infinite:
        return x.den.degree() - x.num.degree()

    def mult(p: Poly) -> int:
        count = 0
        while True:
            q, r = divmod(p, v.poly)
            if not r.is_zero:
                return count
            count += 1
            p = q

    # the fraction is reduced, so at most one of the two counts is nonzero
    return mult(x.num) - mult(x.den)


def divisor_vector(x: RatFunc, seed: int = DEFAULT_SEED) -> tuple[Divisor, int]:
    """Full exponent map of x (finite places and infinity) plus its leading unit.

    x equals constant * prod(place.poly ** exponent) over the finite entries;
    the infinite exponent is determined by the degree-zero identity.
    """
    if x.is_zero:
        raise ValueError("divisor of zero")
    exps: dict[Place, int] = {}
    fn = factor(x.num, seed)
    for g, e in fn.factors:
        exps[Place.finite(g)] = e
    fd = factor(x.den, seed)
    for g, e in fd.factors:
        exps[Place.finite(g)] = exps.get(Place.finite(g), 0) - e
    inf = x.den.degree() - x.num.degree()
    if inf:
        exps[Place.at_infinity()] = inf
    constant = x.field.div(fn.unit, fd.unit)
    return Divisor.from_dict(exps), constant


def divisor_product(field: GF, divisor: Divisor, constant: int) -> RatFunc:
    """Rebuild the element from its finite divisor entries and leading unit."""
    out = RatFunc.constant(field, constant)
    for pl, e in divisor.entries:
        if not pl.is_infinite:
            out = out * RatFunc.from_poly(pl.poly) ** e
    return out


def finite_support(x: RatFunc, seed: int = DEFAULT_SEED) -> tuple[Place, ...]:
    return divisor_vector(x, seed)[0].finite_support()


# -- finite-precision residue rings --


@dataclass(frozen=True)
class Modulus:
    """The ideal (base**exponent): the finite-precision window on one place."""

    base: Poly
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("modulus exponent must be >= 1")
        if not self.base.is_monic or not is_irreducible(self.base):
            raise ValueError("modulus base must be monic irreducible")

    @cached_property
    def poly(self) -> Poly:
        return self.base**self.exponent

    @property
    def place(self) -> Place:
        return Place.finite(self.base)

    def __repr__(self):
        return f"Modulus(base={list(self.base.coeffs)}, e={self.exponent})"


def reduce_mod(x: RatFunc, m: Modulus) -> Poly:
    """Image of x in F_q[t]/(base**e); requires the denominator invertible there."""
    modpoly = m.poly
    if x.is_zero:
        return Poly.zero(x.field)
    try:
        den_inv = poly_invmod(x.den, modpoly)
    except ZeroDivisionError:
        raise ZeroDivisionError("element has a pole at the modulus place") from None
    return (x.num * den_inv) % modpoly
