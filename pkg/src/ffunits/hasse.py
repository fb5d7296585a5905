"""Higher (divided-power) derivatives on F_q(t) and the subfields F_q(t**(p**m)).

The i-th derivative D(i)(x) is the coefficient of u**i in the expansion of
x(t+u).  In characteristic p this family replaces iterated d/dt: it is
additive, satisfies the Leibniz rule coefficientwise, is iterative
(D(i)D(j) = C(i+j,i) D(i+j) mod p), and for every m >= 1 the joint kernel
of D(1), ..., D(p**m - 1) is exactly the subfield F_q(t**(p**m)).

Membership in that subfield is always decided twice here, once through the
derivative kernel and once through the exponent pattern of the reduced
fraction; a disagreement raises InternalCheckError since the two routes
are independent.

Jets are memoized per (element, order).  The cache is a transparent memo
over pure functions, so answers are identical with or without it and
concurrent readers are safe.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import InternalCheckError, ResourceLimitError
from .field import GF
from .poly import Poly
from .ratfunc import RatFunc

MAX_PRIME_POWER = 1 << 16


def prime_power(field: GF, m: int) -> int:
    """p**m with the desk-scale resource guard."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    pm = field.p**m
    if pm > MAX_PRIME_POWER:
        raise ResourceLimitError(f"p**m = {pm} exceeds the supported bound {MAX_PRIME_POWER}")
    return pm


def binom_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient mod p by Lucas's digit rule."""
    if k < 0 or k > n:
        return 0
    r = 1
    while k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        # digits are < p, so the small factorial quotient is exact
        num = den = 1
        for i in range(kd):
            num *= nd - i
            den *= i + 1
        r = r * (num // den) % p
        n //= p
        k //= p
    return r


def poly_jet(a: Poly, order: int) -> list[Poly]:
    """Coefficients in u of a(t+u) up to u**order; entry i is D(i) of a."""
    f = a.field
    out = []
    for i in range(order + 1):
        coeffs = [0] * max(a.degree() - i + 1, 0)
        for k in range(i, a.degree() + 1):
            bc = binom_mod(k, i, f.p)
            if bc:
                coeffs[k - i] = f.mul(a.coeffs[k], bc)
        out.append(Poly.from_coeffs(f, coeffs))
    return out


@dataclass(frozen=True)
class TaylorJet:
    """An element together with its derivatives D(0..order)."""

    element: RatFunc
    order: int
    coefficients: tuple[RatFunc, ...]


@lru_cache(maxsize=4096)
def _jet_coeffs(x: RatFunc, order: int) -> tuple[RatFunc, ...]:
    f = x.field
    num_jet = poly_jet(x.num, order)
    den_jet = poly_jet(x.den, order)
    # invert den(t+u) as a power series in u; the constant term is den(t)
    inv0 = RatFunc.make(Poly.one(f), den_jet[0])
    inv = [inv0]
    den_rf = [RatFunc.from_poly(d) for d in den_jet]
    for k in range(1, order + 1):
        acc = RatFunc.zero(f)
        for j in range(1, k + 1):
            if not den_jet[j].is_zero:
                acc = acc + den_rf[j] * inv[k - j]
        inv.append(-(inv0 * acc))
    out = []
    for i in range(order + 1):
        acc = RatFunc.zero(f)
        for a in range(i + 1):
            if not num_jet[a].is_zero:
                acc = acc + RatFunc.from_poly(num_jet[a]) * inv[i - a]
        out.append(acc)
    return tuple(out)


def taylor_jet(x: RatFunc, order: int) -> TaylorJet:
    """All derivatives D(0..order)(x) from one truncated expansion."""
    if order < 0:
        raise ValueError("jet order must be nonnegative")
    return TaylorJet(x, order, _jet_coeffs(x, order))


def hasse_derivative(x: RatFunc, i: int) -> RatFunc:
    """The i-th higher derivative of x."""
    if i < 0:
        raise ValueError("derivative index must be nonnegative")
    return _jet_coeffs(x, i)[i]


def _exponents_divisible(a: Poly, pm: int) -> bool:
    return all(c == 0 for k, c in enumerate(a.coeffs) if k % pm)


def in_power_subfield(x: RatFunc, m: int) -> bool:
    """Whether x lies in F_q(t**(p**m)), decided by two independent routes."""
    pm = prime_power(x.field, m)
    structural = _exponents_divisible(x.num, pm) and _exponents_divisible(x.den, pm)
    jets = _jet_coeffs(x, pm - 1) if pm > 1 else ()
    kernel = all(jets[l].is_zero for l in range(1, pm))
    if structural != kernel:
        raise InternalCheckError(
            f"subfield membership tests disagree for {x!r}, m={m}: "
            f"exponent pattern says {structural}, derivative kernel says {kernel}"
        )
    return structural


def inflate(x: RatFunc, k: int) -> RatFunc:
    """Substitute t -> t**k (the inverse of the coordinate relabeling)."""
    if k < 1:
        raise ValueError("inflation factor must be >= 1")
    if k == 1:
        return x

    def stretch(a: Poly) -> Poly:
        if a.is_zero:
            return a
        out = [0] * (a.degree() * k + 1)
        for i, c in enumerate(a.coeffs):
            out[i * k] = c
        return Poly(a.field, tuple(out))

    # reduced-ness and the monic denominator survive the substitution
    return RatFunc(stretch(x.num), stretch(x.den))


def subfield_coordinates(x: RatFunc, m: int) -> tuple[RatFunc, ...]:
    """Coordinates of x in the basis 1, t, ..., t**(p**m - 1) over F_q(t**(p**m)).

    Coordinate r is returned relabeled along a(t**(p**m)) -> a(t), so the
    results live in K and ordinary linear algebra over K applies.  The
    defining identity is x = sum(inflate(c_r, p**m) * t**r).
    """
    pm = prime_power(x.field, m)
    f = x.field
    num = x.num * x.den ** (pm - 1)
    den_pm = x.den**pm

    def component(a: Poly, r: int) -> Poly:
        coeffs = [a.coeff(l * pm + r) for l in range(a.degree() // pm + 1)]
        return Poly.from_coeffs(f, coeffs)

    # den**pm only has exponents divisible by pm, so extracting its
    # pm-indexed coefficients is an exact relabeling
    den_hat = component(den_pm, 0)
    return tuple(RatFunc.make(component(num, r), den_hat) for r in range(pm))
