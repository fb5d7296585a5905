"""Arithmetic in a finite field F_q with q = p**s.

Field elements are plain ints in range(q): the integer sum(d_i * p**i)
encodes the element sum(d_i * a**i), where a is the residue of X in
F_p[X]/(modulus).  For s == 1 an element is simply its least nonnegative
residue mod p and no modulus is consulted.  Zero and one are always
encoded as 0 and 1, and this encoding is shared by every module of the
package.

GF instances are immutable and hashable; every operation is a pure
function of its arguments, so concurrent use needs no locking.
"""

from dataclasses import dataclass


def is_prime(n: int) -> bool:
    """Primality by trial division (inputs here are desk-scale)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class GF:
    """The finite field F_q, q = p**s, acting on int-encoded elements.

    ``modulus`` is the monic degree-s defining polynomial over F_p as a
    little-endian coefficient tuple.  For s == 1 it defaults to X itself
    (the identity presentation of F_p).
    """

    p: int
    s: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.s < 1:
            raise ValueError("extension degree must be >= 1")
        mod = self.modulus
        if not mod:
            if self.s != 1:
                raise ValueError("an explicit modulus is required for s > 1")
            mod = (0, 1)
        mod = tuple(int(c) % self.p for c in mod)
        if len(mod) != self.s + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree s over F_p")
        object.__setattr__(self, "modulus", mod)
        if self.s > 1:
            from . import poly  # deferred; poly imports this module

            if not poly.is_irreducible(poly.Poly(GF(self.p), mod)):
                raise ValueError("modulus is reducible over F_p")

    @property
    def q(self) -> int:
        return self.p**self.s

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element of GF({self.q})")
        return a

    def elements(self):
        return range(self.q)

    # -- digit encoding helpers (s > 1 only) --

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.s):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _from_digits(self, digits) -> int:
        out = 0
        for d in reversed(digits):
            out = out * self.p + d
        return out

    # -- ring operations --

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        p = self.p
        da, db = self._digits(a), self._digits(b)
        return self._from_digits([(x + y) % p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.s == 1:
            return -a % self.p
        return self._from_digits([-x % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        p, s = self.p, self.s
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * s - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self.modulus
        for k in range(len(prod) - 1, s - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(s):
                    prod[k - s + j] = (prod[k - s + j] - c * mod[j]) % p
        return self._from_digits(prod[:s])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        return self.power(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, a: int, times: int = 1) -> int:
        """Apply the p-power Frobenius ``times`` times (identity when s | times)."""
        for _ in range(times % self.s):
            a = self.power(a, self.p)
        return a
