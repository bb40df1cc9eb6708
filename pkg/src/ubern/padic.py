"""p-adic valuations, factorial units, double factorials.

All operations are pure and exact.  The valuation of zero is the
distinguished value INFINITY (it compares greater than every integer);
no integer sentinel is ever used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError

__all__ = [
    "INFINITY",
    "PadicScalar",
    "digit_sum",
    "double_factorial",
    "f_sum",
    "f_term",
    "factorial_unit_mod",
    "g_func",
    "is_prime",
    "vp",
    "vp_int",
    "vp_factorial",
]

INFINITY = math.inf

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise PreconditionError(f"p must be prime, got {p!r}")


def vp_int(p: int, a: int) -> int:
    """Valuation of a nonzero integer; no primality check (hot path)."""
    if a == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while True:
        q, r = divmod(a, p)
        if r:
            return v
        a = q
        v += 1


def vp(p: int, q: Fraction | int) -> int | float:
    """Normalized p-adic valuation of a rational; INFINITY for q = 0."""
    _require_prime(p)
    if q == 0:
        return INFINITY
    if isinstance(q, int):
        return vp_int(p, q)
    q = Fraction(q)
    num = q.numerator
    if num % p == 0:
        return vp_int(p, num)
    return -vp_int(p, q.denominator)


def digit_sum(p: int, a: int) -> int:
    """Sum of the base-p digits of a >= 0."""
    _require_prime(p)
    if a < 0:
        raise PreconditionError("a must be nonnegative")
    s = 0
    while a:
        a, r = divmod(a, p)
        s += r
    return s


def vp_factorial(p: int, a: int) -> int:
    """Valuation of a! as (a - digit_sum(a)) / (p - 1); a! is never formed."""
    _require_prime(p)
    if a < 0:
        raise PreconditionError("a must be nonnegative")
    s = 0
    b = a
    while b:
        b, r = divmod(b, p)
        s += r
    return (a - s) // (p - 1)


def double_factorial(a: int) -> int:
    """a!! = a (a-2) ... 3 * 1 for odd a >= 1; (-1)!! = 1 (empty product)."""
    if a % 2 == 0 or a < -1:
        raise PreconditionError(f"double factorial needs odd a >= -1, got {a}")
    return math.prod(range(1, a + 1, 2))


def factorial_unit_mod(p: int, a: int, k: int) -> int:
    """(a! / p**vp_factorial(p, a)) mod p**k by Wilson-style block products.

    Works level by level on a, a//p, a//p**2, ...; within a level the
    product of all units below a full period p**k is -1, except +1 for
    p = 2 with k >= 3.  a! itself is never materialized.
    """
    _require_prime(p)
    if a < 0:
        raise PreconditionError("a must be nonnegative")
    if k < 1:
        raise PreconditionError("precision k must be >= 1")
    m = p**k
    block = 1 if (p == 2 and k >= 3) else m - 1
    result = 1
    while a > 0:
        full, _ = divmod(a, m)
        result = result * pow(block, full, m) % m
        for i in range(full * m + 1, a + 1):
            if i % p:
                result = result * i % m
        a //= p
    return result % m


def g_func(a: int) -> Fraction:
    """(-1)**(a-1) * (2a-3)!! / (2a) as an exact rational, a >= 1."""
    if a < 1:
        raise PreconditionError("a must be >= 1")
    sign = -1 if (a - 1) % 2 else 1
    return Fraction(sign * double_factorial(2 * a - 3), 2 * a)


def f_term(a: int, i: int, j: int) -> int:
    """(a+1)...(a+2i) / (a+j), an exact integer, for 1 <= j <= 2i."""
    if a < 0 or i < 1 or not 1 <= j <= 2 * i:
        raise PreconditionError("need a >= 0, i >= 1, 1 <= j <= 2i")
    return math.prod(range(a + 1, a + 2 * i + 1)) // (a + j)


def f_sum(a: int, i: int) -> int:
    """Sum over j = 1..2i of (a+1)...(a+2i) / (a+j)."""
    if a < 0 or i < 1:
        raise PreconditionError("need a >= 0 and i >= 1")
    prod = math.prod(range(a + 1, a + 2 * i + 1))
    return sum(prod // (a + j) for j in range(1, 2 * i + 1))


@dataclass(frozen=True)
class PadicScalar:
    """A scalar p**valuation * unit with the unit known mod p**precision.

    The zero mark (unit == 0) is exact zero.  Two scalars combine only
    when their primes match; the result precision is the minimum of the
    operand precisions after any valuation alignment.
    """

    prime: int
    valuation: int
    unit: int
    precision: int

    def __post_init__(self) -> None:
        _require_prime(self.prime)
        if self.precision < 1:
            raise PreconditionError("precision must be >= 1")
        if self.unit:
            if not 1 <= self.unit < self.prime**self.precision:
                raise ValueError("unit out of range for the stated precision")
            if self.unit % self.prime == 0:
                raise ValueError("unit must be coprime to p")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, p: int, precision: int) -> "PadicScalar":
        return cls(p, 0, 0, precision)

    @classmethod
    def from_rational(cls, p: int, q: Fraction | int, precision: int) -> "PadicScalar":
        """Embed an exact rational at the given relative precision."""
        q = Fraction(q)
        if q == 0:
            return cls.zero(p, precision)
        m = p**precision
        num, den = q.numerator, q.denominator
        v = 0
        if num % p == 0:
            v = vp_int(p, num)
            num //= p**v
        elif den % p == 0:
            v = -vp_int(p, den)
            den //= p ** (-v)
        unit = num * pow(den, -1, m) % m
        return cls(p, v, unit, precision)

    # -- queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    def vp(self) -> int | float:
        return INFINITY if self.is_zero else self.valuation

    def to_fraction(self) -> Fraction:
        """A rational representative of the stored residue class."""
        if self.is_zero:
            return Fraction(0)
        if self.valuation >= 0:
            return Fraction(self.unit * self.prime**self.valuation)
        return Fraction(self.unit, self.prime ** (-self.valuation))

    def agrees_with(self, other: "PadicScalar") -> bool:
        """Equality to the common (relative) precision."""
        self._check_partner(other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.valuation != other.valuation:
            return False
        k = min(self.precision, other.precision)
        m = self.prime**k
        return (self.unit - other.unit) % m == 0

    # -- arithmetic ---------------------------------------------------

    def _check_partner(self, other: "PadicScalar") -> None:
        if not isinstance(other, PadicScalar):
            raise TypeError("expected a PadicScalar")
        if other.prime != self.prime:
            raise ValueError("cannot combine scalars of different primes")

    def __neg__(self) -> "PadicScalar":
        if self.is_zero:
            return self
        m = self.prime**self.precision
        return PadicScalar(self.prime, self.valuation, (m - self.unit) % m, self.precision)

    def __mul__(self, other: "PadicScalar") -> "PadicScalar":
        self._check_partner(other)
        k = min(self.precision, other.precision)
        if self.is_zero or other.is_zero:
            return PadicScalar.zero(self.prime, k)
        m = self.prime**k
        return PadicScalar(
            self.prime,
            self.valuation + other.valuation,
            self.unit * other.unit % m,
            k,
        )

    def __truediv__(self, other: "PadicScalar") -> "PadicScalar":
        self._check_partner(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero mark")
        k = min(self.precision, other.precision)
        if self.is_zero:
            return PadicScalar.zero(self.prime, k)
        m = self.prime**k
        return PadicScalar(
            self.prime,
            self.valuation - other.valuation,
            self.unit * pow(other.unit, -1, m) % m,
            k,
        )

    def __add__(self, other: "PadicScalar") -> "PadicScalar":
        self._check_partner(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.valuation > other.valuation:
            return other + self
        shift = other.valuation - self.valuation
        k = min(self.precision, other.precision + shift)
        p = self.prime
        m = p**k
        s = (self.unit + other.unit * p**shift) % m if shift < k else self.unit % m
        if s == 0:
            # cancellation below working precision: zero mark
            return PadicScalar.zero(p, k)
        t = vp_int(p, s)
        if t >= k:
            return PadicScalar.zero(p, k)
        if t:
            s //= p**t
            k -= t
        return PadicScalar(p, self.valuation + t, s % p**k, k)

    def __sub__(self, other: "PadicScalar") -> "PadicScalar":
        return self + (-other)
