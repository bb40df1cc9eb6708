"""Divided universal Bernoulli numbers as sparse partition polynomials.

The weight-n object is a finite map from partitions of n to exact
rational coefficients.  Two scalar backends coexist: exact rationals
(the correctness oracle) and truncated p-adic scalars (the fast path for
residue checks, which never materializes the large factorials).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import CacheError, CeilingExceeded, PreconditionError
from .padic import (
    INFINITY,
    PadicScalar,
    factorial_unit_mod,
    vp,
    vp_factorial,
    vp_int,
)
from .partitions import Partition, count_partitions, enumerate_partitions

__all__ = [
    "DEFAULT_N_CEILING",
    "SparsePoly",
    "cache_file_name",
    "classical_bernoulli",
    "divided_ubern",
    "format_rational",
    "gamma",
    "parse_rational",
    "poly_vp",
    "read_coefficient_cache",
    "specialize",
    "tau",
    "tau_padic",
    "tau_valuation",
    "write_coefficient_cache",
]

DEFAULT_N_CEILING = 60

_POLY_CACHE_MAX_N = 30
_POLY_CACHE: dict[int, "SparsePoly"] = {}


def gamma(u: Partition) -> int:
    """Denominator attached to u: product of (i+1)**u_i * u_i! over parts."""
    if not u:
        raise PreconditionError("gamma needs a nonempty partition")
    out = 1
    for part, mult in u:
        out *= (part + 1) ** mult * math.factorial(mult)
    return out


def tau(u: Partition) -> Fraction:
    """Coefficient of c^u: (-1)**(d-1) * (n+d-2)! / gamma(u)."""
    if not u:
        raise PreconditionError("tau needs a nonempty partition")
    n = u.weight
    d = u.degree
    num = math.factorial(n + d - 2)
    if d % 2 == 0:
        num = -num
    return Fraction(num, gamma(u))


def tau_valuation(p: int, u: Partition) -> int:
    """v_p(tau(u)) from digit sums alone; no factorial is formed."""
    if not u:
        raise PreconditionError("tau needs a nonempty partition")
    n = u.weight
    d = u.degree
    v = vp_factorial(p, n + d - 2)
    for part, mult in u:
        if (part + 1) % p == 0:
            v -= mult * vp_int(p, part + 1)
        v -= vp_factorial(p, mult)
    return v


def tau_padic(p: int, u: Partition, k: int) -> PadicScalar:
    """tau(u) as a PadicScalar at relative precision k (fast path)."""
    if not u:
        raise PreconditionError("tau needs a nonempty partition")
    if k < 1:
        raise PreconditionError("precision k must be >= 1")
    n = u.weight
    d = u.degree
    m = p**k
    v = vp_factorial(p, n + d - 2)
    unit = factorial_unit_mod(p, n + d - 2, k)
    gunit = 1
    for part, mult in u:
        base = part + 1
        if base % p == 0:
            t = vp_int(p, base)
            v -= mult * t
            base //= p**t
        gunit = gunit * pow(base % m, mult, m) % m
        gunit = gunit * factorial_unit_mod(p, mult, k) % m
        v -= vp_factorial(p, mult)
    unit = unit * pow(gunit, -1, m) % m
    if d % 2 == 0:
        unit = (m - unit) % m
    return PadicScalar(p, v, unit, k)


class SparsePoly:
    """Finite map Partition -> nonzero Fraction, plus an optional weight tag.

    Instances are immutable by convention: all operations return new
    polynomials.  items() is always in canonical order (weight, then the
    enumeration order of partitions of that weight).
    """

    __slots__ = ("_terms", "weight_tag", "_ordered")

    def __init__(
        self,
        terms: Mapping[Partition, Fraction] | Iterable[tuple[Partition, Fraction]] = (),
        weight_tag: int | None = None,
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        d: dict[Partition, Fraction] = {}
        for u, c in items:
            c = Fraction(c)
            if not c:
                continue
            if weight_tag is not None and u.weight != weight_tag:
                raise ValueError(
                    f"key of weight {u.weight} under weight tag {weight_tag}"
                )
            if u in d:
                raise ValueError(f"duplicate key {u!r}")
            d[u] = c
        self._terms = d
        self.weight_tag = weight_tag
        self._ordered: list[tuple[Partition, Fraction]] | None = None

    def items(self) -> list[tuple[Partition, Fraction]]:
        if self._ordered is None:
            self._ordered = sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())
        return self._ordered

    def keys(self):
        return self._terms.keys()

    def get(self, u: Partition, default: Fraction = Fraction(0)) -> Fraction:
        return self._terms.get(u, default)

    def __contains__(self, u: Partition) -> bool:
        return u in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        return f"SparsePoly({len(self._terms)} terms, weight_tag={self.weight_tag})"

    def _merged_tag(self, other: "SparsePoly") -> int | None:
        return self.weight_tag if self.weight_tag == other.weight_tag else None

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        d = dict(self._terms)
        for u, c in other._terms.items():
            s = d.get(u, Fraction(0)) + c
            if s:
                d[u] = s
            else:
                d.pop(u, None)
        return SparsePoly(d, self._merged_tag(other))

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        d = dict(self._terms)
        for u, c in other._terms.items():
            s = d.get(u, Fraction(0)) - c
            if s:
                d[u] = s
            else:
                d.pop(u, None)
        return SparsePoly(d, self._merged_tag(other))

    def scale(self, c: Fraction | int) -> "SparsePoly":
        c = Fraction(c)
        if not c:
            return SparsePoly({}, self.weight_tag)
        return SparsePoly({u: c * v for u, v in self._terms.items()}, self.weight_tag)

    def add_term(self, u: Partition, c: Fraction | int) -> "SparsePoly":
        return self + SparsePoly({u: Fraction(c)})

    def times_monomial(self, extra: Mapping[int, int]) -> "SparsePoly":
        """Multiply every monomial by c^extra (shift all exponent vectors)."""
        shift = sum(part * mult for part, mult in extra.items())
        tag = None if self.weight_tag is None else self.weight_tag + shift
        return SparsePoly(
            {u.merged(extra): c for u, c in self._terms.items()}, tag
        )


def divided_ubern(n: int, *, n_ceiling: int = DEFAULT_N_CEILING) -> SparsePoly:
    """The weight-n divided universal Bernoulli polynomial.

    One term per partition of n; the (n+d-2)! numerators are shared
    through a factorial table built once per call.  Refuses n above the
    configurable ceiling (count_partitions grows fast).
    """
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"n must be a positive integer, got {n!r}")
    if n > n_ceiling:
        raise CeilingExceeded(f"n={n} exceeds the ceiling {n_ceiling}")
    cached = _POLY_CACHE.get(n)
    if cached is not None:
        return cached
    fact = [1] * (2 * n - 1)
    for i in range(1, 2 * n - 1):
        fact[i] = fact[i - 1] * i
    terms: dict[Partition, Fraction] = {}
    for u in enumerate_partitions(n):
        d = u.degree
        num = fact[n + d - 2]
        if d % 2 == 0:
            num = -num
        terms[u] = Fraction(num, gamma(u))
    poly = SparsePoly(terms, weight_tag=n)
    if n <= _POLY_CACHE_MAX_N:
        _POLY_CACHE[n] = poly
    return poly


def specialize(poly: SparsePoly, values: Mapping[int, Fraction | int]) -> Fraction:
    """Evaluate the polynomial at the given part-index assignments.

    Raises KeyError if some occurring part index has no assigned value.
    """
    total = Fraction(0)
    for u, c in poly.items():
        prod = Fraction(1)
        for part, mult in u:
            if part not in values:
                raise KeyError(f"no value assigned for part index {part}")
            prod *= Fraction(values[part]) ** mult
        total += c * prod
    return total


_BERNOULLI: list[Fraction] = [Fraction(1)]


def classical_bernoulli(n: int) -> Fraction:
    """Classical Bernoulli number B_n (B_1 = -1/2) by the binomial recurrence."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * _BERNOULLI[j]
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def poly_vp(p: int, poly: SparsePoly) -> int | float:
    """min coefficient valuation; INFINITY for the zero polynomial."""
    best: int | float = INFINITY
    for c in poly._terms.values():
        v = vp(p, c)
        if v < best:
            best = v
    return best


# -- serialization ----------------------------------------------------

def format_rational(q: Fraction) -> str:
    """Canonical "num/den" form, lowest terms, positive denominator."""
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def cache_file_name(n: int) -> str:
    return f"ubern_{n}.jsonl"


def poly_cache_lines(poly: SparsePoly) -> Iterator[str]:
    """Header line with (n, term count), then one line per term, canonical order."""
    if poly.weight_tag is None:
        raise ValueError("only weight-tagged polynomials are cached")
    yield json.dumps({"n": poly.weight_tag, "count": len(poly)}, separators=(",", ":"))
    for u, c in poly.items():
        yield json.dumps(
            {"u": u.to_pairs(), "c": format_rational(c)}, separators=(",", ":")
        )


def write_coefficient_cache(path: Path, poly: SparsePoly) -> None:
    path = Path(path)
    path.write_text("\n".join(poly_cache_lines(poly)) + "\n", encoding="utf-8")


def read_coefficient_cache(path: Path, n: int) -> SparsePoly:
    """Load and validate a cache file; any inconsistency raises CacheError."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CacheError(f"cannot read cache file {path}: {exc}") from exc
    if not lines:
        raise CacheError(f"{path}: empty cache file")
    try:
        header = json.loads(lines[0])
        if header.get("n") != n:
            raise CacheError(f"{path}: header n={header.get('n')!r}, expected {n}")
        expected = count_partitions(n)
        if header.get("count") != expected:
            raise CacheError(
                f"{path}: header count={header.get('count')!r}, expected {expected}"
            )
        if len(lines) - 1 != expected:
            raise CacheError(
                f"{path}: {len(lines) - 1} term lines, expected {expected}"
            )
        terms: dict[Partition, Fraction] = {}
        for line in lines[1:]:
            obj = json.loads(line)
            u = Partition.from_pairs(obj["u"])
            if u.weight != n:
                raise CacheError(f"{path}: term of weight {u.weight}, expected {n}")
            if u in terms:
                raise CacheError(f"{path}: duplicate term {u!r}")
            c = parse_rational(obj["c"])
            if not c:
                raise CacheError(f"{path}: zero coefficient stored for {u!r}")
            terms[u] = c
    except CacheError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise CacheError(f"{path}: malformed cache line ({exc})") from exc
    return SparsePoly(terms, weight_tag=n)
