"""Integer partitions as sparse exponent vectors.

A partition u is stored as (part, multiplicity) pairs with every stored
multiplicity >= 1.  Its weight is the partitioned integer sum(i * u_i),
its degree the number of parts counted with multiplicity sum(u_i).
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import PreconditionError

__all__ = [
    "Partition",
    "enumerate_partitions",
    "enumerate_partitions_bounded",
    "count_partitions",
    "is_reduced",
    "reduce_partition",
]


class Partition:
    """Immutable map part-size -> multiplicity, hashable, zero-free."""

    __slots__ = ("_pairs",)

    def __init__(self, parts: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = parts.items() if isinstance(parts, Mapping) else tuple(parts)
        pairs = []
        last = 0
        for part, mult in sorted(items):
            part = int(part)
            mult = int(mult)
            if part < 1:
                raise ValueError(f"part sizes must be positive, got {part}")
            if mult < 0:
                raise ValueError(f"multiplicities must be nonnegative, got {mult}")
            if part == last:
                raise ValueError(f"duplicate part {part}")
            last = part
            if mult:
                pairs.append((part, mult))
        self._pairs = tuple(pairs)

    @classmethod
    def _raw(cls, pairs: tuple[tuple[int, int], ...]) -> "Partition":
        # internal fast path: pairs already sorted ascending and validated
        self = object.__new__(cls)
        self._pairs = pairs
        return self

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "Partition":
        """Build from serialized [[part, mult], ...] pairs."""
        return cls((int(p), int(m)) for p, m in pairs)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return self._pairs

    @property
    def weight(self) -> int:
        return sum(part * mult for part, mult in self._pairs)

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self._pairs)

    def multiplicity(self, part: int) -> int:
        for p, m in self._pairs:
            if p == part:
                return m
        return 0

    def merged(self, extra: Mapping[int, int]) -> "Partition":
        """New partition with the multiplicities of `extra` added in."""
        counts = dict(self._pairs)
        for part, mult in extra.items():
            counts[part] = counts.get(part, 0) + mult
        return Partition(counts)

    def to_pairs(self) -> list[list[int]]:
        """Serialized form: [[part, mult], ...], part ascending."""
        return [[part, mult] for part, mult in self._pairs]

    def sort_key(self) -> tuple:
        """Orders by weight, then descending-lexicographic by largest part."""
        expanded = []
        for part, mult in reversed(self._pairs):
            expanded.extend([-part] * mult)
        return (self.weight, tuple(expanded))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._pairs)

    def __len__(self) -> int:
        return len(self._pairs)

    def __bool__(self) -> bool:
        return bool(self._pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        body = ", ".join(f"{p}: {m}" for p, m in self._pairs)
        return "Partition({%s})" % body


def _runs(n: int, cap: int) -> Iterator[tuple[tuple[int, int], ...]]:
    # (part, mult) runs with parts strictly decreasing, emitted in
    # descending-lexicographic order of the expanded part list
    if n == 0:
        yield ()
        return
    if cap > n:
        cap = n
    for part in range(cap, 0, -1):
        for mult in range(n // part, 0, -1):
            rest = n - part * mult
            if rest == 0:
                yield ((part, mult),)
            else:
                head = ((part, mult),)
                for tail in _runs(rest, part - 1):
                    yield head + tail


def _runs_bounded(n: int, cap: int, budget: int) -> Iterator[tuple[tuple[int, int], ...]]:
    if n == 0:
        yield ()
        return
    if budget <= 0 or cap <= 0:
        return
    if cap > n:
        cap = n
    if cap * budget < n:
        return
    for part in range(cap, 0, -1):
        for mult in range(min(n // part, budget), 0, -1):
            rest = n - part * mult
            if rest == 0:
                yield ((part, mult),)
            else:
                head = ((part, mult),)
                for tail in _runs_bounded(rest, part - 1, budget - mult):
                    yield head + tail


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """All partitions of weight n, descending-lexicographic by largest part.

    n = 0 yields the single empty partition.  The count of yielded items
    equals count_partitions(n).
    """
    if n < 0:
        raise PreconditionError("weight must be nonnegative")
    for runs in _runs(n, n):
        yield Partition._raw(tuple(reversed(runs)))


def enumerate_partitions_bounded(n: int, max_degree: int) -> Iterator[Partition]:
    """Partitions of weight n with degree <= max_degree, canonical order."""
    if n < 0:
        raise PreconditionError("weight must be nonnegative")
    if n == 0:
        yield Partition()
        return
    for runs in _runs_bounded(n, n, max_degree):
        yield Partition._raw(tuple(reversed(runs)))


_PCOUNT = [1]


def count_partitions(n: int) -> int:
    """Partition count p(n) via the Euler pentagonal-number recurrence."""
    if n < 0:
        raise PreconditionError("weight must be nonnegative")
    while len(_PCOUNT) <= n:
        m = len(_PCOUNT)
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = -1 if k % 2 == 0 else 1
            total += sign * _PCOUNT[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * _PCOUNT[m - g2]
            k += 1
        _PCOUNT.append(total)
    return _PCOUNT[n]


def _check_odd_prime(p: int) -> None:
    from .padic import is_prime

    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p}")


def _power_of_p_minus_one(p: int, part: int) -> bool:
    # part == p**alpha - 1 for some alpha >= 1
    x = part + 1
    if x % p:
        return False
    while x % p == 0:
        x //= p
    return x == 1


def is_reduced(p: int, u: Partition) -> bool:
    """True iff every part is p**a - 1 except at most one, of multiplicity 1."""
    _check_odd_prime(p)
    exceptional = 0
    for part, mult in u:
        if _power_of_p_minus_one(p, part):
            continue
        exceptional += 1
        if exceptional > 1 or mult != 1:
            return False
    return True


def reduce_partition(p: int, u: Partition) -> Partition:
    """Weight-preserving transform of u onto a reduced partition.

    Parts are processed in ascending size order; the three rewrite rules are
    independent per part, so the result does not depend on the order:

    * a part eps*p**a - 1 with p not dividing eps > 1 moves its whole
      multiplicity onto the part p**a - 1;
    * a part t with multiplicity >= p and p not dividing t + 1 is replaced
      by ceil(mult / (p-1)) - 1 copies of the part p - 1;
    * a part t with multiplicity < p and p not dividing t + 1 is dropped.

    Any weight lost is restored as a single part of the residual size.
    Already-reduced inputs come back unchanged.
    """
    _check_odd_prime(p)
    if not u:
        raise PreconditionError("cannot reduce the empty partition")
    counts: dict[int, int] = {}
    for part, mult in u:
        succ = part + 1
        if succ % p == 0:
            alpha = 0
            while succ % p == 0:
                succ //= p
                alpha += 1
            target = part if succ == 1 else p**alpha - 1
            counts[target] = counts.get(target, 0) + mult
        elif mult >= p:
            moved = -(-mult // (p - 1)) - 1
            if moved:
                counts[p - 1] = counts.get(p - 1, 0) + moved
        # else: dropped
    residual = u.weight - sum(part * mult for part, mult in counts.items())
    if residual > 0:
        counts[residual] = counts.get(residual, 0) + 1
    return Partition(counts)
