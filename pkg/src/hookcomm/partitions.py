"""Integer partitions and the part-multiset operations behind the classifier.

A partition is a nonincreasing tuple of positive integers.  The operations
here are the combinatorial layer everything else sits on: almost rectangular
partitions (Jordan types of powers of a single nilpotent Jordan block),
multiset subtraction and union, the dominance partial order, and bounded
enumeration in descending lexicographic order.
"""

from __future__ import annotations

import operator
from collections import Counter
from typing import Iterable, Iterator

from .errors import ResourceLimitError

# Partitions of larger numbers than this are refused by enumerate_partitions;
# p(40) = 37338 keeps exhaustive sweeps tractable.
ENUMERATION_CAP = 40


class Partition:
    """A nonincreasing tuple of positive integers.

    Parts may be given in any order; they are sorted.  Zero parts are
    dropped, negative or non-integer parts rejected.
    """

    __slots__ = ("_parts", "_weight")

    def __init__(self, parts: Iterable[int] = ()):
        cleaned = []
        for p in parts:
            p = operator.index(p)
            if p < 0:
                raise ValueError(f"partition parts must be nonnegative, got {p}")
            if p > 0:
                cleaned.append(int(p))
        cleaned.sort(reverse=True)
        self._parts = tuple(cleaned)
        self._weight = sum(cleaned)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse a comma-separated list of parts, e.g. ``"3,1,1,1"``."""
        text = text.strip()
        if not text:
            return cls()
        return cls(int(tok) for tok in text.split(","))

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    @property
    def weight(self) -> int:
        """Sum of the parts."""
        return self._weight

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram."""
        if not self._parts:
            return Partition()
        return Partition(
            sum(1 for p in self._parts if p >= j) for j in range(1, self._parts[0] + 1)
        )

    def compact(self) -> str:
        """Exponent-compressed form, e.g. ``(3,1^3)``."""
        if not self._parts:
            return "()"
        groups = []
        for part in sorted(set(self._parts), reverse=True):
            mult = self._parts.count(part)
            groups.append(f"{part}^{mult}" if mult > 1 else f"{part}")
        return "(" + ",".join(groups) + ")"

    def __len__(self) -> int:
        return len(self._parts)

    def __getitem__(self, i):
        return self._parts[i]

    def __iter__(self):
        return iter(self._parts)

    def __bool__(self) -> bool:
        return bool(self._parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self._parts == other._parts
        if isinstance(other, tuple):
            return self._parts == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._parts)

    def __lt__(self, other) -> bool:
        # lexicographic on the part tuples; use dominates for the dominance order
        if isinstance(other, Partition):
            return self._parts < other._parts
        return NotImplemented

    def __le__(self, other) -> bool:
        if isinstance(other, Partition):
            return self._parts <= other._parts
        return NotImplemented

    def __gt__(self, other) -> bool:
        if isinstance(other, Partition):
            return self._parts > other._parts
        return NotImplemented

    def __ge__(self, other) -> bool:
        if isinstance(other, Partition):
            return self._parts >= other._parts
        return NotImplemented

    def __repr__(self) -> str:
        return f"Partition({self._parts!r})"

    def __str__(self) -> str:
        return self.compact()


def ar(n: int, k: int) -> Partition:
    """Almost rectangular partition of n into at most k nearly equal parts.

    Writing n = k*q + r with 0 <= r < k, this is r parts equal to q + 1
    followed by k - r parts equal to q, zero parts dropped.  It is the
    Jordan type of the k-th power of a single nilpotent Jordan block of
    size n, which is how the tests cross-check it.
    """
    if n < 1:
        raise ValueError(f"block size must be positive, got {n}")
    if not 1 <= k <= n:
        raise ValueError(f"power must be in 1..{n}, got {k}")
    q, r = divmod(n, k)
    return Partition([q + 1] * r + [q] * (k - r))


def is_almost_rectangular(P: Partition) -> bool:
    """True when the largest and smallest parts differ by at most 1."""
    if not P:
        return True
    return P[0] - P[len(P) - 1] <= 1


def is_rr(P: Partition) -> bool:
    """True when consecutive parts differ by at least 2 (super distinct)."""
    parts = P.parts
    return all(parts[i] - parts[i + 1] >= 2 for i in range(len(parts) - 1))


def is_universally_commuting(P: Partition) -> bool:
    """True for partitions of the form (2^k, 1^l), i.e. all parts at most 2.

    Nilpotent matrices of these types commute with a nilpotent matrix of
    every Jordan type of the same size.
    """
    return not P or P[0] <= 2


def subtract(P: Partition, S: Partition) -> Partition | None:
    """Remove the parts of S from P as multisets, or None if S is not contained."""
    remaining = Counter(P.parts)
    remaining.subtract(Counter(S.parts))
    if any(c < 0 for c in remaining.values()):
        return None
    return Partition(remaining.elements())


def concat(P: Partition, Q: Partition) -> Partition:
    """Multiset union of the parts, sorted back into a partition."""
    return Partition(P.parts + Q.parts)


def dominates(P: Partition, Q: Partition) -> bool:
    """Dominance order: every prefix sum of P is at least that of Q.

    Defined only for partitions of equal weight.
    """
    if P.weight != Q.weight:
        raise ValueError(
            f"dominance compares partitions of equal weight, got {P.weight} and {Q.weight}"
        )
    a = b = 0
    for i in range(max(len(P), len(Q))):
        a += P[i] if i < len(P) else 0
        b += Q[i] if i < len(Q) else 0
        if a < b:
            return False
    return True


def enumerate_partitions(total: int, cap: int = ENUMERATION_CAP) -> Iterator[Partition]:
    """Yield all partitions of ``total`` in descending lexicographic order.

    Refuses totals above ``cap`` so exhaustive sweeps stay bounded.
    """
    total = operator.index(total)
    if total < 0:
        raise ValueError(f"cannot partition a negative number: {total}")
    if total > cap:
        raise ResourceLimitError(
            f"refusing to enumerate partitions of {total} (cap {cap})"
        )
    return _descending_partitions(total, total, ())


def _descending_partitions(remaining, largest, prefix):
    if remaining == 0:
        yield Partition(prefix)
        return
    for first in range(min(largest, remaining), 0, -1):
        yield from _descending_partitions(remaining - first, first, prefix + (first,))
