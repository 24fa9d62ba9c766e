"""Exact rational matrices with rank and Jordan-type computations.

Entries are Python ints or ``fractions.Fraction``; every computation is
exact.  Ranks come from fraction-free (integer) elimination after clearing
denominators.  Jordan types of nilpotent matrices are read off the rank
sequence of successive powers: the type is the conjugate of the sequence of
rank drops.  A modular fast path lives in :mod:`hookcomm.modular`; here the
rational route is the ground truth.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import BadPrimeError, NotNilpotentError, VerificationError
from .partitions import Partition

_mpz = gmpy2.mpz


def _coerce(x):
    """Normalize an entry to int or Fraction (integral fractions become int)."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, bool):
        raise TypeError("matrix entries must be numbers, not bool")
    return operator.index(x)


class ExactMatrix:
    """An immutable matrix over the rationals.

    Indexing is zero-based: ``A[i, j]`` is the entry in row i, column j.
    """

    __slots__ = ("_rows",)

    def __init__(self, rows):
        data = tuple(tuple(_coerce(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("matrix rows must have equal length")
        self._rows = data

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def row_lists(self) -> list[list]:
        return [list(r) for r in self._rows]

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self._rows))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols})"

    # -- serialization ----------------------------------------------------

    def to_obj(self) -> dict:
        """JSON-ready dict with entries as exact decimal strings like "3" or "-1/2"."""
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[_entry_str(x) for x in row] for row in self._rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True)

    @classmethod
    def from_obj(cls, obj) -> "ExactMatrix":
        if not isinstance(obj, dict):
            raise ValueError("matrix object must be a dict")
        try:
            nrows, ncols = int(obj["rows"]), int(obj["cols"])
            entries = obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed matrix object: {exc}") from exc
        if len(entries) != nrows or any(len(r) != ncols for r in entries):
            raise ValueError("matrix entry grid does not match declared shape")
        try:
            rows = [[Fraction(str(x)) for x in row] for row in entries]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed matrix entry: {exc}") from exc
        return cls(rows)

    @classmethod
    def from_json(cls, text: str) -> "ExactMatrix":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON: {exc}") from exc
        return cls.from_obj(obj)


def _entry_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


@dataclass(frozen=True)
class JordanReport:
    """Rank sequence r_l = rank(A^l) of a nilpotent matrix and what it implies.

    ``rank_sequence`` starts at r_0 = size and ends at the first zero;
    ``jordan_type`` is the conjugate of its drop sequence; the nilpotency
    index is the first exponent with vanishing power.
    """

    rank_sequence: tuple[int, ...]
    jordan_type: Partition
    nilpotency_index: int

    def __post_init__(self):
        seq = self.rank_sequence
        n = seq[0]
        ok = (
            len(seq) >= 2
            and seq[-1] == 0
            and all(seq[i] > seq[i + 1] for i in range(len(seq) - 1))
            and self.nilpotency_index == len(seq) - 1
            and self.jordan_type.weight == n
            and tuple(self.jordan_type.conjugate().parts)
            == tuple(seq[i] - seq[i + 1] for i in range(len(seq) - 1))
        )
        if not ok:
            raise VerificationError(f"inconsistent rank report: {seq}")

    def to_obj(self) -> dict:
        return {
            "rank_sequence": list(self.rank_sequence),
            "jordan_type": list(self.jordan_type.parts),
            "nilpotency_index": self.nilpotency_index,
        }


# -- arithmetic -----------------------------------------------------------


def matmul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Exact matrix product."""
    if A.ncols != B.nrows:
        raise ValueError(f"shape mismatch: {A.shape} @ {B.shape}")
    return ExactMatrix(rows_matmul(A.row_lists(), B.row_lists()))


def matpow(A: ExactMatrix, k: int) -> ExactMatrix:
    """k-th power of a square matrix, k >= 0."""
    if not A.is_square():
        raise ValueError("matrix power needs a square matrix")
    k = operator.index(k)
    if k < 0:
        raise ValueError("negative powers are not supported")
    result = ExactMatrix.identity(A.nrows)
    for _ in range(k):
        result = matmul(result, A)
    return result


def rows_matmul(A: list[list], B: list[list]) -> list[list]:
    """Product of row-major nested lists; works for int, mpz or Fraction entries."""
    width = len(B[0])
    out = []
    for arow in A:
        acc = [0] * width
        for t, a in enumerate(arow):
            if a:
                brow = B[t]
                for j in range(width):
                    acc[j] += a * brow[j]
        out.append(acc)
    return out


def bareiss_rank(rows: list[list]) -> int:
    """Rank of an integer matrix by fraction-free elimination with pivoting.

    Intermediate entries are minors of the input, so all divisions are exact;
    a nonzero remainder would mean corrupted arithmetic and raises.
    """
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    rank = 0
    prev = 1
    pr = 0
    for col in range(nc):
        piv = None
        for r in range(pr, nr):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != pr:
            m[pr], m[piv] = m[piv], m[pr]
        pivot_row = m[pr]
        pv = pivot_row[col]
        for r in range(pr + 1, nr):
            row = m[r]
            f = row[col]
            for c in range(col + 1, nc):
                num = row[c] * pv - f * pivot_row[c]
                q, rem = divmod(num, prev)
                if rem:
                    raise VerificationError("inexact division in fraction-free elimination")
                row[c] = q
            row[col] = 0
        prev = pv
        rank += 1
        pr += 1
        if pr == nr:
            break
    return rank


def int_rank_sequence(rows: list[list[int]], use_mpz: bool = True) -> list[int]:
    """Exact rank sequence [rank(A^0), rank(A^1), ...] of an integer matrix.

    Stops after the first zero rank, or as soon as the rank stabilizes at a
    nonzero value (the rank of powers can never drop again once it repeats).
    """
    n = len(rows)
    base = [[_mpz(x) for x in r] for r in rows] if use_mpz else [list(r) for r in rows]
    cur = base
    seq = [n]
    while True:
        r = bareiss_rank(cur)
        stalled = r == seq[-1]
        seq.append(r)
        if r == 0 or stalled:
            return seq
        cur = rows_matmul(cur, base)


def rank_sequence_to_type(seq: list[int]) -> Partition:
    """Jordan type encoded by a rank sequence ending in zero.

    The drops r_{l-1} - r_l count blocks of size at least l, so the type is
    the conjugate of the drop sequence.  Raises ValueError when the sequence
    is not realizable (not strictly decreasing to zero with nonincreasing
    drops), which the modular fast path uses to detect unlucky primes.
    """
    seq = list(seq)
    while len(seq) > 1 and seq[-1] == 0 and seq[-2] == 0:
        seq.pop()
    if len(seq) < 2 or seq[-1] != 0 or any(s < 0 for s in seq):
        raise ValueError(f"rank sequence must strictly decrease to zero: {seq}")
    diffs = [seq[i] - seq[i + 1] for i in range(len(seq) - 1)]
    if any(d <= 0 for d in diffs):
        raise ValueError(f"rank sequence must strictly decrease to zero: {seq}")
    if any(diffs[i] < diffs[i + 1] for i in range(len(diffs) - 1)):
        raise ValueError(f"rank drops must be nonincreasing: {seq}")
    return Partition(diffs).conjugate()


def _scaled_int_rows(A: ExactMatrix) -> list[list[int]]:
    # One global denominator so A and all its powers rescale consistently.
    denom = 1
    for row in A.rows:
        for x in row:
            if isinstance(x, Fraction):
                denom = math.lcm(denom, x.denominator)
    return [[int(x * denom) for x in row] for row in A.rows]


def _row_scaled_int_rows(A: ExactMatrix) -> list[list[int]]:
    # Row scaling preserves rank and keeps entries smaller than global scaling.
    out = []
    for row in A.rows:
        denom = 1
        for x in row:
            if isinstance(x, Fraction):
                denom = math.lcm(denom, x.denominator)
        out.append([int(x * denom) for x in row])
    return out


def rank(A: ExactMatrix) -> int:
    """Rank over the rationals."""
    return bareiss_rank(_row_scaled_int_rows(A))


def jordan_type_of(A: ExactMatrix) -> JordanReport:
    """Rank sequence and Jordan type of a nilpotent matrix.

    Raises NotNilpotentError when some power has stable nonzero rank;
    this doubles as the membership test for A^size = 0.
    """
    if not A.is_square():
        raise ValueError("Jordan type needs a square matrix")
    seq = int_rank_sequence(_scaled_int_rows(A))
    if seq[-1] != 0:
        raise NotNilpotentError(
            f"rank stabilizes at {seq[-1]} > 0 after {len(seq) - 1} powers"
        )
    try:
        jtype = rank_sequence_to_type(seq)
    except ValueError as exc:  # impossible for exact arithmetic
        raise VerificationError(str(exc)) from exc
    return JordanReport(tuple(seq), jtype, len(seq) - 1)


def rank_mod_p(A: ExactMatrix, p: int) -> int:
    """Rank of A reduced modulo the prime p.

    Always at most rank(A).  Raises BadPrimeError when an entry denominator
    is divisible by p; callers retry with a new prime.
    """
    p = operator.index(p)
    if p < 2 or not gmpy2.is_prime(p):
        raise BadPrimeError(f"modulus must be prime, got {p}")
    reduced = []
    for row in A.rows:
        out = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise BadPrimeError(f"denominator {x.denominator} divisible by {p}")
                out.append(x.numerator * pow(x.denominator, -1, p) % p)
            else:
                out.append(x % p)
        reduced.append(out)
    return _gf_rank(reduced, p)


def _gf_rank(m: list[list[int]], p: int) -> int:
    nr, nc = len(m), len(m[0])
    rank_ = 0
    pr = 0
    for col in range(nc):
        piv = None
        for r in range(pr, nr):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[pr], m[piv] = m[piv], m[pr]
        inv = pow(m[pr][col], -1, p)
        pivot_row = [x * inv % p for x in m[pr]]
        m[pr] = pivot_row
        for r in range(pr + 1, nr):
            f = m[r][col]
            if f:
                row = m[r]
                for c in range(col, nc):
                    row[c] = (row[c] - f * pivot_row[c]) % p
        rank_ += 1
        pr += 1
        if pr == nr:
            break
    return rank_
