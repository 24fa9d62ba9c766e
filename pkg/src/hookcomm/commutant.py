"""Jordan matrices, hook commutant coordinates, and nilpotent commutant samplers.

Fix the nilpotent Jordan matrix B of hook type (n, 1^m).  A matrix commutes
with B exactly when it has the block shape

    [ H | U ]      H = h_1 J + ... + h_{n-1} J^{n-1}   (upper triangular Toeplitz)
    [ D | V ]      U = e_1 u^T,   D = d e_n^T,         V arbitrary m x m

and the ones with strictly lower triangular V form a maximal nilpotent
subalgebra of the commutant.  Its coordinates are (h, u, d, v).  The same
construction generalizes to arbitrary Jordan types through Toeplitz strips
between pairs of blocks; ``nilcommutant_sampler`` draws random integer
points of that subalgebra for any partition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UnsupportedHookError
from .linalg import ExactMatrix, _coerce, rows_matmul
from .partitions import Partition


@dataclass(frozen=True, slots=True)
class HookType:
    """The hook partition (n, 1^m) with n >= 3 and m >= 1."""

    n: int
    m: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.m, int):
            raise UnsupportedHookError("hook parameters must be integers")
        if self.n < 3 or self.m < 1:
            raise UnsupportedHookError(
                f"hook type needs n >= 3 and m >= 1, got n={self.n}, m={self.m}"
            )

    @property
    def size(self) -> int:
        return self.n + self.m

    @property
    def partition(self) -> Partition:
        return Partition((self.n,) + (1,) * self.m)

    @classmethod
    def from_partition(cls, P: Partition) -> "HookType":
        if len(P) < 2 or P[0] < 3 or any(p != 1 for p in P.parts[1:]):
            raise UnsupportedHookError(f"{P} is not a hook (n, 1^m) with n >= 3")
        return cls(P[0], len(P) - 1)

    def __str__(self) -> str:
        return self.partition.compact()


def jordan_matrix(parts) -> ExactMatrix:
    """Block diagonal nilpotent Jordan matrix with the given block sizes.

    Accepts a Partition or any sequence of positive integers; blocks are laid
    out in the order given, which matters when a specific block arrangement
    is wanted.
    """
    sizes = list(parts.parts) if isinstance(parts, Partition) else [int(p) for p in parts]
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"block sizes must be positive, got {sizes}")
    total = sum(sizes)
    rows = [[0] * total for _ in range(total)]
    off = 0
    for s in sizes:
        for t in range(s - 1):
            rows[off + t][off + t + 1] = 1
        off += s
    return ExactMatrix(rows)


@dataclass(frozen=True)
class UBParams:
    """Coordinates of an element of the nilpotent commutant of a hook.

    h has length n - 1 (Toeplitz coefficients of the top-left block),
    u and d have length m (first row of the top-right block, last column of
    the bottom-left block), and v holds the strictly lower triangle of the
    m x m bottom-right block as rows of lengths 1 .. m-1: row j - 1 lists
    v[1,j], ..., v[j-1,j] for j = 2 .. m.
    """

    hook: HookType
    h: tuple = ()
    u: tuple = ()
    d: tuple = ()
    v: tuple = ()

    def __post_init__(self):
        n, m = self.hook.n, self.hook.m
        object.__setattr__(self, "h", tuple(_coerce(x) for x in self.h))
        object.__setattr__(self, "u", tuple(_coerce(x) for x in self.u))
        object.__setattr__(self, "d", tuple(_coerce(x) for x in self.d))
        object.__setattr__(self, "v", tuple(tuple(_coerce(x) for x in row) for row in self.v))
        if len(self.h) != n - 1:
            raise ValueError(f"h must have length n-1 = {n - 1}, got {len(self.h)}")
        if len(self.u) != m or len(self.d) != m:
            raise ValueError(f"u and d must have length m = {m}")
        if len(self.v) != max(m - 1, 0) or any(
            len(row) != j + 1 for j, row in enumerate(self.v)
        ):
            raise ValueError("v must hold rows of lengths 1 .. m-1")

    @classmethod
    def zero(cls, hook: HookType) -> "UBParams":
        n, m = hook.n, hook.m
        return cls(
            hook,
            h=(0,) * (n - 1),
            u=(0,) * m,
            d=(0,) * m,
            v=tuple((0,) * (j + 1) for j in range(m - 1)),
        )

    @property
    def dimension(self) -> int:
        n, m = self.hook.n, self.hook.m
        return (n - 1) + 2 * m + m * (m - 1) // 2

    def coordinates(self) -> tuple:
        """Flat coordinate vector ordered h, u, d, then v rows."""
        flat = list(self.h) + list(self.u) + list(self.d)
        for row in self.v:
            flat.extend(row)
        return tuple(flat)

    @classmethod
    def from_coordinates(cls, hook: HookType, coords: Sequence) -> "UBParams":
        n, m = hook.n, hook.m
        expected = (n - 1) + 2 * m + m * (m - 1) // 2
        coords = list(coords)
        if len(coords) != expected:
            raise ValueError(f"expected {expected} coordinates, got {len(coords)}")
        h = coords[: n - 1]
        u = coords[n - 1 : n - 1 + m]
        d = coords[n - 1 + m : n - 1 + 2 * m]
        rest = coords[n - 1 + 2 * m :]
        v, pos = [], 0
        for j in range(m - 1):
            v.append(tuple(rest[pos : pos + j + 1]))
            pos += j + 1
        return cls(hook, h=tuple(h), u=tuple(u), d=tuple(d), v=tuple(v))

    def to_obj(self) -> dict:
        from .linalg import _entry_str

        return {
            "n": self.hook.n,
            "m": self.hook.m,
            "h": [_entry_str(x) for x in self.h],
            "u": [_entry_str(x) for x in self.u],
            "d": [_entry_str(x) for x in self.d],
            "v": [[_entry_str(x) for x in row] for row in self.v],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "UBParams":
        try:
            hook = HookType(int(obj["n"]), int(obj["m"]))
            h = [Fraction(str(x)) for x in obj["h"]]
            u = [Fraction(str(x)) for x in obj["u"]]
            d = [Fraction(str(x)) for x in obj["d"]]
            v = [tuple(Fraction(str(x)) for x in row) for row in obj["v"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed commutant coordinates: {exc}") from exc
        return cls(hook, h=tuple(h), u=tuple(u), d=tuple(d), v=tuple(v))


def ub_coordinate_positions(hook: HookType) -> list[tuple[str, list[tuple[int, int]]]]:
    """Matrix positions filled by each flat coordinate, in coordinate order.

    Coordinate i of ``UBParams.coordinates`` writes its value into every
    (row, col) listed at index i.  Single source of truth for the layout.
    """
    n, m = hook.n, hook.m
    out = []
    for i in range(1, n):
        out.append((f"h{i}", [(r, r + i) for r in range(n - i)]))
    for j in range(1, m + 1):
        out.append((f"u{j}", [(0, n + j - 1)]))
    for j in range(1, m + 1):
        out.append((f"d{j}", [(n + j - 1, n - 1)]))
    for j in range(2, m + 1):
        for i in range(1, j):
            out.append((f"v{i},{j}", [(n + j - 1, n + i - 1)]))
    return out


def build_ub(hook: HookType, params: UBParams) -> ExactMatrix:
    """Materialize the commutant element with the given coordinates.

    The result commutes with ``jordan_matrix(hook.partition)`` and is
    nilpotent for every choice of coordinates.
    """
    if params.hook != hook:
        raise ValueError(f"coordinates are for {params.hook}, not {hook}")
    size = hook.size
    rows = [[0] * size for _ in range(size)]
    coords = params.coordinates()
    for value, (_, positions) in zip(coords, ub_coordinate_positions(hook)):
        for r, c in positions:
            rows[r][c] = value
    return ExactMatrix(rows)


def commutes(A: ExactMatrix, B: ExactMatrix) -> bool:
    """True when AB = BA.  Both matrices must be square of equal size."""
    if not (A.is_square() and B.is_square() and A.nrows == B.nrows):
        raise ValueError(f"commutation needs equal square shapes, got {A.shape} and {B.shape}")
    a, b = A.row_lists(), B.row_lists()
    return rows_matmul(a, b) == rows_matmul(b, a)


# -- sampling the nilpotent commutant of an arbitrary Jordan type ---------


def commutant_strips(parts: Sequence[int]) -> list[tuple[int, list[tuple[int, int]]]]:
    """Free coordinates of the nilpotent commutant of J with the given blocks.

    Between blocks bi (rows, size a) and bj (cols, size b) the commutant is
    spanned by Toeplitz strips along the diagonals ending at the top-right
    corner of the block; strip s (s = 0 longest) has length min(a, b) - s.
    Dropping the longest strip whenever the sizes are equal and bi <= bj
    (the identity coefficient on diagonal blocks, and one triangle between
    equal size blocks) leaves a maximal nilpotent subalgebra.

    Returns (strip index within its block pair, positions) in a fixed
    deterministic order.
    """
    sizes = list(parts)
    if any(s < 1 for s in sizes):
        raise ValueError(f"block sizes must be positive, got {sizes}")
    offsets = []
    off = 0
    for s in sizes:
        offsets.append(off)
        off += s
    out = []
    for bi, a in enumerate(sizes):
        for bj, b in enumerate(sizes):
            small = min(a, b)
            start = 1 if (a == b and bi <= bj) else 0
            for s in range(start, small):
                shift = b - small + s
                positions = [
                    (offsets[bi] + x, offsets[bj] + x + shift) for x in range(small - s)
                ]
                out.append((s, positions))
    return out


def sample_commutant_rows(P: Partition, rng: random.Random, bound: int) -> list[list[int]]:
    """Random integer point of the nilpotent commutant of jordan_matrix(P)."""
    size = P.weight
    rows = [[0] * size for _ in range(size)]
    for _, positions in commutant_strips(P.parts):
        c = rng.randint(-bound, bound)
        for r, col in positions:
            rows[r][col] = c
    return rows


def nilcommutant_sampler(P: Partition, seed: int, bound: int = 10) -> ExactMatrix:
    """Deterministic random element of the nilpotent commutant of J_P.

    Same (P, seed, bound) always gives the same matrix.  Every output
    commutes with ``jordan_matrix(P)`` and is nilpotent.
    """
    if not isinstance(P, Partition):
        P = Partition(P)
    if not P:
        raise ValueError("cannot sample the commutant of an empty partition")
    if bound < 1:
        raise ValueError(f"coefficient bound must be positive, got {bound}")
    rng = random.Random(seed)
    return ExactMatrix(sample_commutant_rows(P, rng, bound))
