"""Batched rank computation over a random prime field.

Ranks over GF(p) lower bound ranks over the rationals, with equality for
all but finitely many primes, so a rank profile computed mod a random
31 bit prime is almost always the rational one.  Callers confirm any
profile they act on with the exact integer path; these routines only have
to be fast.

The elimination is branch free so that numpy can run it across a whole
batch of matrices at once: every step scales the full matrix by the pivot
value and subtracts the pivot row, entirely in int64 arithmetic mod p.
The prime is capped so that products and row combinations stay below
2**63.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .errors import BadPrimeError

PRIME_LIMIT = 1 << 30


def is_probable_prime(p: int) -> bool:
    """Miller-Rabin with bases sufficient for every integer below 3.3e24."""
    if p < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % small == 0:
            return p == small
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def prime_cap(n: int) -> int:
    """Largest safe modulus for n term int64 accumulations: n * p**2 < 2**63."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return math.isqrt((2**63 - 1) // n)


def random_prime(lo: int, hi: int, rng: random.Random) -> int:
    """A uniform-ish random prime in [lo, hi]."""
    if not 2 <= lo <= hi:
        raise ValueError(f"empty prime range [{lo}, {hi}]")
    for _ in range(10000):
        candidate = rng.randint(lo, hi) | 1
        if lo <= candidate <= hi and is_probable_prime(candidate):
            return candidate
    raise BadPrimeError(f"no prime found in [{lo}, {hi}]")


def choose_prime(n: int, rng: random.Random) -> int:
    """A random prime safe for batched elimination of n x n matrices."""
    hi = min(PRIME_LIMIT, prime_cap(n)) - 1
    return random_prime(max(3, hi // 2), hi, rng)


def batched_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks over GF(p) of a (b, r, c) int64 batch; entries must be reduced mod p.

    Returns a (b,) int64 array.  The input is not modified.
    """
    if mats.ndim != 3:
        raise ValueError(f"expected a (b, r, c) batch, got shape {mats.shape}")
    if not is_probable_prime(p):
        raise BadPrimeError(f"{p} is not prime")
    if p >= prime_cap(max(mats.shape[1], 2)):
        raise BadPrimeError(f"prime {p} too large for safe int64 elimination")
    A = mats.astype(np.int64, copy=True)
    b, r, c = A.shape
    rank = np.zeros(b, dtype=np.int64)
    used = np.zeros((b, r), dtype=bool)
    batch_idx = np.arange(b)
    for col in range(c):
        vals = A[:, :, col]
        candidates = (vals != 0) & ~used
        has = candidates.any(axis=1)
        piv = np.argmax(candidates, axis=1)
        pivval = vals[batch_idx, piv].copy()
        pivval[~has] = 1
        pivrow = A[batch_idx, piv, :].copy()
        pivrow[~has] = 0
        factors = vals.copy()
        factors[~has] = 0
        factors[batch_idx, piv] = 0
        factors[used] = 0
        # entries stay below p, so both products stay below p**2 < 2**62
        A *= pivval[:, None, None]
        A -= factors[:, :, None] * pivrow[:, None, :]
        A %= p
        used[batch_idx[has], piv[has]] = True
        rank += has
    return rank


def batched_rank_sequences(mats: np.ndarray, p: int) -> np.ndarray:
    """Rank profiles (rank of A**l for l = 0..N) of a (b, N, N) batch mod p.

    Returns a (b, N + 1) int16 array.  Once every rank in a row hits zero
    the remaining entries stay zero; a row of a non nilpotent matrix ends
    at its stable positive rank instead, which downstream profile checks
    reject.
    """
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError(f"expected a square (b, N, N) batch, got shape {mats.shape}")
    b, N, _ = mats.shape
    if p >= prime_cap(max(N, 2)):
        raise BadPrimeError(f"prime {p} too large for {N} term int64 products")
    base = np.mod(mats.astype(np.int64), p)
    powers = base.copy()
    out = np.zeros((b, N + 1), dtype=np.int16)
    out[:, 0] = N
    # rows whose rank reaches zero stay zero; drop them from the batch so
    # later powers only touch matrices still alive
    idx = np.arange(b)
    for l in range(1, N + 1):
        if idx.size == 0:
            break
        ranks = batched_rank_mod_p(powers, p).astype(np.int16)
        out[idx, l] = ranks
        alive = ranks > 0
        if not alive.all():
            idx = idx[alive]
            powers = powers[alive]
            base = base[alive]
        if idx.size and l < N:
            powers = np.matmul(powers, base) % p
    return out


def rank_sequence_mod_p(mat: np.ndarray, p: int) -> list[int]:
    """Rank profile of one square int64 matrix mod p."""
    arr = np.asarray(mat, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return [int(x) for x in batched_rank_sequences(arr[None, :, :], p)[0]]
