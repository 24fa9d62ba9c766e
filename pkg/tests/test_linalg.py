import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hookcomm.commutant import jordan_matrix
from hookcomm.errors import BadPrimeError, NotNilpotentError, VerificationError
from hookcomm.linalg import (
    ExactMatrix,
    JordanReport,
    int_rank_sequence,
    jordan_type_of,
    matpow,
    rank,
    rank_mod_p,
    rank_sequence_to_type,
)
from hookcomm.partitions import Partition, concat


def _gauss_rank(rows):
    """Plain fraction Gaussian elimination, kept separate from the library."""
    m = [[Fraction(x) for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Fraction(1, 1) / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nr:
            break
    return r


def _random_matrix(rng, nr, nc, rational=False):
    def entry():
        if rational and rng.random() < 0.4:
            return Fraction(rng.randint(-6, 6), rng.randint(1, 9))
        return rng.randint(-6, 6)

    return ExactMatrix([[entry() for _ in range(nc)] for _ in range(nr)])


class TestExactMatrix:
    def test_shape_and_entries(self):
        A = ExactMatrix([[1, 2], [3, 4]])
        assert A.shape == (2, 2)
        assert A[1, 0] == 3

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            ExactMatrix([[1, 2], [3]])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ExactMatrix([])

    def test_zeros_identity(self):
        assert ExactMatrix.zeros(2, 3).rows == ((0, 0, 0), (0, 0, 0))
        assert ExactMatrix.identity(2).rows == ((1, 0), (0, 1))

    def test_matmul(self):
        J = jordan_matrix((3,))
        sq = J @ J
        assert sq[0, 2] == 1
        assert sum(1 for row in sq.rows for x in row if x != 0) == 1

    def test_matmul_shape_mismatch(self):
        with pytest.raises(ValueError):
            ExactMatrix.zeros(2, 3) @ ExactMatrix.zeros(2, 3)

    def test_rank_one_products_cancel(self):
        # e_1 u^T times e'_1 v^T vanishes when u^T e'_1 = 0
        u = ExactMatrix([[0, 1, 0]])
        e1 = ExactMatrix([[1], [0], [0]])
        left = e1 @ u
        right = ExactMatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        assert (left @ right) == ExactMatrix.zeros(3, 3)

    def test_transpose(self):
        A = ExactMatrix([[1, 2, 3], [4, 5, 6]])
        assert A.transpose().rows == ((1, 4), (2, 5), (3, 6))

    def test_fraction_entries_preserved(self):
        A = ExactMatrix([[Fraction(1, 3)]])
        assert A[0, 0] == Fraction(1, 3)

    def test_json_round_trip(self):
        A = ExactMatrix([[Fraction(-1, 3), 2], [0, Fraction(7, 2)]])
        B = ExactMatrix.from_json(A.to_json())
        assert A == B
        obj = json.loads(A.to_json())
        assert obj["entries"][0][0] == "-1/3"

    def test_from_json_malformed(self):
        with pytest.raises(ValueError):
            ExactMatrix.from_json('{"rows": 2}')
        with pytest.raises(ValueError):
            ExactMatrix.from_json('{"rows":1,"cols":1,"entries":[["x"]]}')


class TestRank:
    def test_trivial(self):
        assert rank(ExactMatrix.zeros(4, 4)) == 0
        assert rank(ExactMatrix.identity(5)) == 5

    def test_jordan_square(self):
        assert rank(matpow(jordan_matrix((6,)), 2)) == 4

    def test_matches_gaussian_elimination(self):
        rng = random.Random(1234)
        for _ in range(60):
            nr = rng.randint(1, 6)
            nc = rng.randint(1, 6)
            A = _random_matrix(rng, nr, nc, rational=True)
            assert rank(A) == _gauss_rank(A.rows)

    def test_low_rank_products(self):
        rng = random.Random(99)
        for _ in range(20):
            A = _random_matrix(rng, 5, 2)
            B = _random_matrix(rng, 2, 5)
            assert rank(A @ B) <= 2


class TestRankSequenceToType:
    def test_known(self):
        assert rank_sequence_to_type([6, 2, 1, 0]) == (3, 1, 1, 1)
        assert rank_sequence_to_type([7, 4, 3, 2, 1, 0]) == (5, 1, 1)

    def test_padding_tolerated(self):
        assert rank_sequence_to_type([7, 4, 3, 2, 1, 0, 0, 0]) == (5, 1, 1)
        assert rank_sequence_to_type([4, 0, 0, 0, 0]) == (1, 1, 1, 1)

    def test_invalid(self):
        with pytest.raises(ValueError):
            rank_sequence_to_type([4, 2, 2, 2])  # never reaches zero
        with pytest.raises(ValueError):
            rank_sequence_to_type([4, 1, 2, 0])  # not monotone
        with pytest.raises(ValueError):
            rank_sequence_to_type([4, 3, 1, 0])  # drops increase

    def test_round_trip_with_jordan_type(self):
        for parts in [(5, 1), (3, 3), (2, 2, 1, 1), (4, 2, 1)]:
            rep = jordan_type_of(jordan_matrix(Partition(parts)))
            assert rank_sequence_to_type(list(rep.rank_sequence)) == parts


class TestJordanType:
    def test_jordan_matrix_round_trip(self):
        rep = jordan_type_of(jordan_matrix(Partition((5, 1))))
        assert rep.jordan_type == (5, 1)
        assert rep.nilpotency_index == 5

    def test_zero_matrix(self):
        rep = jordan_type_of(ExactMatrix.zeros(6, 6))
        assert rep.jordan_type == (1,) * 6
        assert rep.nilpotency_index == 1

    def test_block_power(self):
        rep = jordan_type_of(matpow(jordan_matrix((9,)), 5))
        assert rep.jordan_type == (2, 2, 2, 2, 1)
        assert rep.rank_sequence == (9, 4, 0)

    def test_not_nilpotent(self):
        with pytest.raises(NotNilpotentError):
            jordan_type_of(ExactMatrix.identity(2))
        with pytest.raises(NotNilpotentError):
            jordan_type_of(ExactMatrix([[0, 1], [1, 0]]))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            jordan_type_of(ExactMatrix.zeros(2, 3))

    def test_block_diagonal_additivity(self):
        rng = random.Random(5)
        for _ in range(15):
            P = Partition([rng.randint(1, 4) for _ in range(rng.randint(1, 3))])
            Q = Partition([rng.randint(1, 4) for _ in range(rng.randint(1, 3))])
            A = jordan_matrix(P)
            B = jordan_matrix(Q)
            n, m = A.nrows, B.nrows
            rows = [list(A.rows[i]) + [0] * m for i in range(n)]
            rows += [[0] * n + list(B.rows[i]) for i in range(m)]
            assert jordan_type_of(ExactMatrix(rows)).jordan_type == concat(P, Q)

    def test_rational_entries(self):
        A = ExactMatrix([[0, Fraction(1, 2)], [0, 0]])
        assert jordan_type_of(A).jordan_type == (2,)

    def test_report_invariants_enforced(self):
        with pytest.raises(VerificationError):
            JordanReport((4, 1, 0), Partition((3, 1)), 2)

    def test_int_rank_sequence_matches(self):
        rng = random.Random(7)
        for _ in range(10):
            P = Partition([rng.randint(1, 3) for _ in range(rng.randint(1, 4))])
            J = jordan_matrix(P)
            seq = int_rank_sequence([list(r) for r in J.rows])
            assert tuple(seq) == jordan_type_of(J).rank_sequence


class TestRankModP:
    def test_trivial(self):
        assert rank_mod_p(ExactMatrix.identity(5), 10007) == 5
        assert rank_mod_p(ExactMatrix.zeros(3, 3), 10007) == 0

    def test_jordan_square(self):
        assert rank_mod_p(matpow(jordan_matrix((6,)), 2), 10007) == 4

    def test_denominator_divisible(self):
        A = ExactMatrix([[Fraction(1, 10007)]])
        with pytest.raises(BadPrimeError):
            rank_mod_p(A, 10007)

    def test_composite_modulus(self):
        with pytest.raises(BadPrimeError):
            rank_mod_p(ExactMatrix.identity(2), 10)

    def test_never_exceeds_rational_rank(self):
        rng = random.Random(31)
        for _ in range(40):
            A = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), rational=True)
            exact = rank(A)
            assert rank_mod_p(A, 2147483647) <= exact

    def test_majority_of_primes_agree(self):
        # a single 31-bit prime almost never loses rank; two of three never
        primes = (2147483647, 2147483629, 2147483587)
        rng = random.Random(77)
        for _ in range(25):
            A = _random_matrix(rng, 4, 4, rational=True)
            exact = rank(A)
            agree = sum(1 for p in primes if rank_mod_p(A, p) == exact)
            assert agree >= 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_rank_of_product_bounded(rows):
    A = ExactMatrix(rows)
    assert rank(A @ A) <= rank(A)
