import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercode.gf2 import (
    BitMatrix,
    BitVector,
    nullspace_basis,
    pack_bits,
    random_parity_matrix,
    rank,
    span,
    unpack_bits,
)

HAMMING_CHECK = BitMatrix.from_bits(
    [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]]
)


def test_rank_examples():
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix.zeros(2, 4)) == 0
    assert rank(HAMMING_CHECK) == 3


def test_rank_does_not_modify_input():
    M = BitMatrix.from_bits([[1, 1, 0], [1, 1, 0], [0, 1, 1]])
    before = M.words.copy()
    rank(M)
    assert np.array_equal(M.words, before)


def test_nullspace_identity_is_trivial():
    B = nullspace_basis(BitMatrix.identity(5))
    assert B.rows == 0 and B.cols == 5


def test_nullspace_even_weight():
    B = nullspace_basis(BitMatrix.from_bits([[1, 1, 1]]))
    assert B.rows == 2
    assert rank(B) == 2
    assert all(r.weight() % 2 == 0 for r in B)


def test_nullspace_hamming_spans_16_codewords():
    B = nullspace_basis(HAMMING_CHECK)
    assert B.rows == 4
    words = span(B)
    assert len(set(words[:, 0].tolist())) == 16
    for w in words:
        v = BitVector(7, w)
        assert (HAMMING_CHECK @ v).weight() == 0


def test_nullspace_requires_columns():
    with pytest.raises(ValueError):
        nullspace_basis(BitMatrix.zeros(0, 0))


def test_random_matrix_is_deterministic():
    a = random_parity_matrix(3, 7, 42)
    b = random_parity_matrix(3, 7, 42)
    assert a == b
    assert a != random_parity_matrix(3, 7, 43)


def test_random_matrix_zero_rows():
    M = random_parity_matrix(0, 5, 1)
    assert (M.rows, M.cols) == (0, 5)
    assert nullspace_basis(M).rows == 5


def test_random_matrix_ones_fraction():
    total = sum(int(random_parity_matrix(8, 8, s).to_array().sum()) for s in range(10_000))
    frac = total / (10_000 * 64)
    # 3 sigma of a binomial fraction over 640000 bits is about 0.0019
    assert abs(frac - 0.5) < 0.01


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(1, 70), st.integers(0, 2**32))
def test_rank_nullity(rows, cols, seed):
    M = random_parity_matrix(rows, cols, seed)
    B = nullspace_basis(M)
    assert rank(M) + B.rows == cols
    prod = (M.to_array().astype(int) @ B.to_array().T.astype(int)) % 2
    assert not prod.any()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(1, 20), st.integers(0, 2**32))
def test_random_kernel_element(rows, cols, seed):
    M = random_parity_matrix(rows, cols, seed)
    B = nullspace_basis(M)
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, 2, B.rows)
    x = (coeffs @ B.to_array().astype(int)) % 2 if B.rows else np.zeros(cols, int)
    assert (M @ BitVector.from_bits(x)).weight() == 0


def test_elimination_is_deterministic():
    M = random_parity_matrix(5, 11, 9)
    assert nullspace_basis(M) == nullspace_basis(M)


@given(st.lists(st.integers(0, 1), min_size=0, max_size=150))
def test_bitvector_roundtrip(bits):
    v = BitVector.from_bits(bits)
    assert v.bits().tolist() == bits
    assert v.weight() == sum(bits)
    assert BitVector.from_string(str(v)) == v


def test_bitvector_padding_is_zero():
    v = BitVector.from_bits([1] * 70)
    assert int(v.words[-1]) & ((1 << 58) - 1) == 0


def test_bitvector_lexicographic_order():
    a = BitVector.from_string("0110")
    b = BitVector.from_string("1000")
    assert a < b
    assert BitVector.from_int(0b1000, 4) == b


def test_pack_unpack():
    rng = np.random.default_rng(0)
    bits = rng.integers(0, 2, (5, 130)).astype(np.uint8)
    assert np.array_equal(unpack_bits(pack_bits(bits), 130), bits)
    assert unpack_bits(np.zeros((0, 1), np.uint64), 4).shape == (0, 4)


def test_matrix_text_roundtrip():
    assert BitMatrix.from_text(HAMMING_CHECK.to_text()) == HAMMING_CHECK
    assert HAMMING_CHECK.to_text().splitlines()[0] == "3 7"
    empty = BitMatrix.zeros(0, 3)
    assert BitMatrix.from_text(empty.to_text()) == empty
    with pytest.raises(ValueError):
        BitMatrix.from_text("2 3\n101\n")


def test_matmul_and_transpose():
    M = random_parity_matrix(4, 6, 3)
    assert M.T.T == M
    I = BitMatrix.identity(6)
    assert M @ I == M
