"""Dense linear algebra over GF(2).

Vectors and matrices are packed row-major into 64-bit words. Bit ``j`` of a
row lives in word ``j // 64`` at bit position ``63 - j % 64``, i.e. the first
coordinate is the most significant bit. For rows of at most 64 bits the word
value therefore orders vectors lexicographically (bit 0 most significant),
which is the tie-break order used by the local decoders.

Random matrices use NumPy's PCG64 generator seeded directly by the caller's
64-bit seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD = 64


def n_words(nbits: int) -> int:
    return max(1, (nbits + WORD - 1) // WORD)


def pack_bits(bits: np.ndarray, nbits: int | None = None) -> np.ndarray:
    """Pack a 2-D 0/1 array of shape (rows, cols) into (rows, words) uint64."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim != 2:
        raise ValueError("pack_bits expects a 2-D array")
    rows, cols = bits.shape
    nbits = cols if nbits is None else nbits
    w = n_words(nbits)
    padded = np.zeros((rows, w * WORD), dtype=np.uint8)
    padded[:, :cols] = bits & 1
    packed = np.packbits(padded, axis=1, bitorder="big")
    return packed.view(">u8").astype(np.uint64).reshape(rows, w)


def unpack_bits(words: np.ndarray, nbits: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`; returns a (rows, nbits) uint8 array."""
    words = np.ascontiguousarray(words, dtype=np.uint64)
    rows = words.shape[0]
    if rows == 0:
        return np.zeros((0, nbits), dtype=np.uint8)
    as_bytes = words.astype(">u8").view(np.uint8).reshape(rows, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="big")[:, :nbits].copy()


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BitVector:
    """Immutable binary vector of a fixed length."""

    length: int
    words: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.words, dtype=np.uint64).reshape(-1)
        if self.length < 0 or w.shape[0] != n_words(self.length):
            raise ValueError("word count does not match length")
        tail = n_words(self.length) * WORD - self.length
        if tail and self.length and (int(w[-1]) & ((1 << tail) - 1)):
            raise ValueError("bits beyond length must be zero")
        if self.length == 0 and w.any():
            raise ValueError("bits beyond length must be zero")
        object.__setattr__(self, "words", _frozen(w))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8).reshape(1, -1)
        return cls(arr.shape[1], pack_bits(arr)[0])

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, np.zeros(n_words(length), dtype=np.uint64))

    @classmethod
    def unit(cls, length: int, j: int) -> "BitVector":
        bits = np.zeros(length, dtype=np.uint8)
        bits[j] = 1
        return cls.from_bits(bits)

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitVector":
        """Bit 0 is the most significant bit of ``value``."""
        if value < 0 or value >> length:
            raise ValueError("value does not fit in length bits")
        return cls.from_string(format(value, f"0{length}b") if length else "")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        if any(c not in "01" for c in s):
            raise ValueError(f"not a bit string: {s[:40]!r}")
        return cls.from_bits(np.frombuffer(s.encode(), dtype=np.uint8) - ord("0"))

    def bits(self) -> np.ndarray:
        return unpack_bits(self.words.reshape(1, -1), self.length)[0]

    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def to_int(self) -> int:
        out = 0
        for w in self.words:
            out = (out << WORD) | int(w)
        return out >> (n_words(self.length) * WORD - self.length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return int(self.words[j // WORD] >> np.uint64(WORD - 1 - j % WORD)) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.words ^ other.words)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __lt__(self, other: "BitVector") -> bool:
        # lexicographic, bit 0 most significant
        return (self.length, tuple(self.words.tolist())) < (other.length, tuple(other.words.tolist()))

    def __str__(self) -> str:
        return "".join(map(str, self.bits().tolist()))

    def __repr__(self) -> str:
        s = str(self)
        return f"BitVector({s if len(s) <= 72 else s[:69] + '...'})"


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """Immutable binary matrix with row-major packed storage."""

    rows: int
    cols: int
    words: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.words, dtype=np.uint64).reshape(self.rows, n_words(self.cols))
        object.__setattr__(self, "words", _frozen(w))

    @classmethod
    def from_bits(cls, bits, cols: int | None = None) -> "BitMatrix":
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.size == 0:
            if cols is None:
                cols = arr.shape[1] if arr.ndim == 2 else 0
            return cls.zeros(0 if arr.ndim < 2 else arr.shape[0], cols)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array of bits")
        return cls(arr.shape[0], arr.shape[1], pack_bits(arr))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: int | None = None) -> "BitMatrix":
        if not rows:
            return cls.zeros(0, cols or 0)
        c = rows[0].length
        if any(r.length != c for r in rows):
            raise ValueError("rows have different lengths")
        return cls(len(rows), c, np.stack([r.words for r in rows]))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, n_words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_bits(np.eye(n, dtype=np.uint8)) if n else cls.zeros(0, 0)

    def to_array(self) -> np.ndarray:
        return unpack_bits(self.words, self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.words[i])

    def __iter__(self):
        return (self.row(i) for i in range(self.rows))

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix.from_bits(self.to_array().T, cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            if other.length != self.cols:
                raise ValueError("dimension mismatch")
            par = np.bitwise_count(self.words & other.words).sum(axis=1) & 1
            return BitVector.from_bits(par.astype(np.uint8))
        if isinstance(other, BitMatrix):
            if other.rows != self.cols:
                raise ValueError("dimension mismatch")
            prod = (self.to_array().astype(np.int64) @ other.to_array().astype(np.int64)) & 1
            return BitMatrix.from_bits(prod.astype(np.uint8), cols=other.cols)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += ["".join(map(str, r)) for r in self.to_array().tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        try:
            rows, cols = (int(v) for v in lines[0].split())
        except ValueError:
            raise ValueError(f"bad matrix header: {lines[0]!r}") from None
        body = lines[1:]
        if len(body) != rows:
            raise ValueError(f"expected {rows} rows, found {len(body)}")
        if any(len(r) != cols or set(r) - {"0", "1"} for r in body):
            raise ValueError("matrix rows must be '0'/'1' strings of length cols")
        if rows == 0:
            return cls.zeros(0, cols)
        arr = np.frombuffer("".join(body).encode(), dtype=np.uint8).reshape(rows, cols) - ord("0")
        return cls.from_bits(arr)


def _column_bits(words: np.ndarray, col: int) -> np.ndarray:
    return (words[:, col // WORD] >> np.uint64(WORD - 1 - col % WORD)) & np.uint64(1)


def rref(M: BitMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M``.

    Pivots are taken left to right; within a column the topmost remaining row
    with a set bit is chosen. Returns the reduced words (same shape as
    ``M.words``) and the list of pivot columns.
    """
    work = M.words.copy()
    pivots: list[int] = []
    r = 0
    for col in range(M.cols):
        if r == M.rows:
            break
        colbits = _column_bits(work, col)
        hits = np.flatnonzero(colbits[r:]) + r
        if hits.size == 0:
            continue
        p = hits[0]
        if p != r:
            work[[r, p]] = work[[p, r]]
        colbits = _column_bits(work, col)
        colbits[r] = 0
        others = np.flatnonzero(colbits)
        if others.size:
            work[others] ^= work[r]
        pivots.append(col)
        r += 1
    return work, pivots


def rank(M: BitMatrix) -> int:
    return len(rref(M)[1])


def nullspace_basis(M: BitMatrix) -> BitMatrix:
    """Basis of ``{x : M x = 0}``, one row per non-pivot column.

    Row ``i`` has a 1 in the ``i``-th free column and 0 in the other free
    columns, so the basis is systematic on the free coordinates.
    """
    if M.cols < 1:
        raise ValueError("nullspace_basis needs at least one column")
    work, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    if not free:
        return BitMatrix.zeros(0, M.cols)
    reduced = unpack_bits(work[: len(pivots)], M.cols) if pivots else np.zeros((0, M.cols), np.uint8)
    basis = np.zeros((len(free), M.cols), dtype=np.uint8)
    basis[np.arange(len(free)), free] = 1
    if pivots:
        basis[:, pivots] = reduced[:, free].T
    return BitMatrix.from_bits(basis)


def random_parity_matrix(r: int, n: int, seed: int) -> BitMatrix:
    """r x n matrix of i.i.d. uniform bits from PCG64 keyed by ``seed``."""
    if r < 0 or n < 1:
        raise ValueError("need r >= 0 and n >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    return random_parity_matrix_from(rng, r, n)


def random_parity_matrix_from(rng: np.random.Generator, r: int, n: int) -> BitMatrix:
    bits = rng.integers(0, 2, size=(r, n), dtype=np.uint8)
    return BitMatrix.from_bits(bits, cols=n) if r else BitMatrix.zeros(0, n)


def span(M: BitMatrix) -> np.ndarray:
    """All 2**rows combinations of the rows of ``M`` as a (2**rows, words) array.

    Combination ``i`` includes row ``j`` iff bit ``j`` of ``i`` is set.
    """
    out = np.zeros((1, M.words.shape[1]), dtype=np.uint64)
    for j in range(M.rows):
        out = np.concatenate([out, out ^ M.words[j]])
    return out
