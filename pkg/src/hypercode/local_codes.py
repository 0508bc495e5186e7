"""Short binary linear codes used as constituent (local) codes.

Local codes are analysed exactly: the weight enumerator comes from full
codeword enumeration, and decoding searches all codewords. Codewords of a
length-``n`` code (``n <= 64``) are handled as integer keys with coordinate 0
as the most significant bit, so numeric order is lexicographic order.

The BCH code uses the primitive polynomial ``x^5 + x^2 + 1`` for GF(32) and
generator polynomial ``m_1(x) m_3(x) = x^10 + x^9 + x^8 + x^6 + x^5 + x^3 + 1``.
The Golay code uses ``g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import kernels
from .gf2 import BitMatrix, BitVector, nullspace_basis, rank

ENUMERATION_CAP = 26
# largest dimension whose codeword list is kept in memory
MATERIALIZE_CAP = 22
# largest length for which a full nearest-codeword lookup table is built
TABLE_MAX_N = 16


class SizingError(ValueError):
    """A requested exhaustive computation exceeds its enumeration cap."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True, eq=False)
class LocalCode:
    n: int
    k: int
    parity_check: BitMatrix
    generator: BitMatrix
    d1: int
    weight_enumerator: tuple[int, ...]
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def delta1(self) -> float:
        return self.d1 / self.n

    def __repr__(self) -> str:
        label = self.name or "LocalCode"
        return f"<{label} [{self.n},{self.k},{self.d1}]>"

    # Codeword keys ---------------------------------------------------------

    @cached_property
    def _gen_keys(self) -> np.ndarray:
        return (self.generator.words[:, 0] >> np.uint64(64 - self.n)).copy()

    @cached_property
    def _check_keys(self) -> np.ndarray:
        return (self.parity_check.words[:, 0] >> np.uint64(64 - self.n)).copy()

    @cached_property
    def codewords(self) -> np.ndarray:
        """Sorted array of all codeword keys."""
        if self.k > MATERIALIZE_CAP:
            raise SizingError(f"k={self.k} too large to materialize codewords")
        out = np.zeros(1, dtype=np.uint64)
        for g in self._gen_keys:
            out = np.concatenate([out, out ^ g])
        out.sort()
        out.setflags(write=False)
        return out

    def is_codeword_keys(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.uint64)
        if self._check_keys.size == 0:
            return np.ones(keys.shape, dtype=bool)
        syn = np.bitwise_count(keys[..., None] & self._check_keys) & 1
        return ~syn.any(axis=-1)

    @cached_property
    def _table(self):
        return kernels.nearest_table(self.codewords, self.n)

    def _nearest_key(self, y: int) -> tuple[int, int, int]:
        hit = self._memo.get(y)
        if hit is not None:
            return hit
        if self.k <= MATERIALIZE_CAP:
            i, d, ties = kernels.nearest_scan(self.codewords, y)
            res = (int(self.codewords[i]), d, ties)
        else:
            res = _nearest_chunked(self._gen_keys, y)
        if len(self._memo) < 1 << 20:
            self._memo[y] = res
        return res

    def decode_keys(self, keys: np.ndarray):
        """Nearest codeword for each key: (codeword keys, distances, tie counts)."""
        keys = np.asarray(keys, dtype=np.uint64)
        if self.n <= TABLE_MAX_N and self.k <= MATERIALIZE_CAP:
            idx, dist, ties = self._table
            ki = keys.astype(np.int64)
            return self.codewords[idx[ki]], dist[ki].astype(np.int64), ties[ki].astype(np.int64)
        flat = keys.reshape(-1)
        res = [self._nearest_key(int(y)) for y in flat]
        cw = np.array([r[0] for r in res], dtype=np.uint64).reshape(keys.shape)
        d = np.array([r[1] for r in res], dtype=np.int64).reshape(keys.shape)
        t = np.array([r[2] for r in res], dtype=np.int64).reshape(keys.shape)
        return cw, d, t


def _nearest_chunked(gen_keys: np.ndarray, y: int) -> tuple[int, int, int]:
    lo = np.zeros(1, dtype=np.uint64)
    for g in gen_keys[:16]:
        lo = np.concatenate([lo, lo ^ g])
    best = (1 << 30, 0, 0)
    hi_rows = gen_keys[16:]
    yw = np.uint64(y)
    for h in range(1 << len(hi_rows)):
        off = np.uint64(0)
        for j, g in enumerate(hi_rows):
            if h >> j & 1:
                off ^= g
        block = lo ^ off
        d = np.bitwise_count(block ^ yw)
        m = int(d.min())
        if m > best[0]:
            continue
        cands = block[d == m]
        c = int(cands.min())
        if m < best[0]:
            best = (m, c, int(cands.size))
        else:
            best = (m, min(c, best[1]), best[2] + int(cands.size))
    return best[1], best[0], best[2]


def bits_to_key(bits: np.ndarray) -> np.ndarray:
    """Integer keys (bit 0 most significant) along the last axis."""
    bits = np.asarray(bits, dtype=np.uint64)
    n = bits.shape[-1]
    weights = np.uint64(1) << np.arange(n - 1, -1, -1, dtype=np.uint64)
    return (bits * weights).sum(axis=-1, dtype=np.uint64)


def key_to_bits(keys: np.ndarray, n: int) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.uint64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)
    return ((keys[..., None] >> shifts) & np.uint64(1)).astype(np.uint8)


def from_parity_check(H: BitMatrix, enumeration_cap: int = ENUMERATION_CAP, name: str = "") -> LocalCode:
    """Analyse the code ``{x : H x = 0}``.

    The zero code (k = 0) is reported with ``d1 = 0``.
    """
    n = H.cols
    if n < 1:
        raise ValueError("code length must be at least 1")
    if n > 64:
        raise ValueError("local codes are limited to length 64")
    k = n - rank(H)
    if k > enumeration_cap:
        raise SizingError(f"dimension {k} exceeds enumeration cap {enumeration_cap}")
    G = nullspace_basis(H)
    a = kernels.weight_census(G.words, n) if k else np.eye(1, n + 1, dtype=np.int64)[0]
    nz = np.flatnonzero(a[1:])
    d1 = int(nz[0]) + 1 if nz.size else 0
    return LocalCode(n, k, H, G, d1, tuple(int(v) for v in a), name)


def _hamming_check(r: int) -> BitMatrix:
    n = (1 << r) - 1
    cols = np.arange(1, n + 1)
    bits = ((cols[None, :] >> np.arange(r - 1, -1, -1)[:, None]) & 1).astype(np.uint8)
    return BitMatrix.from_bits(bits)


def _cyclic_check(n: int, g: int) -> BitMatrix:
    """Parity check of the cyclic code with generator polynomial ``g`` (bit i = coeff of x^i)."""
    deg = g.bit_length() - 1
    k = n - deg
    coeffs = np.array([(g >> i) & 1 for i in range(deg + 1)], dtype=np.uint8)
    G = np.zeros((k, n), dtype=np.uint8)
    for i in range(k):
        G[i, i : i + deg + 1] = coeffs
    return nullspace_basis(BitMatrix.from_bits(G))


def _gf2_polymul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _minimal_polynomial(e: int, prim: int, m: int) -> int:
    """Minimal polynomial over GF(2) of alpha**e in GF(2**m) defined by ``prim``."""
    order = (1 << m) - 1
    exp = [1]
    for _ in range(order - 1):
        v = exp[-1] << 1
        if v >> m:
            v ^= prim
        exp.append(v)
    log = {v: i for i, v in enumerate(exp)}

    def mul(a, b):
        return 0 if a == 0 or b == 0 else exp[(log[a] + log[b]) % order]

    conj = []
    c = e % order
    while c not in conj:
        conj.append(c)
        c = (2 * c) % order
    poly = [1]
    for c in conj:
        root = exp[c]
        nxt = [0] * (len(poly) + 1)
        for i, coef in enumerate(poly):
            nxt[i + 1] ^= coef
            nxt[i] ^= mul(coef, root)
        poly = nxt
    if any(v not in (0, 1) for v in poly):
        raise ArithmeticError("minimal polynomial not binary")
    return sum(v << i for i, v in enumerate(poly))


BCH31_PRIMITIVE = 0b100101
GOLAY23_GENERATOR = 0b110001110101


def bch_31_21_generator() -> int:
    return _gf2_polymul(
        _minimal_polynomial(1, BCH31_PRIMITIVE, 5),
        _minimal_polynomial(3, BCH31_PRIMITIVE, 5),
    )


NAMED_CODES = ("hamming_7", "hamming_15", "hamming_31", "bch_31_21", "golay_23", "repetition_n", "full_space_n")


def make_named_code(name: str) -> LocalCode:
    """Build one of the canonical local codes listed in ``NAMED_CODES``.

    ``repetition_<n>`` and ``full_space_<n>`` take the length as a suffix;
    ``hamming_<2^r - 1>`` is accepted for any r >= 2.
    """
    m = re.fullmatch(r"hamming_(\d+)", name)
    if m:
        n = int(m.group(1))
        r = (n + 1).bit_length() - 1
        if n < 3 or (1 << r) - 1 != n:
            raise ValueError(f"no Hamming code of length {n}")
        return from_parity_check(_hamming_check(r), name=name)
    if name == "bch_31_21":
        return from_parity_check(_cyclic_check(31, bch_31_21_generator()), name=name)
    if name == "golay_23":
        return from_parity_check(_cyclic_check(23, GOLAY23_GENERATOR), name=name)
    m = re.fullmatch(r"repetition_(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("length must be positive")
        H = np.zeros((n - 1, n), dtype=np.uint8)
        H[:, 0] = 1
        H[np.arange(n - 1), np.arange(1, n)] = 1
        return from_parity_check(BitMatrix.from_bits(H, cols=n), name=name)
    m = re.fullmatch(r"full_space_(\d+)", name)
    if m:
        n = int(m.group(1))
        return from_parity_check(BitMatrix.zeros(0, n), name=name)
    raise ValueError(f"unknown code name {name!r}")


def nearest_codeword(A: LocalCode, y: BitVector) -> tuple[BitVector, int]:
    """Closest codeword to ``y``; ties go to the lexicographically smallest."""
    if y.length != A.n:
        raise ValueError("length mismatch")
    cw, d, _ = A._nearest_key(y.to_int())
    return BitVector.from_int(cw, A.n), d


def threshold_decode(A: LocalCode, y: BitVector, kappa) -> BitVector:
    """Decode only when the nearest codeword lies within ``d1 / kappa``."""
    kappa = as_fraction(kappa)
    if kappa < 2:
        raise ValueError("kappa must be at least 2")
    c, dist = nearest_codeword(A, y)
    return c if dist * kappa <= A.d1 else y


def within_threshold(dist: np.ndarray, d1: int, kappa: Fraction) -> np.ndarray:
    """Exact test ``dist <= d1 / kappa`` for integer distances."""
    return np.asarray(dist, dtype=np.int64) * kappa.numerator <= d1 * kappa.denominator


def to_text(A: LocalCode) -> str:
    return f"localcode n={A.n}\n" + A.parity_check.to_text()


def from_text(text: str, name: str = "") -> LocalCode:
    head, _, rest = text.lstrip().partition("\n")
    m = re.fullmatch(r"localcode n=(\d+)", head.strip())
    if not m:
        raise ValueError(f"bad local code header: {head!r}")
    H = BitMatrix.from_text(rest)
    if H.cols != int(m.group(1)):
        raise ValueError("header length disagrees with matrix")
    return from_parity_check(H, name=name)
