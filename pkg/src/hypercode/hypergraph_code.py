"""Codes C(H, {A_v}) defined by local constraints on a hypergraph."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from . import kernels
from . import local_codes as lc
from .gf2 import BitMatrix, BitVector, nullspace_basis, pack_bits, rank
from .hypergraphs import Hypergraph
from .local_codes import LocalCode, SizingError

ENUMERATION_CAP = 26
C3_EXACT_MAX_N = 24


@dataclass(frozen=True, eq=False)
class HypergraphCode:
    hypergraph: Hypergraph
    checks: tuple  # [part][vertex] -> BitMatrix local parity check
    local: tuple  # [part][vertex] -> LocalCode or None
    global_parity: BitMatrix
    dimension: int

    @property
    def t(self) -> int:
        return self.hypergraph.t

    @property
    def m(self) -> int:
        return self.hypergraph.m

    @property
    def n(self) -> int:
        return self.hypergraph.n

    @property
    def N(self) -> int:
        return self.hypergraph.N

    @property
    def rate(self) -> float:
        return self.dimension / self.N

    def __repr__(self) -> str:
        return f"<HypergraphCode t={self.t} m={self.m} n={self.n} N={self.N} k={self.dimension}>"

    @cached_property
    def _dense_parity(self) -> np.ndarray:
        return self.global_parity.to_array().astype(np.int64)

    @cached_property
    def row_vertex(self) -> np.ndarray:
        """Flat vertex id (part * m + vertex) owning each global parity row."""
        ids = []
        for p in range(self.t):
            for v in range(self.m):
                ids += [p * self.m + v] * self.checks[p][v].rows
        return np.array(ids, dtype=np.int64)

    def syndrome_bits(self, x: np.ndarray) -> np.ndarray:
        return (self._dense_parity @ np.asarray(x, dtype=np.int64)) & 1

    def unsatisfied_vertices(self, x: np.ndarray) -> int:
        syn = self.syndrome_bits(x)
        return int(np.unique(self.row_vertex[syn.astype(bool)]).size)

    def is_codeword_bits(self, x: np.ndarray) -> bool:
        return not self.syndrome_bits(x).any()

    @cached_property
    def kernel_basis(self) -> BitMatrix:
        return nullspace_basis(self.global_parity)

    @cached_property
    def local_uniform(self) -> LocalCode | None:
        first = self.local[0][0]
        if first is None:
            return None
        if all(A is first for part in self.local for A in part):
            return first
        return None


def _as_grid(codes, t: int, m: int) -> list[list]:
    if isinstance(codes, (LocalCode, BitMatrix)):
        return [[codes] * m for _ in range(t)]
    codes = list(codes)
    if len(codes) != t:
        raise ValueError(f"expected {t} parts of codes")
    grid = []
    for part in codes:
        if isinstance(part, (LocalCode, BitMatrix)):
            grid.append([part] * m)
        else:
            part = list(part)
            if len(part) != m:
                raise ValueError(f"expected {m} codes per part")
            grid.append(part)
    return grid


def _assemble(H: Hypergraph, check_grid, local_grid) -> HypergraphCode:
    blocks = []
    for p in range(H.t):
        for v in range(H.m):
            Hv = check_grid[p][v]
            if Hv.cols != H.n:
                raise ValueError(f"local code at part {p} vertex {v} has length {Hv.cols}, expected {H.n}")
            if Hv.rows == 0:
                continue
            rows = np.zeros((Hv.rows, H.N), dtype=np.uint8)
            rows[:, H.incidence[p, v]] = Hv.to_array()
            blocks.append(rows)
    dense = np.concatenate(blocks) if blocks else np.zeros((0, H.N), dtype=np.uint8)
    G = BitMatrix(dense.shape[0], H.N, pack_bits(dense, H.N)) if dense.shape[0] else BitMatrix.zeros(0, H.N)
    checks = tuple(tuple(row) for row in check_grid)
    local = tuple(tuple(row) for row in local_grid)
    return HypergraphCode(H, checks, local, G, H.N - rank(G))


def build(H: Hypergraph, codes) -> HypergraphCode:
    """Assemble the code from local codes.

    ``codes`` may be a single :class:`LocalCode` (used everywhere), one code
    per part, or a ``[part][vertex]`` nested sequence. Global parity rows are
    grouped part-major, then vertex-major.
    """
    grid = _as_grid(codes, H.t, H.m)
    if any(not isinstance(A, LocalCode) for part in grid for A in part):
        raise TypeError("build expects LocalCode instances; use build_from_checks for raw matrices")
    return _assemble(H, [[A.parity_check for A in part] for part in grid], grid)


def build_from_checks(H: Hypergraph, checks) -> HypergraphCode:
    """Assemble from raw local parity-check matrices without analysing the local codes."""
    grid = _as_grid(checks, H.t, H.m)
    return _assemble(H, grid, [[None] * H.m for _ in range(H.t)])


def subvector(C: HypergraphCode, x: BitVector, part: int, vertex: int) -> BitVector:
    return BitVector.from_bits(x.bits()[C.hypergraph.incidence[part, vertex]])


def contains(C: HypergraphCode, x: BitVector) -> bool:
    """True iff every local subvector x(v) satisfies its local parity check."""
    if x.length != C.N:
        raise ValueError("length mismatch")
    bits = x.bits().astype(np.int64)
    inc = C.hypergraph.incidence
    for p in range(C.t):
        for v in range(C.m):
            Hv = C.checks[p][v]
            if Hv.rows and ((Hv.to_array().astype(np.int64) @ bits[inc[p, v]]) & 1).any():
                return False
    return True


def encode(C: HypergraphCode, message: BitVector) -> BitVector:
    """Map a length-k message to a codeword through the kernel basis."""
    B = C.kernel_basis
    if message.length != B.rows:
        raise ValueError(f"message must have {B.rows} bits")
    sel = message.bits().astype(bool)
    words = np.bitwise_xor.reduce(B.words[sel], axis=0) if sel.any() else np.zeros_like(B.words[0] if B.rows else np.zeros(1, np.uint64))
    return BitVector(C.N, words)


def brute_weight_distribution(C: HypergraphCode, cap: int = ENUMERATION_CAP) -> np.ndarray:
    """Exact weight census B_0..B_N by enumerating the kernel."""
    if C.dimension > cap:
        raise SizingError(f"dimension {C.dimension} exceeds enumeration cap {cap}")
    B = C.kernel_basis
    if B.rows == 0:
        out = np.zeros(C.N + 1, dtype=np.int64)
        out[0] = 1
        return out
    return kernels.weight_census(B.words, C.N)


def min_distance(C: HypergraphCode) -> int | None:
    nz = np.flatnonzero(brute_weight_distribution(C)[1:])
    return int(nz[0]) + 1 if nz.size else None


@lru_cache(maxsize=32)
def _activity_table(edges_bytes: bytes, t: int, m: int, n: int) -> np.ndarray:
    H = Hypergraph(t, m, n, np.frombuffer(edges_bytes, dtype=np.int64).reshape(m * n, t))
    N = H.N
    masks = []
    for p in range(t):
        for v in range(m):
            mk = 0
            for e in H.incidence[p, v]:
                mk |= 1 << (N - 1 - int(e))
            masks.append(mk)
    return kernels.activity_census(N, np.array(masks, dtype=np.uint64))


def expected_spectrum_c3_all(H: Hypergraph, r: int) -> np.ndarray:
    """E B_w for every w when each vertex gets an independent uniform r x n parity check.

    A vector x lies in the code with probability 2^(-r * a(x)) where a(x) is
    the number of vertices whose subvector x(v) is nonzero.
    """
    if H.N > C3_EXACT_MAX_N:
        raise SizingError(f"N={H.N} exceeds exhaustive cap {C3_EXACT_MAX_N}")
    table = _activity_table(H.edges.tobytes(), H.t, H.m, H.n)
    factors = 2.0 ** (-r * np.arange(table.shape[1], dtype=np.float64))
    return table @ factors


def expected_spectrum_c3_exact(H: Hypergraph, r: int, w: int) -> float:
    if not 0 <= w <= H.N:
        raise ValueError("weight out of range")
    return float(expected_spectrum_c3_all(H, r)[w])


# Manifest files ---------------------------------------------------------------


def write_manifest(directory, C: HypergraphCode, meta: dict | None = None) -> Path:
    """Write ``hypergraph.txt``, local code files and ``manifest.txt`` into ``directory``.

    Identical local code objects share one file. The manifest has one
    ``key=value`` per line; per-vertex code assignments are
    ``code.<part>.<vertex>=<file>`` and the common case is ``code.default``.
    """
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "hypergraph.txt").write_text(C.hypergraph.to_text())
    files: dict[int, str] = {}
    assignments: list[tuple[str, str]] = []

    def file_for(A: LocalCode) -> str:
        if id(A) not in files:
            fname = f"code{len(files)}.txt"
            (d / fname).write_text(lc.to_text(A))
            files[id(A)] = fname
        return files[id(A)]

    uniform = C.local_uniform
    if uniform is not None:
        assignments.append(("code.default", file_for(uniform)))
    else:
        for p in range(C.t):
            for v in range(C.m):
                A = C.local[p][v]
                if A is None:
                    raise ValueError("manifest requires analysed local codes")
                assignments.append((f"code.{p}.{v}", file_for(A)))
    lines = [f"t={C.t}", f"m={C.m}", f"n={C.n}", f"N={C.N}", "hypergraph=hypergraph.txt"]
    lines += [f"{k}={v}" for k, v in assignments]
    for k, v in (meta or {}).items():
        lines.append(f"{k}={v}")
    path = d / "manifest.txt"
    path.write_text("\n".join(lines) + "\n")
    return path


def read_manifest(path) -> tuple[HypergraphCode, dict]:
    path = Path(path)
    entries: dict[str, str] = {}
    for ln in path.read_text().splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        key, sep, value = ln.partition("=")
        if not sep:
            raise ValueError(f"bad manifest line: {ln!r}")
        entries[key.strip()] = value.strip()
    base = path.parent
    H = Hypergraph.from_text((base / entries["hypergraph"]).read_text())
    for key in ("t", "m", "n"):
        if int(entries[key]) != getattr(H, key):
            raise ValueError(f"manifest {key} disagrees with hypergraph file")
    cache: dict[str, LocalCode] = {}

    def load(fname: str) -> LocalCode:
        if fname not in cache:
            cache[fname] = lc.from_text((base / fname).read_text(), name=os.path.splitext(fname)[0])
        return cache[fname]

    default = entries.get("code.default")
    grid: list[list] = []
    for p in range(H.t):
        row = []
        for v in range(H.m):
            fname = entries.get(f"code.{p}.{v}", default)
            if fname is None:
                raise ValueError(f"no code assigned to part {p} vertex {v}")
            row.append(load(fname))
        grid.append(row)
    return build(H, grid), entries
