"""t-partite n-regular t-uniform hypergraphs.

Edges are stored in canonical order: edge ``(i-1)n + j`` (0-based: ``i*n + j``)
meets vertex ``i`` of part 0. The incident edge list ``E(v)`` of every vertex is
ordered by edge index, so the coordinate order of each local subvector is
induced by the global edge order. Parts and vertices are 0-based throughout.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .local_codes import SizingError

HOMOGENEITY_CAPS = {2: 12, 3: 7}
EIGEN_CAP = 2000


@dataclass(frozen=True, eq=False)
class Hypergraph:
    t: int
    m: int
    n: int
    edges: np.ndarray  # (N, t) vertex index per part

    def __post_init__(self):
        e = np.ascontiguousarray(self.edges, dtype=np.int64)
        if e.shape != (self.m * self.n, self.t):
            raise ValueError(f"expected edge array of shape {(self.m * self.n, self.t)}, got {e.shape}")
        if e.size and (e.min() < 0 or e.max() >= self.m):
            raise ValueError("vertex index out of range")
        if not np.array_equal(e[:, 0], np.repeat(np.arange(self.m), self.n)):
            raise ValueError("edges are not in part-0 canonical order")
        for p in range(self.t):
            deg = np.bincount(e[:, p], minlength=self.m)
            if np.any(deg != self.n):
                raise ValueError(f"part {p} is not {self.n}-regular")
        e.setflags(write=False)
        object.__setattr__(self, "edges", e)

    @property
    def N(self) -> int:
        return self.m * self.n

    @cached_property
    def incidence(self) -> np.ndarray:
        """Array of shape (t, m, n): ``incidence[p, v]`` is E(v) for vertex v of part p."""
        inc = np.stack([np.argsort(self.edges[:, p], kind="stable").reshape(self.m, self.n) for p in range(self.t)])
        inc.setflags(write=False)
        return inc

    def multiplicity(self) -> np.ndarray:
        """Tensor of shape (m,)*t counting edges on each vertex tuple."""
        T = np.zeros((self.m,) * self.t, dtype=np.int64)
        np.add.at(T, tuple(self.edges.T), 1)
        return T

    def edges_meeting(self, subsets: Sequence[Sequence[int]]) -> int:
        """|E(D_0, ..., D_{t-1})| by direct per-edge membership."""
        ok = np.ones(self.N, dtype=bool)
        for p, D in enumerate(subsets):
            ok &= np.isin(self.edges[:, p], np.asarray(list(D), dtype=np.int64))
        return int(ok.sum())

    def to_text(self) -> str:
        lines = [f"hypergraph t={self.t} m={self.m} n={self.n}"]
        lines += [" ".join(map(str, row)) for row in self.edges.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        m = re.fullmatch(r"hypergraph t=(\d+) m=(\d+) n=(\d+)", lines[0].strip()) if lines else None
        if not m:
            raise ValueError("bad hypergraph header")
        t, mm, n = (int(g) for g in m.groups())
        rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
        if len(rows) != mm * n or any(len(r) != t for r in rows):
            raise ValueError("hypergraph body does not match header")
        return cls(t, mm, n, np.array(rows, dtype=np.int64).reshape(mm * n, t))


def hypergraph_from_permutations(t: int, m: int, n: int, perms: Sequence[Sequence[int]]) -> Hypergraph:
    """Wire parts 1..t-1 by slot-to-edge permutations.

    ``perms[p-1][s]`` is the edge occupying slot ``s`` of part ``p``; slot ``s``
    belongs to vertex ``s // n``.
    """
    N = m * n
    if len(perms) != t - 1:
        raise ValueError("need t-1 permutations")
    edges = np.empty((N, t), dtype=np.int64)
    edges[:, 0] = np.arange(N) // n
    slot_vertex = np.arange(N) // n
    for p, perm in enumerate(perms, start=1):
        perm = np.asarray(perm, dtype=np.int64)
        if not np.array_equal(np.sort(perm), np.arange(N)):
            raise ValueError("not a permutation of the edge slots")
        edges[perm, p] = slot_vertex
    return Hypergraph(t, m, n, edges)


def random_hypergraph(t: int, m: int, n: int, seed: int) -> Hypergraph:
    """Random permutation model: t-1 independent uniform permutations (PCG64)."""
    if t < 2 or m < 1 or n < 1:
        raise ValueError("need t >= 2, m >= 1, n >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    return random_hypergraph_from(rng, t, m, n)


def random_hypergraph_from(rng: np.random.Generator, t: int, m: int, n: int) -> Hypergraph:
    perms = [rng.permutation(m * n) for _ in range(t - 1)]
    return hypergraph_from_permutations(t, m, n, perms)


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph given by sorted adjacency lists."""

    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        adj = tuple(tuple(sorted(int(u) for u in nb)) for nb in self.adjacency)
        for v, nb in enumerate(adj):
            if len(set(nb)) != len(nb) or v in nb:
                raise ValueError("graph must be simple")
            for u in nb:
                if not 0 <= u < len(adj) or v not in adj[u]:
                    raise ValueError("adjacency is not symmetric")
        object.__setattr__(self, "adjacency", adj)

    @property
    def num_vertices(self) -> int:
        return len(self.adjacency)

    @property
    def is_regular(self) -> bool:
        return len({len(nb) for nb in self.adjacency}) <= 1

    @property
    def degree(self) -> int:
        if not self.is_regular:
            raise ValueError("graph is not regular")
        return len(self.adjacency[0]) if self.adjacency else 0

    def is_connected(self) -> bool:
        if not self.adjacency:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            for u in self.adjacency[queue.popleft()]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.num_vertices

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.num_vertices,) * 2, dtype=np.int64)
        for v, nb in enumerate(self.adjacency):
            A[v, list(nb)] = 1
        return A

    @classmethod
    def from_adjacency_matrix(cls, A) -> "Graph":
        A = np.asarray(A)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("adjacency matrix must be square")
        return cls(tuple(tuple(np.flatnonzero(row).tolist()) for row in A))

    @classmethod
    def from_edge_list(cls, num_vertices: int, edges) -> "Graph":
        adj = [set() for _ in range(num_vertices)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(tuple(a) for a in adj))

    @classmethod
    def complete(cls, k: int) -> "Graph":
        return cls(tuple(tuple(u for u in range(k) if u != v) for v in range(k)))

    @classmethod
    def cycle(cls, k: int) -> "Graph":
        return cls.from_edge_list(k, [(v, (v + 1) % k) for v in range(k)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edge_list(10, outer + spokes + inner)


def second_eigenvalue(G: Graph) -> float:
    """Largest |eigenvalue| after removing one copy of the degree.

    For bipartite graphs the eigenvalue ``-degree`` is kept, so the result is
    the degree itself.
    """
    G.degree  # regularity check
    if G.num_vertices > EIGEN_CAP:
        raise SizingError(f"graph has more than {EIGEN_CAP} vertices")
    if G.num_vertices < 2:
        return 0.0
    ev = np.linalg.eigvalsh(G.adjacency_matrix().astype(float))
    rest = np.delete(ev, int(np.argmax(ev)))
    return float(np.max(np.abs(rest)))


def second_singular_value(H: Hypergraph) -> float:
    """Second largest singular value of the biadjacency multiplicity matrix (t = 2).

    This is the spectral parameter of the bipartite expander mixing lemma.
    """
    if H.t != 2:
        raise ValueError("defined for t = 2 only")
    s = np.linalg.svd(H.multiplicity().astype(float), compute_uv=False)
    return float(s[1]) if s.size > 1 else 0.0


def path_hypergraph(G: Graph, t: int) -> tuple[Hypergraph, float]:
    """One hyperedge per directed walk ``(v_1, ..., v_t)`` in ``G``.

    Walks may revisit vertices and backtrack, which gives degree
    ``Delta**(t-1)`` in every part. Returns the hypergraph and
    ``epsilon = 2 (t-1) lambda / Delta``.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    delta = G.degree
    if delta == 0 or not G.is_connected():
        raise ValueError("graph must be connected with positive degree")
    walks = [(v,) for v in range(G.num_vertices)]
    for _ in range(t - 1):
        walks = [w + (u,) for w in walks for u in G.adjacency[w[-1]]]
    edges = np.array(walks, dtype=np.int64).reshape(-1, t)
    H = Hypergraph(t, G.num_vertices, delta ** (t - 1), edges)
    return H, 2 * (t - 1) * second_eigenvalue(G) / delta


def _subset_membership(m: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(1 << m)
    member = ((idx[:, None] >> np.arange(m)[None, :]) & 1).astype(np.float64)
    return member, member.sum(axis=1) / m


def homogeneity_exact(H: Hypergraph, epsilon: float, tol: float = 1e-12) -> tuple[bool, float]:
    """Exhaustively test epsilon-homogeneity over all nonempty subset tuples.

    Returns ``(holds, worst)`` where ``worst`` is the largest value of
    ``|E(D_1..D_t)|/N - (prod alpha_i + epsilon * min_{i<j} sqrt(alpha_i alpha_j))``.
    Subsets of part 0 are visited in Gray-code order so the partial edge
    tensor is updated by one vertex per step.
    """
    t, m = H.t, H.m
    cap = HOMOGENEITY_CAPS.get(t, 20 // t)
    if m > cap:
        raise SizingError(f"m={m} exceeds the exhaustive cap {cap} for t={t}")
    member, alpha = _subset_membership(m)
    T = H.multiplicity().astype(np.float64)
    rest_shape = (1 << m,) * (t - 1)

    # alpha-derived tensors over parts 1..t-1
    grids = np.meshgrid(*([alpha] * (t - 1)), indexing="ij")
    prod_rest = np.ones(rest_shape)
    min_sqrt_rest = np.full(rest_shape, np.inf)
    pair_rest = np.full(rest_shape, np.inf)
    for i, a in enumerate(grids):
        prod_rest = prod_rest * a
        min_sqrt_rest = np.minimum(min_sqrt_rest, np.sqrt(a))
        for b in grids[i + 1 :]:
            pair_rest = np.minimum(pair_rest, np.sqrt(a * b))
    nonempty = np.ones(rest_shape, dtype=bool)
    for a in grids:
        nonempty &= a > 0

    partial = np.zeros((m,) * (t - 1))
    gray = 0
    worst = -np.inf
    for i in range(1, 1 << m):
        u = (i & -i).bit_length() - 1
        gray ^= 1 << u
        partial = partial + T[u] if gray >> u & 1 else partial - T[u]
        counts = partial
        for _ in range(t - 1):
            # contract the leading vertex axis against subset membership
            counts = np.tensordot(counts, member, axes=([0], [1]))
        a1 = bin(gray).count("1") / m
        bound = a1 * prod_rest + epsilon * np.minimum(pair_rest, np.sqrt(a1) * min_sqrt_rest)
        excess = np.where(nonempty, counts / H.N - bound, -np.inf)
        worst = max(worst, float(excess.max()))
    return worst <= tol, worst
