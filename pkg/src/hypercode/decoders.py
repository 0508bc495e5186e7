"""Iterative decoders for hypergraph codes.

Two decoders are provided. ``bh_decode`` is the parallel majority decoder:
every vertex keeps its own copy of the bits on its edges, decodes them to the
nearest local codeword, and then each copy is overwritten by a majority vote
of the other vertices' opinions. ``branching_decode`` first grows a tree of
candidates by applying the threshold subprocedure of each part, then finishes
every candidate with ``bh_decode`` and returns the successful one closest to
the received word.

Parts are numbered from 0. Words are handled internally as uint8 arrays in
the hypergraph's canonical edge order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gf2 import BitVector
from .hypergraph_code import HypergraphCode
from .local_codes import as_fraction, bits_to_key, key_to_bits, within_threshold

TIE_RULES = ("lex_smallest",)


@dataclass(frozen=True)
class DecoderConfig:
    """Decoder parameters. ``kappa=None`` means the default ``t + 1``."""

    kappa: Fraction | None = None
    depth: int = 1
    bh_max_iters: int = 50
    candidate_cap: int = 4096
    tie_rule: str = "lex_smallest"

    def __post_init__(self):
        if self.kappa is not None:
            k = as_fraction(self.kappa)
            if k < 2:
                raise ValueError("kappa must be at least 2")
            object.__setattr__(self, "kappa", k)
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if self.candidate_cap < 1:
            raise ValueError("candidate_cap must be positive")
        if self.bh_max_iters < 1:
            raise ValueError("bh_max_iters must be positive")
        if self.tie_rule not in TIE_RULES:
            raise ValueError(f"unknown tie rule {self.tie_rule!r}")

    def kappa_for(self, t: int) -> Fraction:
        return self.kappa if self.kappa is not None else Fraction(t + 1)

    def to_dict(self, t: int | None = None) -> dict:
        k = self.kappa if t is None else self.kappa_for(t)
        return {
            "kappa": None if k is None else str(k),
            "depth": self.depth,
            "bh_max_iters": self.bh_max_iters,
            "candidate_cap": self.candidate_cap,
            "tie_rule": self.tie_rule,
        }


@dataclass
class CandidateRecord:
    cid: int
    parent: int
    iteration: int
    part: int  # -1 for the received word itself
    bits: np.ndarray = field(repr=False)


@dataclass
class DecodeOutcome:
    result: BitVector | None
    candidates_examined: int = 0
    branch_trace: list = field(default_factory=list)  # (iteration, part, changed bits)
    rounds: int = 0
    ties: int = 0
    candidates: list = field(default_factory=list, repr=False)

    @property
    def success(self) -> bool:
        return self.result is not None

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "result": None if self.result is None else str(self.result),
            "candidates_examined": self.candidates_examined,
            "rounds": self.rounds,
            "ties": self.ties,
            "branch_trace": [list(map(int, row)) for row in self.branch_trace],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _as_bits(C: HypergraphCode, y) -> np.ndarray:
    if isinstance(y, BitVector):
        if y.length != C.N:
            raise ValueError(f"received word has length {y.length}, expected {C.N}")
        return y.bits().astype(np.uint8)
    arr = np.asarray(y, dtype=np.uint8)
    if arr.shape != (C.N,):
        raise ValueError(f"received word has shape {arr.shape}, expected ({C.N},)")
    return arr


def _local_grid(C: HypergraphCode):
    if any(A is None for part in C.local for A in part):
        raise ValueError("decoding needs analysed local codes (use build, not build_from_checks)")
    return C.local


def _decode_vertices(C: HypergraphCode, sub: np.ndarray, parts):
    """Nearest local codewords for subvectors ``sub[i]`` living at parts ``parts``.

    ``sub`` has shape (len(parts), m, n). Returns (codeword bits, distances, ties).
    """
    grid = _local_grid(C)
    keys = bits_to_key(sub)
    A = C.local_uniform
    if A is not None:
        cw, dist, ties = A.decode_keys(keys)
        return key_to_bits(cw, C.n), dist, ties
    cw = np.empty(keys.shape, dtype=np.uint64)
    dist = np.empty(keys.shape, dtype=np.int64)
    ties = np.empty(keys.shape, dtype=np.int64)
    for i, p in enumerate(parts):
        for v in range(C.m):
            c, d, k = grid[p][v].decode_keys(keys[i, v : v + 1])
            cw[i, v], dist[i, v], ties[i, v] = c[0], d[0], k[0]
    return key_to_bits(cw, C.n), dist, ties


def _subprocedure_bits(C: HypergraphCode, y: np.ndarray, part: int, kappa: Fraction):
    inc = C.hypergraph.incidence[part]
    cw, dist, ties = _decode_vertices(C, y[inc][None], [part])
    cw, dist, ties = cw[0], dist[0], ties[0]
    d1 = np.array([A.d1 for A in _local_grid(C)[part]], dtype=np.int64)
    act = within_threshold(dist, d1, kappa)
    out = y.copy()
    # each edge meets the part in exactly one vertex, so writes never collide
    out[inc[act]] = cw[act]
    return out, int((ties[act] - 1).sum())


def subprocedure(C: HypergraphCode, y: BitVector, part: int, kappa) -> BitVector:
    """Apply the threshold decoder at every vertex of ``part`` (0-based)."""
    if not 0 <= part < C.t:
        raise ValueError(f"part must be in [0, {C.t})")
    kappa = as_fraction(kappa)
    if kappa < 2:
        raise ValueError("kappa must be at least 2")
    out, _ = _subprocedure_bits(C, _as_bits(C, y), part, kappa)
    return BitVector.from_bits(out)


def _bh_bits(C: HypergraphCode, y: np.ndarray, max_iters: int):
    """Run the majority decoder; returns (codeword bits or None, rounds, ties)."""
    H = C.hypergraph
    t, N = C.t, C.N
    inc = H.incidence
    state = y[inc]
    ties_total = 0
    parts = list(range(t))
    part_idx = np.arange(t)[:, None, None]
    for rnd in range(1, max_iters + 1):
        opinion, dist, ties = _decode_vertices(C, state, parts)
        ties_total += int((ties[dist > 0] - 1).sum())
        by_edge = np.empty((t, N), dtype=np.int64)
        by_edge[part_idx, inc] = opinion
        votes = by_edge.sum(axis=0)
        if t % 2 == 0:
            others = votes[None, :] - by_edge
            maj = (2 * others > t - 1).astype(np.uint8)
        else:
            maj = np.broadcast_to((2 * votes > t).astype(np.uint8), (t, N))
        new_state = maj[part_idx, inc]
        state = new_state
        agreed = maj[0]
        if (maj == agreed).all() and C.is_codeword_bits(agreed):
            return agreed.copy(), rnd, ties_total
    return None, max_iters, ties_total


def bh_decode(C: HypergraphCode, y: BitVector, cfg: DecoderConfig | None = None) -> DecodeOutcome:
    """Parallel majority decoding.

    With even ``t`` each copy takes the majority of the other ``t - 1``
    opinions. With odd ``t`` that vote can tie, so all ``t`` opinions are used.
    """
    cfg = cfg or DecoderConfig()
    bits = _as_bits(C, y)
    res, rounds, ties = _bh_bits(C, bits, cfg.bh_max_iters)
    out = DecodeOutcome(None if res is None else BitVector.from_bits(res), 1, [], rounds, ties)
    out.candidates = [CandidateRecord(0, -1, 0, -1, bits)]
    return out


def _prune(C: HypergraphCode, cands: list[CandidateRecord], cap: int) -> list[CandidateRecord]:
    scored = sorted(cands, key=lambda c: (C.unsatisfied_vertices(c.bits), c.bits.tobytes()))
    keep = {id(c) for c in scored[:cap]}
    return [c for c in cands if id(c) in keep]


def branching_decode(C: HypergraphCode, y: BitVector, cfg: DecoderConfig | None = None) -> DecodeOutcome:
    """Grow ``t**depth`` candidates with the subprocedures, then finish each with ``bh_decode``.

    Duplicate candidates are merged (first creation wins). The successful
    codeword nearest to ``y`` is returned; distance ties go to the
    lexicographically smallest codeword.
    """
    cfg = cfg or DecoderConfig()
    kappa = cfg.kappa_for(C.t)
    y_bits = _as_bits(C, y)
    root = CandidateRecord(0, -1, 0, -1, y_bits)
    every = [root]
    frontier = [root]
    trace = []
    ties = 0
    next_id = 1
    for it in range(1, cfg.depth + 1):
        seen: set[bytes] = set()
        grown = []
        for cand in frontier:
            for p in range(C.t):
                out, tie = _subprocedure_bits(C, cand.bits, p, kappa)
                ties += tie
                trace.append((it, p, int((out != cand.bits).sum())))
                key = out.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                rec = CandidateRecord(next_id, cand.cid, it, p, out)
                next_id += 1
                grown.append(rec)
        if len(grown) > cfg.candidate_cap:
            grown = _prune(C, grown, cfg.candidate_cap)
        every.extend(grown)
        frontier = grown

    best = None
    rounds = 0
    finished: dict[bytes, np.ndarray | None] = {}
    for cand in frontier:
        key = cand.bits.tobytes()
        if key not in finished:
            res, r, tie = _bh_bits(C, cand.bits, cfg.bh_max_iters)
            rounds += r
            ties += tie
            finished[key] = res
        res = finished[key]
        if res is None:
            continue
        score = (int((res != y_bits).sum()), res.tobytes())
        if best is None or score < best[0]:
            if best is not None and score[0] == best[0][0]:
                ties += 1
            best = (score, res)
        elif score[0] == best[0][0] and score[1] != best[0][1]:
            ties += 1
    result = None if best is None else BitVector.from_bits(best[1])
    return DecodeOutcome(result, len(frontier), trace, rounds, ties, every)


def decode(C: HypergraphCode, y: BitVector, decoder: str, cfg: DecoderConfig | None = None) -> DecodeOutcome:
    if decoder == "bh":
        return bh_decode(C, y, cfg)
    if decoder == "branching":
        return branching_decode(C, y, cfg)
    raise ValueError(f"unknown decoder {decoder!r}")


def trace_rows(outcome: DecodeOutcome, truth: BitVector | None = None) -> list[tuple]:
    """Rows (iteration, candidate id, part, residual weight) for every candidate.

    The residual weight is the distance to ``truth`` and is ``None`` when the
    transmitted codeword is unknown.
    """
    t_bits = None if truth is None else truth.bits().astype(np.uint8)
    rows = []
    for c in outcome.candidates:
        resid = None if t_bits is None else int((c.bits != t_bits).sum())
        rows.append((c.iteration, c.cid, c.part, resid))
    return rows


def trace_csv(outcome: DecodeOutcome, truth: BitVector | None = None) -> str:
    lines = ["iteration,candidate,part,residual_weight"]
    for it, cid, part, resid in trace_rows(outcome, truth):
        lines.append(f"{it},{cid},{part},{'' if resid is None else resid}")
    return "\n".join(lines) + "\n"
