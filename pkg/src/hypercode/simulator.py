"""Monte-Carlo experiments on small hypergraph codes.

Every trial draws from its own random stream derived from ``(seed, *key)``
with :class:`numpy.random.SeedSequence`, so the result of a trial does not
depend on which worker ran it or in what order. Worker results are
concatenated in trial order before aggregation.
"""

from __future__ import annotations

import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

import numpy as np

from . import decoders
from .decoders import DecoderConfig
from .gf2 import BitVector, random_parity_matrix_from
from .hypergraph_code import HypergraphCode, brute_weight_distribution, build, build_from_checks, encode
from .hypergraphs import Hypergraph, random_hypergraph, random_hypergraph_from
from .local_codes import LocalCode, SizingError, make_named_code

SPECTRUM_MAX_N = 24
EXHAUSTIVE_CAP = 10**7
ENSEMBLES = ("C1", "C2", "C3")


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(key))))


@dataclass
class TrialReport:
    kind: str
    config: dict
    rows: list[dict]
    wall_time: float = field(default=0.0, compare=False)

    def columns(self) -> list[str]:
        return list(self.rows[0]) if self.rows else []

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = self.columns()
        buf.write(",".join(cols) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt(row[c]) for c in cols) + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "config": self.config, "rows": self.rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _run_chunks(fn: Callable, args: tuple, indices: Sequence, jobs: int) -> list:
    """Apply ``fn(*args, chunk)`` over index chunks and concatenate in order."""
    indices = list(indices)
    if jobs <= 1 or len(indices) < 2:
        return fn(*args, indices)
    size = -(-len(indices) // (4 * jobs))
    chunks = [indices[i : i + size] for i in range(0, len(indices), size)]
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(fn, *zip(*[(*args, c) for c in chunks])):
            out.extend(part)
    return out


# Ensemble spectra --------------------------------------------------------------


def _spectrum_chunk(ensemble, t, m, n, local, fixed_H, seed, trials):
    out = []
    for i in trials:
        rng = trial_rng(seed, i)
        H = fixed_H if ensemble == "C3" else random_hypergraph_from(rng, t, m, n)
        if ensemble == "C2":
            C = build(H, local)
        else:
            checks = [[random_parity_matrix_from(rng, local, n) for _ in range(m)] for _ in range(t)]
            C = build_from_checks(H, checks)
        out.append(brute_weight_distribution(C))
    return out


def ensemble_spectrum_mc(ensemble: str, t: int, m: int, n: int, local, trials: int, seed: int,
                         hypergraph: Hypergraph | None = None, jobs: int = 1) -> TrialReport:
    """Sample weight distributions from one of the three ensembles.

    ``local`` is the number of parity rows per vertex for C1 and C3, and a
    :class:`LocalCode` (or code name) for C2. C3 uses ``hypergraph`` when given,
    otherwise one drawn from ``seed``.
    """
    ensemble = ensemble.upper()
    if ensemble not in ENSEMBLES:
        raise ValueError(f"ensemble must be one of {ENSEMBLES}")
    if trials < 1:
        raise ValueError("trials must be positive")
    N = m * n
    if N > SPECTRUM_MAX_N:
        raise SizingError(f"N={N} exceeds the exact-spectrum cap {SPECTRUM_MAX_N}")
    start = time.perf_counter()
    if ensemble == "C2":
        code = make_named_code(local) if isinstance(local, str) else local
        if not isinstance(code, LocalCode) or code.n != n:
            raise ValueError("C2 needs a local code of length n")
        local_desc = code.name or repr(code)
    else:
        code = int(local)
        if not 0 <= code <= n:
            raise ValueError("rows per local check must lie in [0, n]")
        local_desc = code
    H = None
    if ensemble == "C3":
        H = hypergraph if hypergraph is not None else random_hypergraph(t, m, n, seed)
        if (H.t, H.m, H.n) != (t, m, n):
            raise ValueError("hypergraph shape disagrees with t, m, n")
    samples = _run_chunks(_spectrum_chunk, (ensemble, t, m, n, code, H, seed), range(trials), jobs)
    B = np.array(samples, dtype=np.float64)
    mean = B.mean(axis=0)
    var = B.var(axis=0, ddof=1) if trials > 1 else np.zeros_like(mean)
    rows = [
        {"weight": w, "mean": float(mean[w]), "variance": float(var[w]), "trials": trials}
        for w in range(N + 1)
    ]
    config = {"ensemble": ensemble, "t": t, "m": m, "n": n, "local": local_desc, "trials": trials, "seed": seed}
    if H is not None:
        config["hypergraph_edges"] = H.edges.tolist()
    return TrialReport("spectrum", config, rows, time.perf_counter() - start)


# Decoding experiments ------------------------------------------------------------


def _codeword_for(C: HypergraphCode, rng: np.random.Generator, base: str) -> np.ndarray:
    if base == "zero" or C.dimension == 0:
        return np.zeros(C.N, dtype=np.uint8)
    msg = BitVector.from_bits(rng.integers(0, 2, C.dimension, dtype=np.uint8))
    return encode(C, msg).bits().astype(np.uint8)


def _sweep_chunk(C, decoder, cfg, base, seed, keys):
    out = []
    for w, i in keys:
        rng = trial_rng(seed, w, i)
        # the error pattern is drawn first so both bases see the same one
        err = np.zeros(C.N, dtype=np.uint8)
        err[np.sort(rng.choice(C.N, size=w, replace=False))] = 1
        sent = _codeword_for(C, rng, base)
        outcome = decoders.decode(C, BitVector.from_bits(sent ^ err), decoder, cfg)
        ok = outcome.success and np.array_equal(outcome.result.bits(), sent)
        out.append((w, bool(ok), outcome.ties > 0))
    return out


def decode_success_sweep(C: HypergraphCode, decoder: str, cfg: DecoderConfig, weights: Sequence[int],
                         trials: int, seed: int, base: str = "zero", jobs: int = 1) -> TrialReport:
    """Exact-recovery rate for random error patterns of each weight.

    ``base="zero"`` sends the all-zero codeword; ``base="random"`` sends a
    uniformly random codeword. Trials whose decoding hit a nearest-codeword
    tie are counted in ``tie_trials``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if base not in ("zero", "random"):
        raise ValueError("base must be 'zero' or 'random'")
    weights = [int(w) for w in weights]
    if any(not 0 <= w <= C.N for w in weights):
        raise ValueError("weights must lie in [0, N]")
    start = time.perf_counter()
    keys = [(w, i) for w in weights for i in range(trials)]
    results = _run_chunks(_sweep_chunk, (C, decoder, cfg, base, seed), keys, jobs)
    rows = []
    for w in weights:
        hits = [ok for ww, ok, _ in results if ww == w]
        tie = sum(1 for ww, _, tt in results if ww == w and tt)
        p = sum(hits) / trials
        rows.append({
            "weight": w,
            "trials": trials,
            "successes": sum(hits),
            "rate": p,
            "variance": p * (1 - p) * trials / (trials - 1) if trials > 1 else 0.0,
            "tie_trials": tie,
        })
    config = {
        "decoder": decoder,
        "cfg": cfg.to_dict(C.t),
        "weights": weights,
        "trials": trials,
        "seed": seed,
        "base": base,
        "t": C.t,
        "m": C.m,
        "n": C.n,
        "N": C.N,
    }
    return TrialReport("decode", config, rows, time.perf_counter() - start)


def _patterns(N: int, w: int):
    from itertools import combinations

    return combinations(range(N), w)


def exhaustive_radius_check(C: HypergraphCode, decoder: str, cfg: DecoderConfig, max_weight: int) -> int:
    """Largest w such that every error pattern of weight <= w on the zero word is corrected.

    Returns -1 only if decoding fails on the zero word itself.
    """
    total = sum(comb(C.N, w) for w in range(max_weight + 1))
    if total > EXHAUSTIVE_CAP:
        raise SizingError(f"{total} patterns exceed the cap {EXHAUSTIVE_CAP}")
    for w in range(max_weight + 1):
        for support in _patterns(C.N, w):
            y = np.zeros(C.N, dtype=np.uint8)
            y[list(support)] = 1
            out = decoders.decode(C, y, decoder, cfg)
            if not out.success or out.result.weight() != 0:
                return w - 1
    return max_weight
