"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from hypercode import kernels
from hypercode.hypergraphs import random_hypergraph
from hypercode.local_codes import make_named_code


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    bch = make_named_code("bch_31_21")
    h15 = make_named_code("hamming_15")
    H = random_hypergraph(2, 4, 5, 1)
    masks = []
    for p in range(H.t):
        for v in range(H.m):
            mk = 0
            for e in H.incidence[p, v]:
                mk |= 1 << (H.N - 1 - int(e))
            masks.append(mk)
    masks = np.array(masks, dtype=np.uint64)
    rng = np.random.default_rng(0)
    ys = rng.integers(0, 1 << 31, 200)
    return [
        ("weight_census bch_31_21 (2^21 words)", lambda k: k.weight_census(bch.generator.words, 31)),
        ("nearest_table hamming_15 (2^15 words)", lambda k: k.nearest_table(h15.codewords, 15)),
        ("activity_census N=20", lambda k: k.activity_census(H.N, masks)),
        (
            "nearest_scan golay_23 x200",
            lambda k, g=make_named_code("golay_23"): [k.nearest_scan(g.codewords, int(y) >> 8) for y in ys],
        ),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    for label, fn in cases():
        row = [f"{label:42s}"]
        results = {}
        for name, mod in backends.items():
            t, out = best_of(lambda: fn(mod), args.repeat)
            results[name] = (t, out)
            row.append(f"{name} {t * 1e3:9.2f} ms")
        if len(results) == 2:
            (tp, op), (tc, oc) = results["python"], results["cython"]
            same = all(np.array_equal(a, b) for a, b in zip(op, oc)) if isinstance(op, tuple) else str(op) == str(oc)
            row.append(f"speedup {tp / tc:6.1f}x  agree={same}")
        print("  ".join(row))


if __name__ == "__main__":
    main()
