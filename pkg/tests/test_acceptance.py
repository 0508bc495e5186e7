"""Acceptance checks. Each test prints one PASS/FAIL line; run this file as a
script to print all lines without pytest."""

import json
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from hypercode import bounds as b
from hypercode import decoders as dc
from hypercode import hypergraph_code as hc
from hypercode import local_codes as lc
from hypercode import simulator as sm
from hypercode.hypergraphs import (
    Graph,
    homogeneity_exact,
    path_hypergraph,
    random_hypergraph,
    second_singular_value,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a script
    ACCEPTANCE_LINES = []


def close(got, want, tol):
    return abs(got - want) <= tol


def criterion_1():
    parts, ok = [], True
    for R, want, tol in [(0.2, 0.2430, 5e-4), (1 / 31, 0.3946614, 1e-6)]:
        t0 = time.perf_counter()
        got = b.entropy_inv_gv(R)
        dt = time.perf_counter() - t0
        good = close(got, want, tol) and dt < 1e-3
        ok &= good
        parts.append(f"dGV({R:.4g})={got:.7f} (want {want}, {dt * 1e3:.3f} ms)")
    return ok, "; ".join(parts)


def criterion_2():
    t0 = time.perf_counter()
    bch = lc.make_named_code("bch_31_21")
    enum_time = time.perf_counter() - t0
    ok = sum(bch.weight_enumerator) == 2**21 and enum_time < 60
    parts = [f"BCH enumeration {enum_time:.2f}s"]
    for name, t, want, tol in [
        ("hamming_15", 3, 0.2307, 5e-4),
        ("hamming_31", 3, 0.0798, 5e-4),
        ("hamming_31", 4, 0.1607, 5e-4),
        ("bch_31_21", 3, 0.3946608, 1e-6),
    ]:
        A = bch if name == "bch_31_21" else lc.make_named_code(name)
        got = b.chernov_first_zero(A.weight_enumerator, A.n, t)
        ok &= close(got, want, tol)
        parts.append(f"{name} t={t}: {got:.7f} (want {want})")
    return ok, "; ".join(parts)


def criterion_3():
    h7 = b.mindist_first_zero(7, 3, 2)
    golay = b.mindist_first_zero(23, 7, 2)
    ok7 = close(h7, 0.01024, 1e-4)
    okg = close(golay, 0.0234, 5e-4)
    detail = (
        f"hamming_7: {h7:.5f} (want 0.01024) {'ok' if ok7 else 'off'}; "
        f"golay_23: {golay:.5f} (want 0.0234 +- 5e-4) {'ok' if okg else 'off'}"
    )
    return ok7 and okg, detail


def criterion_4():
    want_c1 = {0.3: 0.18558, 0.5: 0.09276, 0.7: 0.03211, 0.9: 0.00337}
    want_c3 = {0.3: 0.18605, 0.5: 0.09492, 0.7: 0.03242, 0.9: 0.00380}
    ok, parts = True, []
    for R in (0.3, 0.5, 0.7, 0.9):
        g1, g3 = b.c1_first_zero(2, R), b.c3_first_zero(2, R)
        o1, o3 = close(g1, want_c1[R], 1e-4), close(g3, want_c3[R], 1e-4)
        ok &= o1 and o3
        parts.append(
            f"R={R}: C1 {g1:.5f}{'' if o1 else ' (want %.5f)' % want_c1[R]}, "
            f"C3 {g3:.5f}{'' if o3 else ' (want %.5f)' % want_c3[R]}"
        )
    return ok, "; ".join(parts)


def criterion_5():
    ok, parts = True, []
    for t, want in [(2, 0.202), (3, 0.507), (4, 0.737), (10, 0.998)]:
        got = b.gv_attainment_threshold(t)
        ok &= close(got, want, 2e-3)
        parts.append(f"t={t}: {got:.4f}")
    return ok, "; ".join(parts)


def criterion_6():
    t0 = time.perf_counter()
    ok, parts = True, []
    for t, const in [(3, 5.94), (4, 6.46)]:
        rep = b.radius_refined(t, 0.25)
        k = rep.kappa
        good = abs(1 / rep.constant - const) / const < 0.01 and abs((k - 1) ** (-t) - (1 - t / k)) < 1e-3
        ok &= good
        parts.append(f"t={t}: 1/{1 / rep.constant:.3f} kappa={k:.4f}")
    ok &= b.radius_simple(3, 1.0) == 1 / 16
    d = 0.3
    ok &= math.isclose(b.radius_bh(4, d), d**1.5 / (2 * math.sqrt(6)), rel_tol=1e-14)
    dt = time.perf_counter() - t0
    ok &= dt < 1.0
    parts.append(f"simple t=3 gamma=1/{1 / b.radius_simple(3, 1.0):g}; bh formula ok; {dt:.2f}s")
    return ok, "; ".join(parts)


def criterion_7():
    t0 = time.perf_counter()
    H = random_hypergraph(2, 3, 3, 2007)
    rep = sm.ensemble_spectrum_mc("C3", 2, 3, 3, 1, 10_000, 7, hypergraph=H)
    exact = hc.expected_spectrum_c3_all(H, 1)
    worst = 0.0
    for row in rep.rows:
        se = math.sqrt(row["variance"] / row["trials"])
        diff = abs(row["mean"] - exact[row["weight"]])
        worst = max(worst, 0.0 if diff == 0 else diff / se if se > 0 else math.inf)
    dt = time.perf_counter() - t0
    return worst <= 3 and dt < 60, f"max |mean - exact| / se = {worst:.2f} over w=0..9; {dt:.1f}s"


def criterion_8():
    H, eps = path_hypergraph(Graph.complete(4), 3)
    ok = (H.m, H.n, H.N) == (4, 9, 36) and eps == 4 / 3
    held = 0
    for seed in range(20):
        m = 4 + seed % 7  # m in 4..10
        G = random_hypergraph(2, m, 3, seed)
        lam = second_singular_value(G)
        holds, _ = homogeneity_exact(G, lam / 3)
        held += holds
    ok &= held == 20
    return ok, f"K4 path: m={H.m} n={H.n} N={H.N} eps={eps}; homogeneity held on {held}/20 graphs"


def criterion_9():
    t0 = time.perf_counter()
    h7 = lc.make_named_code("hamming_7")
    ok, parts = True, []
    instances = [("t=2 seed 1", random_hypergraph(2, 7, 7, 1)), ("t=3 seed 2", random_hypergraph(3, 9, 7, 2))]
    for label, H in instances:
        C = hc.build(H, h7)
        assert C.N <= 63 and C.dimension <= 26
        cfg = dc.DecoderConfig(kappa=H.t + 1, depth=2)
        r = sm.exhaustive_radius_check(C, "branching", cfg, 1)
        ok &= r >= 1
        parts.append(f"{label} N={C.N} k={C.dimension}: verified radius {r}")
    for label, H in [("t=2 seed 1", instances[0][1]), ("K8 path t=2", path_hypergraph(Graph.complete(8), 2)[0])]:
        C = hc.build(H, h7)
        lam = second_singular_value(H)
        d = hc.min_distance(C)
        if lam < h7.d1:
            bound = (3 / 7) ** 2 * (1 - lam / 3) ** 2
            ok &= d / C.N >= bound
            parts.append(f"{label}: d/N={d / C.N:.4f} >= {bound:.4f} (lambda={lam:.3f})")
        else:
            parts.append(f"{label}: lambda={lam:.3f} >= d1, bound not applicable (d={d})")
    dt = time.perf_counter() - t0
    ok &= dt < 600
    parts.append(f"{dt:.1f}s")
    return ok, "; ".join(parts)


def _cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "hypercode", *args], cwd=cwd, capture_output=True, text=True)


def criterion_10(tmp: Path):
    (tmp / "k4.txt").write_text("4 4\n0111\n1011\n1101\n1110\n")
    runs = {
        "bounds": ["bounds", "--ensemble", "c3", "--t", "2", "--rate", "0.5", "--points", "50", "--out", "out.csv"],
        "construct": ["construct", "--model", "random", "--t", "2", "--m", "7", "--n", "7", "--code", "hamming_7",
                      "--out", "code"],
        "decode": ["decode", "--manifest", "code/manifest.txt", "--word", "0" * 20 + "1" + "0" * 28, "--depth", "2",
                   "--out", "dec", "--trace", "out.csv"],
        "simulate": ["simulate", "--manifest", "code/manifest.txt", "--sweep", "0..4", "--trials", "30", "--seed",
                     "1", "--out", "out.csv"],
        "spectrum": ["spectrum", "--t", "2", "--rate", "0.5", "--points", "40", "--out", "out.csv"],
    }
    ok, parts = True, []
    for name, argv in runs.items():
        cfg = f"{name}.json"
        first = _cli(["--save-config", cfg, *argv], tmp)
        out1 = (tmp / "out.csv").read_bytes() if (tmp / "out.csv").exists() else b""
        man1 = (tmp / "code" / "manifest.txt").read_bytes() if name == "construct" else b""
        second = _cli(["--config", cfg], tmp)
        out2 = (tmp / "out.csv").read_bytes() if (tmp / "out.csv").exists() else b""
        man2 = (tmp / "code" / "manifest.txt").read_bytes() if name == "construct" else b""
        same = first.returncode == second.returncode == 0 and first.stdout == second.stdout
        same &= out1 == out2 and man1 == man2
        same &= json.loads((tmp / cfg).read_text())["command"] == name
        ok &= same
        parts.append(f"{name} {'identical' if same else 'DIFFERS'}")
    outs = []
    for jobs in ("1", "4"):
        _cli(runs["simulate"][:-2] + ["--jobs", jobs, "--out", f"jobs{jobs}.csv"], tmp)
        outs.append((tmp / f"jobs{jobs}.csv").read_bytes())
    inv = outs[0] == outs[1] and len(outs[0]) > 0
    ok &= inv
    parts.append(f"simulate --jobs 1 vs 4 {'identical' if inv else 'DIFFERS'}")
    return ok, "; ".join(parts)


def report(number, result):
    ok, detail = result
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def test_criterion_1_gv():
    assert report(1, criterion_1())


def test_criterion_2_chernov_distances():
    assert report(2, criterion_2())


def test_criterion_3_mindist_distances():
    assert report(3, criterion_3())


def test_criterion_4_c1_c3_table():
    assert report(4, criterion_4())


def test_criterion_5_gv_thresholds():
    assert report(5, criterion_5())


def test_criterion_6_radii():
    assert report(6, criterion_6())


def test_criterion_7_c3_oracle():
    assert report(7, criterion_7())


def test_criterion_8_construction():
    assert report(8, criterion_8())


@pytest.mark.slow
def test_criterion_9_decoders():
    assert report(9, criterion_9())


def test_criterion_10_determinism(tmp_path):
    assert report(10, criterion_10(tmp_path))


if __name__ == "__main__":
    import tempfile

    for i, fn in enumerate([criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                            criterion_6, criterion_7, criterion_8, criterion_9], start=1):
        report(i, fn())
    with tempfile.TemporaryDirectory() as d:
        report(10, criterion_10(Path(d)))
