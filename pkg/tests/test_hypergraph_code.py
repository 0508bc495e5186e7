import itertools
from math import comb

import numpy as np
import pytest

from hypercode import hypergraph_code as hc
from hypercode import local_codes as lc
from hypercode.gf2 import BitMatrix, BitVector, random_parity_matrix
from hypercode.hypergraphs import Graph, hypergraph_from_permutations, path_hypergraph, random_hypergraph, second_singular_value


def test_full_space_code():
    H = random_hypergraph(3, 3, 4, 1)
    C = hc.build(H, lc.make_named_code("full_space_4"))
    assert C.dimension == C.N == 12


def test_single_vertex_parts_intersect(hamming7):
    rep = lc.make_named_code("repetition_7")
    H = hypergraph_from_permutations(2, 1, 7, [list(range(7))])
    C = hc.build(H, [hamming7, rep])
    # the all-ones word is the only nonzero word in both
    assert C.dimension == 1
    assert hc.brute_weight_distribution(C).tolist() == [1, 0, 0, 0, 0, 0, 0, 1]


def test_identical_codes_identity_wiring(hamming7):
    H = hypergraph_from_permutations(2, 1, 7, [list(range(7))])
    B = hc.brute_weight_distribution(hc.build(H, hamming7))
    assert tuple(B) == hamming7.weight_enumerator


@pytest.mark.parametrize("seed", range(4))
def test_rate_bound_hamming(hamming7, seed):
    C = hc.build(random_hypergraph(2, 7, 7, seed), hamming7)
    assert C.rate >= 2 * 4 / 7 - 1 - 1e-12


@pytest.mark.parametrize("t, m, n, r", [(2, 4, 5, 2), (3, 3, 6, 1), (4, 2, 5, 1)])
def test_rate_bound_random_checks(t, m, n, r):
    H = random_hypergraph(t, m, n, 3)
    checks = [[random_parity_matrix(r, n, 100 * p + v) for v in range(m)] for p in range(t)]
    C = hc.build_from_checks(H, checks)
    R1 = 1 - r / n  # nominal rate
    assert C.dimension >= C.N * (t * R1 - (t - 1)) - 1e-9


def test_length_mismatch(hamming7):
    with pytest.raises(ValueError):
        hc.build(random_hypergraph(2, 2, 5, 0), hamming7)


def test_contains_examples(hamming7):
    C = hc.build(random_hypergraph(2, 7, 7, 1), hamming7)
    assert hc.contains(C, BitVector.zeros(C.N))
    for j in range(C.N):
        assert not hc.contains(C, BitVector.unit(C.N, j))
    rng = np.random.default_rng(0)
    for _ in range(20):
        x = hc.encode(C, BitVector.from_bits(rng.integers(0, 2, C.dimension)))
        assert hc.contains(C, x)


def test_contains_agrees_with_global_parity():
    H = random_hypergraph(2, 3, 4, 8)
    checks = [[random_parity_matrix(2, 4, 10 * p + v) for v in range(3)] for p in range(2)]
    C = hc.build_from_checks(H, checks)
    rng = np.random.default_rng(1)
    xs = rng.integers(0, 2, (10_000, C.N)).astype(np.uint8)
    for x in xs:
        assert hc.contains(C, BitVector.from_bits(x)) == C.is_codeword_bits(x)


def test_weight_distribution_full_space():
    H = random_hypergraph(2, 2, 2, 0)
    B = hc.brute_weight_distribution(hc.build(H, lc.make_named_code("full_space_2")))
    assert B.tolist() == [1, 4, 6, 4, 1]


def test_weight_distribution_cap():
    H = random_hypergraph(2, 4, 7, 0)
    C = hc.build(H, lc.make_named_code("full_space_7"))
    with pytest.raises(lc.SizingError):
        hc.brute_weight_distribution(C)


def test_distance_bound_t2(hamming7):
    H, _ = path_hypergraph(Graph.complete(8), 2)
    C = hc.build(H, hamming7)
    lam = second_singular_value(H)
    d1 = hamming7.d1
    assert lam < d1
    d = hc.min_distance(C)
    assert d / C.N >= (d1 / 7) ** 2 * (1 - lam / d1) ** 2


def brute_c3(H, r, w):
    total = 0.0
    for sup in itertools.combinations(range(H.N), w):
        s = set(sup)
        active = sum(
            1 for p in range(H.t) for v in range(H.m) if s.intersection(H.incidence[p, v].tolist())
        )
        total += 2.0 ** (-r * active)
    return total


def test_c3_exact_examples():
    H = random_hypergraph(2, 2, 2, 4)
    assert hc.expected_spectrum_c3_exact(H, 3, 0) == 1.0
    for w in range(H.N + 1):
        assert hc.expected_spectrum_c3_exact(H, 0, w) == comb(H.N, w)
    assert hc.expected_spectrum_c3_exact(H, 1, 2) == pytest.approx(brute_c3(H, 1, 2), rel=1e-15)


@pytest.mark.parametrize("t, m, n", [(2, 3, 3), (3, 2, 3)])
def test_c3_exact_matches_enumeration(t, m, n):
    H = random_hypergraph(t, m, n, 6)
    for r in (1, 2):
        got = hc.expected_spectrum_c3_all(H, r)
        want = [brute_c3(H, r, w) for w in range(H.N + 1)]
        assert np.allclose(got, want, rtol=1e-14, atol=0)


def test_c3_cap():
    with pytest.raises(lc.SizingError):
        hc.expected_spectrum_c3_exact(random_hypergraph(2, 5, 5, 0), 1, 2)


def test_manifest_roundtrip(tmp_path, hamming7):
    C = hc.build(random_hypergraph(2, 7, 7, 2), hamming7)
    path = hc.write_manifest(tmp_path, C, {"seed": 2})
    text = path.read_text()
    assert "code.default=code0.txt" in text and "seed=2" in text
    C2, entries = hc.read_manifest(path)
    assert entries["N"] == "49"
    assert C2.dimension == C.dimension
    assert C2.global_parity == C.global_parity


def test_manifest_mixed_codes(tmp_path, hamming7):
    rep = lc.make_named_code("repetition_7")
    H = random_hypergraph(2, 2, 7, 5)
    C = hc.build(H, [[hamming7, rep], [rep, hamming7]])
    C2, _ = hc.read_manifest(hc.write_manifest(tmp_path, C))
    assert C2.global_parity == C.global_parity
    assert len(list(tmp_path.glob("code*.txt"))) == 2


def test_parity_rows_grouped_by_vertex(hamming7):
    H = random_hypergraph(2, 3, 7, 0)
    C = hc.build(H, hamming7)
    assert C.row_vertex.tolist() == [v for v in range(6) for _ in range(3)]
    block = C.global_parity.to_array()[:3]
    assert np.array_equal(block[:, H.incidence[0, 0]], hamming7.parity_check.to_array())
