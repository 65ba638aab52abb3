from fractions import Fraction

import numpy as np
import pytest

from conftest import graph_from_bits

from inducedc4 import Graph, GraphSpec, generate, oracle_detect, parse_spec, verify_witness
from inducedc4.decomposition import DecompConfig, FoundC4, decompose_layers
from inducedc4.detector import (
    DetectionReport,
    detect,
    detect_2_clustered,
    detect_3_clustered,
    detect_4_clustered,
    find,
)

FORCE = DecompConfig(n0=2)  # run the full pipeline even on tiny graphs


def test_square_found_via_fallback(square):
    report = detect(square)
    assert report.found and report.phase == "oracle-fallback"
    assert verify_witness(square, report.witness)


def test_complete_graph_not_found():
    g = generate(parse_spec("gnp:n=128,p=1,seed=0"))
    report = detect(g)
    assert not report.found


def test_report_line_roundtrip():
    g = generate(parse_spec("gnp:n=32,p=0.5,seed=0"))
    report = detect(g)
    parsed = DetectionReport.from_line(report.to_line())
    assert parsed.outcome == report.outcome
    assert parsed.phase == report.phase
    assert parsed.witness == report.witness


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_exhaustive_forced_pipeline(n):
    pairs = n * (n - 1) // 2
    for bits in range(1 << pairs):
        g = graph_from_bits(n, bits)
        want = oracle_detect(g) is not None
        report = detect(g, FORCE)
        assert report.found == want, (n, bits, report.phase)
        if report.witness is not None:
            assert verify_witness(g, report.witness)


def test_sampled_n6_forced_pipeline():
    # a seeded slice of the 2^15 graphs on six vertices
    for bits in range(0, 1 << 15, 7):
        g = graph_from_bits(6, bits)
        want = oracle_detect(g) is not None
        assert detect(g, FORCE).found == want, bits


@pytest.mark.parametrize("seed", range(0, 240, 3))
def test_seeded_forced_pipeline(seed):
    n = 8 + seed % 33
    p = Fraction((seed * 7) % 60 + 3, 100)
    g = generate(GraphSpec("gnp", n=n, p=p, seed=seed))
    assert detect(g, FORCE).found == (oracle_detect(g) is not None)


def test_two_cliques_with_crossing_found_in_phase2():
    # two 8-cliques wired by a crossing perfect matching; with the cliques
    # as clusters, the pair phase spots the two-per-cluster cycle pattern
    from inducedc4.decomposition import LayeredDecomposition

    edges = []
    a = list(range(8))
    b = list(range(8, 16))
    edges += [(u, v) for u in a for v in a if u < v]
    edges += [(u, v) for u in b for v in b if u < v]
    edges += [(a[i], b[i]) for i in range(8)]
    g = Graph.from_edges(16, edges)
    dec = LayeredDecomposition(
        g, FORCE, (1, 4),
        {1: [np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)]},
        g.edge_count,
    )
    got = detect_2_clustered(g, dec)
    assert isinstance(got, FoundC4)
    assert verify_witness(g, got.witness)
    # the end-to-end detector agrees whatever decomposition it builds
    assert detect(g, FORCE).found


def test_edgeless_decomposition_trivial_table():
    g = Graph.from_edges(64, [])
    dec = decompose_layers(g)
    assert not isinstance(dec, FoundC4)
    table = detect_2_clustered(g, dec)
    assert not isinstance(table, FoundC4)
    assert not detect_3_clustered(g, dec, table)
    assert not detect_4_clustered(g, dec, table)


def test_phase_order_and_phases_exercised():
    seen = set()
    for seed in range(400):
        n = 12 + seed % 40
        p = Fraction((seed * 11) % 70 + 5, 100)
        g = generate(GraphSpec("gnp", n=n, p=p, seed=900000 + seed))
        report = detect(g, FORCE)
        assert report.found == (oracle_detect(g) is not None)
        if report.found:
            seen.add(report.phase)
    assert "decomposition" in seen
    # at least one of the clustered phases fires across the corpus
    assert seen & {"2-clustered", "3-clustered", "4-clustered"}


def test_hard_instance_runs_all_phases():
    g = generate(parse_spec("polarity-blowup:q=7,w=4"))
    report = detect(g)
    assert not report.found and report.phase == "4-clustered"
    assert report.timings_ms["p4"] > 0


def test_find_square(square):
    assert find(square) == oracle_detect(square)


def test_find_none_on_k4(k4):
    assert find(k4) is None


def test_find_verified_on_positives():
    found = 0
    for seed in range(60):
        g = generate(GraphSpec("gnp", n=96, p=Fraction(1, 8), seed=seed))
        witness = find(g)
        assert (witness is None) == (oracle_detect(g) is None)
        if witness is not None:
            assert verify_witness(g, witness)
            found += 1
    assert found > 40


def test_detect_deterministic():
    g = generate(parse_spec("gnp:n=128,p=0.25,seed=5"))
    first, second = detect(g), detect(g)
    assert first.outcome == second.outcome
    assert first.phase == second.phase
    assert first.witness == second.witness
    assert find(g) == find(g)


def test_not_found_is_definitive_on_hard_family():
    for spec in ("polarity-blowup:q=3,w=8", "clique-blowup:n=96,w=12,seed=2"):
        g = generate(parse_spec(spec))
        assert not detect(g).found
        assert oracle_detect(g) is None
