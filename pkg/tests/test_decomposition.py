from fractions import Fraction

import numpy as np
import pytest

from inducedc4 import Graph, generate, oracle_detect, parse_spec, verify_witness
from inducedc4.bitset import ids_from_mask, mask_from_ids
from inducedc4.decomposition import (
    CommonNeighborhoods,
    DecompConfig,
    FoundC4,
    LayeredDecomposition,
    decompose_large,
    decompose_layers,
    decompose_low,
    extract_clique,
    level_bounds,
)


def test_config_validation():
    with pytest.raises(ValueError):
        DecompConfig(band_lo=Fraction(3), band_hi=Fraction(2))
    with pytest.raises(ValueError):
        DecompConfig(n0=0)


def test_level_bounds():
    assert level_bounds(64) == (3, 6)
    assert level_bounds(100) == (3, 6)
    assert level_bounds(1024) == (5, 10)
    assert level_bounds(2128) == (5, 11)


def test_extract_complete_graph():
    g = generate(parse_spec("gnp:n=40,p=1,seed=0"))
    got = extract_clique(g, np.arange(40))
    assert isinstance(got, np.ndarray)
    # promised size: at least m^2 / (4 r^3)
    m, r = g.edge_count, 40
    assert len(got) * 4 * r**3 >= m * m


def test_extract_low_degree_singleton():
    g = Graph.from_edges(10, [(0, 1), (2, 3)])
    got = extract_clique(g, np.arange(10))
    assert isinstance(got, np.ndarray) and len(got) == 1


def test_extract_finds_planted_cycle():
    # non-clique common neighborhood forced into the dense sweep
    common = list(range(2, 12))
    edges = [(0, z) for z in common] + [(1, z) for z in common]
    for i in range(len(common)):
        for j in range(i + 1, len(common)):
            if (common[i], common[j]) != (2, 3):
                edges.append((common[i], common[j]))
    g = Graph.from_edges(12, edges)
    got = decompose_low(g, 4)
    assert isinstance(got, FoundC4)
    assert verify_witness(g, got.witness)


def test_extract_on_4cycle_free_blowup():
    g = generate(parse_spec("polarity-blowup:q=5,w=8"))  # n = 248
    got = extract_clique(g, np.arange(g.n))
    assert isinstance(got, np.ndarray)  # a 4-cycle is impossible here
    m, r = g.edge_count, g.n
    if m * m > 4 * r**3:
        assert len(got) * 4 * r**3 >= m * m


def test_decompose_large_edgeless():
    g = Graph.from_edges(16, [])
    cliques, remainder = decompose_large(g, 4)
    assert cliques == []
    assert len(ids_from_mask(remainder)) == 16


def test_decompose_large_sparsity_postcondition():
    cfg = DecompConfig()
    for spec in ("gnp:n=128,p=0.9,seed=1", "gnp:n=128,p=0.5,seed=2"):
        g = generate(parse_spec(spec))
        got = decompose_large(g, 8, cfg)
        if isinstance(got, FoundC4):
            assert verify_witness(g, got.witness)
            continue
        cliques, remainder = got
        delta = Fraction(8)
        for clique in cliques:
            assert cfg.band_lo * delta < len(clique) <= cfg.band_hi * delta
        ids = ids_from_mask(remainder)
        sub = g.subgraph(ids)
        assert Fraction(sub.edge_count**2) < cfg.c_sparse**2 * g.n**3 * delta


def test_decompose_low_threshold_postcondition():
    g = generate(parse_spec("gnp:n=96,p=0.1,seed=5"))
    got = decompose_low(g, 6)
    if isinstance(got, FoundC4):
        assert verify_witness(g, got.witness)
        return
    cliques, remainder, table = got
    assert table.max_nonedge_size() < 6


def test_decompose_low_complete_graph():
    # no non-edges, already sparse by the edge threshold: trivial output
    g = generate(parse_spec("gnp:n=32,p=1,seed=1"))
    cliques, remainder, table = decompose_low(g, 32)
    assert cliques == []
    assert len(ids_from_mask(remainder)) == 32
    assert table.max_nonedge_size() == 0


def test_common_neighborhood_view():
    g = Graph.from_edges(6, [(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)])
    view = CommonNeighborhoods(g, mask_from_ids(np.arange(6), 6))
    assert list(view.get(0, 1)) == [2, 3]
    assert view.size(0, 1) == 2
    assert view.max_nonedge_size() == 2


def test_layers_on_clique_blowup():
    g = generate(parse_spec("clique-blowup:n=1024,w=32,seed=11"))
    dec = decompose_layers(g)
    assert isinstance(dec, LayeredDecomposition)
    assert dec.check_invariants() == []
    # blown cliques land whole at the coarsest level
    assert len(dec.by_level[dec.L]) == 32
    assert all(c.size == 32 for c in dec.by_level[dec.L])


def test_layers_on_polarity_blowup():
    g = generate(parse_spec("polarity-blowup:q=7,w=16"))
    dec = decompose_layers(g)
    assert isinstance(dec, LayeredDecomposition)
    assert dec.check_invariants() == []
    report = dec.debug_report()
    assert "levels" in report and "large_remainder_edges" in report


def test_layers_found_is_sound():
    for seed in range(10):
        g = generate(parse_spec(f"gnp:n=128,p=0.5,seed={seed}"))
        dec = decompose_layers(g)
        if isinstance(dec, FoundC4):
            assert verify_witness(g, dec.witness)
            assert oracle_detect(g) is not None


def test_layers_requires_minimum_size():
    g = generate(parse_spec("gnp:n=16,p=0.5,seed=1"))
    with pytest.raises(ValueError):
        decompose_layers(g)


def test_edgeless_layers_all_singletons():
    g = Graph.from_edges(64, [])
    dec = decompose_layers(g)
    assert isinstance(dec, LayeredDecomposition)
    assert dec.check_invariants() == []
    assert all(c.size == 1 for c in dec.by_level[dec.H])
    assert sum(c.size for c in dec.by_level[dec.H]) == 64
