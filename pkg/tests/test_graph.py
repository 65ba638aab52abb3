import numpy as np
import pytest

from inducedc4 import (
    C4Witness,
    Graph,
    ParseError,
    canonical_witness,
    dump_graph,
    load_graph,
    verify_witness,
)


def test_load_square():
    g = load_graph("4 4\n0 1\n1 2\n2 3\n3 0")
    assert g.n == 4 and g.edge_count == 4
    assert g.adjacent(0, 1) and g.adjacent(3, 0)
    assert not g.adjacent(0, 2) and not g.adjacent(1, 3)


def test_load_single_vertex():
    g = load_graph("1 0")
    assert g.n == 1 and g.edge_count == 0


def test_load_duplicate_lines_counted_by_line():
    # duplicates and reversals collapse; m counts lines, not distinct edges
    g = load_graph("3 2\n0 1\n1 0")
    assert g.edge_count == 1


@pytest.mark.parametrize(
    "text",
    [
        "",
        "4",
        "4 x\n",
        "4 1\n0 1\n1 2",  # too many lines
        "4 2\n0 1",  # too few lines
        "4 1\n0 9",  # out of range
        "4 1\n2 2",  # self loop
        "4 1\n0 a",
    ],
)
def test_load_errors(text):
    with pytest.raises(ParseError):
        load_graph(text)


def test_parse_error_names_line():
    with pytest.raises(ParseError, match="line 3"):
        load_graph("4 2\n0 1\n5 0")


def test_roundtrip():
    g = load_graph("5 4\n0 1\n1 2\n2 3\n0 4")
    assert load_graph(dump_graph(g)) == g


def test_invariants_hold():
    g = load_graph("4 4\n0 1\n1 0\n2 3\n1 2")
    g.check_invariants()


def test_verify_witness(square, k4):
    assert verify_witness(square, C4Witness(0, 1, 2, 3))
    assert not verify_witness(k4, C4Witness(0, 1, 2, 3))  # chords present
    # rotated tuple puts a chord in cycle position
    assert not verify_witness(square, C4Witness(0, 2, 1, 3))
    assert not verify_witness(square, C4Witness(0, 1, 2, 9))
    assert not verify_witness(square, C4Witness(0, 1, 2, 0))


def test_canonical_witness_unique():
    forms = [
        (0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2),
        (0, 3, 2, 1), (3, 2, 1, 0), (2, 1, 0, 3), (1, 0, 3, 2),
    ]
    canon = {canonical_witness(*f) for f in forms}
    assert canon == {C4Witness(0, 1, 2, 3)}


def test_subgraph_relabels():
    g = load_graph("6 5\n0 2\n2 4\n4 0\n1 3\n4 5")
    sub = g.subgraph(np.array([0, 2, 4]))
    assert sub.n == 3 and sub.edge_count == 3


def test_empty_graph():
    g = load_graph("0 0")
    assert g.n == 0 and g.edge_count == 0
    assert dump_graph(g) == "0 0\n"
