from fractions import Fraction

import pytest

from inducedc4 import (
    GraphSpec,
    SpecError,
    format_spec,
    generate,
    oracle_detect,
    parse_spec,
    planted_witness,
    verify_witness,
)
from inducedc4.generate import nested_pair_sides


def test_parse_roundtrip():
    spec = parse_spec("gnp:n=128,p=0.3,seed=42")
    assert spec.kind == "gnp" and spec.n == 128
    assert spec.p == Fraction(3, 10)
    assert parse_spec(format_spec(spec)) == spec


def test_parse_rational_forms():
    assert parse_spec("gnp:n=4,p=1/2,seed=0").p == Fraction(1, 2)
    assert parse_spec("gnp:n=4,p=1,seed=0").p == 1


@pytest.mark.parametrize(
    "text",
    [
        "mystery:n=4",
        "gnp:n=4",  # missing p
        "gnp:n=4,p=2,seed=0",  # p out of range
        "polarity-blowup:q=8,w=1",  # q not prime
        "polarity-blowup:q=251,w=9999",  # too large
        "clique-blowup:n=20,w=6,seed=0",  # w does not divide n
        "clique-blowup:n=8,w=2,seed=0",  # base cycle too short
        "planted-c4:n=3,seed=0",
        "gnp:n=4,p=0.5,seed=0,bogus=1",
    ],
)
def test_spec_errors(text):
    with pytest.raises(SpecError):
        parse_spec(text)


def test_gnp_deterministic():
    a = generate(parse_spec("gnp:n=60,p=0.4,seed=7"))
    b = generate(parse_spec("gnp:n=60,p=0.4,seed=7"))
    assert a == b
    c = generate(parse_spec("gnp:n=60,p=0.4,seed=8"))
    assert a != c


def test_gnp_extremes():
    assert generate(parse_spec("gnp:n=4,p=1,seed=3")).edge_count == 6
    assert generate(parse_spec("gnp:n=12,p=0,seed=3")).edge_count == 0
    assert generate(parse_spec("gnp:n=0,p=0.5,seed=1")).n == 0


def test_fano_polarity():
    g = generate(parse_spec("polarity-blowup:q=2,w=1"))
    assert g.n == 7 and g.edge_count == 9
    assert oracle_detect(g) is None
    g.check_invariants()


@pytest.mark.parametrize("spec_text", [
    "polarity-blowup:q=3,w=2",
    "polarity-blowup:q=5,w=3",
    "clique-blowup:n=35,w=7,seed=3",
    "clique-blowup:n=64,w=8,seed=9",
    "nested-pair:n=17,seed=4",
])
def test_hard_families_are_4cycle_free(spec_text):
    g = generate(parse_spec(spec_text))
    g.check_invariants()
    assert oracle_detect(g) is None


def test_planted_c4():
    spec = parse_spec("planted-c4:n=10,seed=7")
    g = generate(spec)
    assert verify_witness(g, planted_witness(spec))
    assert oracle_detect(g) is not None


def test_nested_pair_sides():
    spec = parse_spec("nested-pair:n=11,seed=0")
    a, b = nested_pair_sides(spec)
    assert len(a) == 6 and len(b) == 5
    g = generate(spec)
    # both sides are cliques
    for side in (a, b):
        for i in range(len(side)):
            for j in range(i + 1, len(side)):
                assert g.adjacent(int(side[i]), int(side[j]))
