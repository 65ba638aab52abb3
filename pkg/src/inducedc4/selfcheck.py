"""Acceptance suites, shared by the CLI selftest and the test suite.

Each suite returns a `SuiteResult`; `run_all` executes every criterion at the
scale the caller asks for.  Everything here is seeded and deterministic.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from . import bitset
from .bench import fitted_slope, run_bench
from .decomposition import DecompConfig, FoundC4, decompose_layers
from .detector import detect, find
from .errors import ContractViolation
from .generate import GraphSpec, generate, nested_pair_sides
from .graph import (
    C4Witness,
    Graph,
    canonical_witness,
    naive_detect,
    oracle_detect,
    verify_witness,
)
from .orderings import Cluster, ConciseOrdering, OrderingTable, detect_pair
from .quadruples import cluster_codegrees, correlated_vectors, detect_quadruple
from .rangequery import Bound, RangePointSet
from .rng import rand_below, substream
from .triples import detect_triple


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


# -- shared builders ---------------------------------------------------------


def all_graphs(n: int):
    """Every labeled graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
        yield Graph.from_edges(n, edges)


def build_table(g: Graph, clusters: list[Cluster]) -> Optional[OrderingTable]:
    """Pairwise orderings, or None when some pair spans a 4-cycle."""
    table = OrderingTable(g, clusters)
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            a, b = clusters[i], clusters[j]
            if a.size > 1 and b.size > 1:
                got = detect_pair(g, a, b)
                if not isinstance(got, ConciseOrdering):
                    return None
                table.add(got)
    return table


def random_ordered_clusters(seed: int, count: int, max_size: int = 6):
    """Disjoint cliques with random nested cross edges (each pair ordered by
    construction; the union may still contain 3- or 4-clustered cycles)."""
    s = substream(seed, 21)
    sizes = [1 + rand_below(s, i, max_size) for i in range(count)]
    n = sum(sizes)
    bounds = np.cumsum([0] + sizes)
    verts = [np.arange(bounds[i], bounds[i + 1]) for i in range(count)]
    dense = np.zeros((n, n), dtype=bool)
    for vs in verts:
        dense[np.ix_(vs, vs)] = True
    counter = 1000
    for i in range(count):
        for j in range(i + 1, count):
            si, sj = sizes[i], sizes[j]
            levels = np.array([rand_below(s, counter + k, si + 1) for k in range(sj)])
            counter += sj
            thr = np.array([rand_below(s, counter + k, si + 1) + 1 for k in range(si)])
            counter += si
            cross = thr[:, None] <= levels[None, :]
            dense[np.ix_(verts[i], verts[j])] = cross
            dense[np.ix_(verts[j], verts[i])] = cross.T
    np.fill_diagonal(dense, False)
    return Graph.from_dense(dense), [Cluster(i, 0, verts[i]) for i in range(count)]


def perturb_blowup(g: Graph, seed: int) -> tuple[Graph, C4Witness]:
    """Add one cross edge closing an induced path of three edges, creating
    exactly the 4-cycle returned as the witness."""
    s = substream(seed, 7)
    rows = g.int_rows()
    counter = 0
    while True:
        d = rand_below(s, counter, g.n)
        counter += 1
        nd = g.neighbors(d)
        if len(nd) == 0:
            continue
        c = int(nd[rand_below(s, counter, len(nd))])
        counter += 1
        only_d = [int(v) for v in nd if not (rows[c] >> int(v)) & 1 and int(v) != c]
        only_c = [
            int(v) for v in g.neighbors(c) if not (rows[d] >> int(v)) & 1 and int(v) != d
        ]
        if not only_d or not only_c:
            continue
        a = only_d[rand_below(s, counter, len(only_d))]
        counter += 1
        b = only_c[rand_below(s, counter, len(only_c))]
        counter += 1
        if a == b or (rows[a] >> b) & 1:
            continue
        dense = bitset.extract_bits(g.adj, np.arange(g.n), np.arange(g.n))
        dense[a, b] = dense[b, a] = True
        return Graph.from_dense(dense), canonical_witness(a, d, c, b)


def plant_crossing(g: Graph, side_a: np.ndarray, side_b: np.ndarray, seed: int) -> Graph:
    """Force a two-clique 4-cycle across the pair (a perfect 2x2 crossing)."""
    s = substream(seed, 99)
    counter = 0
    while True:
        a1 = int(side_a[rand_below(s, counter, len(side_a))])
        a2 = int(side_a[rand_below(s, counter + 1, len(side_a))])
        b1 = int(side_b[rand_below(s, counter + 2, len(side_b))])
        b2 = int(side_b[rand_below(s, counter + 3, len(side_b))])
        counter += 4
        if a1 != a2 and b1 != b2:
            break
    dense = bitset.extract_bits(g.adj, np.arange(g.n), np.arange(g.n))
    dense[a1, b1] = dense[b1, a1] = True
    dense[a2, b2] = dense[b2, a2] = True
    dense[a1, b2] = dense[b2, a1] = False
    dense[a2, b1] = dense[b1, a2] = False
    return Graph.from_dense(dense)


# -- criterion 1: exhaustive equivalence --------------------------------------


def suite_exhaustive(max_n: int = 6, cfg: Optional[DecompConfig] = None) -> SuiteResult:
    cfg = cfg or DecompConfig()
    mismatches = 0
    total = 0
    start = time.perf_counter()
    for n in range(max_n + 1):
        for g in all_graphs(n):
            total += 1
            want = oracle_detect(g) is not None
            if detect(g, cfg).found != want:
                mismatches += 1
    elapsed = time.perf_counter() - start
    return SuiteResult(
        "exhaustive-oracle-equivalence",
        mismatches == 0 and elapsed < 300,
        f"{total} graphs up to n={max_n}, {mismatches} mismatches, {elapsed:.1f}s",
    )


# -- criterion 2: randomized differential -------------------------------------


def suite_randomized(total: int = 2000, cfg: Optional[DecompConfig] = None) -> SuiteResult:
    cfg = cfg or DecompConfig()
    sizes = (32, 64, 128, 256)
    probs = (
        Fraction(1, 20), Fraction(1, 10), Fraction(1, 4),
        Fraction(1, 2), Fraction(3, 4), Fraction(19, 20),
    )
    grid = [(n, p) for n in sizes for p in probs]
    mismatches = bad_finds = positives = 0
    for i in range(total):
        n, p = grid[i % len(grid)]
        g = generate(GraphSpec("gnp", n=n, p=p, seed=i))
        want = oracle_detect(g) is not None
        got = detect(g, cfg)
        if got.found != want:
            mismatches += 1
            continue
        if want:
            positives += 1
            witness = find(g, cfg)
            if witness is None or not verify_witness(g, witness):
                bad_finds += 1
    return SuiteResult(
        "randomized-differential",
        mismatches == 0 and bad_finds == 0,
        f"{total} instances, {positives} positive, "
        f"{mismatches} mismatches, {bad_finds} bad witnesses",
    )


# -- criterion 3: hard instances ----------------------------------------------


def suite_hard_instances(perturbations: int = 100) -> SuiteResult:
    bases = [(7, 1), (7, 4), (7, 16), (11, 1), (11, 4), (11, 16)]
    failures = []
    graphs = {}
    for q, w in bases:
        g = generate(GraphSpec("polarity-blowup", q=q, w=w))
        graphs[(q, w)] = g
        if oracle_detect(g) is not None:
            failures.append(f"oracle positive on q={q},w={w}")
        if detect(g).found:
            failures.append(f"fast positive on q={q},w={w}")
    # spread perturbations over the bases, cheap ones more often
    weights = {(7, 1): 10, (7, 4): 30, (7, 16): 25, (11, 1): 10, (11, 4): 20, (11, 16): 5}
    plan = [base for base, w in weights.items() for _ in range(w)]
    flipped = 0
    for i in range(perturbations):
        base = plan[i % len(plan)]
        g2, witness = perturb_blowup(graphs[base], 9000 + i)
        if not verify_witness(g2, witness):
            failures.append(f"perturbation {i} witness invalid")
            continue
        if not detect(g2).found:
            failures.append(f"fast missed perturbation {i} on {base}")
        else:
            flipped += 1
    return SuiteResult(
        "hard-instances",
        not failures,
        f"6 bases NONE, {flipped}/{perturbations} perturbations flipped"
        + ("" if not failures else f"; failures: {failures[:3]}"),
    )


# -- criterion 4: decomposition invariants ------------------------------------


def suite_decomposition(instances: int = 100) -> SuiteResult:
    cfg = DecompConfig()
    widths = {256: (4, 8, 16, 32), 512: (4, 8, 16, 32, 64), 1024: (8, 16, 32, 64)}
    plan = [(n, w) for n, ws in widths.items() for w in ws]
    violations = []
    done = 0
    for i in range(instances):
        n, w = plan[i % len(plan)]
        g = generate(GraphSpec("clique-blowup", n=n, w=w, seed=i))
        dec = decompose_layers(g, cfg)
        if isinstance(dec, FoundC4):
            violations.append(f"instance {i}: claims 4-cycle in 4-cycle-free input")
            continue
        problems = dec.check_invariants()
        if problems:
            violations.append(f"instance {i}: {problems[:2]}")
        done += 1
    return SuiteResult(
        "decomposition-invariants",
        not violations,
        f"{done}/{instances} decompositions clean"
        + ("" if not violations else f"; {violations[:3]}"),
    )


# -- criterion 5: ordering suite -----------------------------------------------


def suite_orderings(cases: int = 1000) -> SuiteResult:
    failures = 0
    for seed in range(cases):
        n = 6 + seed % 40
        spec = GraphSpec("nested-pair", n=n, seed=seed)
        g = generate(spec)
        ids_a, ids_b = nested_pair_sides(spec)
        a, b = Cluster(0, 0, ids_a), Cluster(1, 0, ids_b)
        got = detect_pair(g, a, b)
        if not isinstance(got, ConciseOrdering):
            failures += 1
            continue
        cross = bitset.extract_bits(g.adj, ids_a, ids_b)
        if not ((got.f[:, None] <= got.g[None, :]) == cross).all():
            failures += 1
            continue
        if not _concise(got, cross):
            failures += 1
            continue
        planted = plant_crossing(g, ids_a, ids_b, seed)
        verdict = detect_pair(planted, a, b)
        if not isinstance(verdict, C4Witness) or not verify_witness(planted, verdict):
            failures += 1
    return SuiteResult(
        "ordering-suite",
        failures == 0,
        f"{cases} 4-cycle-free pairs ordered+verified and {cases} planted pairs "
        f"caught; {failures} failures",
    )


def _concise(ordering: ConciseOrdering, cross: np.ndarray) -> bool:
    for values, matrix in ((ordering.f, cross), (ordering.g, cross.T)):
        order = np.argsort(values, kind="stable")
        for i, j in zip(order[:-1], order[1:]):
            if values[i] != values[j] and (matrix[i] == matrix[j]).all():
                return False
    return True


# -- criterion 6: range-query differential -------------------------------------


def suite_rangequery(cases_per_dim: int = 10000) -> SuiteResult:
    rng = random.Random(616)
    failures = 0
    boxes_per_set = 20
    for d in (2, 3, 4):
        for case in range(cases_per_dim // boxes_per_set):
            count = rng.randint(0, 48)
            points = [
                (tuple(rng.randint(-40, 40) for _ in range(d)), i)
                for i in range(count)
            ]
            structure = RangePointSet(d, points)
            for _ in range(boxes_per_set):
                box = []
                for _ in range(d):
                    a, b = rng.randint(-45, 45), rng.randint(-45, 45)
                    box.append(
                        Bound(min(a, b), max(a, b), rng.random() < 0.5, rng.random() < 0.5)
                    )
                effective = [bound.effective() for bound in box]
                inside = [
                    (coords, payload)
                    for coords, payload in points
                    if all(lo <= coords[k] <= hi for k, (lo, hi) in enumerate(effective))
                ]
                got_count, got_witness = structure.count_and_witness(box)
                want_count = len(inside)
                want_witness = min((p for _, p in inside), default=None)
                if got_count != want_count or got_witness != want_witness:
                    failures += 1
    return SuiteResult(
        "rangequery-differential",
        failures == 0,
        f"{cases_per_dim} cases per dimension in 2..4, {failures} mismatches",
    )


# -- criterion 7: structural spot suites ----------------------------------


def suite_structural(cases: int = 500) -> SuiteResult:
    vec_done = codeg_done = triple_done = quad_done = 0
    failures = []
    seed = 0
    while vec_done < cases or codeg_done < cases:
        g, clusters = random_ordered_clusters(seed, 3)
        seed += 1
        table = build_table(g, clusters)
        if table is None:
            continue
        w, x, z = clusters
        if codeg_done < cases:
            got = cluster_codegrees(g, w, x, z, table)
            w_mask = w.mask(g.n)
            want = np.array(
                [
                    [
                        bitset.popcount(g.adj[int(vx)] & g.adj[int(vz)] & w_mask)
                        for vz in z.vertices
                    ]
                    for vx in x.vertices
                ]
            )
            if not (got == want).all():
                failures.append(f"codegrees seed {seed - 1}")
            codeg_done += 1
        if vec_done < cases and not detect_triple(g, w, x, z, table):
            try:
                correlated_vectors(g, w, x, z, table, strict=True)
            except ContractViolation:
                failures.append(f"vectors seed {seed - 1}")
            vec_done += 1
    tseed = 0
    while triple_done < cases:
        g, clusters = random_ordered_clusters(100000 + tseed, 3)
        tseed += 1
        table = build_table(g, clusters)
        if table is None:
            continue
        got = detect_triple(g, *clusters, table)
        if got != (oracle_detect(g) is not None):
            failures.append(f"triple seed {tseed - 1}")
        triple_done += 1
    qseed = 0
    while quad_done < cases:
        g, clusters = random_ordered_clusters(200000 + qseed, 4)
        qseed += 1
        table = build_table(g, clusters)
        if table is None:
            continue
        got = detect_quadruple(g, *clusters, table)
        if got != (oracle_detect(g) is not None):
            failures.append(f"quadruple seed {qseed - 1}")
        quad_done += 1
    return SuiteResult(
        "structural-spot-suites",
        not failures,
        f"{vec_done} vector, {codeg_done} codegree, {triple_done} triple, "
        f"{quad_done} quadruple checks; {len(failures)} failures",
    )


# -- criterion 8: scaling report -------------------------------------------------


def suite_scaling(
    sizes=(1024, 2048, 4096, 8192), reps: int = 3, gate: float = 3.2
) -> SuiteResult:
    records = run_bench(sizes, reps, oracle_max=0, naive_max=0)
    slope = fitted_slope(records, "fast")
    return SuiteResult(
        "scaling-report",
        slope <= gate,
        f"fitted log-log slope {slope:.2f} over n={list(sizes)} (gate {gate})",
    )


def run_all(scale: str = "full", max_n: int = 6) -> list[SuiteResult]:
    """Every acceptance criterion; `scale='quick'` shrinks the counts."""
    quick = scale == "quick"
    return [
        suite_exhaustive(max_n=min(max_n, 5) if quick else max_n),
        suite_randomized(total=200 if quick else 2000),
        suite_hard_instances(perturbations=12 if quick else 100),
        suite_decomposition(instances=12 if quick else 100),
        suite_orderings(cases=100 if quick else 1000),
        suite_rangequery(cases_per_dim=1000 if quick else 10000),
        suite_structural(cases=60 if quick else 500),
        suite_scaling(sizes=(256, 512, 1024) if quick else (1024, 2048, 4096, 8192)),
    ]
