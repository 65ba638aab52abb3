"""Top-level detection: layered decomposition plus the clustered phases.

After `decompose_layers` partitions V into levels of cliques, every induced
4-cycle touches exactly 2, 3 or 4 clusters (clusters are cliques, and a
4-cycle has no triangle), so three phases decide the graph:

  phase 2  all cluster pairs through `detect_pair`, producing the ordering
           table on success;
  phase 3  all level types (t1, t2, t3), dispatched by exact threshold
           comparisons to an edge/side-cluster incomparability scan, a
           diagonal common-neighborhood scan, or per-triple detection;
  phase 4  all level types (t1, .., t4) up to dihedral relabeling,
           dispatched to per-quadruple detection, diagonal scans, or the
           codegree-versus-degree search.

Thresholds that compare level sums against multiples of log2(n) are
evaluated exactly in integer arithmetic (2^(6s) against n^k), with ties
resolved toward the earlier case in the listed order.  Phase scans return
booleans; witnesses come from the oracle fallback, the decomposition
short-circuit, phase 2, or the search-to-decision recursion in `find`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional, Union

import numpy as np

from . import bitset, kernels
from .decomposition import (
    DecompConfig,
    FoundC4,
    LayeredDecomposition,
    decompose_layers,
)
from .errors import ContractViolation
from .graph import C4Witness, Graph, naive_detect, oracle_detect, verify_witness
from .orderings import OrderingTable, detect_pair
from .quadruples import cluster_codegrees, detect_quadruple
from .triples import detect_triple

PHASES = ("oracle-fallback", "decomposition", "2-clustered", "3-clustered", "4-clustered")


@dataclass
class DetectionReport:
    """Outcome of one detection run; witness present only for phases that
    certify one, and always verified."""

    outcome: str
    phase: str
    witness: Optional[C4Witness]
    timings_ms: dict

    @property
    def found(self) -> bool:
        return self.outcome == "found"

    def to_line(self) -> str:
        witness = str(self.witness) if self.witness is not None else "-"
        parts = [f"outcome={self.outcome}", f"phase={self.phase}", f"witness={witness}"]
        for key in ("decomp", "p2", "p3", "p4"):
            parts.append(f"ms_{key}={self.timings_ms.get(key, 0.0):.3f}")
        return " ".join(parts)

    @classmethod
    def from_line(cls, line: str) -> "DetectionReport":
        fields = dict(item.split("=", 1) for item in line.split())
        witness = None
        if fields["witness"] != "-":
            witness = C4Witness(*(int(v) for v in fields["witness"].split(",")))
        timings = {
            key: float(fields[f"ms_{key}"]) for key in ("decomp", "p2", "p3", "p4")
        }
        return cls(fields["outcome"], fields["phase"], witness, timings)


class _MetaGraph:
    """Which cluster pairs have at least one cross edge (a cycle through a
    cluster tuple needs cross edges on its cycle pairs, so tuples missing
    them are skipped)."""

    def __init__(self, g: Graph, decomp: LayeredDecomposition):
        us, vs = g.edge_list()
        ca = decomp.vertex_cluster[us]
        cb = decomp.vertex_cluster[vs]
        cross = ca != cb
        lo = np.minimum(ca[cross], cb[cross])
        hi = np.maximum(ca[cross], cb[cross])
        k = len(decomp.clusters)
        self._pairs = set(int(p) for p in np.unique(lo * k + hi))
        self._k = k
        self.neighbors: dict[int, set[int]] = {c.id: set() for c in decomp.clusters}
        for packed in self._pairs:
            a, b = divmod(packed, k)
            self.neighbors[a].add(b)
            self.neighbors[b].add(a)

    def adjacent(self, a: int, b: int) -> bool:
        lo, hi = (a, b) if a < b else (b, a)
        return lo * self._k + hi in self._pairs


def detect_2_clustered(
    g: Graph, decomp: LayeredDecomposition
) -> Union[FoundC4, OrderingTable]:
    """Run pair detection over every cluster pair (ascending ids); returns
    the witness of the first pair spanning a 4-cycle, else the full ordering
    table.  Pairs with a singleton side cannot span one and synthesize their
    orderings on demand."""
    table = OrderingTable(g, decomp.clusters)
    multi = [c for c in decomp.clusters if c.size >= 2]
    for i, first in enumerate(multi):
        for second in multi[i + 1 :]:
            got = detect_pair(g, first, second)
            if isinstance(got, C4Witness):
                return FoundC4(got)
            table.add(got)
    return table


def _levels_of(decomp: LayeredDecomposition) -> dict[int, np.ndarray]:
    return {
        level: bitset.ids_from_mask(decomp.level_masks[level])
        for level in range(decomp.L, decomp.H + 1)
    }


def detect_3_clustered(
    g: Graph, decomp: LayeredDecomposition, table: OrderingTable
) -> bool:
    """True iff some induced 4-cycle spans exactly three clusters (given
    that none spans two)."""
    n = g.n
    low, high = decomp.L, decomp.H
    level_ids = _levels_of(decomp)
    meta = _MetaGraph(g, decomp)
    n_cubed = n**3
    tried: set[frozenset] = set()
    has_host = {
        level: any(c.size >= 2 for c in decomp.by_level[level])
        for level in range(low, high + 1)
    }
    for t1 in range(low, high + 1):
        for t2 in range(low, high + 1):
            for t3 in range(t2, high + 1):
                if _type3(
                    g, decomp, table, meta, level_ids, t1, t2, t3,
                    tried, n_cubed, has_host,
                ):
                    return True
    return False


def _type3(g, decomp, table, meta, level_ids, t1, t2, t3, tried, n_cubed, has_host) -> bool:
    n = g.n
    low = decomp.L
    if t2 >= low + 1:
        # both single-vertex levels are bounded: scan edges across (t2, t3)
        # for a side cluster at t1 with incomparable endpoint neighborhoods
        if not has_host[t1]:
            return False
        return bool(
            kernels.incomparable_edge_scan(
                g.adj,
                n,
                decomp.vertex_cluster,
                level_ids[t2],
                decomp.level_masks[t3],
                t2 == t3,
                decomp.level_masks[t1],
            )
        )
    if 2 ** (2 * (t1 + t3)) > n_cubed:  # t1 + t3 > (3/2) log2 n
        if not (t1 >= low + 1 and t3 >= low + 1):
            raise ContractViolation(f"type ({t1},{t2},{t3}) broke the case bounds")
        # non-edge diagonal in t1 x t3; the other two cycle vertices are its
        # common neighbors at t1 and t2
        return bool(
            kernels.diagonal_scan(
                g.adj,
                n,
                level_ids[t1],
                level_ids[t3],
                decomp.level_masks[t1],
                decomp.level_masks[t2],
                t1 == t3,
            )
        )
    # remaining case: t2 == low and the cluster tuple space is small enough
    # to try every meta-triangle of clusters directly
    for x1 in decomp.by_level[t1]:
        if x1.size < 2:
            continue
        for x2 in decomp.by_level[t2]:
            if x2.id == x1.id or not meta.adjacent(x1.id, x2.id):
                continue
            for x3 in decomp.by_level[t3]:
                if x3.id in (x1.id, x2.id):
                    continue
                if not (meta.adjacent(x2.id, x3.id) and meta.adjacent(x1.id, x3.id)):
                    continue
                key = frozenset((x1.id, x2.id, x3.id))
                if key in tried:
                    continue
                tried.add(key)
                if detect_triple(g, x1, x2, x3, table):
                    return True
    return False


def _canonical_type4(t: tuple) -> tuple:
    forms = []
    reverse = (t[0], t[3], t[2], t[1])
    for base in (t, reverse):
        for s in range(4):
            forms.append(tuple(base[(s + i) % 4] for i in range(4)))
    return min(forms)


def detect_4_clustered(
    g: Graph, decomp: LayeredDecomposition, table: OrderingTable
) -> bool:
    """True iff some induced 4-cycle spans exactly four clusters (given that
    none spans two or three)."""
    n = g.n
    low, high = decomp.L, decomp.H
    level_ids = _levels_of(decomp)
    meta = _MetaGraph(g, decomp)
    pow11 = n**11
    pow7 = n**7
    tried: set[frozenset] = set()
    for t in combinations_with_replacement(range(low, high + 1), 4):
        # walk all distinct dihedral classes with t1 minimal and t2 <= t4
        seen = set()
        for perm in _distinct_orderings(t):
            canon = _canonical_type4(perm)
            if canon != perm or canon in seen:
                continue
            seen.add(canon)
            if _type4(g, decomp, table, meta, level_ids, canon, tried, pow11, pow7):
                return True
    return False


def _distinct_orderings(values: tuple) -> list:
    from itertools import permutations

    return sorted(set(permutations(values)))


def _type4(g, decomp, table, meta, level_ids, t, tried, pow11, pow7) -> bool:
    n = g.n
    low = decomp.L
    t1, t2, t3, t4 = t
    if not 2 ** (6 * (t2 + t3 + t4)) > pow11:
        # small tuple space: try cluster quadruples wired in a cycle
        return _type4_tuples(g, decomp, table, meta, t, tried)
    if 2 ** (6 * (t1 + t3)) > pow11:
        if not (t1 >= low + 1 and t3 >= low + 1):
            raise ContractViolation(f"type {t} broke the case bounds (2a)")
        return bool(
            kernels.diagonal_scan(
                g.adj, n, level_ids[t2], level_ids[t4],
                decomp.level_masks[t1], decomp.level_masks[t3], t2 == t4,
            )
        )
    if 2 ** (6 * (t2 + t4)) > pow11:
        if not (t2 >= low + 1 and t4 >= low + 1):
            raise ContractViolation(f"type {t} broke the case bounds (2b)")
        return bool(
            kernels.diagonal_scan(
                g.adj, n, level_ids[t1], level_ids[t3],
                decomp.level_masks[t2], decomp.level_masks[t4], t1 == t3,
            )
        )
    if 2 ** (6 * t1) * n <= 2 ** (6 * t3):  # t1 <= t3 - (1/6) log2 n
        if not t3 >= low + 1:
            raise ContractViolation(f"type {t} broke the case bounds (3a)")
        return _type4_codegree(g, decomp, table, meta, t1, (t2, t4), t3)
    if 2 ** (6 * t2) * n <= 2 ** (6 * t4):
        if not t4 >= low + 1:
            raise ContractViolation(f"type {t} broke the case bounds (3b)")
        return _type4_codegree(g, decomp, table, meta, t2, (t1, t3), t4)
    if 2 ** (6 * (t1 + t3)) > pow7:
        if not (t1 >= low + 1 and t3 >= low + 1):
            raise ContractViolation(f"type {t} broke the case bounds (4a)")
        return bool(
            kernels.diagonal_scan(
                g.adj, n, level_ids[t2], level_ids[t4],
                decomp.level_masks[t1], decomp.level_masks[t3], t2 == t4,
            )
        )
    if 2 ** (6 * (t2 + t4)) > pow7:
        if not (t2 >= low + 1 and t4 >= low + 1):
            raise ContractViolation(f"type {t} broke the case bounds (4b)")
        return bool(
            kernels.diagonal_scan(
                g.adj, n, level_ids[t1], level_ids[t3],
                decomp.level_masks[t2], decomp.level_masks[t4], t1 == t3,
            )
        )
    raise ContractViolation(f"type {t} matched no case")


def _type4_tuples(g, decomp, table, meta, t, tried) -> bool:
    t1, t2, t3, t4 = t
    for x1 in decomp.by_level[t1]:
        for x2 in decomp.by_level[t2]:
            if x2.id == x1.id or not meta.adjacent(x1.id, x2.id):
                continue
            for x3 in decomp.by_level[t3]:
                if x3.id in (x1.id, x2.id) or not meta.adjacent(x2.id, x3.id):
                    continue
                for x4 in decomp.by_level[t4]:
                    if x4.id in (x1.id, x2.id, x3.id):
                        continue
                    if not (meta.adjacent(x3.id, x4.id) and meta.adjacent(x4.id, x1.id)):
                        continue
                    key = frozenset((x1.id, x2.id, x3.id, x4.id))
                    if key in tried:
                        continue
                    tried.add(key)
                    if detect_quadruple(g, x1, x2, x3, x4, table):
                        return True
    return False


def _type4_codegree(g, decomp, table, meta, anchor_level, pair_levels, mid_level) -> bool:
    """For every anchor cluster X, test deg_X(mid) < codeg_X(v, v') over
    non-adjacent (v, v') at the pair levels and their common neighbors at
    the bounded mid level; a hit certifies a 4-cycle through X."""
    n = g.n
    p_level, q_level = pair_levels
    same = p_level == q_level
    for anchor in decomp.by_level[anchor_level]:
        cand_p = [
            c for c in decomp.by_level[p_level]
            if c.id != anchor.id and meta.adjacent(anchor.id, c.id)
        ]
        cand_q = [
            c for c in decomp.by_level[q_level]
            if c.id != anchor.id and meta.adjacent(anchor.id, c.id)
        ]
        if not cand_p or not cand_q:
            continue
        anchor_mask = anchor.mask(n)
        mid_mask = decomp.level_masks[mid_level] & ~anchor_mask
        mid_ids = bitset.ids_from_mask(decomp.level_masks[mid_level])
        deg_by_vertex = np.zeros(n, dtype=np.int64)
        if len(mid_ids):
            deg_by_vertex[mid_ids] = bitset.popcount_rows(
                g.adj[mid_ids] & anchor_mask[None, :]
            )
        for pc in cand_p:
            for qc in cand_q:
                if qc.id == pc.id or (same and qc.id < pc.id):
                    continue
                codeg = np.ascontiguousarray(
                    cluster_codegrees(g, anchor, pc, qc, table), dtype=np.int64
                )
                if codeg.max(initial=0) == 0:
                    continue
                if kernels.step3_scan(
                    g.adj, n, pc.vertices, qc.vertices, codeg, mid_mask, deg_by_vertex
                ):
                    return True
    return False


def detect(g: Graph, cfg: Optional[DecompConfig] = None) -> DetectionReport:
    """Decide induced-4-cycle existence.

    Below cfg.n0 vertices the quadratic reference scan answers directly.
    Otherwise the decomposition runs, then the 2-, 3- and 4-clustered phases
    in order; any hit short-circuits, and a miss after all phases is
    definitive because the clusters partition V.
    """
    cfg = cfg or DecompConfig()
    timings = {"decomp": 0.0, "p2": 0.0, "p3": 0.0, "p4": 0.0}
    if g.n < cfg.n0:
        witness = oracle_detect(g)
        outcome = "found" if witness is not None else "not-found"
        return DetectionReport(outcome, "oracle-fallback", witness, timings)

    start = time.perf_counter()
    dec = decompose_layers(g, cfg)
    timings["decomp"] = (time.perf_counter() - start) * 1000
    if isinstance(dec, FoundC4):
        return DetectionReport("found", "decomposition", dec.witness, timings)

    start = time.perf_counter()
    got = detect_2_clustered(g, dec)
    timings["p2"] = (time.perf_counter() - start) * 1000
    if isinstance(got, FoundC4):
        return DetectionReport("found", "2-clustered", got.witness, timings)
    table = got

    start = time.perf_counter()
    hit3 = detect_3_clustered(g, dec, table)
    timings["p3"] = (time.perf_counter() - start) * 1000
    if hit3:
        return DetectionReport("found", "3-clustered", None, timings)

    start = time.perf_counter()
    hit4 = detect_4_clustered(g, dec, table)
    timings["p4"] = (time.perf_counter() - start) * 1000
    if hit4:
        return DetectionReport("found", "4-clustered", None, timings)
    return DetectionReport("not-found", "4-clustered", None, timings)


def find(g: Graph, cfg: Optional[DecompConfig] = None) -> Optional[C4Witness]:
    """A verified witness iff `detect` reports found.

    Search-to-decision: split the ids into eight near-equal ranges, run
    detection on every union of four parts (combinations ascending), recurse
    into the first hit until the subgraph is tiny, then enumerate.  Phases
    that certify a witness short-circuit the descent.
    """
    cfg = cfg or DecompConfig()

    from .graph import canonical_witness

    def relabel(w: C4Witness, to_global: np.ndarray) -> C4Witness:
        a, b, c, d = (int(to_global[v]) for v in w.as_tuple())
        return canonical_witness(a, b, c, d)

    def recurse(sub: Graph, to_global: np.ndarray) -> Optional[C4Witness]:
        report = detect(sub, cfg)
        if not report.found:
            return None
        if report.witness is not None:
            return relabel(report.witness, to_global)
        if sub.n <= 8:
            w = naive_detect(sub)
            if w is None:
                raise ContractViolation("leaf enumeration lost the 4-cycle")
            return relabel(w, to_global)
        chunk = -(-sub.n // 8)
        parts = [
            np.arange(i * chunk, min(sub.n, (i + 1) * chunk), dtype=np.int64)
            for i in range(8)
        ]
        for combo in combinations_with_replacement(range(8), 4):
            picked = sorted(set(combo))
            ids = np.concatenate([parts[i] for i in picked])
            if len(ids) == 0 or len(ids) >= sub.n:
                continue
            witness = recurse(sub.subgraph(ids), to_global[ids])
            if witness is not None:
                return witness
        raise ContractViolation("detection says found but no part combination does")

    got = recurse(g, np.arange(g.n, dtype=np.int64))
    if got is not None and not verify_witness(g, got):
        raise ContractViolation("search produced an unverified witness")
    return got
