"""Clique decomposition: extraction, level construction, invariant checks.

The pipeline peels a graph into levels of verified cliques:

  * `extract_clique` pulls one large clique out of a dense vertex set, or
    reports an induced 4-cycle found along the way (every candidate clique is
    checked explicitly, and a failed check certifies a 4-cycle because the
    candidate is always the common neighborhood of a non-adjacent pair).
  * `decompose_large` repeats extraction until the remainder is sparse.
  * `decompose_low` further extracts every common neighborhood of size >= D
    of any non-adjacent pair, leaving all surviving common neighborhoods
    below D inside the remainder.
  * `decompose_layers` runs the above at the coarsest level, then sweeps
    levels of geometrically shrinking thresholds, producing a partition of V
    into levels L..H of cliques sized around n/2^l with bounded common
    neighborhoods at every level above L.

All size thresholds are evaluated in exact integer/Fraction arithmetic; the
asymptotic constants live in `DecompConfig` so the invariants are testable
inequalities.  Common-neighborhood tables are served as views that recompute
small sorted vertex lists from adjacency bitsets on demand rather than being
materialized per non-edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

import numpy as np

from . import bitset, kernels
from .errors import ContractViolation
from .graph import C4Witness, Graph, canonical_witness, verify_witness
from .orderings import Cluster


@dataclass(frozen=True)
class DecompConfig:
    """Explicit constants behind the decomposition's asymptotic guarantees.

    band_lo/band_hi: clique sizes at level l stay within
        (band_lo * n/2^l, band_hi * n/2^l].
    c_sparse: decompose_large stops once the remainder has fewer than
        c_sparse * n^(3/2) * D^(1/2) edges.
    c_nbr: surviving common neighborhoods at level l > L have size at most
        c_nbr * n/2^l.
    n0: below this many vertices the detector answers by the quadratic
        reference scan instead of decomposing.
    degree_prune: extraction first discards vertices of degree at most
        degree_prune * average-degree.
    """

    band_lo: Fraction = Fraction(1, 4)
    band_hi: Fraction = Fraction(2)
    c_sparse: Fraction = Fraction(4)
    c_nbr: Fraction = Fraction(2)
    n0: int = 64
    degree_prune: Fraction = Fraction(1, 2)

    def __post_init__(self):
        for name in ("band_lo", "band_hi", "c_sparse", "c_nbr", "degree_prune"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (0 < self.band_lo < self.band_hi):
            raise ValueError("band multipliers need 0 < lo < hi")
        if self.c_sparse <= 0 or self.c_nbr <= 0 or self.degree_prune <= 0:
            raise ValueError("decomposition constants must be positive")
        if self.n0 < 1:
            raise ValueError("n0 must be positive")


@dataclass(frozen=True)
class FoundC4:
    """Short-circuit result: a verified witness discovered mid-decomposition."""

    witness: C4Witness


def _found(g: Graph, x: int, u: int, y: int, v: int) -> FoundC4:
    w = canonical_witness(x, u, y, v)
    if not verify_witness(g, w):
        raise ContractViolation(f"decomposition produced invalid witness {w}")
    return FoundC4(w)


def _edges_within(g: Graph, mask: np.ndarray) -> int:
    ids = bitset.ids_from_mask(mask)
    if len(ids) == 0:
        return 0
    return int(bitset.popcount_rows(g.adj[ids] & mask[None, :]).sum()) // 2


def _ceil_frac(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


def _floor_frac(value: Fraction) -> int:
    return value.numerator // value.denominator


def extract_clique(
    g: Graph, r_ids: np.ndarray, cfg: DecompConfig = DecompConfig()
) -> Union[FoundC4, np.ndarray]:
    """One clique out of G[r], or a verified 4-cycle witness.

    With m edges and r vertices in the working set, either the average
    degree is at most 4*sqrt(r) (then any single vertex meets the size
    target) or the returned clique has at least m^2 / (4 r^3) vertices.
    """
    r_ids = np.asarray(r_ids, dtype=np.int64)
    if len(r_ids) == 0:
        raise ValueError("extract_clique needs a non-empty vertex set")
    r = len(r_ids)
    r_mask = bitset.mask_from_ids(r_ids, g.n)
    m = _edges_within(g, r_mask)

    # average degree d = 2m/r;  d <= 4 sqrt(r)  <=>  m^2 <= 4 r^3
    if m * m <= 4 * r**3:
        return r_ids[:1].copy()

    delta = Fraction(m * m, 4 * r**3)
    delta_req = max(1, _ceil_frac(delta))

    # discard low-degree vertices until all survivors exceed prune * d;
    # batch rounds reach the same fixed point as one-at-a-time removal
    alive = r_mask.copy()
    prune = cfg.degree_prune
    while True:
        ids = bitset.ids_from_mask(alive)
        if len(ids) == 0:
            raise ContractViolation("degree pruning emptied a dense graph")
        deg = bitset.popcount_rows(g.adj[ids] & alive[None, :])
        # deg <= d * prune  <=>  deg * r * prune_den <= 2 m * prune_num
        victims = ids[deg * r * prune.denominator <= 2 * m * prune.numerator]
        if len(victims) == 0:
            break
        alive &= ~bitset.mask_from_ids(victims, g.n)
    tilde = bitset.ids_from_mask(alive)
    tv = len(tilde)

    rows = g.int_rows()
    alive_int = bitset.mask_to_int(alive)

    def greedy_extend(current: list[int], current_mask: int) -> tuple[list[int], int]:
        for v in tilde:
            v = int(v)
            if (current_mask >> v) & 1 or rows[v] & current_mask:
                continue
            current.append(v)
            current_mask |= 1 << v
        return current, current_mask

    ind_set, ind_mask = greedy_extend([], 0)
    ind_set.sort()

    def codeg_sweep(members: list[int]) -> Union[FoundC4, np.ndarray, None]:
        # first pair (lex) of independent-set members with many common
        # neighbors in the pruned set; its common neighborhood is a clique
        # or certifies a 4-cycle
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                x, y = members[i], members[j]
                codeg = (rows[x] & rows[y] & alive_int).bit_count()
                if codeg * 4 * r**3 >= m * m:  # codeg >= delta
                    z_mask_int = rows[x] & rows[y] & bitset.mask_to_int(r_mask)
                    z_mask = bitset.int_to_mask(z_mask_int, g.n)
                    bad = kernels.nonclique_pair(g.adj, g.n, z_mask)
                    if bad is not None:
                        return _found(g, x, bad[0], y, bad[1])
                    return bitset.ids_from_mask(z_mask)
        return None

    # grow/exchange the independent set until it is large, harvesting a
    # clique whenever a unique-neighbor set or a common neighborhood is big
    while len(ind_set) * m < 2 * tv * r:  # |I| < 4 |~V| / d
        members = g.adj[tilde] & bitset.int_to_mask(ind_mask, g.n)[None, :]
        counts = bitset.popcount_rows(members)
        unique_holders = tilde[counts == 1]
        buckets: dict[int, list[int]] = {}
        for v in unique_holders:
            v = int(v)
            anchor = (rows[v] & ind_mask).bit_length() - 1
            buckets.setdefault(anchor, []).append(v)
        chosen = None
        for anchor in sorted(buckets):
            # |U(x)| >= d/8 - 1  <=>  4 r (|U| + 1) >= m
            if 4 * r * (len(buckets[anchor]) + 1) >= m:
                chosen = anchor
                break
        if chosen is not None:
            u_set = sorted(buckets[chosen])
            if len(u_set) < delta_req:
                raise ContractViolation("unique-neighbor set smaller than promised")
            candidate = np.array(u_set[:delta_req], dtype=np.int64)
            bad = kernels.nonclique_pair(
                g.adj, g.n, bitset.mask_from_ids(candidate, g.n)
            )
            if bad is None:
                return candidate
            ind_mask &= ~(1 << chosen)
            ind_mask |= (1 << bad[0]) | (1 << bad[1])
            ind_set = [v for v in ind_set if v != chosen] + [bad[0], bad[1]]
            ind_set, ind_mask = greedy_extend(ind_set, ind_mask)
            ind_set.sort()
        else:
            out = codeg_sweep(ind_set)
            if out is None:
                raise ContractViolation("no dense common neighborhood in sweep")
            return out

    take = _ceil_frac(Fraction(2 * tv * r, m))  # |S| = 4 |~V| / d, rounded up
    out = codeg_sweep(ind_set[: max(2, take)])
    if out is None:
        raise ContractViolation("no dense common neighborhood in final sweep")
    return out


def decompose_large(
    g: Graph, delta: Union[int, Fraction], cfg: DecompConfig = DecompConfig()
) -> Union[FoundC4, tuple[list[np.ndarray], np.ndarray]]:
    """Extract disjoint cliques sized within the band around `delta` until
    the remainder has fewer than c_sparse * n^(3/2) * delta^(1/2) edges."""
    delta = Fraction(delta)
    if delta < 1:
        raise ValueError("delta must be at least 1")
    n = g.n
    edge_threshold_sq = cfg.c_sparse**2 * n**3 * delta  # compare m^2 against this
    s_max = max(1, _floor_frac(cfg.band_hi * delta))
    r_mask = bitset.full_mask(n)
    cliques: list[np.ndarray] = []
    while True:
        m = _edges_within(g, r_mask)
        if Fraction(m * m) < edge_threshold_sq:
            return cliques, r_mask
        got = extract_clique(g, bitset.ids_from_mask(r_mask), cfg)
        if isinstance(got, FoundC4):
            return got
        clique = got[:s_max]
        if not len(clique) > cfg.band_lo * delta:
            raise ContractViolation(
                f"extracted clique of {len(clique)} below the size band"
            )
        cliques.append(clique)
        r_mask = r_mask & ~bitset.mask_from_ids(clique, n)


class CommonNeighborhoods:
    """View of N_R(x, y) over a frozen remainder mask; lists are computed
    from adjacency bitsets per query and returned sorted."""

    def __init__(self, g: Graph, r_mask: np.ndarray):
        self.graph = g
        self.r_mask = r_mask.copy()
        self.r_mask.flags.writeable = False

    def get(self, x: int, y: int) -> np.ndarray:
        return bitset.ids_from_mask(self.graph.adj[x] & self.graph.adj[y] & self.r_mask)

    def size(self, x: int, y: int) -> int:
        return bitset.popcount(self.graph.adj[x] & self.graph.adj[y] & self.r_mask)

    def max_nonedge_size(self) -> int:
        """Largest |N_R(x, y)| over non-edges (binary search over scans)."""
        lo, hi = 0, self.graph.n
        while lo < hi:
            mid = (lo + hi + 1) // 2
            hit = kernels.threshold_scan(
                self.graph.adj, self.graph.n, self.r_mask, mid, 0, 1
            )
            if hit is not None:
                lo = mid
            else:
                hi = mid - 1
        return lo


def _threshold_extractions(
    g: Graph, r_mask: np.ndarray, min_count: int
) -> Union[FoundC4, tuple[list[np.ndarray], np.ndarray]]:
    """Extract N_R(x, y) for every non-edge (x, y) whose common neighborhood
    in R reaches min_count, scanning pairs lexicographically.  Removal only
    shrinks later counts, so one resumable pass is exhaustive."""
    cliques: list[np.ndarray] = []
    x, y = 0, 1
    while True:
        hit = kernels.threshold_scan(g.adj, g.n, r_mask, min_count, x, y)
        if hit is None:
            return cliques, r_mask
        x, y = hit
        z_mask = g.adj[x] & g.adj[y] & r_mask
        bad = kernels.nonclique_pair(g.adj, g.n, z_mask)
        if bad is not None:
            return _found(g, x, bad[0], y, bad[1])
        cliques.append(bitset.ids_from_mask(z_mask))
        r_mask = r_mask & ~z_mask
        y += 1
        if y >= g.n:
            x, y = x + 1, x + 2


def _band_split(cliques: list[np.ndarray], s_max: int) -> list[np.ndarray]:
    """Split cliques above s_max into near-even chunks (still cliques)."""
    out = []
    for clique in cliques:
        if len(clique) <= s_max:
            out.append(clique)
            continue
        chunks = -(-len(clique) // s_max)
        bounds = np.linspace(0, len(clique), chunks + 1).astype(int)
        out.extend(clique[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:]))
    return out


def decompose_low(
    g: Graph, delta: Union[int, Fraction], cfg: DecompConfig = DecompConfig()
) -> Union[FoundC4, tuple[list[np.ndarray], np.ndarray, CommonNeighborhoods]]:
    """Large-clique decomposition plus extraction of every common
    neighborhood of size >= delta; afterwards every surviving N_R(x, y) of a
    non-adjacent pair is smaller than delta."""
    delta = Fraction(delta)
    got = decompose_large(g, delta, cfg)
    if isinstance(got, FoundC4):
        return got
    cliques, r_mask = got
    extracted = _threshold_extractions(g, r_mask, _ceil_frac(delta))
    if isinstance(extracted, FoundC4):
        return extracted
    harvested, r_mask = extracted
    s_max = max(1, _floor_frac(cfg.band_hi * delta))
    all_cliques = _band_split(cliques + harvested, s_max)
    return all_cliques, r_mask, CommonNeighborhoods(g, r_mask)


class LayeredDecomposition:
    """Partition of V into levels L..H of verified cliques.

    Level l holds cliques sized within the configured band around n/2^l;
    every common neighborhood N_l(x, y) of a non-edge at level l > L has at
    most c_nbr * n/2^l vertices.  Common-neighborhood lists are computed on
    demand from bitsets (`common`), sorted ascending.
    """

    def __init__(
        self,
        g: Graph,
        cfg: DecompConfig,
        level_bounds: tuple[int, int],
        per_level: dict[int, list[np.ndarray]],
        large_remainder_edges: int,
    ):
        self.graph = g
        self.cfg = cfg
        self.L, self.H = level_bounds
        self.large_remainder_edges = large_remainder_edges
        self.clusters: list[Cluster] = []
        self.by_level: dict[int, list[Cluster]] = {}
        self.vertex_cluster = np.full(g.n, -1, dtype=np.int64)
        self.vertex_level = np.full(g.n, -1, dtype=np.int64)
        self.level_masks: dict[int, np.ndarray] = {}
        for level in range(self.L, self.H + 1):
            members = per_level.get(level, [])
            bucket = []
            for verts in members:
                cluster = Cluster(len(self.clusters), level, verts)
                self.clusters.append(cluster)
                bucket.append(cluster)
                self.vertex_cluster[verts] = cluster.id
                self.vertex_level[verts] = level
            self.by_level[level] = bucket
            ids = (
                np.concatenate([c.vertices for c in bucket])
                if bucket
                else np.zeros(0, dtype=np.int64)
            )
            self.level_masks[level] = bitset.mask_from_ids(ids, g.n)

    def delta(self, level: int) -> Fraction:
        return Fraction(self.graph.n, 2**level)

    def common(self, level: int, x: int, y: int) -> np.ndarray:
        return bitset.ids_from_mask(
            self.graph.adj[x] & self.graph.adj[y] & self.level_masks[level]
        )

    def common_size(self, level: int, x: int, y: int) -> int:
        return bitset.popcount(
            self.graph.adj[x] & self.graph.adj[y] & self.level_masks[level]
        )

    def max_common_size(self, level: int) -> int:
        """Largest common neighborhood at `level` over all non-edges of G."""
        view = CommonNeighborhoods(self.graph, self.level_masks[level])
        return view.max_nonedge_size()

    def check_invariants(self) -> list[str]:
        """All decomposition guarantees as a list of violations (empty = ok)."""
        problems = []
        n = self.graph.n
        cover = np.zeros(n, dtype=np.int64)
        for cluster in self.clusters:
            cover[cluster.vertices] += 1
            if not cluster.is_clique(self.graph):
                problems.append(f"cluster {cluster.id} is not a clique")
            delta = self.delta(cluster.level)
            if cluster.level < self.H:
                if not (
                    self.cfg.band_lo * delta
                    < cluster.size
                    <= self.cfg.band_hi * delta
                ):
                    problems.append(
                        f"cluster {cluster.id} size {cluster.size} outside band "
                        f"at level {cluster.level}"
                    )
        if not (cover == 1).all():
            problems.append("clusters do not partition the vertex set")
        budget = self.cfg.c_sparse**2 * n**3 * self.delta(self.L)
        if Fraction(self.large_remainder_edges**2) >= budget and n > 0:
            problems.append(
                f"large-stage remainder has {self.large_remainder_edges} edges"
            )
        for level in range(self.L + 1, self.H + 1):
            biggest = self.max_common_size(level)
            if biggest > self.cfg.c_nbr * self.delta(level):
                problems.append(
                    f"common neighborhood of {biggest} at level {level}"
                )
        return problems

    def debug_report(self) -> str:
        """One line per level: cluster count, size range, plus remainder and
        table statistics (schema documented in the README)."""
        lines = [f"levels {self.L}..{self.H} n={self.graph.n}"]
        for level in range(self.L, self.H + 1):
            bucket = self.by_level.get(level, [])
            sizes = [c.size for c in bucket]
            lines.append(
                f"level {level}: clusters={len(bucket)} "
                f"min={min(sizes) if sizes else 0} max={max(sizes) if sizes else 0} "
                f"vertices={sum(sizes)}"
            )
        lines.append(f"large_remainder_edges={self.large_remainder_edges}")
        lines.append(
            "max_common="
            + ",".join(
                f"{level}:{self.max_common_size(level)}"
                for level in range(self.L + 1, self.H + 1)
            )
        )
        return "\n".join(lines)


def level_bounds(n: int) -> tuple[int, int]:
    """L = floor(log2(n)/2), H = floor(log2(n)), both exact."""
    if n < 2:
        raise ValueError("level bounds need n >= 2")
    return isqrt(n).bit_length() - 1, n.bit_length() - 1


def decompose_layers(
    g: Graph, cfg: DecompConfig = DecompConfig()
) -> Union[FoundC4, LayeredDecomposition]:
    """The full layered decomposition (callers below cfg.n0 should use the
    reference scan instead; the level arithmetic degenerates at tiny n)."""
    n = g.n
    if n < cfg.n0:
        raise ValueError(f"decompose_layers needs n >= n0 = {cfg.n0}")
    low, high = level_bounds(n)
    got = decompose_low(g, Fraction(n, 2**low), cfg)
    if isinstance(got, FoundC4):
        return got
    cliques_low, r_mask, _ = got
    large_remainder_edges = _edges_within(g, r_mask)
    per_level: dict[int, list[np.ndarray]] = {low: cliques_low}
    for level in range(low + 1, high):
        min_count = n // 2**level + 1  # strict: |N| > n / 2^level
        extracted = _threshold_extractions(g, r_mask, min_count)
        if isinstance(extracted, FoundC4):
            return extracted
        harvested, r_mask = extracted
        s_max = max(1, n // 2 ** (level - 1))
        per_level[level] = _band_split(harvested, s_max)
    leftover = bitset.ids_from_mask(r_mask)
    per_level[high] = [np.array([v], dtype=np.int64) for v in leftover]
    return LayeredDecomposition(
        g, cfg, (low, high), per_level, large_remainder_edges
    )
