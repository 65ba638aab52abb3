"""Immutable undirected simple graph over dense 0-based vertex ids.

Adjacency is stored as packed bitset rows (see `bitset`).  Graphs are frozen
after construction and safe to share across threads; every operation here is
a pure function of its inputs.

Edge-list text format (UTF-8, LF):

    n m
    u v        (m lines; 0 <= u, v < n, u != v)

Duplicate and reversed edge lines are permitted and collapse to one edge;
``m`` counts lines, not distinct edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import bitset, kernels
from .errors import ParseError


@dataclass(frozen=True)
class C4Witness:
    """Vertex quadruple (a, b, c, d) claiming the induced 4-cycle with edges
    ab, bc, cd, da and non-edges ac, bd."""

    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c},{self.d}"


def canonical_witness(a: int, b: int, c: int, d: int) -> C4Witness:
    """Rotate/reflect the cycle so the first vertex is the minimum id and its
    successor is the smaller of its two cycle neighbors."""
    cycle = (a, b, c, d)
    forms = []
    for start in range(4):
        rot = tuple(cycle[(start + i) % 4] for i in range(4))
        forms.append(rot)
        forms.append((rot[0], rot[3], rot[2], rot[1]))
    best = min(forms, key=lambda f: (f[0], f[1]))
    return C4Witness(*best)


class Graph:
    """Undirected simple graph; symmetric, irreflexive packed adjacency."""

    __slots__ = ("n", "adj", "_int_rows", "_edge_count")

    def __init__(self, n: int, adj: np.ndarray):
        if n < 0 or n > bitset.MAX_VERTICES:
            raise ValueError(f"vertex count {n} out of supported range")
        adj = np.ascontiguousarray(adj, dtype=np.uint64)
        expected = (n, bitset.word_count(n))
        if adj.shape != expected:
            raise ValueError(f"adjacency shape {adj.shape} != {expected}")
        adj.flags.writeable = False
        self.n = n
        self.adj = adj
        self._int_rows = None
        self._edge_count = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, bitset.word_count(n)), dtype=np.uint64)
        us, vs = [], []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            us.append(u)
            vs.append(v)
        if us:
            u_arr = np.array(us + vs, dtype=np.int64)
            v_arr = np.array(vs + us, dtype=np.int64)
            np.bitwise_or.at(
                adj, (u_arr, v_arr >> 6), np.uint64(1) << (v_arr & 63).astype(np.uint64)
            )
        return cls(n, adj)

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "Graph":
        """Build from a symmetric boolean matrix (diagonal is ignored)."""
        dense = np.asarray(dense, dtype=bool)
        n = dense.shape[0]
        if n:
            dense = dense.copy()
            np.fill_diagonal(dense, False)
            if not (dense == dense.T).all():
                raise ValueError("dense adjacency must be symmetric")
        packed = np.packbits(dense, axis=1, bitorder="little")
        width = bitset.word_count(n) * 8
        if packed.shape[1] < width:
            packed = np.pad(packed, ((0, 0), (0, width - packed.shape[1])))
        adj = packed[:, :width].copy().view(np.uint64)
        return cls(n, adj)

    # -- queries -----------------------------------------------------------

    def adjacent(self, u: int, v: int) -> bool:
        return bitset.test_bit(self.adj[u], v)

    def row(self, u: int) -> np.ndarray:
        return self.adj[u]

    def int_rows(self) -> list:
        if self._int_rows is None:
            self._int_rows = [
                int.from_bytes(self.adj[i].tobytes(), "little") for i in range(self.n)
            ]
        return self._int_rows

    def neighbors(self, u: int) -> np.ndarray:
        return bitset.ids_from_mask(self.adj[u])

    def degrees(self) -> np.ndarray:
        return bitset.popcount_rows(self.adj)

    @property
    def edge_count(self) -> int:
        if self._edge_count is None:
            self._edge_count = int(self.degrees().sum()) // 2
        return self._edge_count

    def edge_list(self) -> tuple[np.ndarray, np.ndarray]:
        """All edges as (u_array, v_array) with u < v, lexicographic."""
        us, vs = [], []
        for u in range(self.n):
            high = self.adj[u].copy()
            word = u >> 6
            high[:word] = 0
            keep_above = ~((1 << ((u & 63) + 1)) - 1) & 0xFFFFFFFFFFFFFFFF
            high[word] &= np.uint64(keep_above)
            ids = bitset.ids_from_mask(high)
            if len(ids):
                us.append(np.full(len(ids), u, dtype=np.int64))
                vs.append(ids)
        if not us:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        return np.concatenate(us), np.concatenate(vs)

    def subgraph(self, ids: np.ndarray) -> "Graph":
        """Induced subgraph; vertex i of the result is ids[i] (ids sorted)."""
        ids = np.asarray(ids, dtype=np.int64)
        dense = bitset.extract_bits(self.adj, ids, ids)
        return Graph.from_dense(dense)

    def check_invariants(self) -> None:
        """Assert symmetry and irreflexivity (test helper; O(n^2))."""
        if self.n == 0:
            return
        dense = bitset.extract_bits(self.adj, np.arange(self.n), np.arange(self.n))
        assert not dense.diagonal().any(), "self-loop present"
        assert (dense == dense.T).all(), "asymmetric adjacency"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and bool((self.adj == other.adj).all())
        )

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))


# -- witnesses --------------------------------------------------------------


def verify_witness(g: Graph, w: C4Witness) -> bool:
    """True iff the quadruple is four distinct in-range vertices with the four
    cycle edges present and both chords absent."""
    ids = w.as_tuple()
    if len(set(ids)) != 4 or any(not (0 <= v < g.n) for v in ids):
        return False
    a, b, c, d = ids
    return (
        g.adjacent(a, b)
        and g.adjacent(b, c)
        and g.adjacent(c, d)
        and g.adjacent(d, a)
        and not g.adjacent(a, c)
        and not g.adjacent(b, d)
    )


def oracle_detect(g: Graph) -> Optional[C4Witness]:
    """Quadratic-scan reference detector.

    Scans non-edges (x, y) in lexicographic order and tests whether the
    common neighborhood N(x) & N(y) is a clique; the first non-adjacent pair
    (u, v) found there yields the witness cycle (x, u, y, v).  A graph has an
    induced 4-cycle iff some non-adjacent pair has a non-clique common
    neighborhood, so this is a complete decision procedure.
    """
    hit = kernels.oracle_scan(g.adj, g.n)
    if hit is None:
        return None
    x, y, u, v = hit
    return canonical_witness(x, u, y, v)


def naive_detect(g: Graph) -> Optional[C4Witness]:
    """Exhaustive 4-subset enumeration; the independent baseline oracle."""
    from itertools import combinations

    rows = g.int_rows()
    for quad in combinations(range(g.n), 4):
        # three ways to split the subset into two diagonals
        for d1, d2 in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
            p, q = quad[d1[0]], quad[d1[1]]
            r, s = quad[d2[0]], quad[d2[1]]
            if (rows[p] >> q) & 1 or (rows[r] >> s) & 1:
                continue
            if (
                (rows[p] >> r) & 1
                and (rows[p] >> s) & 1
                and (rows[q] >> r) & 1
                and (rows[q] >> s) & 1
            ):
                return canonical_witness(p, r, q, s)
    return None


# -- edge-list I/O -----------------------------------------------------------


def load_graph(text: str) -> Graph:
    """Parse the edge-list format; raises `ParseError` naming the bad line."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError(1, "missing header")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(1, f"expected 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(1, f"expected integers in header, got {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise ParseError(1, "negative vertex or edge count")
    if len(lines) - 1 != m:
        raise ParseError(
            min(len(lines) + 1, m + 2), f"expected {m} edge lines, found {len(lines) - 1}"
        )
    edges = []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(i, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(i, f"expected integers, got {line!r}") from None
        if not (0 <= u < n) or not (0 <= v < n):
            raise ParseError(i, f"vertex id out of range [0, {n})")
        if u == v:
            raise ParseError(i, f"self-loop at {u}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def dump_graph(g: Graph) -> str:
    us, vs = g.edge_list()
    lines = [f"{g.n} {len(us)}"]
    lines.extend(f"{u} {v}" for u, v in zip(us, vs))
    return "\n".join(lines) + "\n"
