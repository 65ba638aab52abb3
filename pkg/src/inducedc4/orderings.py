"""Cluster pairs: detection of two-cluster 4-cycles and concise orderings.

Two disjoint cliques A, B either span an induced 4-cycle (two vertices in
each) or their cross edges are an *ordered* pattern: integer labels f on A
and g on B with (a, b) an edge exactly when f(a) <= g(b).  `detect_pair`
decides which, in O(|A| * |B|), returning either a verified witness or
concise orderings (distinct labels imply distinct cross neighborhoods).

`OrderingTable` stores one ordering per cluster pair, keyed by
(min id, max id) with f on the smaller id's cluster, and serves oriented
views.  Pairs with a singleton side are synthesized on demand from adjacency
bits instead of being materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import bitset
from .errors import ContractViolation
from .graph import C4Witness, Graph, canonical_witness


@dataclass(frozen=True)
class Cluster:
    """A clique's vertex set; `vertices` sorted ascending, ids global."""

    id: int
    level: int
    vertices: np.ndarray

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=np.int64)
        object.__setattr__(self, "vertices", verts)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def mask(self, n: int) -> np.ndarray:
        return bitset.mask_from_ids(self.vertices, n)

    def is_clique(self, g: Graph) -> bool:
        from . import kernels

        return kernels.nonclique_pair(g.adj, g.n, self.mask(g.n)) is None

    def __hash__(self):
        return hash(self.id)

    def __eq__(self, other):
        return isinstance(other, Cluster) and self.id == other.id


@dataclass
class ConciseOrdering:
    """Edge law: (x, y) in X x Y is an edge  iff  f[x] <= g[y].

    f and g are aligned with the clusters' sorted vertex arrays; f_image and
    g_image are the sorted distinct label values.
    """

    x_id: int
    y_id: int
    f: np.ndarray
    g: np.ndarray
    f_image: np.ndarray = field(init=False)
    g_image: np.ndarray = field(init=False)

    def __post_init__(self):
        self.f = np.asarray(self.f, dtype=np.int64)
        self.g = np.asarray(self.g, dtype=np.int64)
        self.f_image = np.unique(self.f)
        self.g_image = np.unique(self.g)


@dataclass(frozen=True)
class Oriented:
    """An ordering oriented so f applies to `x` and g to `y`."""

    x: Cluster
    y: Cluster
    f: np.ndarray
    g: np.ndarray
    f_image: np.ndarray
    g_image: np.ndarray

    def f_of(self, vertex: int) -> int:
        pos = int(np.searchsorted(self.x.vertices, vertex))
        return int(self.f[pos])

    def g_of(self, vertex: int) -> int:
        pos = int(np.searchsorted(self.y.vertices, vertex))
        return int(self.g[pos])


def _validate_pair(g: Graph, a: Cluster, b: Cluster) -> None:
    if len(np.intersect1d(a.vertices, b.vertices)):
        raise ContractViolation(f"clusters {a.id} and {b.id} overlap")
    for cluster in (a, b):
        if not cluster.is_clique(g):
            raise ContractViolation(f"cluster {cluster.id} is not a clique")


def detect_pair(
    g: Graph, a: Cluster, b: Cluster
) -> Union[C4Witness, ConciseOrdering]:
    """Either a verified witness with two vertices in each cluster, or
    concise orderings with labels in {0, ..., |A|+1}."""
    _validate_pair(g, a, b)
    cross = bitset.extract_bits(g.adj, a.vertices, b.vertices)
    size_a = a.size
    degrees = cross.sum(axis=0, dtype=np.int64)  # g(b) = deg_A(b)
    g_vals = degrees
    f_vals = np.where(cross, g_vals[None, :], size_a + 1).min(axis=1, initial=size_a + 1)

    violation = ~cross & (f_vals[:, None] <= g_vals[None, :])
    if violation.any():
        ai, bi = np.argwhere(violation)[0]
        va = int(a.vertices[ai])
        vb = int(b.vertices[bi])
        # some neighbor of va has the minimal degree f(va) <= deg(vb)
        partner_i = int(np.flatnonzero(cross[ai] & (g_vals == f_vals[ai]))[0])
        vb_tilde = int(b.vertices[partner_i])
        # vb out-degrees vb_tilde, so vb has a neighbor missing from vb_tilde
        other = np.flatnonzero(cross[:, bi] & ~cross[:, partner_i])
        va_tilde = int(a.vertices[int(other[0])])
        witness = canonical_witness(va, vb_tilde, vb, va_tilde)
        from .graph import verify_witness

        if not verify_witness(g, witness):
            raise ContractViolation("pair detection produced an invalid witness")
        return witness

    # edge direction of the law holds by construction; assert both anyway
    law = f_vals[:, None] <= g_vals[None, :]
    if not (law == cross).all():
        raise ContractViolation("edge law failed after non-edge verification")
    return ConciseOrdering(a.id, b.id, f_vals, g_vals)


def singleton_ordering(
    g: Graph, x: Cluster, y: Cluster
) -> tuple[np.ndarray, np.ndarray]:
    """On-demand labels for pairs where either side is a singleton.

    A singleton {y} against X gives f(x) = 0 for neighbors, 1 otherwise, with
    g(y) = 0; in particular singleton-singleton pairs get (f, g) = (0, 0) on
    an edge and (1, 0) on a non-edge.
    """
    if y.size == 1:
        vy = int(y.vertices[0])
        f = np.where(
            bitset.extract_bits(g.adj, [vy], x.vertices)[0], 0, 1
        ).astype(np.int64)
        gl = np.zeros(1, dtype=np.int64)
        return f, gl
    if x.size == 1:
        vx = int(x.vertices[0])
        f = np.zeros(1, dtype=np.int64)
        gl = np.where(
            bitset.extract_bits(g.adj, [vx], y.vertices)[0], 0, -1
        ).astype(np.int64)
        return f, gl
    raise ValueError("singleton_ordering needs a singleton side")


class OrderingTable:
    """Pair-keyed store of concise orderings with oriented accessors.

    Materialized orderings exist only for pairs where both clusters have at
    least two vertices; singleton pairs are synthesized from adjacency bits
    (a singleton side can never host the two-per-cluster 4-cycle pattern, so
    such pairs are always ordered).
    """

    def __init__(self, g: Graph, clusters: list[Cluster]):
        self.graph = g
        self.clusters = {c.id: c for c in clusters}
        self._store: dict[tuple[int, int], ConciseOrdering] = {}
        self._synth: dict[tuple[int, int], ConciseOrdering] = {}
        self._oriented_cache: dict[tuple[int, int], Oriented] = {}

    def add(self, ordering: ConciseOrdering) -> None:
        key = (min(ordering.x_id, ordering.y_id), max(ordering.x_id, ordering.y_id))
        if ordering.x_id != key[0]:
            raise ContractViolation("store orderings with f on the smaller id")
        self._store[key] = ordering

    def _canonical(self, key: tuple[int, int]) -> ConciseOrdering:
        stored = self._store.get(key)
        if stored is not None:
            return stored
        synth = self._synth.get(key)
        if synth is not None:
            return synth
        cx, cy = self.clusters[key[0]], self.clusters[key[1]]
        if cx.size > 1 and cy.size > 1:
            raise ContractViolation(f"no ordering stored for pair {key}")
        f, gl = singleton_ordering(self.graph, cx, cy)
        synth = ConciseOrdering(key[0], key[1], f, gl)
        self._synth[key] = synth
        return synth

    def oriented(self, x_id: int, y_id: int) -> Oriented:
        """The pair's ordering with f applying to cluster x_id.

        Both orientations derive from one canonical labeling; the reverse
        negates both label arrays (edge iff f <= g iff -g <= -f), preserving
        the edge law and conciseness and keeping the two views mutually
        consistent.
        """
        if x_id == y_id:
            raise ValueError("a cluster pair needs two distinct clusters")
        cache_key = (x_id, y_id)
        hit = self._oriented_cache.get(cache_key)
        if hit is not None:
            return hit
        cx, cy = self.clusters[x_id], self.clusters[y_id]
        base = self._canonical((min(x_id, y_id), max(x_id, y_id)))
        if base.x_id == x_id:
            f, gl = base.f, base.g
        else:
            f, gl = -base.g, -base.f
        out = Oriented(cx, cy, f, gl, np.unique(f), np.unique(gl))
        self._oriented_cache[cache_key] = out
        return out


def ordering_for(table: OrderingTable, x_id: int, y_id: int) -> Oriented:
    """Oriented view of a pair's ordering (f applies to the first-named
    cluster); singleton pairs synthesize on the fly."""
    return table.oriented(x_id, y_id)
