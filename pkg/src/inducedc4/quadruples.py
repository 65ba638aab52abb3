"""Four-cluster detection via correlated neighborhood vectors.

When a triple (W, X, Z) of pairwise-ordered clusters is free of induced
4-cycles, each w in W with neighbors in both X and Z gets a vector
(xi_pre, xi_high, zeta_low, zeta_suff) describing its neighborhoods through
the (X, Z) labels: whenever xi_high > zeta_low,

    N_X(w) = {x : f_XZ(x) <= xi_pre}  |_|  {x in N_X(w) : f_XZ(x) = xi_high}
    N_Z(w) = {z in N_Z(w) : g_XZ(z) = zeta_low}  |_|  {z : g_XZ(z) >= zeta_suff}

a full prefix/suffix plus one extreme layer.  `detect_quadruple` exploits
this to decide a four-cluster instance in near-linear time: after screening
the four sub-triples it enumerates the three opposite-pair assignments of
the clusters onto cycle positions and, for each, searches extreme-layer
solutions (four anchored variants) and full-prefix/suffix solutions with
3-dimensional range queries.

`cluster_codegrees` batches the common-neighbor counts codeg_W(x, z) for all
(x, z) in X x Z as a two-dimensional dominance count over the (W, X) and
(W, Z) labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

import numpy as np

from .errors import ContractViolation
from .graph import Graph
from .orderings import Cluster, OrderingTable
from .rangequery import (
    BOTTOM,
    TOP,
    RangePointSet,
    above,
    anything,
    at_least,
    at_most,
    below,
    exactly,
    interval,
)
from .triples import _pairwise_disjoint, detect_triple


@dataclass(frozen=True)
class NeighborhoodVector:
    """Correlated-neighborhood summary of one side vertex against an ordered
    cluster pair; sentinel-valued coordinates mark empty prefix/suffix."""

    xi_pre: int
    xi_high: int
    zeta_low: int
    zeta_suff: int

    def mirror(self) -> "NeighborhoodVector":
        """The same vertex's vector with the cluster pair read in reverse
        orientation (labels negate, prefix and suffix swap roles)."""
        return NeighborhoodVector(
            xi_pre=-self.zeta_suff,
            xi_high=-self.zeta_low,
            zeta_low=-self.xi_high,
            zeta_suff=-self.xi_pre,
        )


def correlated_vectors(
    g: Graph,
    w_cluster: Cluster,
    x_cluster: Cluster,
    z_cluster: Cluster,
    orderings: OrderingTable,
    strict: bool = False,
) -> Dict[int, NeighborhoodVector]:
    """Vectors for every w with non-empty neighborhoods in both X and Z.

    The caller must have screened (W, X, Z) free of induced 4-cycles; the
    structural facts that screening guarantees are spot-checked here with a
    few counting queries per vertex and raise `ContractViolation` when they
    fail.  `strict=True` additionally re-derives both neighborhoods from the
    vector and compares exactly (test-scale only).
    """
    oxz = orderings.oriented(x_cluster.id, z_cluster.id)
    owx = orderings.oriented(w_cluster.id, x_cluster.id)
    owz = orderings.oriented(w_cluster.id, z_cluster.id)

    x_points = RangePointSet(
        2, [((int(owx.g[i]), int(oxz.f[i])), i) for i in range(x_cluster.size)]
    )
    z_points = RangePointSet(
        2, [((int(owz.g[j]), int(oxz.g[j])), j) for j in range(z_cluster.size)]
    )
    f_image = [int(v) for v in oxz.f_image]
    g_image = [int(v) for v in oxz.g_image]
    g_sorted = np.sort(oxz.g)

    out: Dict[int, NeighborhoodVector] = {}
    for wi in range(w_cluster.size):
        w = int(w_cluster.vertices[wi])
        fwx = int(owx.f[wi])
        fwz = int(owz.f[wi])
        got_high = x_points.extremal_on_image(
            [at_least(fwx), anything()], 1, "max", f_image
        )
        if got_high is None:
            continue
        got_low = z_points.extremal_on_image(
            [at_least(fwz), anything()], 1, "min", g_image
        )
        if got_low is None:
            continue
        xi_high = got_high[0]
        zeta_low = got_low[0]
        if xi_high <= zeta_low:
            out[w] = NeighborhoodVector(BOTTOM, xi_high, zeta_low, TOP)
            continue

        # spot-check the structure the no-4-cycle screening guarantees
        idx = int(np.searchsorted(oxz.f_image, zeta_low, side="right"))
        xi_med = int(oxz.f_image[idx])  # exists: xi_high > zeta_low is in image
        touches = (
            x_points.count([at_least(fwx), exactly(xi_med)]) > 0
        )
        if touches:
            # every z with g_XZ > zeta_low must be a neighbor of w
            neighbors_above = z_points.count([at_least(fwz), above(zeta_low)])
            total_above = int(len(g_sorted) - np.searchsorted(g_sorted, zeta_low, side="right"))
            if neighbors_above != total_above:
                raise ContractViolation(
                    "correlated-neighborhood structure failed; was the triple "
                    "screened free of induced 4-cycles?"
                )
        else:
            # no neighbor of w may carry a label strictly inside the window
            inside_z = z_points.count(
                [at_least(fwz), interval(zeta_low, xi_high, False, False)]
            )
            inside_x = x_points.count(
                [at_least(fwx), interval(zeta_low, xi_high, False, False)]
            )
            if inside_z or inside_x:
                raise ContractViolation(
                    "correlated-neighborhood structure failed; was the triple "
                    "screened free of induced 4-cycles?"
                )

        got_pre = x_points.extremal_on_image(
            [at_least(fwx), below(xi_high)], 1, "max", f_image
        )
        xi_pre = BOTTOM if got_pre is None else got_pre[0]
        got_suff = z_points.extremal_on_image(
            [at_least(fwz), above(zeta_low)], 1, "min", g_image
        )
        zeta_suff = TOP if got_suff is None else got_suff[0]
        vec = NeighborhoodVector(xi_pre, xi_high, zeta_low, zeta_suff)
        if strict:
            _verify_vector(g, w, vec, x_cluster, z_cluster, oxz)
        out[w] = vec
    return out


def _verify_vector(g, w, vec, x_cluster, z_cluster, oxz) -> None:
    """Exhaustively compare both neighborhoods against the vector's claim."""
    rows = g.int_rows()
    for side, cluster, labels, kind in (
        ("X", x_cluster, oxz.f, "pre"),
        ("Z", z_cluster, oxz.g, "suff"),
    ):
        actual = {
            int(v) for v in cluster.vertices if (rows[w] >> int(v)) & 1
        }
        predicted = set()
        for pos, v in enumerate(cluster.vertices):
            v = int(v)
            label = int(labels[pos])
            if kind == "pre":
                if label <= vec.xi_pre or (label == vec.xi_high and v in actual):
                    predicted.add(v)
            else:
                if label >= vec.zeta_suff or (label == vec.zeta_low and v in actual):
                    predicted.add(v)
        if actual != predicted:
            raise ContractViolation(
                f"vector fails to reproduce the {side} neighborhood of {w}"
            )


def _extreme_layer_pass(
    g: Graph,
    anchor: Cluster,
    layer_cluster: Cluster,
    far: Cluster,
    other: Cluster,
    vectors: Dict[int, NeighborhoodVector],
    orderings: OrderingTable,
) -> bool:
    """Search for a cycle (w, b, c, d) with w in `anchor`, b in the extreme
    layer of N(w) toward `layer_cluster` (B), c in `far` (C), d in `other`
    (D).  The vectors must be oriented with X = layer_cluster, Z = other."""
    A, B, C, D = anchor, layer_cluster, far, other
    oab = orderings.oriented(A.id, B.id)
    oad = orderings.oriented(A.id, D.id)
    oac = orderings.oriented(A.id, C.id)
    obd = orderings.oriented(B.id, D.id)
    obc = orderings.oriented(B.id, C.id)
    ocd = orderings.oriented(C.id, D.id)

    layer_points = RangePointSet(
        3,
        [
            ((int(oab.g[i]), int(obd.f[i]), int(obc.f[i])), i)
            for i in range(B.size)
        ],
    )
    other_points = RangePointSet(
        3,
        [
            ((int(oad.g[j]), int(obd.g[j]), int(ocd.g[j])), j)
            for j in range(D.size)
        ],
    )
    far_points = RangePointSet(
        3,
        [
            ((int(oac.g[k]), int(obc.g[k]), int(ocd.f[k])), k)
            for k in range(C.size)
        ],
    )
    beta_candidates = [int(v) for v in obc.f_image]
    delta_candidates = [int(v) for v in ocd.g_image]

    for wi in range(A.size):
        w = int(A.vertices[wi])
        vec = vectors.get(w)
        if vec is None or vec.xi_high <= vec.zeta_low:
            continue
        got_beta = layer_points.extremal_on_image(
            [at_least(int(oab.f[wi])), exactly(vec.xi_high), anything()],
            2,
            "min",
            beta_candidates,
        )
        if got_beta is None:
            raise ContractViolation("extreme layer lost its defining neighbor")
        got_delta = other_points.extremal_on_image(
            [at_least(int(oad.f[wi])), below(vec.xi_high), anything()],
            2,
            "max",
            delta_candidates,
        )
        if got_delta is None:
            continue
        hit = far_points.count(
            [
                below(int(oac.f[wi])),
                at_least(got_beta[0]),
                at_most(got_delta[0]),
            ]
        )
        if hit > 0:
            return True
    return False


def _prefix_suffix_pass(
    side_a: Cluster,
    side_c: Cluster,
    vec_a: Dict[int, NeighborhoodVector],
    vec_c: Dict[int, NeighborhoodVector],
    orderings: OrderingTable,
) -> bool:
    """Search for a cycle whose B and D vertices come from the full prefix
    and full suffix of both side vertices' neighborhoods."""
    oac = orderings.oriented(side_a.id, side_c.id)
    tilde_c = []
    for ck in range(side_c.size):
        c = int(side_c.vertices[ck])
        vec = vec_c.get(c)
        if vec is None or not vec.xi_pre > vec.zeta_suff:
            continue
        tilde_c.append(((int(oac.g[ck]), vec.xi_pre, vec.zeta_suff), ck))
    if not tilde_c:
        return False
    c_points = RangePointSet(3, tilde_c)
    for ai in range(side_a.size):
        a = int(side_a.vertices[ai])
        vec = vec_a.get(a)
        if vec is None or not vec.xi_pre > vec.zeta_suff:
            continue
        hit = c_points.count(
            [
                below(int(oac.f[ai])),
                above(vec.zeta_suff),
                below(vec.xi_pre),
            ]
        )
        if hit > 0:
            return True
    return False


def _assignment_pass(
    g: Graph,
    p1: Cluster,
    p2: Cluster,
    p3: Cluster,
    p4: Cluster,
    orderings: OrderingTable,
) -> bool:
    """Decide cycles positioned (p1, p2, p3, p4): opposite pairs (p1, p3)
    and (p2, p4) are the non-adjacent diagonals."""
    vec_a = correlated_vectors(g, p1, p2, p4, orderings)
    vec_c = correlated_vectors(g, p3, p2, p4, orderings)
    mirrored_a = {w: v.mirror() for w, v in vec_a.items()}
    mirrored_c = {w: v.mirror() for w, v in vec_c.items()}
    if _extreme_layer_pass(g, p1, p2, p3, p4, vec_a, orderings):
        return True
    if _extreme_layer_pass(g, p1, p4, p3, p2, mirrored_a, orderings):
        return True
    if _extreme_layer_pass(g, p3, p2, p1, p4, vec_c, orderings):
        return True
    if _extreme_layer_pass(g, p3, p4, p1, p2, mirrored_c, orderings):
        return True
    return _prefix_suffix_pass(p1, p3, vec_a, vec_c, orderings)


def detect_quadruple(
    g: Graph,
    a: Cluster,
    b: Cluster,
    c: Cluster,
    d: Cluster,
    orderings: OrderingTable,
) -> bool:
    """True iff the graph restricted to the four clusters contains an induced
    4-cycle.  Clusters must be pairwise ordered and disjoint."""
    if not _pairwise_disjoint((a, b, c, d)):
        raise ContractViolation("quadruple clusters overlap")
    for triple in ((a, b, c), (a, b, d), (a, c, d), (b, c, d)):
        if detect_triple(g, *triple, orderings):
            return True
    # three ways to pick the two non-adjacent opposite pairs
    for positioned in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
        if _assignment_pass(g, *positioned, orderings):
            return True
    return False


def cluster_codegrees(
    g: Graph,
    w: Cluster,
    x: Cluster,
    z: Cluster,
    orderings: OrderingTable,
) -> np.ndarray:
    """codeg_W(x', z') for every (x', z') in X x Z, as an |X| x |Z| matrix.

    A vertex w' counts toward (x', z') when f_WX(w') <= g_WX(x') and
    f_WZ(w') <= g_WZ(z'); the batch is one two-dimensional dominance count
    over the label ranks (histogram plus prefix sums).
    """
    owx = orderings.oriented(w.id, x.id)
    owz = orderings.oriented(w.id, z.id)
    if w.size == 0:
        return np.zeros((x.size, z.size), dtype=np.int64)
    ux = np.unique(owx.f)
    uz = np.unique(owz.f)
    rx = np.searchsorted(ux, owx.f)
    rz = np.searchsorted(uz, owz.f)
    hist = np.zeros((len(ux) + 1, len(uz) + 1), dtype=np.int64)
    np.add.at(hist, (rx + 1, rz + 1), 1)
    prefix = hist.cumsum(axis=0).cumsum(axis=1)
    kx = np.searchsorted(ux, owx.g, side="right")
    kz = np.searchsorted(uz, owz.g, side="right")
    return prefix[np.ix_(kx, kz)]


def degree_vs_codegree_witnessable(deg_x_middle: int, codeg_x_ends: int) -> bool:
    """Given an induced 2-path (u, v, w) outside a cluster X that hosts no
    4-cycle with two of its own vertices, an induced 4-cycle (x, u, v, w)
    with x in X exists iff the middle vertex's degree into X is smaller than
    the endpoints' common degree into X."""
    return deg_x_middle < codeg_x_ends
