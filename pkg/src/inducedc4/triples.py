"""Three-cluster detection via comparable neighborhoods.

An edge (y, q) across two clusters extends to a 4-cycle using two vertices of
a third cluster X exactly when the neighborhoods N_X(y) and N_X(q) are
incomparable.  With concise orderings available, incomparability against a
fixed y collapses to a window test on the (X, Q) labels: writing

    h_low(y)  = min f_XQ over non-neighbors of y in X   (TOP if none)
    h_high(y) = max f_XQ over neighbors of y in X       (BOTTOM if none)

the neighborhoods of y and q are incomparable iff
h_low(y) <= g_XQ(q) < h_high(y).  One pass computes the thresholds with
logarithmically many range queries per vertex and then asks, per y, whether
some q satisfies both the window and the edge law f_YQ(y) <= g_YQ(q); the
three passes (doubled cluster A, B or C) decide the triple in near-linear
time in the cluster sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation
from .graph import Graph
from .orderings import Cluster, OrderingTable, Oriented
from .rangequery import (
    BOTTOM,
    TOP,
    RangePointSet,
    above,
    anything,
    at_least,
    at_most,
    interval,
)


@dataclass(frozen=True)
class SandwichThresholds:
    """Per middle-cluster vertex: the window of side labels its neighborhood
    fails to dominate or be dominated by."""

    h_low: int
    h_high: int


def neighborhoods_incomparable(thresholds: SandwichThresholds, side_label: int) -> bool:
    """True iff the vertex pair's neighborhoods in the doubled cluster are
    incomparable, given the other endpoint's (X, Q) g-label."""
    return thresholds.h_low <= side_label < thresholds.h_high


def sandwich_thresholds(
    oxy: Oriented, oxq: Oriented
) -> list[SandwichThresholds]:
    """Thresholds for every vertex of Y, from the (X, Y) and (X, Q) orderings."""
    size_x = oxy.x.size
    points = [((int(oxy.f[i]), int(oxq.f[i])), i) for i in range(size_x)]
    structure = RangePointSet(2, points)
    candidates = [int(v) for v in oxq.f_image]
    out = []
    for yi in range(oxy.y.size):
        g_label = int(oxy.g[yi])
        low = structure.extremal_on_image(
            [above(g_label), anything()], 1, "min", candidates
        )
        high = structure.extremal_on_image(
            [at_most(g_label), anything()], 1, "max", candidates
        )
        out.append(
            SandwichThresholds(
                TOP if low is None else low[0],
                BOTTOM if high is None else high[0],
            )
        )
    return out


def _pairwise_disjoint(clusters: tuple[Cluster, ...]) -> bool:
    seen: set[int] = set()
    for c in clusters:
        ids = set(int(v) for v in c.vertices)
        if seen & ids:
            return False
        seen |= ids
    return True


def _two_in_x_pass(
    g: Graph, x: Cluster, y: Cluster, q: Cluster, orderings: OrderingTable
) -> bool:
    """Does a 4-cycle use two vertices of X, one of Y and one of Q?"""
    oxy = orderings.oriented(x.id, y.id)
    oxq = orderings.oriented(x.id, q.id)
    oyq = orderings.oriented(y.id, q.id)
    thresholds = sandwich_thresholds(oxy, oxq)
    decision = RangePointSet(
        2, [((int(oxq.g[j]), int(oyq.g[j])), j) for j in range(q.size)]
    )
    for yi in range(y.size):
        t = thresholds[yi]
        if t.h_low >= t.h_high:
            continue
        count = decision.count(
            [interval(t.h_low, t.h_high, True, False), at_least(int(oyq.f[yi]))]
        )
        if count > 0:
            return True
    return False


def detect_triple(
    g: Graph, a: Cluster, b: Cluster, c: Cluster, orderings: OrderingTable
) -> bool:
    """True iff the graph restricted to the three clusters has an induced
    4-cycle.  Requires pairwise-ordered disjoint clusters; raises
    `ContractViolation` when an ordering is missing or clusters overlap."""
    if not _pairwise_disjoint((a, b, c)):
        raise ContractViolation("triple clusters overlap")
    return (
        _two_in_x_pass(g, a, b, c, orderings)
        or _two_in_x_pass(g, b, a, c, orderings)
        or _two_in_x_pass(g, c, a, b, orderings)
    )
