"""Pure-Python kernels.

Same entry points and answers as the compiled module `_kernels`, selected at
import when the extension is unavailable (or forced via INDUCEDC4_BACKEND).
Rows are converted to Python-int bitsets per call; correctness and exact
determinism parity with the compiled kernels matter here, speed does not.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _int_rows(adj: np.ndarray):
    raw = adj.tobytes()
    stride = adj.shape[1] * 8
    return [
        int.from_bytes(raw[i * stride : (i + 1) * stride], "little")
        for i in range(adj.shape[0])
    ]


def _mask_int(mask: np.ndarray) -> int:
    return int.from_bytes(mask.tobytes(), "little")


def _lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


def _bits(x: int):
    while x:
        b = (x & -x).bit_length() - 1
        yield b
        x &= x - 1


def _first_nonadjacent_within(rows, members: int):
    """Lex-first pair (u, v), u < v, of non-adjacent set bits; None if clique."""
    rest = members
    while rest:
        u = _lsb(rest)
        above = members & ~((1 << (u + 1)) - 1)
        miss = above & ~rows[u]
        if miss:
            return (u, _lsb(miss))
        rest &= rest - 1
    return None


def oracle_scan(adj: np.ndarray, n: int):
    """First non-edge (x, y) whose common neighborhood holds a non-adjacent
    pair (u, v); pairs ordered lexicographically. Returns (x, y, u, v)."""
    rows = _int_rows(adj)
    for x in range(n):
        rx = rows[x]
        for y in range(x + 1, n):
            if (rx >> y) & 1:
                continue
            common = rx & rows[y]
            if not common:
                continue
            hit = _first_nonadjacent_within(rows, common)
            if hit is not None:
                return (x, y, hit[0], hit[1])
    return None


def nonclique_pair(adj: np.ndarray, n: int, member_mask: np.ndarray):
    """Lex-first non-adjacent pair inside the masked vertex set, or None."""
    members = _mask_int(member_mask)
    rest = members
    while rest:
        u = _lsb(rest)
        row_u = int.from_bytes(adj[u].tobytes(), "little")
        above = members & ~((1 << (u + 1)) - 1)
        miss = above & ~row_u
        if miss:
            return (u, _lsb(miss))
        rest &= rest - 1
    return None


def threshold_scan(adj: np.ndarray, n: int, rmask: np.ndarray, min_count: int,
                   x0: int, y0: int):
    """Next non-edge (x, y), lex from (x0, y0), with
    |N(x) & N(y) & R| >= min_count.  Returns (x, y) or None."""
    rm = _mask_int(rmask)
    rows = _int_rows(adj)
    for x in range(x0, n):
        rx_masked = rows[x] & rm
        if rx_masked.bit_count() < min_count:
            continue
        y_start = max(y0, x + 1) if x == x0 else x + 1
        for y in range(y_start, n):
            if (rows[x] >> y) & 1:
                continue
            if (rx_masked & rows[y]).bit_count() >= min_count:
                return (x, y)
    return None


def incomparable_edge_scan(adj: np.ndarray, n: int, cluster_of: np.ndarray,
                           list_u: np.ndarray, mask_v: np.ndarray,
                           same_level: bool, mask_side: np.ndarray):
    """Is there an edge (u, v) across the two given level sets and a side
    cluster X (inside mask_side) whose neighborhoods of u and v in X are
    incomparable?  That configuration is exactly a 4-cycle using two nodes
    of X.  Returns 1/0."""
    rows = _int_rows(adj)
    m_v = _mask_int(mask_v)
    m_side = _mask_int(mask_side)
    for u in list_u:
        u = int(u)
        ru = rows[u]
        targets = ru & m_v
        if same_level:
            targets &= ~((1 << (u + 1)) - 1)
        for v in _bits(targets):
            if cluster_of[u] == cluster_of[v]:
                continue
            excl = ~((1 << u) | (1 << v))
            only_u = ru & ~rows[v] & m_side & excl
            if not only_u:
                continue
            only_v = rows[v] & ~ru & m_side & excl
            if not only_v:
                continue
            stamped = {int(cluster_of[b]) for b in _bits(only_u)}
            for b in _bits(only_v):
                if int(cluster_of[b]) in stamped:
                    return 1
    return 0


def diagonal_scan(adj: np.ndarray, n: int, list_p: np.ndarray, list_q: np.ndarray,
                  mask_a: np.ndarray, mask_b: np.ndarray, same_list: bool):
    """Is there a non-adjacent pair (p, q) from the two lists with common
    neighbors r (in mask_a) and s (in mask_b) that are themselves
    non-adjacent?  (p, q) and (r, s) are then the diagonals of an induced
    4-cycle (r, p, s, q).  Returns 1/0."""
    rows = _int_rows(adj)
    m_a = _mask_int(mask_a)
    m_b = _mask_int(mask_b)
    for i, p in enumerate(list_p):
        p = int(p)
        rp = rows[p]
        q_iter = list_q[i + 1 :] if same_list else list_q
        for q in q_iter:
            q = int(q)
            if q == p or (rp >> q) & 1:
                continue
            common = rp & rows[q] & ~((1 << p) | (1 << q))
            s_a = common & m_a
            if not s_a:
                continue
            s_b = common & m_b
            if not s_b:
                continue
            for r in _bits(s_a):
                miss = s_b & ~rows[r] & ~(1 << r)
                if miss:
                    return 1
    return 0


def step3_scan(adj: np.ndarray, n: int, ids_a: np.ndarray, ids_b: np.ndarray,
               codeg: np.ndarray, mask_mid: np.ndarray, deg_by_vertex: np.ndarray):
    """Is there a non-adjacent (va, vb) with a common neighbor z in mask_mid
    such that deg_by_vertex[z] < codeg[i, j]?  Returns 1/0."""
    rows = _int_rows(adj)
    m_mid = _mask_int(mask_mid)
    for i, va in enumerate(ids_a):
        va = int(va)
        ra = rows[va]
        for j, vb in enumerate(ids_b):
            vb = int(vb)
            if vb == va or (ra >> vb) & 1:
                continue
            c = int(codeg[i, j])
            if c <= 0:
                continue
            for z in _bits(ra & rows[vb] & m_mid):
                if deg_by_vertex[z] < c:
                    return 1
    return 0
