# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot per-vertex-pair scans.

Mirrors `_kernels_py` exactly: same entry points, same deterministic answers.
The adjacency matrix is a C-contiguous (n, W) uint64 array of packed rows.
"""

import numpy as np

from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "compiled"

DEF MAXW = 1024  # packed words per row; supports n <= 65536

cdef uint64_t ALL_ONES = <uint64_t>0xFFFFFFFFFFFFFFFF


cdef inline bint _bit(const uint64_t[:, ::1] adj, Py_ssize_t u, Py_ssize_t v) nogil:
    return (adj[u, v >> 6] >> <unsigned>(v & 63)) & <uint64_t>1


cdef inline uint64_t _above(Py_ssize_t b) nogil:
    # mask of bits strictly above position b within one word
    if b == 63:
        return 0
    return ALL_ONES << <unsigned>(b + 1)


cdef inline int _first_nonadj_in_buf(const uint64_t[:, ::1] adj, uint64_t* members,
                                     Py_ssize_t W, Py_ssize_t* out_u,
                                     Py_ssize_t* out_v) nogil:
    # lex-first non-adjacent pair (u, v), u < v, among set bits of members
    cdef Py_ssize_t k, kk, u, b
    cdef uint64_t rest, miss
    for k in range(W):
        rest = members[k]
        while rest:
            b = __builtin_ctzll(rest)
            u = (k << 6) + b
            miss = members[k] & ~adj[u, k] & _above(b)
            if miss:
                out_u[0] = u
                out_v[0] = (k << 6) + __builtin_ctzll(miss)
                return 1
            for kk in range(k + 1, W):
                miss = members[kk] & ~adj[u, kk]
                if miss:
                    out_u[0] = u
                    out_v[0] = (kk << 6) + __builtin_ctzll(miss)
                    return 1
            rest &= rest - 1
    return 0


def oracle_scan(const uint64_t[:, ::1] adj, Py_ssize_t n):
    """First non-edge (x, y) whose common neighborhood holds a non-adjacent
    pair (u, v); pairs ordered lexicographically. Returns (x, y, u, v)."""
    cdef Py_ssize_t W = adj.shape[1]
    if W > MAXW:
        raise ValueError("graph too large for kernel scratch")
    cdef uint64_t common[MAXW]
    cdef uint64_t has
    cdef Py_ssize_t x, y, k, u, v
    for x in range(n):
        for y in range(x + 1, n):
            if _bit(adj, x, y):
                continue
            has = 0
            for k in range(W):
                common[k] = adj[x, k] & adj[y, k]
                has |= common[k]
            if has == 0:
                continue
            if _first_nonadj_in_buf(adj, common, W, &u, &v):
                return (x, y, u, v)
    return None


def nonclique_pair(const uint64_t[:, ::1] adj, Py_ssize_t n,
                   const uint64_t[::1] member_mask):
    """Lex-first non-adjacent pair inside the masked vertex set, or None."""
    cdef Py_ssize_t W = adj.shape[1]
    if W > MAXW:
        raise ValueError("graph too large for kernel scratch")
    cdef uint64_t members[MAXW]
    cdef Py_ssize_t k, u, v
    for k in range(W):
        members[k] = member_mask[k]
    if _first_nonadj_in_buf(adj, members, W, &u, &v):
        return (u, v)
    return None


def threshold_scan(const uint64_t[:, ::1] adj, Py_ssize_t n,
                   const uint64_t[::1] rmask, long min_count,
                   Py_ssize_t x0, Py_ssize_t y0):
    """Next non-edge (x, y), lex from (x0, y0), with
    |N(x) & N(y) & R| >= min_count.  Returns (x, y) or None."""
    cdef Py_ssize_t W = adj.shape[1]
    if W > MAXW:
        raise ValueError("graph too large for kernel scratch")
    cdef uint64_t rxm[MAXW]
    cdef Py_ssize_t x, y, k, y_start
    cdef long row_cnt, cnt
    for x in range(x0, n):
        row_cnt = 0
        for k in range(W):
            rxm[k] = adj[x, k] & rmask[k]
            row_cnt += __builtin_popcountll(rxm[k])
        if row_cnt < min_count:
            continue
        if x == x0:
            y_start = y0 if y0 > x + 1 else x + 1
        else:
            y_start = x + 1
        for y in range(y_start, n):
            if _bit(adj, x, y):
                continue
            cnt = 0
            for k in range(W):
                cnt += __builtin_popcountll(rxm[k] & adj[y, k])
            if cnt >= min_count:
                return (x, y)
    return None


def incomparable_edge_scan(const uint64_t[:, ::1] adj, Py_ssize_t n,
                           const int64_t[::1] cluster_of,
                           const int64_t[::1] list_u,
                           const uint64_t[::1] mask_v, bint same_level,
                           const uint64_t[::1] mask_side):
    """Is there an edge (u, v) across the two given level sets and a side
    cluster X (inside mask_side) whose neighborhoods of u and v in X are
    incomparable?  Returns 1/0."""
    cdef Py_ssize_t W = adj.shape[1]
    if W > MAXW:
        raise ValueError("graph too large for kernel scratch")
    stamp_arr = np.full(n if n > 0 else 1, -1, dtype=np.int64)
    cdef int64_t[::1] stamp = stamp_arr
    cdef int64_t gen = 0
    cdef Py_ssize_t ui, u, v, k, kk, b, z
    cdef uint64_t targets, w, pu, pv
    cdef bint any_u
    for ui in range(list_u.shape[0]):
        u = <Py_ssize_t>list_u[ui]
        for k in range(W):
            targets = adj[u, k] & mask_v[k]
            if same_level:
                if k < (u >> 6):
                    targets = 0
                elif k == (u >> 6):
                    targets &= _above(u & 63)
            while targets:
                b = __builtin_ctzll(targets)
                targets &= targets - 1
                v = (k << 6) + b
                if cluster_of[u] == cluster_of[v]:
                    continue
                gen += 1
                any_u = 0
                for kk in range(W):
                    pu = adj[u, kk] & ~adj[v, kk] & mask_side[kk]
                    while pu:
                        z = (kk << 6) + __builtin_ctzll(pu)
                        pu &= pu - 1
                        if z == v:
                            continue
                        stamp[cluster_of[z]] = gen
                        any_u = 1
                if not any_u:
                    continue
                for kk in range(W):
                    pv = adj[v, kk] & ~adj[u, kk] & mask_side[kk]
                    while pv:
                        z = (kk << 6) + __builtin_ctzll(pv)
                        pv &= pv - 1
                        if z == u:
                            continue
                        if stamp[cluster_of[z]] == gen:
                            return 1
    return 0


def diagonal_scan(const uint64_t[:, ::1] adj, Py_ssize_t n,
                  const int64_t[::1] list_p, const int64_t[::1] list_q,
                  const uint64_t[::1] mask_a, const uint64_t[::1] mask_b,
                  bint same_list):
    """Is there a non-adjacent pair (p, q) from the two lists with common
    neighbors r (in mask_a) and s (in mask_b) that are themselves
    non-adjacent?  Returns 1/0."""
    cdef Py_ssize_t W = adj.shape[1]
    if W > MAXW:
        raise ValueError("graph too large for kernel scratch")
    cdef uint64_t ca[MAXW]
    cdef uint64_t cb[MAXW]
    cdef uint64_t common, has_a, has_b, miss, rest
    cdef Py_ssize_t pi, qi, q_start, p, q, k, kk, r, b
    for pi in range(list_p.shape[0]):
        p = <Py_ssize_t>list_p[pi]
        q_start = pi + 1 if same_list else 0
        for qi in range(q_start, list_q.shape[0]):
            q = <Py_ssize_t>list_q[qi]
            if q == p or _bit(adj, p, q):
                continue
            has_a = 0
            has_b = 0
            for k in range(W):
                common = adj[p, k] & adj[q, k]
                ca[k] = common & mask_a[k]
                cb[k] = common & mask_b[k]
                has_a |= ca[k]
                has_b |= cb[k]
            if has_a == 0 or has_b == 0:
                continue
            for k in range(W):
                rest = ca[k]
                while rest:
                    b = __builtin_ctzll(rest)
                    rest &= rest - 1
                    r = (k << 6) + b
                    for kk in range(W):
                        miss = cb[kk] & ~adj[r, kk]
                        if kk == (r >> 6):
                            miss &= ~((<uint64_t>1) << <unsigned>(r & 63))
                        if miss:
                            return 1
    return 0


def step3_scan(const uint64_t[:, ::1] adj, Py_ssize_t n,
               const int64_t[::1] ids_a, const int64_t[::1] ids_b,
               const int64_t[:, ::1] codeg, const uint64_t[::1] mask_mid,
               const int64_t[::1] deg_by_vertex):
    """Is there a non-adjacent (va, vb) with a common neighbor z in mask_mid
    such that deg_by_vertex[z] < codeg[i, j]?  Returns 1/0."""
    cdef Py_ssize_t W = adj.shape[1]
    if W > MAXW:
        raise ValueError("graph too large for kernel scratch")
    cdef Py_ssize_t i, j, k, va, vb, z
    cdef int64_t c
    cdef uint64_t w
    for i in range(ids_a.shape[0]):
        va = <Py_ssize_t>ids_a[i]
        for j in range(ids_b.shape[0]):
            vb = <Py_ssize_t>ids_b[j]
            if vb == va or _bit(adj, va, vb):
                continue
            c = codeg[i, j]
            if c <= 0:
                continue
            for k in range(W):
                w = adj[va, k] & adj[vb, k] & mask_mid[k]
                while w:
                    z = (k << 6) + __builtin_ctzll(w)
                    w &= w - 1
                    if deg_by_vertex[z] < c:
                        return 1
    return 0
