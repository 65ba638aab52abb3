"""Seeded graph generators and the spec-string grammar.

A generator spec serializes to one CLI-friendly token:

    kind:key=value,key=value,...

Kinds and their parameters:

    gnp:n=<int>,p=<rational>,seed=<uint64>
        Erdos-Renyi G(n, p).  Each unordered pair (u, v), u < v, gets the
        draw splitmix64(seed, pair_index) with pair_index enumerating pairs
        in lexicographic order; the edge is present iff
        draw < floor(p_num * 2**64 / p_den).  p accepts "0.3" or "3/10".

    polarity-blowup:q=<prime>,w=<int>
        Projective-plane polarity graph on q^2+q+1 base points (x ~ y iff
        x . y == 0 mod q, self-loops dropped), each point replaced by a
        w-clique and each base edge by a complete bipartite join.  The
        result contains no induced 4-cycle.

    clique-blowup:n=<int>,w=<int>,seed=<uint64>
        Cycle on n/w base vertices (requires w | n, n/w >= 5), blown up by
        w-cliques and complete joins, then relabeled by a seeded
        permutation.  Induced-4-cycle-free.

    planted-c4:n=<int>,seed=<uint64>
        G(n, 1/4) background with one induced 4-cycle forced on four seeded
        vertices; `planted_witness` recomputes the plant.

    nested-pair:n=<int>,seed=<uint64>
        Two cliques A = [0, ceil(n/2)) and B = rest, with nested cross
        neighborhoods drawn from seeded integer thresholds.  The cross
        pattern admits an ordering by construction, so the graph is
        induced-4-cycle-free.

All kinds are pure functions of their spec: equal specs give bit-identical
adjacency.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import bitset
from .errors import SpecError
from .graph import C4Witness, Graph, canonical_witness
from .rng import rand_below, splitmix64_array, substream

MAX_GENERATED_N = 1 << 16

_KINDS = ("gnp", "polarity-blowup", "clique-blowup", "planted-c4", "nested-pair")


@dataclass(frozen=True)
class GraphSpec:
    kind: str
    n: Optional[int] = None
    p: Optional[Fraction] = None
    q: Optional[int] = None
    w: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise SpecError(f"unknown generator kind {self.kind!r}")
        if self.kind == "gnp":
            self._need(n=True, p=True)
            if self.n < 0:
                raise SpecError("gnp needs n >= 0")
            if not (0 <= self.p <= 1):
                raise SpecError("edge probability must be in [0, 1]")
        elif self.kind == "polarity-blowup":
            self._need(q=True, w=True)
            if not _is_prime(self.q):
                raise SpecError(f"q={self.q} is not prime")
            if self.w < 1:
                raise SpecError("clique width w must be >= 1")
            if (self.q * self.q + self.q + 1) * self.w > MAX_GENERATED_N:
                raise SpecError("resulting graph exceeds the configured maximum size")
        elif self.kind == "clique-blowup":
            self._need(n=True, w=True)
            if self.w < 1 or self.n % self.w != 0 or self.n // self.w < 5:
                raise SpecError("clique-blowup needs w >= 1, w | n and n/w >= 5")
        elif self.kind == "planted-c4":
            self._need(n=True)
            if self.n < 4:
                raise SpecError("planted-c4 needs n >= 4")
        elif self.kind == "nested-pair":
            self._need(n=True)
            if self.n < 2:
                raise SpecError("nested-pair needs n >= 2")
        if self.n is not None and self.n > MAX_GENERATED_N:
            raise SpecError("resulting graph exceeds the configured maximum size")
        if not (0 <= self.seed < (1 << 64)):
            raise SpecError("seed must fit in 64 bits")

    def _need(self, n=False, p=False, q=False, w=False):
        for name, required in (("n", n), ("p", p), ("q", q), ("w", w)):
            if required and getattr(self, name) is None:
                raise SpecError(f"{self.kind} requires parameter {name}")


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def parse_spec(text: str) -> GraphSpec:
    """Parse the kind:key=value,... grammar."""
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    params: dict = {}
    if rest.strip():
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            value = value.strip()
            if not eq or not key or not value:
                raise SpecError(f"bad parameter {item!r} in spec {text!r}")
            if key in ("n", "q", "w", "seed"):
                try:
                    params[key] = int(value)
                except ValueError:
                    raise SpecError(f"parameter {key} must be an integer") from None
            elif key == "p":
                try:
                    params[key] = Fraction(value)
                except (ValueError, ZeroDivisionError):
                    raise SpecError(f"parameter p={value!r} is not a rational") from None
            else:
                raise SpecError(f"unknown parameter {key!r}")
    try:
        return GraphSpec(kind=kind, **params)
    except TypeError as exc:
        raise SpecError(str(exc)) from None


def format_spec(spec: GraphSpec) -> str:
    parts = []
    if spec.n is not None:
        parts.append(f"n={spec.n}")
    if spec.p is not None:
        parts.append(f"p={spec.p}")
    if spec.q is not None:
        parts.append(f"q={spec.q}")
    if spec.w is not None:
        parts.append(f"w={spec.w}")
    parts.append(f"seed={spec.seed}")
    return f"{spec.kind}:" + ",".join(parts)


# -- generators ---------------------------------------------------------------


def generate(spec: GraphSpec) -> Graph:
    if spec.kind == "gnp":
        return _gnp(spec.n, spec.p, spec.seed)
    if spec.kind == "polarity-blowup":
        return _blowup(_polarity_dense(spec.q), spec.w, permute_seed=None)
    if spec.kind == "clique-blowup":
        return _blowup(_cycle_dense(spec.n // spec.w), spec.w, permute_seed=spec.seed)
    if spec.kind == "planted-c4":
        return _planted_c4(spec.n, spec.seed)
    if spec.kind == "nested-pair":
        return _nested_pair(spec.n, spec.seed)
    raise SpecError(f"unknown generator kind {spec.kind!r}")


def _pair_threshold(p: Fraction) -> int:
    return (p.numerator << 64) // p.denominator


def _gnp(n: int, p: Fraction, seed: int) -> Graph:
    dense = np.zeros((n, n), dtype=bool)
    total = n * (n - 1) // 2
    threshold = _pair_threshold(p)
    if total and threshold > 0:
        iu, ju = np.triu_indices(n, k=1)
        present = np.zeros(total, dtype=bool)
        if threshold >= 1 << 64:
            present[:] = True
        else:
            chunk = 1 << 22
            for lo in range(0, total, chunk):
                hi = min(total, lo + chunk)
                draws = splitmix64_array(seed, np.arange(lo, hi, dtype=np.uint64))
                present[lo:hi] = draws < np.uint64(threshold)
        dense[iu[present], ju[present]] = True
        dense |= dense.T
    return Graph.from_dense(dense)


def _polarity_dense(q: int) -> np.ndarray:
    """Base polarity graph: canonical projective points, x ~ y iff x.y = 0."""
    points = [(1, a, b) for a in range(q) for b in range(q)]
    points += [(0, 1, b) for b in range(q)]
    points.append((0, 0, 1))
    pts = np.array(points, dtype=np.int64)
    dots = (pts @ pts.T) % q
    dense = dots == 0
    np.fill_diagonal(dense, False)
    return dense


def _cycle_dense(n_base: int) -> np.ndarray:
    dense = np.zeros((n_base, n_base), dtype=bool)
    idx = np.arange(n_base)
    dense[idx, (idx + 1) % n_base] = True
    dense |= dense.T
    return dense


def _blowup(base: np.ndarray, w: int, permute_seed: Optional[int]) -> Graph:
    """Replace base vertices by w-cliques and base edges by complete joins."""
    closed = base | np.eye(len(base), dtype=bool)
    dense = np.repeat(np.repeat(closed, w, axis=0), w, axis=1)
    np.fill_diagonal(dense, False)
    if permute_seed is not None:
        perm = _seeded_permutation(len(dense), permute_seed)
        dense = dense[np.ix_(perm, perm)]
    return Graph.from_dense(dense)


def _seeded_permutation(n: int, seed: int) -> np.ndarray:
    perm = np.arange(n, dtype=np.int64)
    s = substream(seed, 1)
    for i in range(n - 1, 0, -1):
        j = rand_below(s, i, i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def _planted_vertices(n: int, seed: int) -> tuple[int, int, int, int]:
    s = substream(seed, 2)
    chosen: list[int] = []
    counter = 0
    while len(chosen) < 4:
        v = rand_below(s, counter, n)
        counter += 1
        if v not in chosen:
            chosen.append(v)
    return tuple(chosen)  # type: ignore[return-value]


def _planted_c4(n: int, seed: int) -> Graph:
    g = _gnp(n, Fraction(1, 4), substream(seed, 3))
    ids = np.arange(n)
    dense = bitset.extract_bits(g.adj, ids, ids)
    a, b, c, d = _planted_vertices(n, seed)
    for u, v in ((a, b), (b, c), (c, d), (d, a)):
        dense[u, v] = dense[v, u] = True
    for u, v in ((a, c), (b, d)):
        dense[u, v] = dense[v, u] = False
    return Graph.from_dense(dense)


def planted_witness(spec: GraphSpec) -> C4Witness:
    """The quadruple forced by planted-c4 (verifies on the generated graph)."""
    if spec.kind != "planted-c4":
        raise SpecError("planted_witness applies to planted-c4 specs only")
    a, b, c, d = _planted_vertices(spec.n, spec.seed)
    return canonical_witness(a, b, c, d)


def nested_pair_sides(spec: GraphSpec) -> tuple[np.ndarray, np.ndarray]:
    """The two clique vertex sets of a nested-pair instance."""
    if spec.kind != "nested-pair":
        raise SpecError("nested_pair_sides applies to nested-pair specs only")
    size_a = (spec.n + 1) // 2
    return np.arange(size_a, dtype=np.int64), np.arange(size_a, spec.n, dtype=np.int64)


def _nested_pair(n: int, seed: int) -> Graph:
    size_a = (n + 1) // 2
    dense = np.zeros((n, n), dtype=bool)
    dense[:size_a, :size_a] = True
    dense[size_a:, size_a:] = True
    s = substream(seed, 4)
    levels = np.array([rand_below(s, i, size_a + 1) for i in range(n - size_a)])
    thresholds = np.array([rand_below(s, 1000 + i, size_a + 1) + 1 for i in range(size_a)])
    cross = thresholds[:, None] <= levels[None, :]
    dense[:size_a, size_a:] = cross
    dense[size_a:, :size_a] = cross.T
    np.fill_diagonal(dense, False)
    return Graph.from_dense(dense)
