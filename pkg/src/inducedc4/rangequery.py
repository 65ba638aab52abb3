"""Static d-dimensional orthogonal range counting with witness retrieval.

The structure is a layered range tree: a balanced hierarchy over the points
sorted by axis 0, where every canonical node owns a (d-1)-dimensional
structure over its points; the 1-dimensional base is a sorted array with a
segment tree of payload minima.  Build is O(s log^(d-1) s), counting queries
cost O(log^d s), and everything is immutable after `build`.

Coordinates are integers; the sentinels BOTTOM and TOP are reserved extreme
values ordered below/above every legal finite coordinate, which keeps all
comparisons plain integer comparisons.  Box bounds carry explicit open/closed
flags per axis (`interval`, `at_least`, `below`, `exactly`, `anything`).

Witness ties resolve to the smallest payload id among contained points, so
query answers are deterministic for a fixed build.
"""

from __future__ import annotations

from typing import Optional, Sequence

BOTTOM = -(1 << 62)
TOP = 1 << 62

_FINITE_LIMIT = 1 << 61  # legal finite coordinates are within (-2^61, 2^61)


def is_finite(value: int) -> bool:
    return -_FINITE_LIMIT < value < _FINITE_LIMIT


class Bound:
    """One axis of a query box: [lo, hi] with per-end open/closed flags."""

    __slots__ = ("lo", "hi", "lo_closed", "hi_closed")

    def __init__(self, lo: int, hi: int, lo_closed: bool = True, hi_closed: bool = True):
        self.lo = lo
        self.hi = hi
        self.lo_closed = lo_closed
        self.hi_closed = hi_closed

    def effective(self) -> tuple[int, int]:
        """Closed integer interval [lo', hi'] equivalent to this bound."""
        lo = self.lo if self.lo_closed else self.lo + 1
        hi = self.hi if self.hi_closed else self.hi - 1
        return lo, hi

    def __repr__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


def interval(lo: int, hi: int, lo_closed: bool = True, hi_closed: bool = True) -> Bound:
    return Bound(lo, hi, lo_closed, hi_closed)


def at_least(value: int, closed: bool = True) -> Bound:
    return Bound(value, TOP, closed, True)


def at_most(value: int, closed: bool = True) -> Bound:
    return Bound(BOTTOM, value, True, closed)


def below(value: int) -> Bound:
    return Bound(BOTTOM, value, True, False)


def above(value: int) -> Bound:
    return Bound(value, TOP, False, True)


def exactly(value: int) -> Bound:
    return Bound(value, value, True, True)


def anything() -> Bound:
    return Bound(BOTTOM, TOP, True, True)


class _SegMin:
    """Static segment tree over an array, queried for the minimum on [l, r)."""

    __slots__ = ("size", "tree")

    _INF = 1 << 62

    def __init__(self, values):
        size = 1
        while size < max(len(values), 1):
            size *= 2
        tree = [self._INF] * (2 * size)
        tree[size : size + len(values)] = list(values)
        for i in range(size - 1, 0, -1):
            left, right = tree[2 * i], tree[2 * i + 1]
            tree[i] = left if left <= right else right
        self.size = size
        self.tree = tree

    def query(self, left: int, right: int) -> int:
        best = self._INF
        left += self.size
        right += self.size
        while left < right:
            if left & 1:
                if self.tree[left] < best:
                    best = self.tree[left]
                left += 1
            if right & 1:
                right -= 1
                if self.tree[right] < best:
                    best = self.tree[right]
            left >>= 1
            right >>= 1
        return best


class _Layer1D:
    """Sorted coordinate array + payload-min segment tree."""

    __slots__ = ("coords", "seg")

    def __init__(self, pts):  # pts sorted by coordinate
        self.coords = [c for c, _ in pts]
        self.seg = _SegMin([p for _, p in pts])

    def count(self, lo: int, hi: int) -> int:
        import bisect

        left = bisect.bisect_left(self.coords, lo)
        right = bisect.bisect_right(self.coords, hi)
        return max(0, right - left)

    def min_payload(self, lo: int, hi: int) -> Optional[int]:
        import bisect

        left = bisect.bisect_left(self.coords, lo)
        right = bisect.bisect_right(self.coords, hi)
        if left >= right:
            return None
        best = self.seg.query(left, right)
        return None if best >= _SegMin._INF else best


class _LayerNode:
    __slots__ = ("left", "right", "sub")

    def __init__(self, left, right, sub):
        self.left = left
        self.right = right
        self.sub = sub


class _LayerTree:
    """One axis of the layered tree: binary hierarchy over points sorted by
    this axis; every node stores a child structure on the remaining axes."""

    __slots__ = ("coords", "root")

    def __init__(self, pts, remaining_axes: int):
        # pts: list of (coords_tuple, payload) sorted by coords_tuple[0]
        self.coords = [c[0] for c, _ in pts]
        self.root = self._build(pts, remaining_axes)

    @staticmethod
    def _substructure(pts, remaining_axes: int):
        rest = [(c[1:], p) for c, p in pts]
        if remaining_axes == 1:
            rest.sort(key=lambda item: item[0][0])
            return _Layer1D([(c[0], p) for c, p in rest])
        rest.sort(key=lambda item: item[0][0])
        return _LayerTree(rest, remaining_axes - 1)

    def _build(self, pts, remaining_axes: int):
        sub = self._substructure(pts, remaining_axes)
        if len(pts) <= 1:
            return _LayerNode(None, None, sub)
        mid = len(pts) // 2
        left = self._build(pts[:mid], remaining_axes)
        right = self._build(pts[mid:], remaining_axes)
        return _LayerNode(left, right, sub)

    def canonical(self, lo: int, hi: int):
        """Sub-structures jointly covering exactly the points with axis
        coordinate in [lo, hi]."""
        import bisect

        want_left = bisect.bisect_left(self.coords, lo)
        want_right = bisect.bisect_right(self.coords, hi)
        out = []
        if want_left >= want_right:
            return out
        self._collect(self.root, 0, len(self.coords), want_left, want_right, out)
        return out

    def _collect(self, node, lo, hi, want_left, want_right, out):
        if want_left <= lo and hi <= want_right:
            out.append(node.sub)
            return
        if node.left is None:
            return
        mid = (lo + hi) // 2
        if want_left < mid:
            self._collect(node.left, lo, mid, want_left, want_right, out)
        if want_right > mid:
            self._collect(node.right, mid, hi, want_left, want_right, out)


class RangePointSet:
    """Immutable point set answering orthogonal box count/witness queries."""

    def __init__(self, d: int, points: Sequence[tuple]):
        """points: iterable of (coords, payload); coords is a length-d tuple
        of integers (finite or sentinel), payload a non-negative id."""
        if not (1 <= d <= 4):
            raise ValueError(f"dimension {d} outside 1..4")
        normalized = []
        for coords, payload in points:
            coords = tuple(int(c) for c in coords)
            if len(coords) != d:
                raise ValueError(
                    f"point {coords} has dimension {len(coords)}, declared {d}"
                )
            normalized.append((coords, int(payload)))
        self.d = d
        self.size = len(normalized)
        normalized.sort(key=lambda item: item[0][0])
        if d == 1:
            self._structure = _Layer1D([(c[0], p) for c, p in normalized])
        else:
            self._structure = _LayerTree(normalized, d - 1)

    def _clean_box(self, box: Sequence[Bound]) -> Optional[list[tuple[int, int]]]:
        if len(box) != self.d:
            raise ValueError(f"box has {len(box)} axes, structure has {self.d}")
        eff = []
        for bound in box:
            lo, hi = bound.effective()
            if lo > hi:
                return None
            eff.append((lo, hi))
        return eff

    def count(self, box: Sequence[Bound]) -> int:
        eff = self._clean_box(box)
        if eff is None or self.size == 0:
            return 0
        return self._count(self._structure, eff)

    @staticmethod
    def _count(structure, eff) -> int:
        lo, hi = eff[0]
        if isinstance(structure, _Layer1D):
            return structure.count(lo, hi)
        total = 0
        for sub in structure.canonical(lo, hi):
            total += RangePointSet._count(sub, eff[1:])
        return total

    def count_and_witness(self, box: Sequence[Bound]) -> tuple[int, Optional[int]]:
        """Exact count plus the smallest contained payload (None if empty)."""
        eff = self._clean_box(box)
        if eff is None or self.size == 0:
            return 0, None
        count, best = self._count_witness(self._structure, eff)
        return count, best

    @staticmethod
    def _count_witness(structure, eff):
        lo, hi = eff[0]
        if isinstance(structure, _Layer1D):
            cnt = structure.count(lo, hi)
            return cnt, structure.min_payload(lo, hi) if cnt else None
        total = 0
        best = None
        for sub in structure.canonical(lo, hi):
            cnt, payload = RangePointSet._count_witness(sub, eff[1:])
            total += cnt
            if payload is not None and (best is None or payload < best):
                best = payload
        return total, best

    def extremal_on_image(
        self,
        constraints: Sequence[Bound],
        target_axis: int,
        direction: str,
        candidates: Sequence[int],
    ) -> Optional[tuple[int, int]]:
        """Extremal achieved target coordinate subject to box constraints.

        `constraints` bounds every axis (the target axis entry is combined
        with the candidate range).  `candidates` is ascending and must cover
        every achievable target value inside the constraints; the answer is
        then the minimum (or maximum) candidate value realized by some point,
        returned with that point's payload, or None when no point qualifies.
        Runs O(log |candidates|) counting queries.
        """
        if direction not in ("min", "max"):
            raise ValueError("direction must be 'min' or 'max'")
        if not (0 <= target_axis < self.d):
            raise ValueError("target axis outside dimension")
        candidates = list(candidates)
        if not candidates or self.size == 0:
            return None

        def boxed(lo_val: int, hi_val: int) -> list[Bound]:
            box = list(constraints)
            base = box[target_axis]
            lo_eff, hi_eff = base.effective()
            box[target_axis] = Bound(max(lo_eff, lo_val), min(hi_eff, hi_val))
            return box

        if self.count(boxed(candidates[0], candidates[-1])) == 0:
            return None
        lo, hi = 0, len(candidates) - 1
        if direction == "min":
            # least k with a point at target <= candidates[k]
            while lo < hi:
                mid = (lo + hi) // 2
                if self.count(boxed(candidates[0], candidates[mid])) > 0:
                    hi = mid
                else:
                    lo = mid + 1
        else:
            # greatest k with a point at target >= candidates[k]
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if self.count(boxed(candidates[mid], candidates[-1])) > 0:
                    lo = mid
                else:
                    hi = mid - 1
        value = candidates[lo]
        count, payload = self.count_and_witness(boxed(value, value))
        if count == 0:
            raise ValueError(
                "candidates do not cover an achieved target value; "
                "extremal_on_image requires covering candidates"
            )
        return value, payload
