"""Exact-arithmetic core model: point sets, receiver assignments, transmission
ranges, interference, and the structural predicates shared by every solver.

All coordinates are `fractions.Fraction`; every geometric comparison is exact
(squared distances in 2D, coordinate differences in 1D).  Points are addressed
by index: position in the sorted coordinate order for 1D instances, input
order for 2D instances.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from .errors import InputError

Rational = Fraction

# Model tags for receiver assignments.
ASYM2D = "asym2d"
SINKTREE1D = "sinktree1d"


def as_rational(value) -> Fraction:
    """Coerce ints, strings like '3' or '-3/4', and Fractions to Fraction."""
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"not a rational number: {value!r}") from exc


@dataclass(frozen=True)
class Instance1D:
    """Strictly increasing coordinates on the line; indices follow this order."""

    points: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.points) < 1:
            raise InputError("1D instance needs at least one point")
        for a, b in zip(self.points, self.points[1:]):
            if not a < b:
                raise InputError("1D points must be strictly increasing")

    @classmethod
    def from_values(cls, values: Iterable) -> "Instance1D":
        pts = sorted(as_rational(v) for v in values)
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise InputError(f"duplicate 1D point: {a}")
        return cls(tuple(pts))

    @property
    def n(self) -> int:
        return len(self.points)

    def diameter(self) -> Fraction:
        return self.points[-1] - self.points[0]


@dataclass(frozen=True)
class Instance2D:
    """Planar points in input order; must be pairwise distinct."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise InputError("2D points must be pairwise distinct")

    @classmethod
    def from_values(cls, values: Iterable) -> "Instance2D":
        pts = tuple((as_rational(x), as_rational(y)) for x, y in values)
        return cls(pts)

    @property
    def n(self) -> int:
        return len(self.points)


Instance = Union[Instance1D, Instance2D]


class Range(NamedTuple):
    """Closed transmission ball, encoded as (center point id, boundary point id)."""

    center: int
    boundary: int


@dataclass(frozen=True)
class ReceiverAssignment:
    """Map point -> receiver point.

    For ASYM2D the map is total.  For SINKTREE1D it is total on all points
    except the designated sink, which has no receiver.
    """

    model: str
    receiver: dict[int, int] = field(default_factory=dict)
    sink: int | None = None

    def __post_init__(self):
        if self.model not in (ASYM2D, SINKTREE1D):
            raise InputError(f"unknown model tag: {self.model!r}")
        for p, q in self.receiver.items():
            if p == q:
                raise InputError(f"point {p} may not be its own receiver")
        if self.model == ASYM2D and self.sink is not None:
            raise InputError("asym2d assignments have no sink")
        if self.model == SINKTREE1D and self.sink is None:
            raise InputError("sinktree1d assignments need a sink")

    def check_for(self, instance: Instance) -> None:
        """Raise InputError unless this assignment is well-formed for `instance`."""
        n = instance.n
        for p, q in self.receiver.items():
            if not (0 <= p < n and 0 <= q < n):
                raise InputError(f"edge ({p}, {q}) references a missing point")
        if self.model == ASYM2D:
            if not isinstance(instance, Instance2D):
                raise InputError("asym2d assignment on a non-2D instance")
            if len(self.receiver) != n:
                raise InputError("asym2d receiver map must be total")
        else:
            if not isinstance(instance, Instance1D):
                raise InputError("sinktree1d assignment on a non-1D instance")
            if not 0 <= self.sink < n:
                raise InputError(f"sink {self.sink} references a missing point")
            if self.sink in self.receiver:
                raise InputError("the sink may not have a receiver")
            if len(self.receiver) != n - 1:
                raise InputError("receiver map must cover every non-sink point")


def dist2(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]) -> Fraction:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def _radius2(instance: Instance, r: Range) -> Fraction:
    if isinstance(instance, Instance1D):
        d = instance.points[r.center] - instance.points[r.boundary]
        return d * d
    return dist2(instance.points[r.center], instance.points[r.boundary])


def covers(instance: Instance, r: Range, point_id: int) -> bool:
    """Exact closed-ball membership test."""
    if isinstance(instance, Instance1D):
        d = instance.points[r.center] - instance.points[point_id]
        return d * d <= _radius2(instance, r)
    return dist2(instance.points[r.center], instance.points[point_id]) <= _radius2(instance, r)


def balls(instance: Instance, assignment: ReceiverAssignment) -> list[Range]:
    """One transmission range per assigned point, sorted by (center, boundary).

    In the sink-tree model the sink contributes no ball.
    """
    assignment.check_for(instance)
    return sorted(Range(p, q) for p, q in assignment.receiver.items())


def communication_graph_2d(
    instance: Instance2D, assignment: ReceiverAssignment
) -> list[list[int]]:
    """Out-neighbor lists: edge p -> q iff q is at most as far from p as N(p)."""
    if assignment.model != ASYM2D:
        raise InputError("communication_graph_2d needs an asym2d assignment")
    assignment.check_for(instance)
    pts = instance.points
    out: list[list[int]] = []
    for p in range(instance.n):
        r2 = dist2(pts[p], pts[assignment.receiver[p]])
        out.append([q for q in range(instance.n) if q != p and dist2(pts[p], pts[q]) <= r2])
    return out


def _strongly_connected(out: list[list[int]]) -> bool:
    n = len(out)
    if n <= 1:
        return True
    incoming: list[list[int]] = [[] for _ in range(n)]
    for p, nbrs in enumerate(out):
        for q in nbrs:
            incoming[q].append(p)
    for adj in (out, incoming):
        seen = [False] * n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != n:
            return False
    return True


def _is_in_tree(n: int, receiver: dict[int, int], sink: int) -> bool:
    """True iff the functional graph is acyclic with every point reaching `sink`."""
    state = [0] * n  # 0 unvisited, 1 on current walk, 2 known-good
    state[sink] = 2
    for start in range(n):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = receiver[v]
        if state[v] == 1:
            return False  # walked into our own path: a cycle
        for u in path:
            state[u] = 2
    return True


def is_valid(instance: Instance, assignment: ReceiverAssignment) -> bool:
    """Validity: strong connectivity (asym2d) or a rooted in-tree (sinktree1d)."""
    assignment.check_for(instance)
    if assignment.model == ASYM2D:
        return _strongly_connected(communication_graph_2d(instance, assignment))
    if instance.n == 1:
        return True
    return _is_in_tree(instance.n, assignment.receiver, assignment.sink)


def coverage_counts(instance: Instance, assignment: ReceiverAssignment) -> list[int]:
    """Number of transmission ranges covering each point (own ball included)."""
    rs = balls(instance, assignment)
    n = instance.n
    if isinstance(instance, Instance1D):
        pts = instance.points
        delta = [0] * (n + 1)
        for r in rs:
            rad = abs(pts[r.center] - pts[r.boundary])
            lo = bisect_left(pts, pts[r.center] - rad)
            hi = bisect_right(pts, pts[r.center] + rad) - 1
            delta[lo] += 1
            delta[hi + 1] -= 1
        counts = []
        acc = 0
        for i in range(n):
            acc += delta[i]
            counts.append(acc)
        return counts
    return [sum(1 for r in rs if covers(instance, r, p)) for p in range(n)]


def interference_at(instance: Instance, assignment: ReceiverAssignment, point_id: int) -> int:
    if not 0 <= point_id < instance.n:
        raise InputError(f"no point with index {point_id}")
    return sum(1 for r in balls(instance, assignment) if covers(instance, r, point_id))


def interference(instance: Instance, assignment: ReceiverAssignment) -> int:
    """Maximum number of transmission ranges covering any point of the instance."""
    return max(coverage_counts(instance, assignment), default=0)


def _require_valid_tree(instance: Instance1D, assignment: ReceiverAssignment) -> None:
    if assignment.model != SINKTREE1D:
        raise InputError("this predicate is defined for sinktree1d assignments")
    if not is_valid(instance, assignment):
        raise InputError("assignment is not a valid sink tree")


def descendant_masks(instance: Instance1D, assignment: ReceiverAssignment) -> list[int]:
    """Bitmask of descendants per point (each point is its own descendant)."""
    _require_valid_tree(instance, assignment)
    n = instance.n
    masks = [1 << p for p in range(n)]
    # Accumulate from the deepest nodes up: process points in order of
    # decreasing depth so each child is complete before its parent.
    depth = [-1] * n
    depth[assignment.sink] = 0
    for p in range(n):
        path = []
        q = p
        while depth[q] < 0:
            path.append(q)
            q = assignment.receiver[q]
        base = depth[q]
        for off, u in enumerate(reversed(path), start=1):
            depth[u] = base + off
    for p in sorted(range(n), key=lambda v: -depth[v]):
        if p != assignment.sink:
            masks[assignment.receiver[p]] |= masks[p]
    return masks


def _span_mask(lo: int, hi: int) -> int:
    return ((1 << (hi - lo + 1)) - 1) << lo


def cross_edges(instance: Instance1D, assignment: ReceiverAssignment) -> list[tuple[int, int]]:
    """Edges whose open interval contains a point that is not a descendant of the tail."""
    masks = descendant_masks(instance, assignment)
    result = []
    for p in sorted(assignment.receiver):
        q = assignment.receiver[p]
        lo, hi = min(p, q), max(p, q)
        if hi - lo >= 2:
            between = _span_mask(lo + 1, hi - 1)
            if between & ~masks[p]:
                result.append((p, q))
    return result


def has_bst_property(instance: Instance1D, assignment: ReceiverAssignment) -> bool:
    """Binary-search-tree shape: at most one child per side, and every node's
    descendant span contains nothing but its own descendants."""
    masks = descendant_masks(instance, assignment)
    n = instance.n
    left_children = [0] * n
    right_children = [0] * n
    for p, q in assignment.receiver.items():
        if p < q:
            left_children[q] += 1
        else:
            right_children[q] += 1
    if any(c > 1 for c in left_children) or any(c > 1 for c in right_children):
        return False
    for p in range(n):
        mask = masks[p]
        lo = (mask & -mask).bit_length() - 1
        hi = mask.bit_length() - 1
        if _span_mask(lo, hi) & ~mask:
            return False
    return True


def count_bends(instance: Instance1D, assignment: ReceiverAssignment) -> int:
    """Edges between points that are not adjacent in the sorted order."""
    _require_valid_tree(instance, assignment)
    return sum(1 for p, q in assignment.receiver.items() if abs(p - q) > 1)


def scale_instance(instance: Instance, factor: Fraction) -> Instance:
    """Scale all coordinates by a positive rational (for exactness tests)."""
    factor = as_rational(factor)
    if factor <= 0:
        raise InputError("scale factor must be positive")
    if isinstance(instance, Instance1D):
        return Instance1D(tuple(x * factor for x in instance.points))
    return Instance2D(tuple((x * factor, y * factor) for x, y in instance.points))
