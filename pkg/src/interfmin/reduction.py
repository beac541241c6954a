"""Grid-graph to point-set reduction with 13-point vertex gadgets.

Each grid vertex becomes a cluster of 13 points: a main point at the vertex,
three two-point satellite stations facing (at least) the incident grid edges,
a connector displaced a little beyond satellite distance in the remaining
direction, and a five-point inhibitor further out along the same axis.  The
small displacement `epsilon` is tuned so the connector's ball around the main
point reaches exactly to the nearest inhibitor point and vice versa.

Encoding a Hamiltonian path means pointing the satellite stations on path
edges at their partner stations across the edge; everything else points
inward.  The resulting assignment is valid with interference exactly 5, and
the cross-gadget edges recover exactly the path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapExceededError, InputError, InvariantError
from .model import ASYM2D, Instance2D, ReceiverAssignment, as_rational, communication_graph_2d, dist2

Vertex = tuple[int, int]
Point = tuple[Fraction, Fraction]

# Fixed direction order: +x < -x < +y < -y (used for all placement choices).
DIRECTIONS: tuple[Vertex, ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))

ROLE_ORDER = ("M", "S1", "S1p", "S2", "S2p", "S3", "S3p", "C", "Ic", "I1", "I2", "I3", "I4")

DEFAULT_EPSILON = Fraction(1, 64)

FIND_HAM_PATH_CAP = 16


def _clockwise(d: Vertex) -> Vertex:
    return (d[1], -d[0])


@dataclass(frozen=True)
class GridGraph:
    """Finite set of integer grid vertices; edges join L1-distance-1 pairs."""

    vertices: tuple[Vertex, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate grid vertex")
        if not self.vertices:
            raise InputError("grid graph needs at least one vertex")

    @classmethod
    def from_vertices(cls, vertices) -> "GridGraph":
        return cls(tuple(sorted((int(x), int(y)) for x, y in vertices)))

    def neighbors(self, v: Vertex) -> list[Vertex]:
        present = set(self.vertices)
        return [(v[0] + d[0], v[1] + d[1]) for d in DIRECTIONS if (v[0] + d[0], v[1] + d[1]) in present]

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        return [(u, w) for u in self.vertices for w in self.neighbors(u) if u < w]

    def max_degree(self) -> int:
        return max(len(self.neighbors(v)) for v in self.vertices)

    def is_connected(self) -> bool:
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in self.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class GadgetLayout:
    vertex: Vertex
    epsilon: Fraction
    roles: dict[str, Point]
    satellite_directions: dict[str, Vertex]


@dataclass(frozen=True)
class ReductionOutput:
    instance: Instance2D
    gadget_of: dict[int, Vertex]
    role_of: dict[int, str]
    partner: dict[int, int]
    layouts: dict[Vertex, GadgetLayout] = field(default_factory=dict)

    def index_of(self, vertex: Vertex, role: str) -> int:
        base = sorted(self.layouts).index(vertex) * len(ROLE_ORDER)
        return base + ROLE_ORDER.index(role)


def build_gadget(vertex: Vertex, incident_dirs, epsilon=DEFAULT_EPSILON) -> GadgetLayout:
    """Place the 13 gadget points for one grid vertex.

    Satellites take the incident directions first; with fewer than three
    incident edges the remaining stations go to the smallest free directions,
    and the connector takes the one direction left over.
    """
    eps = as_rational(epsilon)
    if eps <= 0:
        raise InputError("epsilon must be positive")
    dirs = list(incident_dirs)
    if not 1 <= len(dirs) <= 3:
        raise InputError("a grid vertex must have between 1 and 3 incident edges")
    if len(set(dirs)) != len(dirs) or any(d not in DIRECTIONS for d in dirs):
        raise InputError(f"bad incident directions: {dirs}")

    sat_dirs = sorted(dirs, key=DIRECTIONS.index)
    for d in DIRECTIONS:
        if len(sat_dirs) == 3:
            break
        if d not in sat_dirs:
            sat_dirs.append(d)
    connector_dir = next(d for d in DIRECTIONS if d not in sat_dirs)
    sat_dirs = sorted(sat_dirs, key=DIRECTIONS.index)

    vx, vy = Fraction(vertex[0]), Fraction(vertex[1])
    quarter = Fraction(1, 4)

    def at(direction: Vertex, distance: Fraction) -> Point:
        return (vx + distance * direction[0], vy + distance * direction[1])

    roles: dict[str, Point] = {"M": (vx, vy)}
    satellite_directions: dict[str, Vertex] = {}
    for i, d in enumerate(sat_dirs, start=1):
        s = at(d, quarter)
        cw = _clockwise(d)
        roles[f"S{i}"] = s
        roles[f"S{i}p"] = (s[0] + eps * cw[0], s[1] + eps * cw[1])
        satellite_directions[f"S{i}"] = d

    roles["C"] = at(connector_dir, quarter + eps)
    center = at(connector_dir, Fraction(1, 2) + 3 * eps)
    roles["Ic"] = center
    offsets = [(-connector_dir[0], -connector_dir[1])]  # nearest the connector
    offsets += [d for d in DIRECTIONS if d != offsets[0]]
    for j, d in enumerate(offsets[:4], start=1):
        roles[f"I{j}"] = (center[0] + eps * d[0], center[1] + eps * d[1])
    return GadgetLayout(vertex, eps, roles, satellite_directions)


def reduce_grid(grid: GridGraph, epsilon=DEFAULT_EPSILON, run_checks: bool = True) -> ReductionOutput:
    """Replace every grid vertex by its gadget and link partner satellites."""
    if not grid.is_connected():
        raise InputError("grid graph must be connected")
    if grid.max_degree() > 3:
        raise InputError("grid graph must have maximum degree 3")

    vertices = sorted(grid.vertices)
    layouts: dict[Vertex, GadgetLayout] = {}
    points: list[Point] = []
    gadget_of: dict[int, Vertex] = {}
    role_of: dict[int, str] = {}
    for v in vertices:
        dirs = [(w[0] - v[0], w[1] - v[1]) for w in grid.neighbors(v)]
        layout = build_gadget(v, dirs, epsilon)
        layouts[v] = layout
        for role in ROLE_ORDER:
            gadget_of[len(points)] = v
            role_of[len(points)] = role
            points.append(layout.roles[role])

    result = ReductionOutput(Instance2D(tuple(points)), gadget_of, role_of, {}, layouts)
    for u, w in grid.edges():
        d_uw = (w[0] - u[0], w[1] - u[1])
        d_wu = (-d_uw[0], -d_uw[1])
        role_u = next(r for r, d in layouts[u].satellite_directions.items() if d == d_uw)
        role_w = next(r for r, d in layouts[w].satellite_directions.items() if d == d_wu)
        iu = result.index_of(u, role_u)
        iw = result.index_of(w, role_w)
        result.partner[iu] = iw
        result.partner[iw] = iu

    if run_checks:
        problems = geometry_violations(result)
        if problems:
            raise InvariantError("gadget geometry violated: " + "; ".join(problems))
    return result


def _sqrt2_over2_minus(eps: Fraction, k: int):
    """Test helper returning a predicate for d2 >= (sqrt(2)/2 - k*eps)^2."""

    def at_least(d2: Fraction) -> bool:
        if Fraction(1, 2) <= (k * eps) ** 2:  # threshold is non-positive
            return True
        rest = d2 - Fraction(1, 2) - (k * eps) ** 2
        if rest >= 0:
            return True
        return rest * rest <= 2 * (k * eps) ** 2

    return at_least


def geometry_violations(red: ReductionOutput) -> list[str]:
    """Exact checks of the gadget geometry; empty list means all hold."""
    problems: list[str] = []
    pts = red.instance.points
    eps_values = {layout.epsilon for layout in red.layouts.values()}
    eps = eps_values.pop()
    quarter = Fraction(1, 4)

    # Safe epsilon range: sqrt(2)/2 - 4*eps must stay above 1/2 + 3*eps.
    if not (Fraction(1, 2) + 7 * eps) ** 2 < Fraction(1, 2):
        problems.append(f"epsilon {eps} too large for the separation inequality")

    for v, layout in sorted(red.layouts.items()):
        r = layout.roles
        d_mc = abs(r["C"][0] - r["M"][0]) + abs(r["C"][1] - r["M"][1])
        d_ci = abs(r["Ic"][0] - r["C"][0]) + abs(r["Ic"][1] - r["C"][1])
        if d_mc + eps != d_ci:
            problems.append(f"{v}: connector-to-inhibitor spacing is off")
        if d_mc != quarter + eps:
            problems.append(f"{v}: connector distance is off")

        def nearest_ok(role: str, expected: str, expected_d2: Fraction) -> None:
            idx = red.index_of(v, role)
            exp_idx = red.index_of(v, expected)
            if dist2(pts[idx], pts[exp_idx]) != expected_d2:
                problems.append(f"{v}: {role} is not at the expected distance from {expected}")
                return
            for j in range(len(pts)):
                if j in (idx, exp_idx):
                    continue
                if dist2(pts[idx], pts[j]) <= expected_d2:
                    problems.append(f"{v}: {role} has a neighbor nearer than {expected}")
                    return

        for i in (1, 2, 3):
            nearest_ok(f"S{i}p", f"S{i}", eps * eps)
        for j in (1, 2, 3, 4):
            nearest_ok(f"I{j}", "Ic", eps * eps)

        # The connector's nearest points are the main point and the closest
        # inhibitor point, both exactly at the satellite distance plus epsilon.
        c_idx = red.index_of(v, "C")
        tie = (quarter + eps) ** 2
        if dist2(pts[c_idx], pts[red.index_of(v, "M")]) != tie:
            problems.append(f"{v}: connector-to-main distance is off")
        if dist2(pts[c_idx], pts[red.index_of(v, "I1")]) != tie:
            problems.append(f"{v}: connector-to-inhibitor distance is off")
        for j in range(len(pts)):
            if j != c_idx and dist2(pts[c_idx], pts[j]) < tie:
                problems.append(f"{v}: connector has a too-close neighbor")
                break

        # Each satellite's nearest point outside its own station is the main point.
        for i in (1, 2, 3):
            s_idx = red.index_of(v, f"S{i}")
            own = {s_idx, red.index_of(v, f"S{i}p")}
            d_main = dist2(pts[s_idx], pts[red.index_of(v, "M")])
            if d_main != quarter * quarter:
                problems.append(f"{v}: satellite {i} is not at the main-point distance")
            for j in range(len(pts)):
                if j not in own and j != red.index_of(v, "M"):
                    if dist2(pts[s_idx], pts[j]) <= d_main:
                        problems.append(f"{v}: satellite {i} has a non-main nearest neighbor")
                        break

    # Inhibitors of adjacent gadgets stay far apart.
    at_least = _sqrt2_over2_minus(eps, 4)
    inhibitors = ("Ic", "I1", "I2", "I3", "I4")
    vertex_set = set(red.layouts)
    for v in sorted(vertex_set):
        for d in DIRECTIONS:
            w = (v[0] + d[0], v[1] + d[1])
            if w in vertex_set and v < w:
                for a in inhibitors:
                    for b in inhibitors:
                        d2 = dist2(pts[red.index_of(v, a)], pts[red.index_of(w, b)])
                        if not at_least(d2):
                            problems.append(f"{v}-{w}: inhibitor clusters too close")
    return problems


def find_ham_path(grid: GridGraph, cap: int = FIND_HAM_PATH_CAP) -> list[Vertex] | None:
    """Exhaustive backtracking search for a Hamiltonian path; None if there is none."""
    n = len(grid.vertices)
    if n > cap:
        raise CapExceededError(f"Hamiltonian path search refused for {n} > {cap} vertices")
    order = sorted(grid.vertices)
    path: list[Vertex] = []
    used: set[Vertex] = set()

    def extend(v: Vertex) -> bool:
        path.append(v)
        used.add(v)
        if len(path) == n:
            return True
        for w in sorted(grid.neighbors(v)):
            if w not in used and extend(w):
                return True
        path.pop()
        used.remove(v)
        return False

    for start in order:
        if extend(start):
            return path
    return None


def _path_edges(grid: GridGraph, path: list[Vertex]) -> set[frozenset]:
    vertices = list(path)
    if len(vertices) == len(grid.vertices) + 1 and vertices[0] == vertices[-1]:
        vertices = vertices[:-1]  # accept a Hamiltonian cycle, dropping the closing edge
    if sorted(vertices) != sorted(grid.vertices):
        raise InputError("not a Hamiltonian path: must visit every vertex exactly once")
    for u, w in zip(vertices, vertices[1:]):
        if abs(u[0] - w[0]) + abs(u[1] - w[1]) != 1:
            raise InputError(f"consecutive path vertices {u} and {w} are not grid-adjacent")
    return {frozenset((u, w)) for u, w in zip(vertices, vertices[1:])}


def assignment_from_ham_path(red: ReductionOutput, path: list[Vertex]) -> ReceiverAssignment:
    """Receiver assignment with interference exactly 5 encoding the given path."""
    grid = GridGraph.from_vertices(red.layouts)
    on_path = _path_edges(grid, path)
    receiver: dict[int, int] = {}
    for v, layout in red.layouts.items():
        idx = {role: red.index_of(v, role) for role in ROLE_ORDER}
        receiver[idx["M"]] = idx["C"]
        receiver[idx["C"]] = idx["M"]
        receiver[idx["I1"]] = idx["C"]
        receiver[idx["Ic"]] = idx["I1"]
        for j in (2, 3, 4):
            receiver[idx[f"I{j}"]] = idx["Ic"]
        for i in (1, 2, 3):
            receiver[idx[f"S{i}p"]] = idx[f"S{i}"]
            d = layout.satellite_directions[f"S{i}"]
            w = (v[0] + d[0], v[1] + d[1])
            if frozenset((v, w)) in on_path:
                receiver[idx[f"S{i}"]] = red.partner[idx[f"S{i}"]]
            else:
                receiver[idx[f"S{i}"]] = idx["M"]
    return ReceiverAssignment(ASYM2D, receiver)


def extract_connection_structure(
    red: ReductionOutput, assignment: ReceiverAssignment
) -> list[tuple[Vertex, Vertex]]:
    """Grid-vertex pairs joined by at least one cross-gadget communication edge."""
    out = communication_graph_2d(red.instance, assignment)
    pairs = set()
    for p, nbrs in enumerate(out):
        for q in nbrs:
            u, w = red.gadget_of[p], red.gadget_of[q]
            if u != w:
                pairs.add((min(u, w), max(u, w)))
    return sorted(pairs)
