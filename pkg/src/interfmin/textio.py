"""Line-oriented text formats for instances, assignments, and grid graphs.

Point file: one point per line, `#` starts a comment.  1D points are a single
rational token (`a` or `a/b`), 2D points are two tokens.  Assignment file:
header `model asym2d|sinktree1d`, an optional `sink <index>` line, then one
`<from-index> <to-index>` line per edge.  Indices are 0-based positions in the
sorted coordinate order (1D) or file order (2D).  Grid-graph file: one `x y`
integer pair per line; edges are implicit between L1-distance-1 pairs.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .model import (
    ASYM2D,
    SINKTREE1D,
    Instance,
    Instance1D,
    Instance2D,
    ReceiverAssignment,
)


def _content_lines(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def format_rational(x: Fraction) -> str:
    return str(x)  # Fraction renders as `a` or `a/b`


def parse_points(text: str) -> Instance:
    """Parse a point file; the token count per line decides 1D vs 2D."""
    rows = _content_lines(text)
    if not rows:
        raise InputError("point file contains no points")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("point file mixes 1D and 2D lines")
    if width == 1:
        return Instance1D.from_values(r[0] for r in rows)
    if width == 2:
        return Instance2D.from_values(rows)
    raise InputError(f"expected 1 or 2 tokens per point, got {width}")


def format_points(instance: Instance) -> str:
    if isinstance(instance, Instance1D):
        body = "\n".join(format_rational(x) for x in instance.points)
    else:
        body = "\n".join(f"{format_rational(x)} {format_rational(y)}" for x, y in instance.points)
    return body + "\n"


def parse_assignment(text: str) -> ReceiverAssignment:
    rows = _content_lines(text)
    if not rows:
        raise InputError("assignment file is empty")
    if rows[0][0] != "model" or len(rows[0]) != 2:
        raise InputError("assignment file must start with `model <tag>`")
    model = rows[0][1]
    if model not in (ASYM2D, SINKTREE1D):
        raise InputError(f"unknown model tag: {model!r}")
    sink = None
    body = rows[1:]
    if body and body[0][0] == "sink":
        if len(body[0]) != 2:
            raise InputError("malformed sink line")
        sink = _parse_index(body[0][1])
        body = body[1:]
    receiver: dict[int, int] = {}
    for row in body:
        if len(row) != 2:
            raise InputError(f"malformed edge line: {' '.join(row)!r}")
        p, q = _parse_index(row[0]), _parse_index(row[1])
        if p in receiver:
            raise InputError(f"point {p} has two receivers")
        receiver[p] = q
    return ReceiverAssignment(model=model, receiver=receiver, sink=sink)


def _parse_index(tok: str) -> int:
    try:
        value = int(tok)
    except ValueError as exc:
        raise InputError(f"not an index: {tok!r}") from exc
    if value < 0:
        raise InputError(f"negative index: {value}")
    return value


def format_assignment(assignment: ReceiverAssignment) -> str:
    """Canonical form: header, sink line, then edges sorted by source index."""
    lines = [f"model {assignment.model}"]
    if assignment.sink is not None:
        lines.append(f"sink {assignment.sink}")
    for p in sorted(assignment.receiver):
        lines.append(f"{p} {assignment.receiver[p]}")
    return "\n".join(lines) + "\n"


def parse_grid(text: str) -> list[tuple[int, int]]:
    rows = _content_lines(text)
    if not rows:
        raise InputError("grid file contains no vertices")
    vertices = []
    for row in rows:
        if len(row) != 2:
            raise InputError("grid vertices are `x y` integer pairs")
        try:
            vertices.append((int(row[0]), int(row[1])))
        except ValueError as exc:
            raise InputError(f"not an integer pair: {' '.join(row)!r}") from exc
    if len(set(vertices)) != len(vertices):
        raise InputError("duplicate grid vertex")
    return vertices


def format_graph_dot(out_neighbors: list[list[int]], name: str = "communication") -> str:
    """Export a directed graph in DOT format (for figures)."""
    lines = [f"digraph {name} {{"]
    for p, nbrs in enumerate(out_neighbors):
        for q in nbrs:
            lines.append(f"  {p} -> {q};")
    lines.append("}")
    return "\n".join(lines) + "\n"
