"""Graphical zonotopes as lattice objects.

The zonotope of a multigraph is the Minkowski sum of its edges viewed as
segments in the space spanned by the vertices; its lattice points are
exactly the indegree divisors, its vertices are the indegree divisors of
orientations whose non-loop part is acyclic, and its interior points are
the completely reducible divisors.  Everything here is decided
combinatorially; no convex-hull machinery is involved.
"""

from __future__ import annotations

import io
import csv as _csv
from dataclasses import dataclass

from .errors import StrataError
from .graphs import (
    DEFAULT_MAX_EDGES,
    Divisor,
    Multigraph,
    all_orientations,
    build_graph,
    ensure_cap,
    indeg,
)
from .indegree import DivisorTag, classify, enumerate_indegree, multiplicity, _subset_inequalities_ok


@dataclass(frozen=True)
class GraphicalZonotope:
    """Lattice data of a graphical zonotope.

    lattice_points are all indegree divisors (lex order); vertex_points are
    the subset of polytope vertices.  All points lie on the hyperplane
    where the coordinates sum to the edge count.
    """

    graph: Multigraph
    lattice_points: tuple[Divisor, ...]
    vertex_points: tuple[Divisor, ...]

    @property
    def dimension_ambient(self) -> int:
        return self.graph.n_vertices


def lattice_points(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> list[Divisor]:
    """Lattice points of the zonotope, enumerated independently of the
    orientation sweep: integer points of the bounding box on the
    edge-count hyperplane, filtered by the subset inequalities, and then
    cross-checked against the indegree enumeration."""
    ensure_cap(g.n_edges, max_edges, "lattice_points")
    n, e = g.n_vertices, g.n_edges
    degs = [g.degree(i) for i in range(n)]
    points: list[Divisor] = []

    def extend(prefix: list[int], remaining: int) -> None:
        i = len(prefix)
        if i == n:
            if remaining == 0:
                d = Divisor(g.vertices, tuple(prefix))
                if _subset_inequalities_ok(g, d):
                    points.append(d)
            return
        tail_capacity = sum(degs[i + 1:])
        lo = max(0, remaining - tail_capacity)
        hi = min(degs[i], remaining)
        for x in range(lo, hi + 1):
            extend(prefix + [x], remaining - x)

    if n == 0:
        return [] if e else [Divisor((), ())]
    extend([], e)
    expected = enumerate_indegree(g, max_edges)
    if points != expected:
        raise AssertionError("zonotope lattice points disagree with indegree enumeration")
    return points


def zonotope_vertices(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> list[Divisor]:
    """Vertices of the zonotope: indegree divisors of orientations with no
    directed cycles apart from loops (acyclic orientations when the graph
    is loopless), in lex order."""
    ensure_cap(g.n_edges, max_edges, "zonotope_vertices")
    seen: set[tuple[int, ...]] = set()
    for o in all_orientations(g, max_edges):
        if _loopless_part_acyclic(o):
            seen.add(indeg(o).values)
    return [Divisor(g.vertices, v) for v in sorted(seen)]


def _loopless_part_acyclic(o) -> bool:
    g = o.graph
    adj: dict[int, list[int]] = {i: [] for i in range(g.n_vertices)}
    for i in range(g.n_edges):
        t, h = o.arc(i)
        if t != h:
            adj[t].append(h)
    colour = [0] * g.n_vertices

    def dfs(x: int) -> bool:
        colour[x] = 1
        for y in adj[x]:
            if colour[y] == 1:
                return False
            if colour[y] == 0 and not dfs(y):
                return False
        colour[x] = 2
        return True

    return all(dfs(x) for x in range(g.n_vertices) if colour[x] == 0)


def is_interior(g: Multigraph, d: Divisor) -> bool:
    """Interior (relative to the affine hull) lattice point test: true iff
    the divisor is completely reducible.  A one-point zonotope counts as
    interior."""
    return classify(g, d).tag is DivisorTag.COMPLETELY_REDUCIBLE


def permutohedron(n: int) -> GraphicalZonotope:
    """Zonotope of the complete graph on n vertices (1 <= n <= 6)."""
    if not 1 <= n <= 6:
        raise StrataError(f"permutohedron size {n} out of range 1..6")
    vertices = [f"v{i + 1}" for i in range(n)]
    pairs = [(vertices[i], vertices[j]) for i in range(n) for j in range(i + 1, n)]
    g = build_graph(vertices, pairs)
    return graphical_zonotope(g)


def graphical_zonotope(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> GraphicalZonotope:
    return GraphicalZonotope(
        g,
        tuple(lattice_points(g, max_edges)),
        tuple(zonotope_vertices(g, max_edges)),
    )


def halfspace_description(g: Multigraph) -> dict:
    """Redundancy-unreduced half-space data for documentation: one
    hyperplane per connected component (coordinates on the component sum
    to its edge count) and one inequality per nonempty proper subset of a
    component (sum over the subset >= edges inside it)."""
    hyperplanes = []
    facets = []
    for comp in g.connected_components():
        comp_list = sorted(comp)
        hyperplanes.append(
            {
                "vertices": [g.vertices[i] for i in comp_list],
                "sum": g.induced_edge_count(comp),
            }
        )
        k = len(comp_list)
        for mask in range(1, (1 << k) - 1):
            subset = frozenset(comp_list[i] for i in range(k) if mask >> i & 1)
            facets.append(
                {
                    "vertices": [g.vertices[i] for i in sorted(subset)],
                    "min_sum": g.induced_edge_count(subset),
                }
            )
    return {"hyperplanes": hyperplanes, "inequalities": facets}


def lattice_csv(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> str:
    """CSV table of lattice points: one coordinate column per vertex, then
    multiplicity, is_vertex, is_interior."""
    points = lattice_points(g, max_edges)
    verts = set(d.values for d in zonotope_vertices(g, max_edges))
    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(list(g.vertices) + ["multiplicity", "is_vertex", "is_interior"])
    for d in points:
        writer.writerow(
            list(d.values)
            + [
                multiplicity(g, d),
                str(d.values in verts).lower(),
                str(is_interior(g, d)).lower(),
            ]
        )
    return buf.getvalue()
