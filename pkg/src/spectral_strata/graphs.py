"""Undirected multigraphs with loops, divisors on their vertices, and
(partial) edge orientations.

Vertices are opaque string identifiers with a fixed order.  Edges are
unordered endpoint pairs, stored as index pairs (u, v) with u <= v; the
position of a pair in the edge list is its stable index.  Parallel edges
and loops are allowed and distinguished by index.

A loop has two formal orientations.  Both have head = tail, so both
contribute exactly 1 to the indegree of their vertex, but they are counted
as distinct orientations: a graph with e edges always has 2^e orientations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import CapExceededError, GraphConstructionError

#: Largest edge count accepted by exhaustive enumerations (2^20 cases).
DEFAULT_MAX_EDGES = 20


def ensure_cap(n_edges: int, max_edges: int, operation: str) -> None:
    if n_edges > max_edges:
        raise CapExceededError(
            f"{operation}: {n_edges} edges exceed the enumeration cap {max_edges}"
        )


@dataclass(frozen=True)
class Multigraph:
    """Immutable undirected multigraph, loops allowed.

    vertices: ordered unique identifiers.
    edges: ordered endpoint pairs as vertex indices, normalised u <= v.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphConstructionError("duplicate vertex identifier")
        n = len(self.vertices)
        for u, v in self.edges:
            if not (0 <= u <= v < n):
                raise GraphConstructionError(
                    f"edge ({u}, {v}) references an undeclared vertex"
                )

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, vertex_id: str) -> int:
        try:
            return self.vertices.index(vertex_id)
        except ValueError:
            raise GraphConstructionError(f"unknown vertex {vertex_id!r}") from None

    def is_loop(self, edge_index: int) -> bool:
        u, v = self.edges[edge_index]
        return u == v

    def endpoint_ids(self, edge_index: int) -> tuple[str, str]:
        u, v = self.edges[edge_index]
        return self.vertices[u], self.vertices[v]

    def degree(self, vertex: int) -> int:
        """Number of edge-endpoint incidences at the vertex; a loop counts 2."""
        return sum((u == vertex) + (v == vertex) for u, v in self.edges)

    def induced_edge_count(self, vertex_set: frozenset[int]) -> int:
        """Edges with both endpoints inside vertex_set (loops included)."""
        return sum(1 for u, v in self.edges if u in vertex_set and v in vertex_set)

    def connected_components(self) -> tuple[frozenset[int], ...]:
        """Vertex sets of connected components, each sorted by smallest member."""
        n = len(self.vertices)
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, set[int]] = {}
        for x in range(n):
            groups.setdefault(find(x), set()).add(x)
        comps = [frozenset(g) for g in groups.values()]
        comps.sort(key=min)
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1


@dataclass(frozen=True)
class Subgraph:
    """Generating subgraph: full vertex set of the parent, a subset of edges."""

    parent: Multigraph
    edge_set: frozenset[int]

    def __post_init__(self) -> None:
        if not all(0 <= i < self.parent.n_edges for i in self.edge_set):
            raise GraphConstructionError("edge_set contains an unknown edge index")

    @property
    def bitmask(self) -> int:
        return sum(1 << i for i in self.edge_set)

    @property
    def n_edges(self) -> int:
        return len(self.edge_set)

    def edge_list(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge_set))

    def contains(self, other: "Subgraph") -> bool:
        return self.parent == other.parent and other.edge_set <= self.edge_set

    def as_multigraph(self) -> Multigraph:
        """Materialise the subgraph as a standalone multigraph.

        Edge indices are renumbered 0..k-1 following parent order.
        """
        edges = tuple(self.parent.edges[i] for i in self.edge_list())
        return Multigraph(self.parent.vertices, edges)


@dataclass(frozen=True)
class Divisor:
    """Integer-valued function on an ordered vertex set.

    Divisors attached to a graph and to any of its generating subgraphs share
    the same vertex tuple, so they can be added and compared freely.
    Negative values are permitted at this layer.
    """

    vertices: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) != len(self.values):
            raise GraphConstructionError("divisor length does not match vertex list")

    @property
    def degree(self) -> int:
        return sum(self.values)

    def value(self, vertex_id: str) -> int:
        return self.values[self.vertices.index(vertex_id)]

    def total_on(self, vertex_set: Iterable[int]) -> int:
        return sum(self.values[i] for i in vertex_set)

    def pointwise_le(self, other: "Divisor") -> bool:
        self._check_compatible(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def _check_compatible(self, other: "Divisor") -> None:
        if self.vertices != other.vertices:
            raise GraphConstructionError("divisors on different vertex sets")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check_compatible(other)
        return Divisor(self.vertices, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._check_compatible(other)
        return Divisor(self.vertices, tuple(a - b for a, b in zip(self.values, other.values)))

    @staticmethod
    def zero(vertices: tuple[str, ...]) -> "Divisor":
        return Divisor(vertices, (0,) * len(vertices))

    @staticmethod
    def from_mapping(vertices: tuple[str, ...], values: Mapping[str, int]) -> "Divisor":
        unknown = set(values) - set(vertices)
        if unknown:
            raise GraphConstructionError(f"unknown vertices in divisor: {sorted(unknown)}")
        return Divisor(vertices, tuple(int(values.get(v, 0)) for v in vertices))

    def to_mapping(self) -> dict[str, int]:
        return dict(zip(self.vertices, self.values))


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge of a graph.

    flips[i] = False orients edge i from its stored pair (u, v) as u -> v,
    flips[i] = True as v -> u.  For a loop both choices give head = tail;
    they are still distinct formal orientations.
    """

    graph: Multigraph
    flips: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.flips) != self.graph.n_edges:
            raise GraphConstructionError("orientation does not cover every edge")

    def arc(self, edge_index: int) -> tuple[int, int]:
        """(tail, head) vertex indices of the directed edge."""
        u, v = self.graph.edges[edge_index]
        return (v, u) if self.flips[edge_index] else (u, v)

    def head(self, edge_index: int) -> int:
        return self.arc(edge_index)[1]

    def arcs(self) -> Iterator[tuple[int, int]]:
        for i in range(self.graph.n_edges):
            yield self.arc(i)

    def reversed(self) -> "Orientation":
        return Orientation(self.graph, tuple(not f for f in self.flips))


@dataclass(frozen=True)
class PartialOrientation:
    """A direction for a designated subset of edges; the rest stay unoriented.

    directions maps edge index -> flip flag with the same convention as
    Orientation, stored as a sorted tuple of pairs.
    """

    graph: Multigraph
    directions: tuple[tuple[int, bool], ...]

    def __post_init__(self) -> None:
        idx = [i for i, _ in self.directions]
        if idx != sorted(set(idx)):
            raise GraphConstructionError("duplicate or unsorted oriented edges")
        if not all(0 <= i < self.graph.n_edges for i in idx):
            raise GraphConstructionError("oriented edge index out of range")

    @staticmethod
    def from_mapping(graph: Multigraph, directions: Mapping[int, bool]) -> "PartialOrientation":
        return PartialOrientation(graph, tuple(sorted((i, bool(f)) for i, f in directions.items())))

    @property
    def oriented_edges(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.directions)

    def arc(self, edge_index: int) -> tuple[int, int]:
        for i, f in self.directions:
            if i == edge_index:
                u, v = self.graph.edges[edge_index]
                return (v, u) if f else (u, v)
        raise GraphConstructionError(f"edge {edge_index} is not oriented")

    def arcs(self) -> Iterator[tuple[int, int]]:
        for i, f in self.directions:
            u, v = self.graph.edges[i]
            yield (v, u) if f else (u, v)


def build_graph(vertex_ids: Sequence[str], edge_pairs: Sequence[tuple[str, str]]) -> Multigraph:
    """Build a multigraph from identifier data.  Stable and idempotent:
    identical input yields an equal graph."""
    vertices = tuple(vertex_ids)
    if len(set(vertices)) != len(vertices):
        raise GraphConstructionError("duplicate vertex identifier")
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for a, b in edge_pairs:
        if a not in index:
            raise GraphConstructionError(f"unknown endpoint {a!r}")
        if b not in index:
            raise GraphConstructionError(f"unknown endpoint {b!r}")
        u, v = index[a], index[b]
        edges.append((min(u, v), max(u, v)))
    return Multigraph(vertices, tuple(edges))


def indeg(o: Orientation) -> Divisor:
    """Indegree divisor of a full orientation: value at v counts directed
    edges with head v.  Its degree is the number of edges."""
    counts = [0] * o.graph.n_vertices
    for _, h in o.arcs():
        counts[h] += 1
    return Divisor(o.graph.vertices, tuple(counts))


def indeg_partial(o: PartialOrientation) -> Divisor:
    """Indegree divisor of a partial orientation; counts heads among the
    oriented edges only, so its degree is the number of oriented edges."""
    counts = [0] * o.graph.n_vertices
    for _, h in o.arcs():
        counts[h] += 1
    return Divisor(o.graph.vertices, tuple(counts))


def degree_divisor(g: Multigraph) -> Divisor:
    """Divisor of vertex degrees (a loop contributes 2 to its vertex)."""
    counts = [0] * g.n_vertices
    for u, v in g.edges:
        counts[u] += 1
        counts[v] += 1
    return Divisor(g.vertices, tuple(counts))


def generating_subgraphs(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> list[Subgraph]:
    """All 2^e generating subgraphs, ordered by edge-index bitmask."""
    ensure_cap(g.n_edges, max_edges, "generating_subgraphs")
    out = []
    for mask in range(1 << g.n_edges):
        out.append(Subgraph(g, frozenset(i for i in range(g.n_edges) if mask >> i & 1)))
    return out


def all_orientations(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> Iterator[Orientation]:
    """All 2^e orientations in flip-bitmask order (loops count twice)."""
    ensure_cap(g.n_edges, max_edges, "all_orientations")
    e = g.n_edges
    for mask in range(1 << e):
        yield Orientation(g, tuple(bool(mask >> i & 1) for i in range(e)))


# ---------------------------------------------------------------------------
# serialisation

def graph_to_json_obj(g: Multigraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [[g.vertices[u], g.vertices[v]] for u, v in g.edges],
    }


def graph_from_json_obj(obj: Mapping) -> Multigraph:
    try:
        vertices = obj["vertices"]
        edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphConstructionError(f"graph JSON must have 'vertices' and 'edges': {exc}")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphConstructionError("'vertices' must be a list of strings")
    pairs = []
    for e in edges:
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise GraphConstructionError(f"edge entry {e!r} is not a pair")
        pairs.append((e[0], e[1]))
    return build_graph(vertices, pairs)


def graph_from_json(text: str) -> Multigraph:
    return graph_from_json_obj(json.loads(text))


def graph_to_json(g: Multigraph) -> str:
    return json.dumps(graph_to_json_obj(g))


def divisor_to_json_obj(d: Divisor) -> dict[str, int]:
    return d.to_mapping()


def divisor_from_json_obj(g: Multigraph, obj: Mapping[str, int]) -> Divisor:
    if not all(isinstance(v, int) for v in obj.values()):
        raise GraphConstructionError("divisor values must be integers")
    return Divisor.from_mapping(g.vertices, obj)


def to_dot(g: Multigraph, orientation: Optional[Orientation] = None, name: str = "G") -> str:
    """DOT text for the multigraph; with an orientation, arcs are directed."""
    lines = []
    if orientation is None:
        lines.append(f"graph {name} {{")
        for v in g.vertices:
            lines.append(f'  "{v}";')
        for u, v in g.edges:
            lines.append(f'  "{g.vertices[u]}" -- "{g.vertices[v]}";')
    else:
        if orientation.graph != g:
            raise GraphConstructionError("orientation belongs to a different graph")
        lines.append(f"digraph {name} {{")
        for v in g.vertices:
            lines.append(f'  "{v}";')
        for t, h in orientation.arcs():
            lines.append(f'  "{g.vertices[t]}" -> "{g.vertices[h]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
