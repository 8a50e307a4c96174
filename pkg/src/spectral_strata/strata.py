"""Stratification combinatorics for isospectral varieties of matrix
polynomials with a nodal spectral curve.

A curve shape carries the dual graph of the curve (vertices are
irreducible components, edges are nodes) together with the degree m and
matrix size n.  Strata are labelled by a generating subgraph of the dual
graph and an indegree divisor on it; the stratum dimension is
m*n*(n-1)/2 - #nodes + #edges(subgraph).  The closure of one stratum
meets another exactly when the label subgraphs are nested and the
relative multiplicity of the divisors is positive, and that multiplicity
counts the local branches.  Around a stratum of codimension p the variety
is a product of p nodes and a disk, so its neighbourhood carries exactly
3^p local strata.
"""

from __future__ import annotations

import io
import csv as _csv
import json
from dataclasses import dataclass
from math import factorial
from typing import Mapping

from .errors import StrataError
from .graphs import (
    DEFAULT_MAX_EDGES,
    Divisor,
    Multigraph,
    Subgraph,
    ensure_cap,
    generating_subgraphs,
)
from .indegree import (
    DivisorClass,
    DivisorTag,
    classify,
    enumerate_indegree,
    is_indegree,
    multiplicity,
    relative_multiplicity,
    totally_cyclic,
)


@dataclass(frozen=True)
class CurveShape:
    """Dual graph of a nodal curve plus the matrix-polynomial degree m and
    size n.  Purely combinatorial: no geometric existence check."""

    dual_graph: Multigraph
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise StrataError("curve shape requires m >= 1 and n >= 1")

    @property
    def top_dimension(self) -> int:
        return self.m * self.n * (self.n - 1) // 2


@dataclass(frozen=True)
class StratumLabel:
    """Label (generating subgraph, divisor).  Cheap shape checks happen at
    construction; validity of the divisor as an indegree divisor is
    checked by the operations that require it."""

    subgraph: Subgraph
    divisor: Divisor

    def __post_init__(self) -> None:
        if self.divisor.vertices != self.subgraph.parent.vertices:
            raise StrataError("divisor is not indexed by the parent vertex list")
        if self.divisor.degree != self.subgraph.n_edges:
            raise StrataError(
                "divisor degree must equal the subgraph edge count "
                f"({self.divisor.degree} != {self.subgraph.n_edges})"
            )

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.subgraph.bitmask, self.divisor.values)


@dataclass(frozen=True)
class LocalModel:
    """Local census around a stratum: p node factors, a q-dimensional
    disk, and the multiplicity of every stratum meeting the neighbourhood.
    The census totals 3^p and assigns 1 to the stratum itself."""

    p: int
    q: int
    census: Mapping[StratumLabel, int]


@dataclass(frozen=True)
class StrataPoset:
    """All stratum labels of a graph with the closure order.

    cover_relations holds index pairs (lower, upper) into elements; covers
    differ by exactly one oriented edge.
    """

    elements: tuple[StratumLabel, ...]
    cover_relations: tuple[tuple[int, int], ...]

    def index_of(self, s: StratumLabel) -> int:
        try:
            return self.elements.index(s)
        except ValueError:
            raise StrataError("stratum label is not an element of the poset") from None

    def cover_labels(self) -> list[tuple[StratumLabel, StratumLabel]]:
        return [(self.elements[a], self.elements[b]) for a, b in self.cover_relations]


def _validate_stratum(c: CurveShape, s: StratumLabel) -> None:
    if s.subgraph.parent != c.dual_graph:
        raise StrataError("stratum does not belong to this curve shape")
    if is_indegree(s.subgraph.as_multigraph(), s.divisor) is None:
        raise StrataError("stratum divisor is not an indegree divisor of its subgraph")


def enumerate_strata(c: CurveShape, max_edges: int = DEFAULT_MAX_EDGES) -> list[StratumLabel]:
    """All non-empty strata, ordered by subgraph bitmask then divisor."""
    out: list[StratumLabel] = []
    for sub in generating_subgraphs(c.dual_graph, max_edges):
        for d in enumerate_indegree(sub.as_multigraph(), max_edges):
            out.append(StratumLabel(sub, d))
    return out


def stratum_dimension(c: CurveShape, s: StratumLabel) -> int:
    """m n (n-1)/2 minus the number of removed edges of the dual graph."""
    _validate_stratum(c, s)
    dim = c.top_dimension - c.dual_graph.n_edges + s.subgraph.n_edges
    if dim < 0:
        raise StrataError(
            f"shape admits no such stratum: dimension {dim} is negative "
            "(more nodes than the degree bound permits)"
        )
    return dim


def adjacency_multiplicity(c: CurveShape, s1: StratumLabel, s2: StratumLabel) -> int:
    """Multiplicity of s1 along s2: the number of local branches of the
    closure of s1 at points of s2.  Zero iff s2 is not in the closure of
    s1; greater than one means the closure is singular along s2."""
    _validate_stratum(c, s1)
    _validate_stratum(c, s2)
    if not s1.subgraph.contains(s2.subgraph):
        return 0
    diff = s1.divisor - s2.divisor
    if any(x < 0 for x in diff.values):
        return 0
    return relative_multiplicity(s1.subgraph, s1.divisor, s2.subgraph, s2.divisor)


def local_model(c: CurveShape, s2: StratumLabel, max_edges: int = DEFAULT_MAX_EDGES) -> LocalModel:
    """Census of the 3^p local strata in a neighbourhood of s2, keyed by the
    global strata they belong to and ordered by (subgraph bitmask, divisor)."""
    from .indegree import _bpoly_terms

    _validate_stratum(c, s2)
    g = c.dual_graph
    p = g.n_edges - s2.subgraph.n_edges
    q = c.top_dimension - g.n_edges + s2.subgraph.n_edges
    if q < 0:
        raise StrataError(
            f"shape admits no such stratum: dimension {q} is negative "
            "(more nodes than the degree bound permits)"
        )
    base = s2.subgraph.edge_set
    rest = sorted(set(range(g.n_edges)) - base)
    ensure_cap(len(rest), max_edges, "local_model")
    vertices = g.vertices
    base_values = s2.divisor.values
    census: dict[StratumLabel, int] = {}
    # ascending masks over the rest bits give ascending full bitmasks, so
    # the census comes out in canonical order without re-sorting
    for mask in range(1 << len(rest)):
        extra = frozenset(rest[i] for i in range(len(rest)) if mask >> i & 1)
        sub1 = Subgraph(g, base | extra)
        diff = Multigraph(vertices, tuple(g.edges[i] for i in sorted(extra)))
        for delta in sorted(terms := _bpoly_terms(diff)):
            shifted = tuple(a + b for a, b in zip(base_values, delta))
            census[StratumLabel(sub1, Divisor(vertices, shifted))] = terms[delta]
    total = sum(census.values())
    if total != 3 ** p:
        raise AssertionError(f"local census sums to {total}, expected 3^{p}")
    return LocalModel(p, q, census)


def irreducible_components(c: CurveShape, max_edges: int = DEFAULT_MAX_EDGES) -> list[StratumLabel]:
    """Labels of the irreducible components of the isospectral variety:
    the top strata, one per indegree divisor of the full dual graph."""
    g = c.dual_graph
    full = Subgraph(g, frozenset(range(g.n_edges)))
    return [StratumLabel(full, d) for d in enumerate_indegree(g, max_edges)]


def hasse_diagram(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> StrataPoset:
    """Poset of pairs (generating subgraph, indegree divisor) on a loopless
    graph, with covers adding one oriented edge."""
    if any(u == v for u, v in g.edges):
        raise StrataError("hasse_diagram requires a loopless graph")
    elements = [
        StratumLabel(sub, d)
        for sub in generating_subgraphs(g, max_edges)
        for d in enumerate_indegree(sub.as_multigraph(), max_edges)
    ]
    index = {s.key(): i for i, s in enumerate(elements)}
    covers: list[tuple[int, int]] = []
    for i, s in enumerate(elements):
        present = s.subgraph.edge_set
        for e in range(g.n_edges):
            if e in present:
                continue
            u, v = g.edges[e]
            upper_sub = present | {e}
            for head in sorted({u, v}):
                bumped = list(s.divisor.values)
                bumped[head] += 1
                j = index[(s.subgraph.bitmask | (1 << e), tuple(bumped))]
                covers.append((i, j))
    covers.sort()
    return StrataPoset(tuple(elements), tuple(covers))


def path_count_multiplicity(p: StrataPoset, s1: StratumLabel, s2: StratumLabel) -> int:
    """Relative multiplicity recovered from the Hasse diagram: the number
    of directed cover paths from s2 up to s1, divided by the factorial of
    the edge-count difference.  The division is exact."""
    i1, i2 = p.index_of(s1), p.index_of(s2)
    if i1 == i2:
        return 1
    up: dict[int, list[int]] = {}
    for a, b in p.cover_relations:
        up.setdefault(a, []).append(b)
    counts = {i2: 1}
    order = sorted(range(len(p.elements)), key=lambda i: p.elements[i].subgraph.n_edges)
    for i in order:
        if i not in counts:
            continue
        for j in up.get(i, ()):
            counts[j] = counts.get(j, 0) + counts[i]
    paths = counts.get(i1, 0)
    k = s1.subgraph.n_edges - s2.subgraph.n_edges
    if k < 0:
        return 0
    quotient, remainder = divmod(paths, factorial(k))
    if remainder:
        raise AssertionError("path count is not divisible by the factorial")
    return quotient


def cr_strata(c: CurveShape, max_edges: int = DEFAULT_MAX_EDGES) -> list[StratumLabel]:
    """Strata whose divisor is completely reducible.  This single index
    set simultaneously labels the completely reducible locus of the
    isospectral variety and the canonical compactified-Jacobian
    stratification; both filters are evaluated and must agree."""
    via_witness: list[StratumLabel] = []
    via_classify: list[StratumLabel] = []
    for s in enumerate_strata(c, max_edges):
        sub = s.subgraph.as_multigraph()
        witness = is_indegree(sub, s.divisor)
        if witness is not None and totally_cyclic(witness):
            via_witness.append(s)
        if classify(sub, s.divisor).tag is DivisorTag.COMPLETELY_REDUCIBLE:
            via_classify.append(s)
    if via_witness != via_classify:
        raise AssertionError("completely reducible index sets disagree")
    return via_witness


def stratum_class(c: CurveShape, s: StratumLabel) -> DivisorClass:
    """Divisor classification of the stratum label."""
    return classify(s.subgraph.as_multigraph(), s.divisor)


# ---------------------------------------------------------------------------
# reports

def stratum_rows(c: CurveShape, max_edges: int = DEFAULT_MAX_EDGES) -> list[dict]:
    """Table rows for every stratum: id, edge bitmask, divisor, dimension,
    class, multiplicity (of the divisor on its subgraph)."""
    rows = []
    for i, s in enumerate(enumerate_strata(c, max_edges)):
        sub = s.subgraph.as_multigraph()
        rows.append(
            {
                "id": i,
                "edge_bitmask": s.subgraph.bitmask,
                "subgraph_edges": list(s.subgraph.edge_list()),
                "divisor": s.divisor.to_mapping(),
                "dimension": stratum_dimension(c, s),
                "class": stratum_class(c, s).tag.value,
                "multiplicity": multiplicity(sub, s.divisor),
            }
        )
    return rows


def strata_csv(c: CurveShape, max_edges: int = DEFAULT_MAX_EDGES) -> str:
    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "edge_bitmask", "divisor", "dimension", "class", "multiplicity"])
    for row in stratum_rows(c, max_edges):
        writer.writerow(
            [
                row["id"],
                row["edge_bitmask"],
                json.dumps(row["divisor"]),
                row["dimension"],
                row["class"],
                row["multiplicity"],
            ]
        )
    return buf.getvalue()


def stratum_report_json_obj(c: CurveShape, s: StratumLabel, max_edges: int = DEFAULT_MAX_EDGES) -> dict:
    """Full JSON report for one stratum, including its adjacency rows
    (multiplicity along every stratum in its closure)."""
    _validate_stratum(c, s)
    adjacency = []
    for other in enumerate_strata(c, max_edges):
        if other == s:
            continue
        mult = adjacency_multiplicity(c, s, other)
        if mult > 0:
            adjacency.append(
                {
                    "subgraph_edges": list(other.subgraph.edge_list()),
                    "divisor": other.divisor.to_mapping(),
                    "multiplicity": mult,
                }
            )
    return {
        "subgraph_edges": list(s.subgraph.edge_list()),
        "divisor": s.divisor.to_mapping(),
        "dimension": stratum_dimension(c, s),
        "class": stratum_class(c, s).tag.value,
        "adjacency": adjacency,
    }


def hasse_to_dot(p: StrataPoset, name: str = "hasse") -> str:
    """DOT text of the Hasse diagram; nodes are labelled 'bitmask|divisor'."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, s in enumerate(p.elements):
        label = f"{s.subgraph.bitmask}|{','.join(map(str, s.divisor.values))}"
        lines.append(f'  n{i} [label="{label}"];')
    for a, b in p.cover_relations:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
