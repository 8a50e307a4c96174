"""Indegree divisors of a multigraph and their multiplicities.

A divisor D is an indegree divisor when some orientation has indegree
divisor D.  Three equivalent tests are implemented:

* enumerate: sweep all 2^e orientations;
* flow: a unit-capacity bipartite flow from edges to endpoints, with the
  divisor as vertex capacities (feasible iff max flow = e and |D| = e);
* inequalities: |D| = e, and D(S) >= #edges inside S for every vertex
  subset S (checking vertex-induced subgraphs suffices, since adding edges
  inside the same vertex set only tightens the requirement).

The multiplicity of D is the number of orientations with indegree D,
equivalently the coefficient of the monomial of D in the generating
polynomial built as the product over edges [u, v] of (x_u + x_v); a loop
contributes (x_u + x_u) = 2 x_u.  Coefficients are exact big integers.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Mapping, Optional

from .errors import CapExceededError, GraphConstructionError, StrataError
from .graphs import (
    DEFAULT_MAX_EDGES,
    Divisor,
    Multigraph,
    Orientation,
    Subgraph,
    all_orientations,
    degree_divisor,
    ensure_cap,
    indeg,
)

METHODS = ("enumerate", "flow", "inequalities")


class DivisorTag(Enum):
    NOT_INDEGREE = "not_indegree"
    IRREDUCIBLE = "irreducible"
    COMPLETELY_REDUCIBLE = "completely_reducible"
    REDUCIBLE_NOT_CR = "reducible_not_cr"


@dataclass(frozen=True)
class DivisorClass:
    """Classification of a divisor on a multigraph.

    irreducible means: the graph is connected and the divisor admits a
    strongly connected witness orientation.  completely_reducible means: a
    totally cyclic witness exists, equivalently the restriction to each
    connected component is irreducible, equivalently the divisor is an
    interior point of the graphical zonotope.  On a connected graph the two
    notions coincide, so the reported tag prefers COMPLETELY_REDUCIBLE and
    the finer booleans carry the full information.
    """

    tag: DivisorTag
    witness: Optional[Orientation]
    irreducible: bool
    completely_reducible: bool


@dataclass(frozen=True)
class IndegPolynomial:
    """Sparse generating polynomial of orientations by indegree.

    terms maps an exponent tuple (one entry per vertex) to a positive
    integer coefficient; every exponent tuple sums to the edge count and
    the coefficients sum to 2^e.
    """

    vertices: tuple[str, ...]
    n_edges: int
    terms: Mapping[tuple[int, ...], int]

    def __post_init__(self) -> None:
        for expo, coeff in self.terms.items():
            if len(expo) != len(self.vertices) or sum(expo) != self.n_edges:
                raise StrataError(f"exponent {expo} does not sum to {self.n_edges}")
            if coeff < 1:
                raise StrataError("coefficients must be positive")

    def coefficient(self, d: Divisor) -> int:
        if d.vertices != self.vertices:
            raise GraphConstructionError("divisor on a different vertex set")
        return self.terms.get(d.values, 0)

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def support(self) -> list[Divisor]:
        return [Divisor(self.vertices, expo) for expo in sorted(self.terms)]

    def to_json_obj(self) -> list[dict]:
        out = []
        for expo in sorted(self.terms):
            exponents = {v: e for v, e in zip(self.vertices, expo) if e != 0}
            out.append({"exponents": exponents, "coeff": str(self.terms[expo])})
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


@lru_cache(maxsize=512)
def _bpoly_terms(g: Multigraph) -> dict[tuple[int, ...], int]:
    n = g.n_vertices
    terms: dict[tuple[int, ...], int] = {(0,) * n: 1}
    for u, v in g.edges:
        nxt: dict[tuple[int, ...], int] = {}
        for expo, coeff in terms.items():
            for h in (u, v):
                bumped = expo[:h] + (expo[h] + 1,) + expo[h + 1:]
                nxt[bumped] = nxt.get(bumped, 0) + coeff
        terms = nxt
    return terms


def b_polynomial(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> IndegPolynomial:
    """Expanded product over edges [u, v] of (x_u + x_v), as a term map."""
    ensure_cap(g.n_edges, max_edges, "b_polynomial")
    return IndegPolynomial(g.vertices, g.n_edges, dict(_bpoly_terms(g)))


def enumerate_indegree(g: Multigraph, max_edges: int = DEFAULT_MAX_EDGES) -> list[Divisor]:
    """All indegree divisors of g in lexicographic order."""
    return b_polynomial(g, max_edges).support()


def multiplicity(g: Multigraph, d: Divisor) -> int:
    """Number of orientations of g with indegree divisor d (0 if none)."""
    if d.vertices != g.vertices:
        raise GraphConstructionError("divisor on a different vertex set")
    if any(x < 0 for x in d.values) or d.degree != g.n_edges:
        return 0
    return _bpoly_terms(g).get(d.values, 0)


# ---------------------------------------------------------------------------
# existence tests

def _degree_precheck(g: Multigraph, d: Divisor) -> bool:
    if d.vertices != g.vertices:
        raise GraphConstructionError("divisor on a different vertex set")
    if any(x < 0 for x in d.values):
        return False
    return d.degree == g.n_edges


@lru_cache(maxsize=512)
def _orientation_witness_table(g: Multigraph) -> dict[tuple[int, ...], tuple[bool, ...]]:
    """First witness flips (smallest flip bitmask) per indegree vector."""
    table: dict[tuple[int, ...], tuple[bool, ...]] = {}
    for o in all_orientations(g, max_edges=g.n_edges):
        key = indeg(o).values
        if key not in table:
            table[key] = o.flips
    return table


def _is_indegree_enumerate(g: Multigraph, d: Divisor, max_edges: int) -> Optional[Orientation]:
    ensure_cap(g.n_edges, max_edges, "is_indegree[enumerate]")
    if not _degree_precheck(g, d):
        return None
    flips = _orientation_witness_table(g).get(d.values)
    return None if flips is None else Orientation(g, flips)


def _max_flow_orientation(g: Multigraph, d: Divisor) -> Optional[Orientation]:
    """Unit flow from a source through one node per edge into the endpoints,
    then into a sink with capacity d(v) per vertex.  The divisor is an
    indegree divisor iff the max flow saturates every edge; the saturated
    endpoint of each edge is the head of a witness orientation."""
    e, n = g.n_edges, g.n_vertices
    # node ids: 0 = source, 1..e = edges, e+1..e+n = vertices, e+n+1 = sink
    source, sink = 0, e + n + 1
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {i: [] for i in range(e + n + 2)}

    def add(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            cap[(a, b)] = 0
            cap[(b, a)] = 0
            adj[a].append(b)
            adj[b].append(a)
        cap[(a, b)] += c

    for i, (u, v) in enumerate(g.edges):
        add(source, 1 + i, 1)
        add(1 + i, e + 1 + u, 1)
        if v != u:
            add(1 + i, e + 1 + v, 1)
    for vi in range(n):
        if d.values[vi] > 0:
            add(e + 1 + vi, sink, d.values[vi])

    flow: dict[tuple[int, int], int] = {k: 0 for k in cap}
    total = 0
    while True:
        # BFS augmenting path (Edmonds-Karp)
        prev: dict[int, int] = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            a = queue.popleft()
            for b in adj[a]:
                if b not in prev and cap[(a, b)] - flow[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            break
        # unit capacities on the source side: bottleneck is always >= 1
        path = [sink]
        while path[-1] != source:
            path.append(prev[path[-1]])
        path.reverse()
        bottleneck = min(
            cap[(a, b)] - flow[(a, b)] for a, b in zip(path, path[1:])
        )
        for a, b in zip(path, path[1:]):
            flow[(a, b)] += bottleneck
            flow[(b, a)] -= bottleneck
        total += bottleneck
    if total != e:
        return None
    flips = []
    for i, (u, v) in enumerate(g.edges):
        if v == u:
            flips.append(False)
        else:
            flips.append(flow[(1 + i, e + 1 + u)] > 0)
    return Orientation(g, tuple(flips))


def _is_indegree_flow(g: Multigraph, d: Divisor) -> Optional[Orientation]:
    if not _degree_precheck(g, d):
        return None
    return _max_flow_orientation(g, d)


def _subset_inequalities_ok(g: Multigraph, d: Divisor) -> bool:
    """D(S) >= #edges inside S for every vertex subset S (degree already
    checked).  Exponential in the vertex count."""
    n = g.n_vertices
    if n > 24:
        raise CapExceededError("inequality test limited to 24 vertices")
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    values = d.values
    for mask in range(1, 1 << n):
        total = sum(values[i] for i in range(n) if mask >> i & 1)
        inside = sum(1 for em in edge_masks if em & mask == em)
        if total < inside:
            return False
    return True


def _is_indegree_inequalities(g: Multigraph, d: Divisor) -> Optional[Orientation]:
    if not _degree_precheck(g, d) or not _subset_inequalities_ok(g, d):
        return None
    # Build a witness greedily: orient edges one at a time, keeping the
    # reduced instance feasible.  At least one head choice stays feasible.
    remaining = list(g.edges)
    values = list(d.values)
    flips: list[bool] = []
    for u, v in g.edges:
        remaining.pop(0)
        chosen = None
        for head, flip in ((v, False), (u, True)):
            values[head] -= 1
            sub = Multigraph(g.vertices, tuple(remaining))
            cand = Divisor(g.vertices, tuple(values))
            if all(x >= 0 for x in cand.values) and _subset_inequalities_ok(sub, cand):
                chosen = flip
                break
            values[head] += 1
        if chosen is None:
            raise AssertionError("greedy witness construction lost feasibility")
        flips.append(chosen)
    return Orientation(g, tuple(flips))


def is_indegree(
    g: Multigraph,
    d: Divisor,
    method: str = "flow",
    max_edges: int = DEFAULT_MAX_EDGES,
) -> Optional[Orientation]:
    """Witness orientation with indegree divisor d, or None.

    method is one of 'enumerate', 'flow', 'inequalities'; all agree on
    presence.  Divisors with a negative entry or wrong degree yield None
    without error.
    """
    if method == "enumerate":
        return _is_indegree_enumerate(g, d, max_edges)
    if method == "flow":
        return _is_indegree_flow(g, d)
    if method == "inequalities":
        return _is_indegree_inequalities(g, d)
    raise StrataError(f"unknown method {method!r}; expected one of {METHODS}")


# ---------------------------------------------------------------------------
# multiplicity oracles

def circuit_count_check(g: Multigraph, o: Orientation, max_edges: int = DEFAULT_MAX_EDGES) -> int:
    """1 + the number of nonempty edge subsets that are balanced in (g, o),
    i.e. every vertex has equal in- and out-degree inside the subset.

    Balanced subsets are exactly the unions of edge-disjoint directed
    circuits, and flipping one is the generic move between orientations
    with the same indegree, so this equals multiplicity(g, indeg(o)).
    Serves as an independent oracle for the coefficient route.
    """
    ensure_cap(g.n_edges, max_edges, "circuit_count_check")
    if o.graph != g:
        raise GraphConstructionError("orientation belongs to a different graph")
    n, e = g.n_vertices, g.n_edges
    arcs = [o.arc(i) for i in range(e)]
    # Gray-code sweep: consecutive subsets differ by one edge, so the
    # per-vertex balance and its nonzero count update in O(1).
    acc = [0] * n
    nonzero = 0
    count = 0
    prev_gray = 0
    for mask in range(1, 1 << e):
        gray = mask ^ (mask >> 1)
        changed = gray ^ prev_gray
        prev_gray = gray
        i = changed.bit_length() - 1
        t, h = arcs[i]
        if t != h:
            sign = 1 if gray >> i & 1 else -1
            for vertex, step in ((h, sign), (t, -sign)):
                before = acc[vertex]
                after = before + step
                acc[vertex] = after
                nonzero += (after != 0) - (before != 0)
        if nonzero == 0 and gray:
            count += 1
    return 1 + count


def relative_multiplicity(
    g1: Subgraph,
    d1: Divisor,
    g2: Subgraph,
    d2: Divisor,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> int:
    """Number of orientations of the edges of g1 not in g2 whose partial
    indegree divisor is d1 - d2.

    Requires g2 nested in g1 and d1, d2 indegree divisors of their
    subgraphs.  Restricting to the difference edge set, this is the
    multiplicity of d1 - d2 on the difference multigraph.
    """
    if g1.parent != g2.parent or not g1.contains(g2):
        raise StrataError("subgraphs are not nested (need g2 inside g1)")
    sub1, sub2 = g1.as_multigraph(), g2.as_multigraph()
    if is_indegree(sub1, d1) is None:
        raise StrataError("d1 is not an indegree divisor of g1")
    if is_indegree(sub2, d2) is None:
        raise StrataError("d2 is not an indegree divisor of g2")
    diff_edges = tuple(g1.parent.edges[i] for i in sorted(g1.edge_set - g2.edge_set))
    ensure_cap(len(diff_edges), max_edges, "relative_multiplicity")
    diff = Multigraph(g1.parent.vertices, diff_edges)
    return multiplicity(diff, d1 - d2)


# ---------------------------------------------------------------------------
# classification

def strongly_connected(o: Orientation) -> bool:
    """Every ordered vertex pair is joined by a directed path."""
    g = o.graph
    n = g.n_vertices
    if n <= 1:
        return True
    fwd: dict[int, set[int]] = {i: set() for i in range(n)}
    bwd: dict[int, set[int]] = {i: set() for i in range(n)}
    for t, h in o.arcs():
        fwd[t].add(h)
        bwd[h].add(t)

    def reach(adj: dict[int, set[int]]) -> set[int]:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    return len(reach(fwd)) == n and len(reach(bwd)) == n


def totally_cyclic(o: Orientation) -> bool:
    """Every edge lies on a directed cycle; equivalently the restriction to
    each connected component is strongly connected.  Loops always lie on
    their own one-edge cycle."""
    g = o.graph
    for comp in g.connected_components():
        comp_edges = [i for i in range(g.n_edges) if g.edges[i][0] in comp]
        verts = sorted(comp)
        pos = {v: i for i, v in enumerate(verts)}
        sub = Multigraph(
            tuple(g.vertices[v] for v in verts),
            tuple((pos[g.edges[i][0]], pos[g.edges[i][1]]) for i in comp_edges),
        )
        restricted = Orientation(sub, tuple(o.flips[i] for i in comp_edges))
        if not strongly_connected(restricted):
            return False
    return True


def _interior_by_inequalities(g: Multigraph, d: Divisor) -> bool:
    """Strict subset inequalities inside every connected component:
    D(S) > #edges inside S for each nonempty proper S of a component."""
    for comp in g.connected_components():
        comp_list = sorted(comp)
        k = len(comp_list)
        for mask in range(1, (1 << k) - 1):
            subset = frozenset(comp_list[i] for i in range(k) if mask >> i & 1)
            if d.total_on(subset) <= g.induced_edge_count(subset):
                return False
    return True


def classify(g: Multigraph, d: Divisor, debug: bool = False) -> DivisorClass:
    """Classify a divisor: not an indegree divisor, completely reducible
    (interior), or reducible but not completely reducible.

    The irreducible flag is True when the graph is connected and the
    divisor is interior; on a connected graph that is the same predicate
    as completely reducible, so the tag then reads COMPLETELY_REDUCIBLE
    and IRREDUCIBLE is retained in the enum for schema completeness only.
    With debug=True every equivalent characterisation is evaluated and
    cross-checked (exponential; intended for small graphs).
    """
    witness = is_indegree(g, d, method="flow")
    if witness is None:
        if debug:
            assert is_indegree(g, d, method="enumerate") is None
            assert is_indegree(g, d, method="inequalities") is None
        return DivisorClass(DivisorTag.NOT_INDEGREE, None, False, False)
    interior = _interior_by_inequalities(g, d)
    irreducible = interior and g.is_connected()
    if interior:
        # any witness of an interior divisor is totally cyclic
        if not totally_cyclic(witness):
            raise AssertionError("interior divisor produced a non-cyclic witness")
        tag = DivisorTag.COMPLETELY_REDUCIBLE
    else:
        tag = DivisorTag.REDUCIBLE_NOT_CR
    if debug:
        checks_ir = irreducible_condition_checks(g, d)
        checks_cr = cr_condition_checks(g, d)
        assert len(set(checks_ir.values())) == 1, checks_ir
        assert len(set(checks_cr.values())) == 1, checks_cr
        assert checks_ir["strongly_connected_witness"] == irreducible
        assert checks_cr["totally_cyclic_witness"] == interior
    return DivisorClass(tag, witness, irreducible, interior)


def tau(g: Multigraph, d: Divisor) -> Divisor:
    """Central-symmetry involution: the degree divisor minus d.  Maps the
    indegree divisors bijectively onto themselves (reverse every edge)."""
    return degree_divisor(g) - d


# ---------------------------------------------------------------------------
# equivalent-condition audits (used by classify(debug=True) and the tests)

def _restriction_achievable(g: Multigraph, d: Divisor, vertex_set: frozenset[int]) -> bool:
    """Is the restriction of d to the vertex set an indegree divisor of some
    subgraph on that vertex set?  Equivalently: is there a partial
    orientation of the induced edges whose indegree matches d there?"""
    induced = [
        (u, v) for (u, v) in g.edges if u in vertex_set and v in vertex_set
    ]
    target = {i: d.values[i] for i in vertex_set}
    if any(t < 0 for t in target.values()):
        return False
    need = sum(target.values())
    if need > len(induced):
        return False

    # depth-first over edges: orient toward u, toward v, or drop
    def rec(idx: int, remaining: dict[int, int], budget: int) -> bool:
        if budget == 0:
            return True
        if idx == len(induced):
            return False
        if len(induced) - idx < budget:
            return False
        u, v = induced[idx]
        for h in {u, v}:
            if remaining[h] > 0:
                remaining[h] -= 1
                if rec(idx + 1, remaining, budget - 1):
                    remaining[h] += 1
                    return True
                remaining[h] += 1
        return rec(idx + 1, remaining, budget)

    return rec(0, dict(target), need)


def irreducible_condition_checks(g: Multigraph, d: Divisor) -> dict[str, bool]:
    """The four equivalent irreducibility conditions, each computed
    independently.  Intended for indegree divisors on small graphs."""
    n = g.n_vertices
    # (a) no proper nonempty subgraph carries the restriction of d as an
    # indegree divisor
    # Proper subgraphs on the full vertex set have fewer edges than the
    # degree of d, so only proper vertex subsets can carry the restriction.
    cond_a = True
    for mask in range(1, (1 << n) - 1):
        vertex_set = frozenset(i for i in range(n) if mask >> i & 1)
        if _restriction_achievable(g, d, vertex_set):
            cond_a = False
            break
    # (b) strict inequality for every proper nonempty induced subgraph
    cond_b = True
    for mask in range(1, (1 << n) - 1):
        vertex_set = frozenset(i for i in range(n) if mask >> i & 1)
        if d.total_on(vertex_set) <= g.induced_edge_count(vertex_set):
            cond_b = False
            break
    # (c) a strongly connected witness orientation exists
    cond_c = False
    if _degree_precheck(g, d):
        for o in all_orientations(g):
            if indeg(o).values == d.values and strongly_connected(o):
                cond_c = True
                break
    # (d) connected graph and interior point (single flow witness route)
    witness = is_indegree(g, d, method="flow")
    cond_d = g.is_connected() and witness is not None and totally_cyclic(witness)
    return {
        "no_subgraph_restriction": cond_a,
        "strict_inequalities": cond_b,
        "strongly_connected_witness": cond_c,
        "connected_and_interior": cond_d,
    }


def cr_condition_checks(g: Multigraph, d: Divisor) -> dict[str, bool]:
    """The three equivalent complete-reducibility conditions, computed
    independently.  Intended for indegree divisors on small graphs."""
    # (a) restriction to every connected component is irreducible
    cond_a = True
    for comp in g.connected_components():
        comp_list = sorted(comp)
        pos = {v: i for i, v in enumerate(comp_list)}
        comp_edges = [
            (pos[u], pos[v]) for (u, v) in g.edges if u in comp and v in comp
        ]
        sub = Multigraph(tuple(g.vertices[v] for v in comp_list), tuple(comp_edges))
        restricted = Divisor(sub.vertices, tuple(d.values[v] for v in comp_list))
        checks = irreducible_condition_checks(sub, restricted)
        if not checks["strict_inequalities"] or is_indegree(sub, restricted) is None:
            cond_a = False
            break
    # (b) a totally cyclic witness orientation exists
    cond_b = False
    if _degree_precheck(g, d):
        for o in all_orientations(g):
            if indeg(o).values == d.values and totally_cyclic(o):
                cond_b = True
                break
    # (c) interior point of the graphical zonotope, via strict inequalities
    cond_c = is_indegree(g, d, method="flow") is not None and _interior_by_inequalities(g, d)
    return {
        "components_irreducible": cond_a,
        "totally_cyclic_witness": cond_b,
        "interior_point": cond_c,
    }
