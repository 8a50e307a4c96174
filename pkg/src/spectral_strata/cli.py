"""Command-line front end.

Every subcommand is a thin adapter over the library: parse JSON input
(inline or from a file), call one library operation, print a deterministic
rendering.  Validation failures exit with status 2 and a machine-readable
error object on stderr.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .errors import StrataError
from .graphs import (
    DEFAULT_MAX_EDGES,
    Multigraph,
    Orientation,
    Subgraph,
    build_graph,
    divisor_from_json_obj,
    graph_from_json_obj,
    indeg,
    to_dot,
)
from . import indegree as _indegree
from . import matpoly as _matpoly
from . import strata as _strata
from . import zonotope as _zonotope

JSON_SEPARATORS = (", ", ": ")


def _dumps(obj) -> str:
    return json.dumps(obj, separators=JSON_SEPARATORS)


def read_json_input(source: str) -> dict:
    """Accept a file path or inline JSON (detected by a leading brace)."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        path = Path(source)
        if not path.exists():
            raise StrataError(f"input file {source!r} does not exist")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StrataError(f"invalid JSON input: {exc}") from None


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BrokenPipeError:
            sys.exit(1)
        except (StrataError, ValueError, OSError) as exc:
            payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
            click.echo(_dumps(payload), err=True)
            sys.exit(2)

    return wrapper


def _graph_from_any(obj) -> Multigraph:
    if isinstance(obj, dict) and "graph" in obj:
        obj = obj["graph"]
    return graph_from_json_obj(obj)


def _orientation_from_arcs(g: Multigraph, arcs) -> Orientation:
    if not isinstance(arcs, list) or len(arcs) != g.n_edges:
        raise StrataError("orientation must list one [tail, head] pair per edge")
    flips = []
    for i, arc in enumerate(arcs):
        if not (isinstance(arc, list) and len(arc) == 2):
            raise StrataError(f"orientation entry {arc!r} is not a pair")
        t, h = g.vertex_index(arc[0]), g.vertex_index(arc[1])
        u, v = g.edges[i]
        if {t, h} != {u, v}:
            raise StrataError(f"orientation entry {i} does not match edge {i}")
        flips.append(h == u and u != v)
    return Orientation(g, tuple(flips))


def _shape_from_options(lines: int | None, input_arg: str | None) -> _strata.CurveShape:
    if (lines is None) == (input_arg is None):
        raise StrataError("provide exactly one of --lines N or an input shape")
    if lines is not None:
        vertices = [f"v{i + 1}" for i in range(lines)]
        pairs = [
            (vertices[i], vertices[j])
            for i in range(lines)
            for j in range(i + 1, lines)
        ]
        return _strata.CurveShape(build_graph(vertices, pairs), 1, lines)
    obj = read_json_input(input_arg)
    if isinstance(obj, dict) and "shape" in obj:
        obj = obj["shape"]
    g = _graph_from_any(obj)
    try:
        return _strata.CurveShape(g, int(obj["m"]), int(obj["n"]))
    except KeyError as exc:
        raise StrataError(f"shape JSON must carry 'm' and 'n': missing {exc}") from None


def _shape_from_obj(obj) -> _strata.CurveShape:
    """Shape from an input object carrying either 'lines' or 'shape'."""
    if not isinstance(obj, dict):
        raise StrataError("input must be a JSON object")
    if "lines" in obj:
        return _shape_from_options(int(obj["lines"]), None)
    if "shape" in obj:
        sh = obj["shape"]
        g = _graph_from_any(sh)
        try:
            return _strata.CurveShape(g, int(sh["m"]), int(sh["n"]))
        except (KeyError, TypeError) as exc:
            raise StrataError(f"shape JSON must carry 'm' and 'n': {exc}") from None
    raise StrataError("input needs 'lines' or 'shape'")


def _stratum_from_obj(g: Multigraph, obj) -> _strata.StratumLabel:
    if not isinstance(obj, dict):
        raise StrataError("stratum must be an object")
    edges = obj.get("subgraph", obj.get("subgraph_edges"))
    if edges is None or "divisor" not in obj:
        raise StrataError("stratum JSON needs 'subgraph' (edge indices) and 'divisor'")
    sub = Subgraph(g, frozenset(int(e) for e in edges))
    return _strata.StratumLabel(sub, divisor_from_json_obj(g, obj["divisor"]))


def _stratum_obj(label: _strata.StratumLabel) -> dict:
    return _matpoly.classification_to_json_obj(label)


@click.group()
@click.option(
    "--max-edges",
    type=int,
    default=DEFAULT_MAX_EDGES,
    envvar="SPECTRAL_STRATA_MAX_EDGES",
    show_default=True,
    help="Edge cap for exhaustive enumerations (2^cap cases).",
)
@click.pass_context
def main(ctx: click.Context, max_edges: int) -> None:
    """Exact combinatorics of stratified isospectral varieties."""
    ctx.obj = max_edges


# ---------------------------------------------------------------------------
# graph

@main.group()
def graph() -> None:
    """Multigraph operations."""


@graph.command("indeg")
@click.argument("input_arg", metavar="INPUT")
@handle_errors
def graph_indeg(input_arg: str) -> None:
    """Indegree divisor of {"graph": ..., "orientation": [[tail, head], ...]}."""
    obj = read_json_input(input_arg)
    g = _graph_from_any(obj)
    o = _orientation_from_arcs(g, obj.get("orientation"))
    click.echo(_dumps(indeg(o).to_mapping()))


@graph.command("bpoly")
@click.argument("input_arg", metavar="INPUT")
@click.pass_obj
@handle_errors
def graph_bpoly(max_edges: int, input_arg: str) -> None:
    """Orientation generating polynomial of a graph JSON."""
    g = _graph_from_any(read_json_input(input_arg))
    click.echo(_dumps(_indegree.b_polynomial(g, max_edges).to_json_obj()))


@graph.command("classify")
@click.argument("input_arg", metavar="INPUT")
@handle_errors
def graph_classify(input_arg: str) -> None:
    """Classify {"graph": ..., "divisor": ...}."""
    obj = read_json_input(input_arg)
    g = _graph_from_any(obj)
    d = divisor_from_json_obj(g, obj.get("divisor", {}))
    cls = _indegree.classify(g, d)
    witness = None
    if cls.witness is not None:
        witness = [
            [g.vertices[t], g.vertices[h]] for t, h in cls.witness.arcs()
        ]
    click.echo(
        _dumps(
            {
                "tag": cls.tag.value,
                "irreducible": cls.irreducible,
                "completely_reducible": cls.completely_reducible,
                "witness": witness,
            }
        )
    )


# ---------------------------------------------------------------------------
# zonotope

def _zonotope_graph(complete: int | None, input_arg: str | None) -> Multigraph:
    if (complete is None) == (input_arg is None):
        raise StrataError("provide exactly one of --complete N or an input graph")
    if complete is not None:
        return _zonotope.permutohedron(complete).graph
    return _graph_from_any(read_json_input(input_arg))


@main.group()
def zonotope() -> None:
    """Graphical zonotope lattice data."""


@zonotope.command("points")
@click.argument("input_arg", metavar="[INPUT]", required=False)
@click.option("--complete", type=int, default=None, help="Use the complete graph K_n.")
@click.option("--count", is_flag=True, help="Print only the number of points.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.pass_obj
@handle_errors
def zonotope_points(max_edges: int, input_arg, complete, count, fmt) -> None:
    """Lattice points of the graphical zonotope."""
    g = _zonotope_graph(complete, input_arg)
    points = _zonotope.lattice_points(g, max_edges)
    if count:
        click.echo(str(len(points)))
        return
    if fmt == "csv":
        click.echo(_zonotope.lattice_csv(g, max_edges), nl=False)
        return
    click.echo(_dumps([d.to_mapping() for d in points]))


@zonotope.command("vertices")
@click.argument("input_arg", metavar="[INPUT]", required=False)
@click.option("--complete", type=int, default=None, help="Use the complete graph K_n.")
@click.option("--count", is_flag=True, help="Print only the number of vertices.")
@click.pass_obj
@handle_errors
def zonotope_vertices_cmd(max_edges: int, input_arg, complete, count) -> None:
    """Vertices of the graphical zonotope."""
    g = _zonotope_graph(complete, input_arg)
    verts = _zonotope.zonotope_vertices(g, max_edges)
    if count:
        click.echo(str(len(verts)))
        return
    click.echo(_dumps([d.to_mapping() for d in verts]))


# ---------------------------------------------------------------------------
# strata

@main.group()
def strata() -> None:
    """Stratification of the isospectral variety."""


@strata.command("enumerate")
@click.argument("input_arg", metavar="[INPUT]", required=False)
@click.option("--lines", type=int, default=None, help="n-lines shape (dual graph K_n, m=1).")
@click.option(
    "--format", "fmt", type=click.Choice(["json", "csv", "table"]), default="json"
)
@click.option("--table", "as_table", is_flag=True, help="Shorthand for --format table.")
@click.pass_obj
@handle_errors
def strata_enumerate(max_edges: int, input_arg, lines, fmt, as_table) -> None:
    """Enumerate all strata of a curve shape."""
    shape = _shape_from_options(lines, input_arg)
    if as_table:
        fmt = "table"
    if fmt == "csv":
        click.echo(_strata.strata_csv(shape, max_edges), nl=False)
        return
    rows = _strata.stratum_rows(shape, max_edges)
    if fmt == "table":
        header = ["id", "edge_bitmask", "divisor", "dimension", "class", "multiplicity"]
        body = [
            [
                str(r["id"]),
                str(r["edge_bitmask"]),
                json.dumps(r["divisor"], separators=(",", ":")),
                str(r["dimension"]),
                r["class"],
                str(r["multiplicity"]),
            ]
            for r in rows
        ]
        widths = [
            max(len(header[c]), *(len(b[c]) for b in body)) if body else len(header[c])
            for c in range(len(header))
        ]
        click.echo("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for b in body:
            click.echo("  ".join(x.ljust(w) for x, w in zip(b, widths)).rstrip())
        return
    click.echo(_dumps(rows))


@strata.command("adjacency")
@click.argument("input_arg", metavar="INPUT")
@click.pass_obj
@handle_errors
def strata_adjacency(max_edges: int, input_arg: str) -> None:
    """Multiplicity of stratum 'upper' along stratum 'lower'.

    INPUT: {"shape"|"lines": ..., "upper": stratum, "lower": stratum}.
    """
    obj = read_json_input(input_arg)
    shape = _shape_from_obj(obj)
    s1 = _stratum_from_obj(shape.dual_graph, obj.get("upper"))
    s2 = _stratum_from_obj(shape.dual_graph, obj.get("lower"))
    mult = _strata.adjacency_multiplicity(shape, s1, s2)
    click.echo(_dumps({"multiplicity": mult}))


@strata.command("local")
@click.argument("input_arg", metavar="INPUT")
@click.pass_obj
@handle_errors
def strata_local(max_edges: int, input_arg: str) -> None:
    """Local census around a stratum.

    INPUT: {"shape"|"lines": ..., "stratum": {"subgraph": [...], "divisor": ...}}.
    """
    obj = read_json_input(input_arg)
    shape = _shape_from_obj(obj)
    s = _stratum_from_obj(shape.dual_graph, obj.get("stratum"))
    model = _strata.local_model(shape, s, max_edges)
    census = [
        {**_stratum_obj(label), "multiplicity": m} for label, m in model.census.items()
    ]
    click.echo(_dumps({"p": model.p, "q": model.q, "census": census}))


@strata.command("components")
@click.argument("input_arg", metavar="[INPUT]", required=False)
@click.option("--lines", type=int, default=None)
@click.option("--count", is_flag=True)
@click.pass_obj
@handle_errors
def strata_components(max_edges: int, input_arg, lines, count) -> None:
    """Irreducible components: the top strata."""
    shape = _shape_from_options(lines, input_arg)
    comps = _strata.irreducible_components(shape, max_edges)
    if count:
        click.echo(str(len(comps)))
        return
    click.echo(_dumps([_stratum_obj(s) for s in comps]))


@strata.command("cr")
@click.argument("input_arg", metavar="[INPUT]", required=False)
@click.option("--lines", type=int, default=None)
@click.pass_obj
@handle_errors
def strata_cr(max_edges: int, input_arg, lines) -> None:
    """Completely reducible strata (the compactified-Jacobian index set)."""
    shape = _shape_from_options(lines, input_arg)
    click.echo(_dumps([_stratum_obj(s) for s in _strata.cr_strata(shape, max_edges)]))


# ---------------------------------------------------------------------------
# hasse

@main.group()
def hasse() -> None:
    """Poset of (subgraph, divisor) pairs on a loopless graph."""


@hasse.command("export")
@click.argument("input_arg", metavar="INPUT")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot")
@click.pass_obj
@handle_errors
def hasse_export(max_edges: int, input_arg: str, fmt: str) -> None:
    """Export the Hasse diagram of a graph JSON."""
    g = _graph_from_any(read_json_input(input_arg))
    poset = _strata.hasse_diagram(g, max_edges)
    if fmt == "dot":
        click.echo(_strata.hasse_to_dot(poset), nl=False)
        return
    click.echo(
        _dumps(
            {
                "elements": [_stratum_obj(s) for s in poset.elements],
                "covers": [list(c) for c in poset.cover_relations],
            }
        )
    )


# ---------------------------------------------------------------------------
# matpoly

@main.group()
def matpoly() -> None:
    """Exact matrix-polynomial operations."""


@matpoly.command("charpoly")
@click.argument("input_arg", metavar="INPUT")
@handle_errors
def matpoly_charpoly(input_arg: str) -> None:
    """Characteristic bivariate polynomial of a matrix polynomial JSON."""
    p = _matpoly.matpoly_from_json_obj(read_json_input(input_arg))
    click.echo(_dumps(_matpoly.char_poly(p).to_json_obj()))


@matpoly.command("classify")
@click.argument("input_arg", metavar="INPUT")
@click.option("--arrangement", "arrangement_arg", required=True, metavar="INPUT")
@handle_errors
def matpoly_classify(input_arg: str, arrangement_arg: str) -> None:
    """Stratum label of a matrix polynomial over a line arrangement."""
    p = _matpoly.matpoly_from_json_obj(read_json_input(input_arg))
    c = _matpoly.arrangement_from_json_obj(read_json_input(arrangement_arg))
    label = _matpoly.classify_polynomial(p, c)
    click.echo(_dumps(_matpoly.classification_to_json_obj(label)))


@matpoly.command("reducibility")
@click.argument("input_arg", metavar="INPUT")
@handle_errors
def matpoly_reducibility(input_arg: str) -> None:
    """Invariant-subspace classification (n <= 3)."""
    p = _matpoly.matpoly_from_json_obj(read_json_input(input_arg))
    click.echo(_dumps({"reducibility": _matpoly.reducibility(p).value}))


# ---------------------------------------------------------------------------
# sample

@main.command("sample")
@click.argument("input_arg", metavar="INPUT")
@handle_errors
def sample(input_arg: str) -> None:
    """Sample a matrix polynomial from a stratum.

    INPUT: {"lines": [[a, b], ...], "subgraph": [edge indices],
    "divisor": {...}, "params": [nonzero rationals]}.
    """
    obj = read_json_input(input_arg)
    if "lines" not in obj:
        raise StrataError("sample input needs 'lines'")
    c = _matpoly.line_arrangement(obj["lines"])
    label = _stratum_from_obj(c.dual_graph, obj)
    p = _matpoly.sample_stratum(c, label, obj.get("params", []))
    click.echo(_dumps(_matpoly.matpoly_to_json_obj(p)))


def run(argv) -> int:
    """Programmatic entry point: execute one CLI request and return the
    exit code (0 success, 2 validation failure)."""
    try:
        main(args=list(argv), standalone_mode=False)
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.ClickException as exc:
        exc.show()
        return 2
    except click.exceptions.Abort:
        return 1
    return 0


# dot export of a plain graph, attached under `graph`

@graph.command("dot")
@click.argument("input_arg", metavar="INPUT")
@handle_errors
def graph_dot(input_arg: str) -> None:
    """DOT export of a graph JSON, with arrows when an orientation is given."""
    obj = read_json_input(input_arg)
    g = _graph_from_any(obj)
    o = None
    if isinstance(obj, dict) and obj.get("orientation") is not None:
        o = _orientation_from_arcs(g, obj["orientation"])
    click.echo(to_dot(g, o), nl=False)


if __name__ == "__main__":
    main()
