"""Exact matrix polynomials over the rationals and their spectral data.

Supported spectral curves are unions of distinct non-parallel affine lines
mu = a_i + b_i*lambda with pairwise intersections (nodes) and no three
lines concurrent.  All components are rational, so the divisor attached to
a matrix polynomial reduces to polynomial degree counts: for each line the
eigenvector over the rational function field is normalised to a coprime
polynomial vector, and the divisor value is its maximal entry degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import ArrangementError, SampleError, StrataError
from .exact import (
    BivarTerms,
    QPoly,
    biv_add,
    biv_mul,
    det,
    nullspace,
    parse_rational,
    poly,
    poly_add,
    poly_const,
    poly_degree,
    poly_matrix_det,
    poly_matrix_kernel_vector,
    poly_mul,
    poly_neg,
    rank,
    rational_roots,
    sqrt_rational,
)
from .graphs import Divisor, Multigraph, Subgraph, all_orientations, build_graph, indeg
from .indegree import is_indegree
from .strata import StratumLabel

MAX_MATRIX_SIZE = 6

RationalMatrix = tuple[tuple[Fraction, ...], ...]


class Reducibility(Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE_NOT_CR = "reducible_not_cr"
    COMPLETELY_REDUCIBLE = "completely_reducible"


@dataclass(frozen=True)
class BivariatePolynomial:
    """Finitely supported polynomial in (lambda, mu) with rational
    coefficients; zero coefficients are dropped on construction."""

    terms: Mapping[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        cleaned = {
            (int(i), int(j)): parse_rational(c)
            for (i, j), c in self.terms.items()
            if parse_rational(c) != 0
        }
        object.__setattr__(self, "terms", cleaned)

    def coefficient(self, lam_exp: int, mu_exp: int) -> Fraction:
        return self.terms.get((lam_exp, mu_exp), Fraction(0))

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        return BivariatePolynomial(biv_add(dict(self.terms), dict(other.terms)))

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        return BivariatePolynomial(biv_mul(dict(self.terms), dict(other.terms)))

    def to_json_obj(self) -> list[dict]:
        return [
            {"lambda": i, "mu": j, "coeff": str(self.terms[(i, j)])}
            for (i, j) in sorted(self.terms)
        ]


@dataclass(frozen=True)
class MatrixPolynomial:
    """A_0 + A_1 lambda + ... + A_m lambda^m with exact rational n x n
    coefficient matrices."""

    coefficients: tuple[RationalMatrix, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise StrataError("a matrix polynomial needs at least one coefficient")
        n = len(self.coefficients[0])
        for mat in self.coefficients:
            if len(mat) != n or any(len(row) != n for row in mat):
                raise StrataError("coefficient matrices must be square of equal size")

    @property
    def m(self) -> int:
        return len(self.coefficients) - 1

    @property
    def n(self) -> int:
        return len(self.coefficients[0])

    @property
    def leading(self) -> RationalMatrix:
        return self.coefficients[-1]

    def evaluate(self, lam: Fraction) -> list[list[Fraction]]:
        n = self.n
        out = [[Fraction(0)] * n for _ in range(n)]
        power = Fraction(1)
        for mat in self.coefficients:
            for i in range(n):
                for j in range(n):
                    out[i][j] += mat[i][j] * power
            power *= lam
        return out

    def entry_poly(self, i: int, j: int) -> QPoly:
        return poly([mat[i][j] for mat in self.coefficients])

    def transpose(self) -> "MatrixPolynomial":
        return MatrixPolynomial(
            tuple(tuple(tuple(row) for row in zip(*mat)) for mat in self.coefficients)
        )


def matrix_polynomial(coefficients: Sequence[Sequence[Sequence]]) -> MatrixPolynomial:
    """Build a MatrixPolynomial from nested lists of rationals ('p/q'
    strings, ints, or Fractions)."""
    return MatrixPolynomial(
        tuple(
            tuple(tuple(parse_rational(x) for x in row) for row in mat)
            for mat in coefficients
        )
    )


# ---------------------------------------------------------------------------
# characteristic curve

def char_poly(p: MatrixPolynomial) -> BivariatePolynomial:
    """det(P(lambda) - mu Id) as an exact bivariate polynomial; the top
    mu-term is (-1)^n mu^n."""
    n = p.n
    if n > MAX_MATRIX_SIZE:
        raise StrataError(f"matrix size {n} exceeds the char_poly cap {MAX_MATRIX_SIZE}")
    entries: list[list[BivarTerms]] = []
    for i in range(n):
        row = []
        for j in range(n):
            terms: BivarTerms = {}
            for k, mat in enumerate(p.coefficients):
                if mat[i][j] != 0:
                    terms[(k, 0)] = terms.get((k, 0), Fraction(0)) + mat[i][j]
            if i == j:
                terms[(0, 1)] = terms.get((0, 1), Fraction(0)) - 1
            row.append({k: v for k, v in terms.items() if v != 0})
        entries.append(row)

    cache: dict[tuple[int, int], BivarTerms] = {}

    def minor(row_idx: int, colmask: int) -> BivarTerms:
        if colmask == 0:
            return {(0, 0): Fraction(1)}
        key = (row_idx, colmask)
        if key in cache:
            return cache[key]
        cols = [c for c in range(n) if colmask >> c & 1]
        acc: BivarTerms = {}
        for k, col in enumerate(cols):
            entry = entries[row_idx][col]
            if not entry:
                continue
            sub = minor(row_idx + 1, colmask & ~(1 << col))
            term = biv_mul(entry, sub)
            if k % 2:
                term = {kk: -vv for kk, vv in term.items()}
            acc = biv_add(acc, term)
        cache[key] = acc
        return acc

    return BivariatePolynomial(minor(0, (1 << n) - 1))


def check_leading_condition(
    q: BivariatePolynomial, b_eigs: Sequence, m: int, n: int
) -> bool:
    """Boundary condition at infinity: the support lies inside the triangle
    with corners (0,0), (0,n), (m n, 0), and along the hypotenuse the
    coefficient at (m(n-j), j) equals the w^j coefficient of the
    characteristic polynomial of diag(b_eigs), prod_k (b_k - w)."""
    eigs = [parse_rational(b) for b in b_eigs]
    for (i, j), c in q.terms.items():
        if c != 0 and (i < 0 or j < 0 or i + m * j > m * n):
            return False
    charpoly_b: QPoly = poly_const(1)
    for b in eigs:
        charpoly_b = poly_mul(charpoly_b, poly([b, -1]))
    for j in range(n + 1):
        expected = charpoly_b[j] if j < len(charpoly_b) else Fraction(0)
        if q.coefficient(m * (n - j), j) != expected:
            return False
    return True


# ---------------------------------------------------------------------------
# line arrangements

@dataclass(frozen=True)
class SpectralLineArrangement:
    """Union of lines mu = a_i + b_i lambda with pairwise distinct slopes
    and no three lines concurrent.  nodes[k] = (lambda, mu, i, j) is the
    intersection of lines i < j, aligned with edge k of the dual graph
    (the complete graph on the line indices)."""

    lines: tuple[tuple[Fraction, Fraction], ...]
    nodes: tuple[tuple[Fraction, Fraction, int, int], ...]
    dual_graph: Multigraph

    @property
    def n(self) -> int:
        return len(self.lines)

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(b for _, b in self.lines)

    def leading_matrix(self) -> RationalMatrix:
        n = self.n
        return tuple(
            tuple(self.lines[i][1] if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )


def line_arrangement(lines: Sequence[Sequence]) -> SpectralLineArrangement:
    """Validate the line data and compute all nodes exactly."""
    parsed = tuple((parse_rational(a), parse_rational(b)) for a, b in lines)
    if not parsed:
        raise ArrangementError("at least one line is required")
    slopes = [b for _, b in parsed]
    if len(set(slopes)) != len(slopes):
        raise ArrangementError("coincident slopes: lines must be pairwise non-parallel")
    n = len(parsed)
    nodes = []
    for i, j in combinations(range(n), 2):
        a_i, b_i = parsed[i]
        a_j, b_j = parsed[j]
        lam = (a_j - a_i) / (b_i - b_j)
        mu = a_i + b_i * lam
        nodes.append((lam, mu, i, j))
    points = [(lam, mu) for lam, mu, _, _ in nodes]
    if len(set(points)) != len(points):
        raise ArrangementError("three or more lines pass through one point (not nodal)")
    vertices = [f"v{i + 1}" for i in range(n)]
    dual = build_graph(vertices, [(vertices[i], vertices[j]) for _, _, i, j in nodes])
    return SpectralLineArrangement(parsed, tuple(nodes), dual)


def arrangement_product(c: SpectralLineArrangement) -> BivariatePolynomial:
    """prod_i (a_i + b_i lambda - mu), the defining polynomial with the
    sign convention of char_poly."""
    acc: BivarTerms = {(0, 0): Fraction(1)}
    for a, b in c.lines:
        factor: BivarTerms = {(0, 1): Fraction(-1)}
        if a != 0:
            factor[(0, 0)] = a
        if b != 0:
            factor[(1, 0)] = b
        acc = biv_mul(acc, factor)
    return BivariatePolynomial(acc)


# ---------------------------------------------------------------------------
# eigenvector data

@dataclass(frozen=True)
class EigenLineData:
    """Coprime polynomial eigenvector on one line and its maximal entry
    degree (the degree of the dual eigenvector bundle there)."""

    line_index: int
    eigenvector: tuple[QPoly, ...]
    dual_degree: int


def _line_matrix(p: MatrixPolynomial, c: SpectralLineArrangement, i: int) -> list[list[QPoly]]:
    a, b = c.lines[i]
    n = p.n
    mat = []
    for r in range(n):
        row = []
        for s in range(n):
            entry = p.entry_poly(r, s)
            if r == s:
                entry = poly_add(entry, poly_neg(poly([a, b])))
            row.append(entry)
        mat.append(row)
    return mat


def _check_char_matches(p: MatrixPolynomial, c: SpectralLineArrangement) -> None:
    if p.n != c.n:
        raise StrataError(
            f"matrix size {p.n} does not match the arrangement with {c.n} lines"
        )
    if char_poly(p) != arrangement_product(c):
        raise StrataError("characteristic polynomial does not equal the arrangement product")


def eigen_line_data(p: MatrixPolynomial, c: SpectralLineArrangement) -> tuple[EigenLineData, ...]:
    """Eigenvector data for every line.  The kernel over the rational
    function field must be one-dimensional on each line."""
    _check_char_matches(p, c)
    out = []
    for i in range(c.n):
        mat = _line_matrix(p, c, i)
        try:
            vec = poly_matrix_kernel_vector(mat)
        except StrataError as exc:
            raise StrataError(f"line {i}: eigenvector is not unique ({exc})") from None
        for r in range(p.n):
            acc: QPoly = ()
            for s in range(p.n):
                acc = poly_add(acc, poly_mul(mat[r][s], vec[s]))
            if acc:
                raise AssertionError("eigenvector identity failed")
        out.append(EigenLineData(i, vec, max(poly_degree(q) for q in vec)))
    return tuple(out)


def gamma_of(p: MatrixPolynomial, c: SpectralLineArrangement) -> Subgraph:
    """Generating subgraph of the dual graph: keep the edge of a node when
    the eigenspace there is one-dimensional, drop it when it is
    two-dimensional."""
    _check_char_matches(p, c)
    kept = set()
    for k, (lam, mu, _, _) in enumerate(c.nodes):
        mat = p.evaluate(lam)
        for i in range(p.n):
            mat[i][i] -= mu
        kernel_dim = p.n - rank(mat)
        if kernel_dim == 1:
            kept.add(k)
        elif kernel_dim != 2:
            raise StrataError(
                f"node {k}: kernel dimension {kernel_dim} is not 1 or 2; "
                "the input violates the spectral-curve assumptions"
            )
    return Subgraph(c.dual_graph, frozenset(kept))


def divisor_of(p: MatrixPolynomial, c: SpectralLineArrangement) -> Divisor:
    """Divisor on the dual graph: per line, the maximal entry degree of the
    coprime polynomial eigenvector."""
    data = eigen_line_data(p, c)
    return Divisor(c.dual_graph.vertices, tuple(d.dual_degree for d in data))


def classify_polynomial(p: MatrixPolynomial, c: SpectralLineArrangement) -> StratumLabel:
    """Stratum label (eigenvector subgraph, divisor) of a matrix
    polynomial.  The divisor is always an indegree divisor on the
    subgraph, which is asserted."""
    sub = gamma_of(p, c)
    d = divisor_of(p, c)
    if is_indegree(sub.as_multigraph(), d) is None:
        raise AssertionError("computed divisor is not an indegree divisor of the subgraph")
    return StratumLabel(sub, d)


# ---------------------------------------------------------------------------
# reducibility (n <= 3)

def reducibility(p: MatrixPolynomial) -> Reducibility:
    """Invariant-subspace classification for n <= 3.

    A subspace invariant under P(lambda) for every lambda is invariant
    under each coefficient, in particular under the leading coefficient,
    whose eigenvalues must be distinct rationals here.  Every invariant
    subspace is then spanned by a subset of its eigenvectors, so the
    search is over the 2^n - 2 proper nonempty subsets; for n <= 3 these
    exhaust dimensions 1 and n-1.  Completely reducible means every
    invariant subspace has an invariant complement, and the only candidate
    complement is the span of the remaining eigenvectors.
    """
    n = p.n
    if n > 3:
        raise StrataError("reducibility is decided only for n <= 3")
    lead = p.leading
    charpoly_w: QPoly = poly_matrix_char(lead)
    roots = rational_roots(charpoly_w)
    if len(roots) != n:
        raise StrataError(
            "leading coefficient must have n distinct rational eigenvalues"
        )
    eigvecs = []
    for b in roots:
        shifted = [
            [lead[i][j] - (b if i == j else 0) for j in range(n)] for i in range(n)
        ]
        basis = nullspace(shifted)
        if len(basis) != 1:
            raise StrataError("leading coefficient is not diagonalisable with simple spectrum")
        eigvecs.append(basis[0])
    if det(eigvecs) == 0:
        raise AssertionError("eigenvectors of distinct eigenvalues must be independent")

    def invariant(subset: tuple[int, ...]) -> bool:
        span = [eigvecs[k] for k in subset]
        for mat in p.coefficients:
            for k in subset:
                image = [
                    sum(mat[i][j] * eigvecs[k][j] for j in range(n)) for i in range(n)
                ]
                stacked = [[row[i] for row in span] + [image[i]] for i in range(n)]
                if rank(stacked) != len(span):
                    return False
        return True

    invariant_subsets = [
        subset
        for size in range(1, n)
        for subset in combinations(range(n), size)
        if invariant(subset)
    ]
    if not invariant_subsets:
        return Reducibility.IRREDUCIBLE
    inv = {frozenset(s) for s in invariant_subsets}
    everything = frozenset(range(n))
    if all((everything - s) in inv for s in inv):
        return Reducibility.COMPLETELY_REDUCIBLE
    return Reducibility.REDUCIBLE_NOT_CR


def poly_matrix_char(mat: RationalMatrix) -> QPoly:
    """det(mat - w Id) as a univariate polynomial in w."""
    n = len(mat)
    entries = [
        [
            poly([mat[i][j], -1]) if i == j else poly_const(mat[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return poly_matrix_det(entries)


# ---------------------------------------------------------------------------
# stratum samples (m = 1, n in {2, 3}, diagonal leading coefficient)

def interior_cubic_coefficients(
    c: SpectralLineArrangement,
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(c1, c2, c3, k) with (c1, c2, c3) the cross product of (1, 1, 1)
    with the slope vector and k its inner product with the intercepts.
    The three-line interior stratum lives on w(kz - w) = c1 c2 c3 z^3."""
    if c.n != 3:
        raise SampleError("the interior cubic needs exactly three lines")
    (a1, b1), (a2, b2), (a3, b3) = c.lines
    c1, c2, c3 = b3 - b2, b1 - b3, b2 - b1
    k = c1 * a1 + c2 * a2 + c3 * a3
    return c1, c2, c3, k


def on_interior_cubic(c: SpectralLineArrangement, z: Fraction, w: Fraction) -> bool:
    c1, c2, c3, k = interior_cubic_coefficients(c)
    return w * (k * z - w) == c1 * c2 * c3 * z**3


def interior_cubic_points(
    c: SpectralLineArrangement, z_candidates: Sequence
) -> list[tuple[Fraction, Fraction]]:
    """Points (z, w) with z, w nonzero and rational on the interior-stratum
    cubic, found by solving the quadratic in w for each candidate z."""
    c1, c2, c3, k = interior_cubic_coefficients(c)
    found = []
    for z_raw in z_candidates:
        z = parse_rational(z_raw)
        if z == 0:
            continue
        disc = k * k * z * z - 4 * c1 * c2 * c3 * z**3
        root = sqrt_rational(disc)
        if root is None:
            continue
        for w in ((k * z + root) / 2, (k * z - root) / 2):
            if w != 0 and (z, w) not in found:
                found.append((z, w))
    return found


def sample_stratum(
    c: SpectralLineArrangement,
    s: StratumLabel,
    params: Sequence,
) -> MatrixPolynomial:
    """Explicit degree-one matrix polynomial in the stratum s, with the
    arrangement's slopes on the diagonal of the leading coefficient.

    For strata whose divisor has a unique witness orientation, params
    supplies one nonzero value per subgraph edge; the value is placed at
    (tail, head) of the oriented edge.  When two witness arcs chain as
    a -> v -> b and the edge {a, b} is absent from the subgraph, the
    entry at (a, b) is not free: it is set to the product of the two
    chain entries divided by the value of line v minus the node value at
    the intersection of lines a and b, which forces the eigenspace at
    that node to stay two-dimensional.  For the three-line interior
    stratum (full triangle, divisor all ones) params is a point (z, w)
    with z, w nonzero lying on the interior cubic.
    """
    n = c.n
    if n not in (2, 3):
        raise SampleError("samples are implemented for 2 or 3 lines")
    if s.subgraph.parent != c.dual_graph:
        raise SampleError("stratum does not belong to this arrangement")
    sub = s.subgraph.as_multigraph()
    if is_indegree(sub, s.divisor) is None:
        raise SampleError("stratum divisor is not an indegree divisor of its subgraph")
    values = [parse_rational(x) for x in params]
    if any(v == 0 for v in values):
        raise SampleError("all sample parameters must be nonzero")

    a_diag = [a for a, _ in c.lines]
    entries = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = a_diag[i]

    interior = n == 3 and s.subgraph.n_edges == 3 and s.divisor.values == (1, 1, 1)
    if interior:
        if len(values) != 2:
            raise SampleError("the interior stratum takes params (z, w)")
        z, w = values
        if not on_interior_cubic(c, z, w):
            raise SampleError("(z, w) does not lie on the interior cubic")
        c1, c2, c3, _ = interior_cubic_coefficients(c)
        entries[0][1] = Fraction(1)
        entries[1][2] = Fraction(1)
        entries[2][0] = w
        entries[1][0] = c3 * z
        entries[2][1] = c1 * z
        entries[0][2] = c2 * z / w
    else:
        witnesses = [
            o for o in all_orientations(sub) if indeg(o).values == s.divisor.values
        ]
        if len(witnesses) != 1:
            raise SampleError(
                "unsupported stratum: the divisor does not determine a unique "
                "star pattern"
            )
        arcs = list(witnesses[0].arcs())
        if len(values) != len(arcs):
            raise SampleError(f"expected {len(arcs)} parameters, got {len(values)}")
        for (t, h), v in zip(arcs, values):
            entries[t][h] = v
        present = {c.dual_graph.edges[i] for i in s.subgraph.edge_set}
        node_at = {(i, j): (lam, mu) for lam, mu, i, j in c.nodes}
        for t1, h1 in arcs:
            for t2, h2 in arcs:
                if h1 != t2 or t1 == h2:
                    continue
                a, v, b = t1, h1, h2
                if (min(a, b), max(a, b)) in present:
                    continue
                lam_ab, mu_ab = node_at[(min(a, b), max(a, b))]
                line_a, line_b = c.lines[v]
                q = line_a + line_b * lam_ab - mu_ab
                entries[a][b] = entries[a][v] * entries[v][b] / q

    lead = c.leading_matrix()
    sample = MatrixPolynomial(
        (tuple(tuple(row) for row in entries), lead)
    )
    label = classify_polynomial(sample, c)
    if label != s:
        raise SampleError(
            "sample parameters are degenerate: the sample landed in stratum "
            f"{label.subgraph.edge_list()}, {label.divisor.values} instead of "
            f"{s.subgraph.edge_list()}, {s.divisor.values}"
        )
    return sample


# ---------------------------------------------------------------------------
# serialisation

def matpoly_to_json_obj(p: MatrixPolynomial) -> dict:
    return {
        "m": p.m,
        "n": p.n,
        "coeffs": [
            [[str(x) for x in row] for row in mat] for mat in p.coefficients
        ],
    }


def matpoly_from_json_obj(obj: Mapping) -> MatrixPolynomial:
    try:
        coeffs = obj["coeffs"]
    except (KeyError, TypeError):
        raise StrataError("matrix polynomial JSON must have 'coeffs'") from None
    p = matrix_polynomial(coeffs)
    if "m" in obj and int(obj["m"]) != p.m:
        raise StrataError(f"declared degree {obj['m']} does not match {p.m}")
    if "n" in obj and int(obj["n"]) != p.n:
        raise StrataError(f"declared size {obj['n']} does not match {p.n}")
    return p


def arrangement_to_json_obj(c: SpectralLineArrangement) -> dict:
    return {"lines": [[str(a), str(b)] for a, b in c.lines]}


def arrangement_from_json_obj(obj: Mapping) -> SpectralLineArrangement:
    try:
        lines = obj["lines"]
    except (KeyError, TypeError):
        raise StrataError("arrangement JSON must have 'lines'") from None
    return line_arrangement(lines)


def classification_to_json_obj(label: StratumLabel) -> dict:
    return {
        "subgraph": list(label.subgraph.edge_list()),
        "divisor": label.divisor.to_mapping(),
    }
