"""Exact arithmetic helpers: univariate and bivariate polynomials over the
rationals, and exact linear algebra (rank, nullspace, polynomial-matrix
determinants and adjugate kernels).

Univariate polynomials are coefficient tuples in ascending degree with no
trailing zeros; the zero polynomial is the empty tuple.  Bivariate
polynomials are dicts mapping (i, j) exponent pairs to nonzero Fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import StrataError

QPoly = tuple[Fraction, ...]
BivarTerms = dict[tuple[int, int], Fraction]


def parse_rational(text) -> Fraction:
    """Parse 'p/q' or integer-like input into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise StrataError(f"cannot parse rational {text!r}: {exc}") from None


def format_rational(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# univariate polynomials

ZERO_POLY: QPoly = ()


def poly(coeffs: Iterable) -> QPoly:
    out = [parse_rational(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_const(c) -> QPoly:
    return poly([c])


def poly_degree(p: QPoly) -> int:
    """Degree, with the zero polynomial at -1."""
    return len(p) - 1


def poly_add(p: QPoly, q: QPoly) -> QPoly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly(out)


def poly_neg(p: QPoly) -> QPoly:
    return tuple(-c for c in p)


def poly_sub(p: QPoly, q: QPoly) -> QPoly:
    return poly_add(p, poly_neg(q))


def poly_mul(p: QPoly, q: QPoly) -> QPoly:
    if not p or not q:
        return ZERO_POLY
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly(out)


def poly_scale(p: QPoly, c: Fraction) -> QPoly:
    if c == 0:
        return ZERO_POLY
    return tuple(a * c for a in p)


def poly_divmod(p: QPoly, q: QPoly) -> tuple[QPoly, QPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    for shift in range(len(p) - len(q), -1, -1):
        c = rem[shift + len(q) - 1] / lead
        if c != 0:
            quot[shift] = c
            for i, b in enumerate(q):
                rem[shift + i] -= c * b
    return poly(quot), poly(rem)


def poly_gcd(p: QPoly, q: QPoly) -> QPoly:
    """Monic greatest common divisor (1 for coprime, 0 only if both zero)."""
    a, b = p, q
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ZERO_POLY
    return poly_scale(a, 1 / a[-1])


def poly_eval(p: QPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_content_free(vector: Sequence[QPoly]) -> tuple[QPoly, ...]:
    """Divide a nonzero polynomial vector by the gcd of its entries, clear
    denominators, divide by the integer content, and normalise the sign of
    the leading coefficient of the first nonzero entry."""
    entries = [p for p in vector if p]
    if not entries:
        raise StrataError("cannot normalise the zero vector")
    g = ZERO_POLY
    for p in entries:
        g = poly_gcd(g, p)
    reduced = [poly_divmod(p, g)[0] if p else ZERO_POLY for p in vector]
    denom = 1
    for p in reduced:
        for c in p:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    cleared = [poly_scale(p, Fraction(denom)) for p in reduced]
    content = 0
    for p in cleared:
        for c in p:
            content = math.gcd(content, c.numerator)
    if content > 1:
        cleared = [poly_scale(p, Fraction(1, content)) for p in cleared]
    for p in cleared:
        if p:
            if p[-1] < 0:
                cleared = [poly_neg(q) for q in cleared]
            break
    return tuple(cleared)


def poly_to_str(p: QPoly, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*{var}" if c != 1 else var)
        else:
            parts.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
    return " + ".join(parts)


def rational_roots(p: QPoly) -> list[Fraction]:
    """All rational roots of a nonzero polynomial, by the rational root
    test on the primitive integer form (no multiplicity)."""
    if not p:
        raise StrataError("zero polynomial has every root")
    denom = 1
    for c in p:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in p]
    while ints and ints[0] == 0:
        ints.pop(0)
    shift_zero = len(p) - len(ints)
    roots = set()
    if shift_zero > 0:
        roots.add(Fraction(0))
    if ints:
        a0, an = abs(ints[0]), abs(ints[-1])

        def divisors(x: int) -> list[int]:
            out = []
            for d in range(1, int(math.isqrt(x)) + 1):
                if x % d == 0:
                    out.extend((d, x // d))
            return sorted(set(out))

        for num in divisors(a0):
            for den in divisors(an):
                for s in (1, -1):
                    cand = Fraction(s * num, den)
                    if poly_eval(p, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def sqrt_rational(x: Fraction) -> Optional[Fraction]:
    """Exact nonnegative square root, or None when x is not a square."""
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# bivariate polynomials (exponent pair -> coefficient)

def biv_clean(terms: BivarTerms) -> BivarTerms:
    return {k: v for k, v in terms.items() if v != 0}


def biv_add(a: BivarTerms, b: BivarTerms) -> BivarTerms:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + v
    return biv_clean(out)


def biv_mul(a: BivarTerms, b: BivarTerms) -> BivarTerms:
    out: BivarTerms = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, Fraction(0)) + c1 * c2
    return biv_clean(out)


def biv_neg(a: BivarTerms) -> BivarTerms:
    return {k: -v for k, v in a.items()}


def biv_eval(a: BivarTerms, lam: Fraction, mu: Fraction) -> Fraction:
    return sum((c * lam**i * mu**j for (i, j), c in a.items()), Fraction(0))


# ---------------------------------------------------------------------------
# exact linear algebra over the rationals

Matrix = Sequence[Sequence[Fraction]]


def rank(matrix: Matrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on a denominator-cleared
    integer copy."""
    rows = []
    for row in matrix:
        denom = 1
        for x in row:
            f = parse_rational(x)
            denom = denom * f.denominator // math.gcd(denom, f.denominator)
        rows.append([int(parse_rational(x) * denom) for x in row])
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    prev = 1
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, m):
            for j in range(col + 1, n):
                rows[i][j] = (rows[r][col] * rows[i][j] - rows[i][col] * rows[r][j]) // prev
            rows[i][col] = 0
        prev = rows[r][col]
        r += 1
        if r == m:
            break
    return r


def nullspace(matrix: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel, via reduced row echelon form."""
    m = [[parse_rational(x) for x in row] for row in matrix]
    if not m:
        return []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n_cols
        vec[fc] = Fraction(1)
        for pr, pc in enumerate(pivots):
            vec[pc] = -m[pr][fc]
        basis.append(vec)
    return basis


def det(matrix: Matrix) -> Fraction:
    m = [[parse_rational(x) for x in row] for row in matrix]
    n = len(m)
    sign = 1
    out = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        out *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return out * sign


# ---------------------------------------------------------------------------
# matrices of univariate polynomials

def poly_matrix_det(matrix: Sequence[Sequence[QPoly]]) -> QPoly:
    """Determinant of a square polynomial matrix, by expansion along the
    first column with memoisation over (row offset, column subset)."""
    n = len(matrix)
    if n == 0:
        return poly_const(1)
    cache: dict[tuple[int, int], QPoly] = {}

    def minor(row: int, colmask: int) -> QPoly:
        if colmask == 0:
            return poly_const(1)
        key = (row, colmask)
        if key in cache:
            return cache[key]
        cols = [c for c in range(n) if colmask >> c & 1]
        acc = ZERO_POLY
        for k, col in enumerate(cols):
            entry = matrix[row][col]
            if not entry:
                continue
            sub = minor(row + 1, colmask & ~(1 << col))
            term = poly_mul(entry, sub)
            acc = poly_add(acc, term) if k % 2 == 0 else poly_sub(acc, term)
        cache[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def poly_matrix_kernel_vector(matrix: Sequence[Sequence[QPoly]]) -> tuple[QPoly, ...]:
    """Content-free kernel vector of a square polynomial matrix whose
    determinant vanishes identically and whose rank over the rational
    function field is size-1 (unique eigendirection).

    The adjugate transposes cofactors, and M adj(M) = det(M) Id = 0, so any
    nonzero adjugate column spans the kernel.  Raises when the adjugate is
    zero (kernel dimension at least two) or the determinant is nonzero.
    """
    n = len(matrix)
    if n == 1:
        if matrix[0][0]:
            raise StrataError("nonzero 1x1 matrix has trivial kernel")
        return (poly_const(1),)
    if poly_matrix_det(matrix):
        raise StrataError("matrix has nonzero determinant; kernel is trivial")

    def cofactor(i: int, j: int) -> QPoly:
        rows = [r for r in range(n) if r != i]
        cols = [c for c in range(n) if c != j]
        sub = [[matrix[r][c] for c in cols] for r in rows]
        val = poly_matrix_det(sub)
        return poly_neg(val) if (i + j) % 2 else val

    for col in range(n):
        # column col of adj(M): entries cofactor(col, row) for each row
        column = [cofactor(col, row) for row in range(n)]
        if any(column):
            return poly_content_free(column)
    raise StrataError("adjugate vanishes: kernel dimension is at least two")
