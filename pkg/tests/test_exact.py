from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from spectral_strata.errors import StrataError
from spectral_strata.exact import (
    det,
    nullspace,
    parse_rational,
    poly,
    poly_add,
    poly_content_free,
    poly_degree,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_matrix_det,
    poly_matrix_kernel_vector,
    poly_mul,
    rank,
    rational_roots,
    sqrt_rational,
)

rationals = st.fractions(
    min_value=-8, max_value=8, max_denominator=6
)


def small_polys(max_degree=3):
    return st.lists(rationals, max_size=max_degree + 1).map(poly)


class TestParseRational:
    def test_forms(self):
        assert parse_rational("3/4") == F(3, 4)
        assert parse_rational("-2") == F(-2)
        assert parse_rational(5) == F(5)
        assert parse_rational(F(1, 3)) == F(1, 3)

    def test_invalid(self):
        with pytest.raises(StrataError):
            parse_rational("x+1")
        with pytest.raises(StrataError):
            parse_rational("1/0")


class TestPolyArithmetic:
    def test_trailing_zeros_trimmed(self):
        assert poly([1, 2, 0, 0]) == (F(1), F(2))
        assert poly([0, 0]) == ()
        assert poly_degree(()) == -1

    def test_mul_example(self):
        # (1 + x)(1 - x) = 1 - x^2
        assert poly_mul(poly([1, 1]), poly([1, -1])) == poly([1, 0, -1])

    @given(small_polys(), small_polys())
    def test_divmod_reconstructs(self, a, b):
        if not b:
            return
        q, r = poly_divmod(a, b)
        assert poly_add(poly_mul(q, b), r) == a
        assert poly_degree(r) < poly_degree(b)

    @given(small_polys(), small_polys())
    def test_gcd_divides_both(self, a, b):
        g = poly_gcd(a, b)
        if not g:
            assert not a and not b
            return
        for p in (a, b):
            if p:
                assert poly_divmod(p, g)[1] == ()

    def test_eval(self):
        assert poly_eval(poly([1, 2, 3]), F(2)) == 1 + 4 + 12


class TestContentFree:
    def test_common_factor_removed(self):
        x_plus_1 = poly([1, 1])
        vec = (poly_mul(x_plus_1, poly([2])), poly_mul(x_plus_1, poly([0, 4])))
        reduced = poly_content_free(vec)
        assert reduced == (poly([1]), poly([0, 2]))

    def test_sign_normalisation(self):
        reduced = poly_content_free((poly([-2]), poly([0, -4])))
        assert reduced == (poly([1]), poly([0, 2]))

    def test_zero_vector_rejected(self):
        with pytest.raises(StrataError):
            poly_content_free(((), ()))

    def test_zero_entries_preserved(self):
        reduced = poly_content_free(((), poly([3])))
        assert reduced == ((), poly([1]))


class TestRationalRoots:
    def test_quadratic(self):
        # (2x - 1)(x + 3) = 2x^2 + 5x - 3
        assert rational_roots(poly([-3, 5, 2])) == [F(-3), F(1, 2)]

    def test_zero_root(self):
        assert rational_roots(poly([0, 0, 1])) == [F(0)]

    def test_irrational(self):
        assert rational_roots(poly([-2, 0, 1])) == []


class TestSqrtRational:
    def test_square(self):
        assert sqrt_rational(F(9, 4)) == F(3, 2)

    def test_non_square(self):
        assert sqrt_rational(F(2)) is None
        assert sqrt_rational(F(-4)) is None


class TestLinearAlgebra:
    def test_rank_examples(self):
        assert rank([[F(1), F(2)], [F(2), F(4)]]) == 1
        assert rank([[F(1), F(0)], [F(0), F(1)]]) == 2
        assert rank([[F(0), F(0)]]) == 0

    def test_rank_with_fractions(self):
        assert rank([[F(1, 2), F(1, 3)], [F(1, 4), F(1)]]) == 2
        assert rank([[F(1, 2), F(1, 3)], [F(3, 2), F(1)]]) == 1

    @given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=2, max_size=3))
    def test_nullspace_vectors_annihilate(self, rows):
        for vec in nullspace(rows):
            for row in rows:
                assert sum(a * b for a, b in zip(row, vec)) == 0

    @given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
    def test_rank_nullity(self, rows):
        assert rank(rows) + len(nullspace(rows)) == 3

    def test_det(self):
        assert det([[F(1), F(2)], [F(3), F(4)]]) == F(-2)
        assert det([[F(1), F(2)], [F(2), F(4)]]) == 0


class TestPolyMatrices:
    @given(
        st.lists(
            st.lists(small_polys(max_degree=2), min_size=2, max_size=2),
            min_size=2,
            max_size=2,
        ),
        rationals,
    )
    def test_det_commutes_with_evaluation(self, entries, x):
        symbolic = poly_matrix_det(entries)
        numeric = det([[poly_eval(e, x) for e in row] for row in entries])
        assert poly_eval(symbolic, x) == numeric

    def test_kernel_of_singular_matrix(self):
        # rows are proportional: (x, x^2), (1, x)
        mat = [[poly([0, 1]), poly([0, 0, 1])], [poly([1]), poly([0, 1])]]
        vec = poly_matrix_kernel_vector(mat)
        for row in mat:
            acc = poly_add(poly_mul(row[0], vec[0]), poly_mul(row[1], vec[1]))
            assert acc == ()
        assert vec == (poly([0, -1]), poly([1])) or vec == (poly([0, 1]), poly([-1]))

    def test_nonsingular_rejected(self):
        mat = [[poly([1]), ()], [(), poly([1])]]
        with pytest.raises(StrataError):
            poly_matrix_kernel_vector(mat)

    def test_rank_deficiency_two_rejected(self):
        zero = [[(), ()], [(), ()]]
        with pytest.raises(StrataError):
            poly_matrix_kernel_vector(zero)

    def test_one_by_one(self):
        assert poly_matrix_kernel_vector([[()]]) == (poly([1]),)
