from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import minor_rank
from smithgysin.linalg import (
    DimensionMismatch,
    Echelon,
    Matrix,
    NotAnInvolution,
    RationalParseError,
    Subspace,
    complete_basis,
    eigenspace,
    format_rational,
    image_basis,
    inverse,
    kernel_basis,
    left_inverse,
    parse_rational,
    rank,
    solve,
)

small_ints = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(small_ints) for _ in range(c)] for _ in range(r)]
    return Matrix.from_rows(rows, c) if r else Matrix.zeros(0, c)


def M(*rows):
    return Matrix.from_rows(rows)


class TestRationals:
    @pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)),
                                            ("4/6", Fraction(2, 3)), (7, Fraction(7)), (" 5 ", Fraction(5))])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["1/0", "a/b", "", "1.5", "1//2", True, 1.5, None])
    def test_reject(self, bad):
        with pytest.raises(RationalParseError):
            parse_rational(bad)

    @given(st.fractions())
    def test_canonical_round_trip(self, x):
        text = format_rational(x)
        assert parse_rational(text) == x
        assert format_rational(parse_rational(text)) == text


class TestRank:
    def test_empty(self):
        assert rank(Matrix.zeros(0, 0)) == 0

    def test_identity(self):
        assert rank(Matrix.identity(2)) == 2

    def test_dependent_rows(self):
        assert rank(M([1, 2], [2, 4])) == 1

    @given(matrices())
    def test_agrees_with_minor_oracle(self, m):
        assert rank(m) == minor_rank([list(r) for r in m.entries])

    @given(matrices())
    def test_rank_nullity(self, m):
        assert rank(m) + kernel_basis(m).dim == m.ncols
        assert image_basis(m).dim == rank(m) == rank(m.T)


class TestKernelImage:
    def test_identity_kernel(self):
        assert kernel_basis(Matrix.identity(3)) == Subspace.zero(3)

    def test_zero_kernel(self):
        assert kernel_basis(Matrix.zeros(2, 3)) == Subspace.full(3)

    def test_row_kernel(self):
        assert kernel_basis(M([1, 1])) == Subspace.span(2, [(1, -1)])

    def test_images(self):
        assert image_basis(Matrix.zeros(2, 2)) == Subspace.zero(2)
        assert image_basis(Matrix.identity(2)) == Subspace.full(2)
        assert image_basis(M([1, 2], [2, 4])) == Subspace.span(2, [(1, 2)])

    @given(matrices())
    def test_kernel_vectors_are_killed(self, m):
        for v in kernel_basis(m).basis:
            assert all(x == 0 for x in m.apply(v))

    def test_span_is_canonical(self):
        assert Subspace.span(3, [(1, 1, 0), (0, 1, 1)]) == Subspace.span(3, [(1, 2, 1), (1, 0, -1)])


class TestSolve:
    def test_identity(self):
        assert solve(Matrix.identity(2), (3, -1)) == (3, -1)

    def test_unsolvable(self):
        assert solve(Matrix.zeros(1, 1), (1,)) is None

    def test_pivot_first(self):
        assert solve(M([1, 1]), (3,)) == (3, 0)

    @given(matrices(), st.data())
    def test_solution_solves(self, m, data):
        x = [data.draw(small_ints) for _ in range(m.ncols)]
        b = m.apply(x)
        y = solve(m, b)
        assert y is not None and m.apply(y) == b


class TestEigenspace:
    def test_identity(self):
        assert eigenspace(Matrix.identity(2), -1).dim == 0

    def test_minus_identity(self):
        assert eigenspace(-Matrix.identity(2), -1) == Subspace.full(2)

    def test_swap(self):
        swap = M([0, 1], [1, 0])
        assert eigenspace(swap, -1) == Subspace.span(2, [(1, -1)])
        assert eigenspace(swap, 1) == Subspace.span(2, [(1, 1)])

    def test_not_involution(self):
        with pytest.raises(NotAnInvolution):
            eigenspace(M([1, 1], [0, 1]), 1)


class TestMisc:
    def test_shape_errors(self):
        with pytest.raises(DimensionMismatch):
            Matrix.identity(2) @ Matrix.identity(3)

    def test_inverse_and_left_inverse(self):
        a = M([2, 1], [1, 1])
        assert inverse(a) @ a == Matrix.identity(2)
        tall = M([1, 0], [2, 1], [0, 3])
        assert left_inverse(tall) @ tall == Matrix.identity(2)

    def test_echelon_and_completion(self):
        e = Echelon(3)
        assert e.add((1, 2, 3)) and not e.add((2, 4, 6)) and e.add((0, 0, 1))
        assert len(e) == 2
        vs = [(1, 1, 0)]
        extra = complete_basis(3, vs)
        assert rank(Matrix.from_columns(vs + extra, 3)) == 3
