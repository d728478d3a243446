from __future__ import annotations

import pytest

from oracles import hexagon_eigen_dims
from smithgysin.cochain import GradedSpace, cohomology, validate_complex
from smithgysin.exactness import validate_ses
from smithgysin.linalg import Matrix
from smithgysin.simplicial import (
    NotASubcomplex,
    NotInvolutive,
    NotSimplicial,
    SimplicialComplex,
    SimplicialError,
    SimplicialInvolution,
    anti_invariant_subcomplex,
    anti_invariants,
    betti,
    discrete,
    full_simplex,
    invariants,
    path,
    point,
    polygon,
    relative_betti,
    relative_pair,
    simplex_boundary,
    simplicial_cochain_complex,
    subcomplex_on,
)

REFLECTION = {1: 5, 5: 1, 2: 4, 4: 2}


def dims(g: GradedSpace, n: int) -> tuple[int, ...]:
    return tuple(g[k] for k in range(n))


class TestComplexes:
    def test_face_closure(self):
        sc = SimplicialComplex.from_facets([[2, 0, 1]])
        assert sc.face_counts() == (3, 3, 1)
        assert sc == full_simplex(2)

    def test_missing_face_rejected(self):
        with pytest.raises(SimplicialError):
            SimplicialComplex(frozenset({(0, 1)}))

    def test_euler(self):
        assert simplex_boundary(3).euler_characteristic() == 2
        assert polygon(6).euler_characteristic() == 0

    def test_coboundary_squares_to_zero(self):
        assert validate_complex(simplicial_cochain_complex(simplex_boundary(4))).ok


class TestBetti:
    @pytest.mark.parametrize("sc,expected", [
        (point(), (1,)),
        (path(3), (1,)),
        (polygon(3), (1, 1)),
        (simplex_boundary(3), (1, 0, 1)),
        (simplex_boundary(4), (1, 0, 0, 1)),
        (simplex_boundary(5), (1, 0, 0, 0, 1)),
        (discrete(3), (3,)),
        (full_simplex(3), (1,)),
    ])
    def test_values(self, sc, expected):
        assert dims(betti(sc), len(expected)) == expected
        assert betti(sc).hi == len(expected) - 1

    def test_relative_interval(self):
        interval = path(3)
        ends = subcomplex_on(interval, [0, 2])
        assert relative_betti(interval, ends) == GradedSpace(1, (1,))
        assert validate_ses(relative_pair(interval, ends)).ok

    def test_not_a_subcomplex(self):
        with pytest.raises(NotASubcomplex):
            relative_pair(path(2), polygon(3))

    def test_relative_to_empty_is_absolute(self):
        sc = polygon(4)
        assert relative_betti(sc, SimplicialComplex.empty()) == betti(sc)


class TestInvolutions:
    def test_identity_has_no_anti_invariants(self):
        assert anti_invariants(SimplicialInvolution.identity(polygon(6))).graded == GradedSpace(0, ())

    def test_hexagon_reflection(self):
        inv = SimplicialInvolution(polygon(6), REFLECTION)
        assert dims(anti_invariants(inv).graded, 2) == (0, 1) == hexagon_eigen_dims(REFLECTION, -1)
        assert dims(invariants(inv).graded, 2) == (1, 0) == hexagon_eigen_dims(REFLECTION, 1)

    def test_eigen_dims_add_up(self):
        inv = SimplicialInvolution(polygon(6), REFLECTION)
        total = [anti_invariants(inv).dim(k) + invariants(inv).dim(k) for k in range(2)]
        assert total == [1, 1]

    def test_rotation_by_half_turn(self):
        half = {i: (i + 3) % 6 for i in range(6)}
        inv = SimplicialInvolution(polygon(6), half)
        assert dims(anti_invariants(inv).graded, 2) == (0, 0) == hexagon_eigen_dims(half, -1)

    def test_swapped_points(self):
        inv = SimplicialInvolution(discrete(2), {0: 1, 1: 0})
        assert dims(anti_invariants(inv).graded, 1) == (1,)

    def test_subcomplex_model_agrees(self):
        inv = SimplicialInvolution(polygon(6), REFLECTION)
        assert cohomology(anti_invariant_subcomplex(inv)).graded == anti_invariants(inv).graded

    def test_representatives_are_anti_invariant_in_cohomology(self):
        inv = SimplicialInvolution(polygon(6), REFLECTION)
        eig = anti_invariants(inv)
        t = inv.cochain_map().block(1)
        rep = eig.representatives[1]
        proj = cohomology(simplicial_cochain_complex(polygon(6))).proj(1)
        assert proj @ (t @ rep) == -(proj @ rep)

    def test_not_involutive(self):
        with pytest.raises(NotInvolutive):
            SimplicialInvolution(polygon(6), {0: 1, 1: 2, 2: 0})

    def test_not_simplicial(self):
        with pytest.raises(NotSimplicial):
            SimplicialInvolution(path(3), {0: 1, 1: 0})

    def test_orientation_sign(self):
        inv = SimplicialInvolution(path(2), {0: 1, 1: 0})
        assert inv.cochain_map().block(1) == Matrix.from_rows([[-1]])
