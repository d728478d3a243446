"""Finite simplicial complexes, their cochains, and simplicial involutions.

Simplices are sorted vertex tuples; the sorted order is the orientation.
The coboundary is ``(dc)(v0..vp+1) = sum_i (-1)^i c(v0..^vi..vp+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .cochain import ChainMap, CochainComplex, GradedSpace, cohomology, induced_map, subcomplex
from .exactness import ShortExactSequence
from .linalg import Matrix, eigenspace

Simplex = tuple[int, ...]


class SimplicialError(ValueError):
    pass


class NotASubcomplex(SimplicialError):
    pass


class NotSimplicial(SimplicialError):
    pass


class NotInvolutive(SimplicialError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    """A downward-closed set of simplices on integer vertices."""

    simplices: frozenset[Simplex]
    name: str = field(default="", compare=False)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], name: str = "") -> SimplicialComplex:
        out: set[Simplex] = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            if not f:
                continue
            for p in range(1, len(f) + 1):
                out.update(combinations(f, p))
        return cls(frozenset(out), name)

    @classmethod
    def empty(cls, name: str = "empty") -> SimplicialComplex:
        return cls(frozenset(), name)

    def __post_init__(self):
        for s in self.simplices:
            if not s or list(s) != sorted(set(s)):
                raise SimplicialError(f"simplex {s} must be a nonempty strictly increasing tuple")
            if len(s) > 1:
                for face in combinations(s, len(s) - 1):
                    if face not in self.simplices:
                        raise SimplicialError(f"face {face} of {s} is missing")

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(s[0] for s in self.simplices if len(s) == 1))

    @cached_property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @cached_property
    def _by_dim(self) -> tuple[tuple[Simplex, ...], ...]:
        return tuple(tuple(sorted(s for s in self.simplices if len(s) == p + 1))
                     for p in range(self.dimension + 1))

    def faces(self, p: int) -> tuple[Simplex, ...]:
        return self._by_dim[p] if 0 <= p <= self.dimension else ()

    @cached_property
    def _index(self) -> dict[Simplex, int]:
        return {s: i for group in self._by_dim for i, s in enumerate(group)}

    def index(self, s: Simplex) -> int:
        return self._index[s]

    def face_counts(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self._by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in enumerate(self.face_counts()))

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        return self.simplices <= other.simplices

    def __len__(self) -> int:
        return len(self.simplices)


def coboundary(sc: SimplicialComplex, p: int) -> Matrix:
    """The matrix of d: C^p -> C^{p+1}."""
    rows = sc.faces(p + 1)
    cols = sc.faces(p)
    entries = [[0] * len(cols) for _ in rows]
    for r, tau in enumerate(rows):
        for i in range(len(tau)):
            entries[r][sc.index(tau[:i] + tau[i + 1:])] = (-1) ** i
    return Matrix.from_rows(entries, len(cols)) if rows else Matrix.zeros(0, len(cols))


def simplicial_cochain_complex(sc: SimplicialComplex) -> CochainComplex:
    if not sc.simplices:
        return CochainComplex.zero()
    dims = sc.face_counts()
    diffs = {p: coboundary(sc, p) for p in range(sc.dimension)}
    return CochainComplex.build(0, dims, diffs, sc.name)


def betti(sc: SimplicialComplex) -> GradedSpace:
    return cohomology(simplicial_cochain_complex(sc)).graded


def _selection(rows: Sequence[int], n: int) -> Matrix:
    """The len(rows) x n matrix picking out coordinates ``rows``."""
    return Matrix.from_rows([[int(j == r) for j in range(n)] for r in rows], n) if rows \
        else Matrix.zeros(0, n)


def relative_cochain_complex(sc: SimplicialComplex, sub: SimplicialComplex) -> CochainComplex:
    return relative_pair(sc, sub).sub


def relative_pair(sc: SimplicialComplex, sub: SimplicialComplex) -> ShortExactSequence:
    """``C(sc, sub) -> C(sc) -> C(sub)``: cochains vanishing on sub, all cochains, restriction."""
    if not sub.is_subcomplex_of(sc):
        extra = sorted(sub.simplices - sc.simplices)
        raise NotASubcomplex(f"simplex {extra[0]} of the subcomplex is not in the complex")
    full = simplicial_cochain_complex(sc)
    part = simplicial_cochain_complex(sub)
    keep = {p: [i for i, s in enumerate(sc.faces(p)) if s not in sub.simplices]
            for p in range(sc.dimension + 1)}
    on_sub = {p: [sc.index(s) for s in sub.faces(p)] for p in range(sub.dimension + 1)}
    if full.dims:
        rel_dims = [len(keep[p]) for p in full.degrees()]
        rel_diffs = {p: full.d(p).select_rows(keep.get(p + 1, [])).select_columns(keep[p])
                     for p in full.degrees()}
        rel = CochainComplex.build(0, rel_dims, rel_diffs)
    else:
        rel = CochainComplex.zero()
    inj = ChainMap.build(rel, full, {p: _selection(keep[p], full.dim(p)).T for p in rel.degrees()})
    surj = ChainMap.build(full, part, {p: _selection(on_sub.get(p, []), full.dim(p))
                                       for p in full.degrees()})
    return ShortExactSequence(inj, surj)


def relative_betti(sc: SimplicialComplex, sub: SimplicialComplex) -> GradedSpace:
    return cohomology(relative_cochain_complex(sc, sub)).graded


# --------------------------------------------------------------------------
# standard models

def point() -> SimplicialComplex:
    return SimplicialComplex.from_facets([[0]], "point")


def discrete(n: int, start: int = 0) -> SimplicialComplex:
    return SimplicialComplex.from_facets([[start + i] for i in range(n)], f"{n} points")


def path(n_vertices: int) -> SimplicialComplex:
    """An interval subdivided into ``n_vertices - 1`` edges."""
    if n_vertices == 1:
        return point()
    return SimplicialComplex.from_facets([[i, i + 1] for i in range(n_vertices - 1)], "interval")


def polygon(n: int) -> SimplicialComplex:
    """A circle as an n-gon, n >= 3."""
    if n < 3:
        raise SimplicialError("a polygon needs at least 3 vertices")
    return SimplicialComplex.from_facets([[i, (i + 1) % n] for i in range(n)], f"{n}-gon")


def simplex_boundary(n: int) -> SimplicialComplex:
    """The boundary of the n-simplex, a model of the (n-1)-sphere."""
    verts = range(n + 1)
    return SimplicialComplex.from_facets(combinations(verts, n), f"boundary of the {n}-simplex")


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets([range(n + 1)], f"{n}-simplex")


def subcomplex_on(sc: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """The full subcomplex spanned by ``vertices``."""
    vs = set(vertices)
    return SimplicialComplex(frozenset(s for s in sc.simplices if set(s) <= vs), "")


# --------------------------------------------------------------------------
# involutions

def _sort_sign(seq: Sequence[int]) -> tuple[Simplex, int]:
    """Sorted tuple and the sign of the sorting permutation."""
    items = list(seq)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return tuple(items), sign


@dataclass(frozen=True)
class SimplicialInvolution:
    complex: SimplicialComplex
    vertex_map: Mapping[int, int]

    def __post_init__(self):
        vm = dict(self.vertex_map)
        for v in self.complex.vertices:
            vm.setdefault(v, v)
        object.__setattr__(self, "vertex_map", vm)
        for v, w in vm.items():
            if vm.get(w) != v:
                raise NotInvolutive(f"vertex {v} -> {w} -> {vm.get(w)}")
        for s in self.complex.simplices:
            image = tuple(sorted(vm[v] for v in s))
            if image not in self.complex.simplices:
                raise NotSimplicial(f"simplex {s} is sent to {image}, which is not a simplex")

    @classmethod
    def identity(cls, sc: SimplicialComplex) -> SimplicialInvolution:
        return cls(sc, {v: v for v in sc.vertices})

    def cochain_map(self) -> ChainMap:
        """The pullback on oriented cochains: (t*c)(s) = c(t(s)) with orientation sign."""
        c = simplicial_cochain_complex(self.complex)
        blocks = {}
        for p in c.degrees():
            faces = self.complex.faces(p)
            rows = [[0] * len(faces) for _ in faces]
            for r, s in enumerate(faces):
                image, sign = _sort_sign([self.vertex_map[v] for v in s])
                rows[r][self.complex.index(image)] = sign
            blocks[p] = Matrix.from_rows(rows, len(faces))
        return ChainMap.build(c, c, blocks)


@dataclass(frozen=True)
class EigenCohomology:
    """One eigenspace of an involution on cohomology, with cocycle representatives."""

    graded: GradedSpace
    representatives: dict[int, Matrix]
    sign: int

    def dim(self, k: int) -> int:
        return self.graded[k]


def eigen_cohomology(inv: SimplicialInvolution, sign: int) -> EigenCohomology:
    f = inv.cochain_map()
    h = cohomology(f.source)
    induced = induced_map(f)
    dims, reps = {}, {}
    for k in f.source.degrees():
        if h.dim(k) == 0:
            continue
        space = eigenspace(induced[k], sign)
        dims[k] = space.dim
        reps[k] = h.reps(k) @ space.matrix()
    return EigenCohomology(GradedSpace.from_dict(dims), reps, sign)


def anti_invariants(inv: SimplicialInvolution) -> EigenCohomology:
    """The (-1)-eigenspace of the induced involution on each H^k."""
    return eigen_cohomology(inv, -1)


def invariants(inv: SimplicialInvolution) -> EigenCohomology:
    return eigen_cohomology(inv, 1)


def anti_invariant_subcomplex(inv: SimplicialInvolution) -> CochainComplex:
    """Cochains c with t*c = -c.  Over Q its cohomology is the anti-invariant cohomology."""
    f = inv.cochain_map()
    c = f.source
    if not c.dims:
        return c
    spans = {k: eigenspace(f.block(k), -1) for k in c.degrees()}
    return subcomplex(c, spans)[0]


__all__ = [
    "EigenCohomology", "NotASubcomplex", "NotInvolutive", "NotSimplicial", "SimplicialComplex",
    "SimplicialError", "SimplicialInvolution", "anti_invariant_subcomplex", "anti_invariants",
    "betti", "coboundary", "discrete", "eigen_cohomology", "full_simplex", "invariants", "path",
    "point", "polygon", "relative_betti", "relative_cochain_complex", "relative_pair",
    "simplex_boundary", "simplicial_cochain_complex", "subcomplex_on",
]
