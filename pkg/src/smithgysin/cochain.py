"""Cochain complexes of finite-dimensional rational vector spaces.

Degrees outside a complex's window are zero.  Chain maps commute with the
differentials without signs, whatever their degree shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .linalg import (
    Echelon,
    Matrix,
    Subspace,
    Vector,
    block_diag,
    complete_basis,
    image_basis,
    inverse,
    kernel_basis,
    left_inverse,
)


class StructuralError(Exception):
    """Shapes or wiring are wrong, so the mathematical check cannot even start."""


class InvalidComplex(Exception):
    def __init__(self, report: ComplexReport):
        self.report = report
        super().__init__(f"d o d != 0 in degrees {list(report.defects)}")


class InvalidChainMap(Exception):
    def __init__(self, report: ChainMapReport):
        self.report = report
        super().__init__(f"chain map fails to commute in degrees {list(report.defects)}")


@dataclass(frozen=True)
class GradedSpace:
    """Dimensions per degree.  The window is trimmed, so equal spaces compare equal."""

    lo: int
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in dims):
            raise ValueError(f"negative dimension in {dims}")
        lo = self.lo
        while dims and dims[0] == 0:
            dims, lo = dims[1:], lo + 1
        while dims and dims[-1] == 0:
            dims = dims[:-1]
        if not dims:
            lo = 0
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "lo", lo)

    @classmethod
    def from_dict(cls, dims: Mapping[int, int]) -> GradedSpace:
        nz = {k: v for k, v in dims.items() if v}
        if not nz:
            return cls(0, ())
        lo, hi = min(nz), max(nz)
        return cls(lo, tuple(nz.get(k, 0) for k in range(lo, hi + 1)))

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    def __getitem__(self, k: int) -> int:
        i = k - self.lo
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def degrees(self) -> range:
        return range(self.lo, self.lo + len(self.dims))

    def shifted(self, r: int) -> GradedSpace:
        return GradedSpace(self.lo + r, self.dims)

    def __add__(self, other: GradedSpace) -> GradedSpace:
        ks = set(self.degrees()) | set(other.degrees())
        return GradedSpace.from_dict({k: self[k] + other[k] for k in ks})

    def as_tuple(self, lo: int, hi: int) -> tuple[int, ...]:
        return tuple(self[k] for k in range(lo, hi + 1))

    def __repr__(self) -> str:
        if not self.dims:
            return "GradedSpace(0)"
        return f"GradedSpace(lo={self.lo}, dims={self.dims})"


@dataclass(frozen=True, eq=False)
class CochainComplex:
    """``diffs[i]`` is the differential out of degree ``lo + i``.

    Use :meth:`build` rather than the raw constructor; it fills in zero
    differentials and trims zero degrees off the window.
    """

    lo: int
    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, lo: int, dims: Sequence[int], differentials: Mapping[int, Matrix] | None = None,
              name: str = "") -> CochainComplex:
        dims = tuple(int(d) for d in dims)
        differentials = dict(differentials or {})
        hi = lo + len(dims) - 1
        for k, m in differentials.items():
            if not lo <= k <= hi:
                if m.ncols:
                    raise StructuralError(f"differential in degree {k} outside window [{lo}, {hi}]")
        diffs = []
        for i, n in enumerate(dims):
            k = lo + i
            target = dims[i + 1] if i + 1 < len(dims) else 0
            m = differentials.get(k)
            if m is None:
                m = Matrix.zeros(target, n)
            if m.shape != (target, n):
                raise StructuralError(
                    f"differential d^{k} has shape {m.shape}, expected {(target, n)}")
            diffs.append(m)
        # trim zero-dimensional degrees at both ends
        start, stop = 0, len(dims)
        while start < stop and dims[start] == 0:
            start += 1
        while stop > start and dims[stop - 1] == 0:
            stop -= 1
        if start == stop:
            return cls(0, (), (), name)
        return cls(lo + start, dims[start:stop], tuple(diffs[start:stop]), name)

    @classmethod
    def zero(cls) -> CochainComplex:
        return cls(0, (), ())

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CochainComplex):
            return NotImplemented
        return (self.lo, self.dims, self.diffs) == (other.lo, other.dims, other.diffs)

    def __hash__(self):
        return hash((self.lo, self.dims))

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    @property
    def graded(self) -> GradedSpace:
        return GradedSpace(self.lo, self.dims)

    def degrees(self) -> range:
        return range(self.lo, self.lo + len(self.dims))

    def dim(self, k: int) -> int:
        i = k - self.lo
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def d(self, k: int) -> Matrix:
        i = k - self.lo
        if 0 <= i < len(self.dims):
            return self.diffs[i]
        return Matrix.zeros(self.dim(k + 1), self.dim(k))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.dim(k) for k in self.degrees())

    @cached_property
    def _cohomology(self) -> CohomologyResult:
        return _compute_cohomology(self)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"CochainComplex{tag}(lo={self.lo}, dims={self.dims})"


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Blocks ``f^k : C^k -> D^{k+shift}`` indexed by source degree."""

    source: CochainComplex
    target: CochainComplex
    shift: int
    blocks: Mapping[int, Matrix]

    @classmethod
    def build(cls, source: CochainComplex, target: CochainComplex,
              blocks: Mapping[int, Matrix] | None = None, shift: int = 0) -> ChainMap:
        blocks = dict(blocks or {})
        full = {}
        for k in source.degrees():
            m = blocks.pop(k, None)
            shape = (target.dim(k + shift), source.dim(k))
            if m is None:
                m = Matrix.zeros(*shape)
            if m.shape != shape:
                raise StructuralError(f"block in degree {k} has shape {m.shape}, expected {shape}")
            full[k] = m
        for k, m in blocks.items():
            if m.ncols:
                raise StructuralError(f"block in degree {k} lies outside the source window")
        return cls(source, target, shift, full)

    @classmethod
    def identity(cls, c: CochainComplex) -> ChainMap:
        return cls.build(c, c, {k: Matrix.identity(c.dim(k)) for k in c.degrees()})

    @classmethod
    def zero(cls, source: CochainComplex, target: CochainComplex, shift: int = 0) -> ChainMap:
        return cls.build(source, target, {}, shift)

    def block(self, k: int) -> Matrix:
        m = self.blocks.get(k)
        if m is None:
            return Matrix.zeros(self.target.dim(k + self.shift), self.source.dim(k))
        return m

    def __matmul__(self, other: ChainMap) -> ChainMap:
        """``self o other``."""
        if other.target != self.source:
            raise StructuralError("composition of chain maps with mismatched endpoints")
        return ChainMap.build(other.source, self.target,
                              {k: self.block(k + other.shift) @ other.block(k)
                               for k in other.source.degrees()},
                              shift=self.shift + other.shift)

    def __neg__(self) -> ChainMap:
        return ChainMap(self.source, self.target, self.shift, {k: -m for k, m in self.blocks.items()})

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if (self.source != other.source or self.target != other.target
                or self.shift != other.shift):
            return False
        ks = set(self.blocks) | set(other.blocks)
        return all(self.block(k) == other.block(k) for k in ks)

    __hash__ = None

    @cached_property
    def _induced(self) -> dict[int, Matrix]:
        return induced_map(self)


@dataclass(frozen=True)
class ComplexReport:
    defects: dict[int, Matrix]

    @property
    def ok(self) -> bool:
        return not self.defects


@dataclass(frozen=True)
class ChainMapReport:
    defects: dict[int, Matrix]

    @property
    def ok(self) -> bool:
        return not self.defects


@dataclass(frozen=True)
class CohomologyResult:
    """Cohomology with explicit cocycle representatives.

    ``representatives[k]`` is an ``dim C^k x dim H^k`` matrix whose columns are
    cocycles; ``projection[k]`` sends a cocycle to its class coordinates, so
    ``projection[k] @ representatives[k]`` is the identity.
    """

    graded: GradedSpace
    representatives: dict[int, Matrix]
    projection: dict[int, Matrix]
    source_dims: dict[int, int]

    def dim(self, k: int) -> int:
        return self.graded[k]

    def reps(self, k: int) -> Matrix:
        m = self.representatives.get(k)
        return m if m is not None else Matrix.zeros(self.source_dims.get(k, 0), 0)

    def proj(self, k: int) -> Matrix:
        m = self.projection.get(k)
        return m if m is not None else Matrix.zeros(0, self.source_dims.get(k, 0))


def validate_complex(c: CochainComplex) -> ComplexReport:
    defects = {}
    for k in c.degrees():
        if c.d(k).shape != (c.dim(k + 1), c.dim(k)):
            raise StructuralError(f"d^{k} has shape {c.d(k).shape}")
        dd = c.d(k + 1) @ c.d(k)
        if not dd.is_zero():
            defects[k] = dd
    return ComplexReport(defects)


def _compute_cohomology(c: CochainComplex) -> CohomologyResult:
    report = validate_complex(c)
    if not report.ok:
        raise InvalidComplex(report)
    reps, projs, dims = {}, {}, {}
    for k in c.degrees():
        n = c.dim(k)
        cocycles = kernel_basis(c.d(k))
        boundaries = image_basis(c.d(k - 1))
        if cocycles.dim == boundaries.dim:
            continue
        ech = Echelon(n)
        for b in boundaries.basis:
            ech.add(b)
        chosen: list[Vector] = [z for z in cocycles.basis if ech.add(z)]
        dims[k] = len(chosen)
        rest = complete_basis(n, list(boundaries.basis) + chosen)
        full = Matrix.from_columns(list(boundaries.basis) + chosen + rest, n)
        inv = inverse(full)
        b = boundaries.dim
        reps[k] = Matrix.from_columns(chosen, n)
        projs[k] = inv.select_rows(range(b, b + len(chosen)))
    return CohomologyResult(GradedSpace.from_dict(dims), reps, projs,
                            {k: c.dim(k) for k in c.degrees()})


def cohomology(c: CochainComplex) -> CohomologyResult:
    """Cohomology of a valid complex (cached on the complex)."""
    return c._cohomology


def validate_chain_map(f: ChainMap) -> ChainMapReport:
    defects = {}
    ks = set(f.source.degrees()) | {k - 1 for k in f.source.degrees()}
    for k in sorted(ks):
        b = f.block(k)
        if b.shape != (f.target.dim(k + f.shift), f.source.dim(k)):
            raise StructuralError(f"block {k} has shape {b.shape}")
        diff = f.target.d(k + f.shift) @ b - f.block(k + 1) @ f.source.d(k)
        if not diff.is_zero():
            defects[k] = diff
    return ChainMapReport(defects)


def induced_map(f: ChainMap) -> dict[int, Matrix]:
    """Matrices ``H^k(source) -> H^{k+shift}(target)`` for each source degree."""
    report = validate_chain_map(f)
    if not report.ok:
        raise InvalidChainMap(report)
    hs, ht = cohomology(f.source), cohomology(f.target)
    out = {}
    for k in f.source.degrees():
        out[k] = ht.proj(k + f.shift) @ f.block(k) @ hs.reps(k)
    return out


def induced_block(f: ChainMap, k: int) -> Matrix:
    """The degree-k piece of :func:`induced_map`, zero-shaped outside the window."""
    m = f._induced.get(k)
    if m is None:
        return Matrix.zeros(cohomology(f.target).dim(k + f.shift), cohomology(f.source).dim(k))
    return m


# --------------------------------------------------------------------------
# combinators

def shift(c: CochainComplex, r: int) -> CochainComplex:
    """Move degree k to degree k + r; matrices are untouched."""
    return CochainComplex(c.lo + r, c.dims, c.diffs, c.name) if c.dims else c


def shift_map(f: ChainMap, r: int, source: CochainComplex | None = None,
              target: CochainComplex | None = None) -> ChainMap:
    source = source or shift(f.source, r)
    target = target or shift(f.target, r)
    return ChainMap.build(source, target, {k + r: m for k, m in f.blocks.items()}, f.shift)


def direct_sum(*cs: CochainComplex) -> CochainComplex:
    if not cs:
        return CochainComplex.zero()
    nonempty = [c for c in cs if c.dims]
    if not nonempty:
        return CochainComplex.zero()
    lo = min(c.lo for c in nonempty)
    hi = max(c.hi for c in nonempty)
    dims = [sum(c.dim(k) for c in cs) for k in range(lo, hi + 1)]
    diffs = {k: block_diag(*(c.d(k) for c in cs)) for k in range(lo, hi + 1)}
    return CochainComplex.build(lo, dims, diffs)


def direct_sum_maps(*fs: ChainMap, source: CochainComplex | None = None,
                    target: CochainComplex | None = None) -> ChainMap:
    if len({f.shift for f in fs}) > 1:
        raise StructuralError("direct sum of chain maps with different shifts")
    r = fs[0].shift
    source = source or direct_sum(*(f.source for f in fs))
    target = target or direct_sum(*(f.target for f in fs))
    return ChainMap.build(source, target,
                          {k: block_diag(*(f.block(k) for f in fs)) for k in source.degrees()}, r)


def subcomplex(c: CochainComplex, spans: Mapping[int, Subspace]) -> tuple[CochainComplex, ChainMap]:
    """The subcomplex spanned degreewise by ``spans`` and its inclusion.

    Raises StructuralError if the spans are not closed under the differential.
    """
    bases = {}
    for k in c.degrees():
        s = spans.get(k, Subspace.zero(c.dim(k)))
        if s.ambient_dim != c.dim(k):
            raise StructuralError(f"span in degree {k} lives in the wrong space")
        bases[k] = s.matrix()
    diffs = {}
    for k in c.degrees():
        u, nxt = bases[k], bases.get(k + 1)
        image = c.d(k) @ u
        if nxt is None:
            if not image.is_zero():
                raise StructuralError(f"span not closed under d in degree {k}")
            diffs[k] = Matrix.zeros(0, u.ncols)
            continue
        if nxt.ncols == 0:
            if not image.is_zero():
                raise StructuralError(f"span not closed under d in degree {k}")
            diffs[k] = Matrix.zeros(0, u.ncols)
            continue
        linv = left_inverse(nxt)
        coords = linv @ image
        if nxt @ coords != image:
            raise StructuralError(f"span not closed under d in degree {k}")
        diffs[k] = coords
    dims = [bases[k].ncols for k in c.degrees()]
    sub = CochainComplex.build(c.lo, dims, diffs) if dims else CochainComplex.zero()
    incl = ChainMap.build(sub, c, {k: bases[k] for k in sub.degrees()})
    return sub, incl


def quotient(c: CochainComplex, spans: Mapping[int, Subspace]) -> tuple[CochainComplex, ChainMap]:
    """The quotient of ``c`` by a subcomplex and the projection onto it.

    The quotient basis is the standard-basis complement chosen by
    :func:`complete_basis`.
    """
    projs, comps = {}, {}
    for k in c.degrees():
        s = spans.get(k, Subspace.zero(c.dim(k)))
        n = c.dim(k)
        rest = complete_basis(n, s.basis)
        full = Matrix.from_columns(list(s.basis) + rest, n)
        projs[k] = inverse(full).select_rows(range(s.dim, n))
        comps[k] = Matrix.from_columns(rest, n)
    diffs = {}
    for k in c.degrees():
        nxt = projs.get(k + 1)
        image = c.d(k) @ comps[k]
        diffs[k] = nxt @ image if nxt is not None else Matrix.zeros(0, comps[k].ncols)
    dims = [comps[k].ncols for k in c.degrees()]
    q = CochainComplex.build(c.lo, dims, diffs) if dims else CochainComplex.zero()
    proj = ChainMap.build(c, q, projs)
    report = validate_chain_map(proj)
    if not report.ok:
        raise StructuralError("spans are not a subcomplex; projection does not commute with d")
    return q, proj


def closure(c: CochainComplex, spans: Mapping[int, Subspace]) -> dict[int, Subspace]:
    """Smallest subcomplex containing the given spans: V^k + d V^{k-1}."""
    out = {}
    for k in c.degrees():
        v = spans.get(k, Subspace.zero(c.dim(k)))
        prev = spans.get(k - 1)
        if prev is not None and prev.dim:
            v = v + Subspace.span(c.dim(k), (c.d(k - 1) @ prev.matrix()).columns())
        out[k] = v
    return out


def image_spans(f: ChainMap) -> dict[int, Subspace]:
    """Degreewise images of a shift-0 chain map, as spans in the target."""
    out = {}
    for k in f.target.degrees():
        out[k] = image_basis(f.block(k)) if k in f.source.degrees() else Subspace.zero(f.target.dim(k))
    return out


def rebase(c: CochainComplex, g: Mapping[int, Matrix]) -> tuple[CochainComplex, ChainMap]:
    """Change basis by invertible ``g[k]``; returns the new complex and the iso c -> new."""
    ginv = {k: inverse(g[k]) for k in c.degrees()}
    diffs = {}
    for k in c.degrees():
        nxt = g.get(k + 1)
        diffs[k] = (nxt @ c.d(k) @ ginv[k]) if nxt is not None else c.d(k)
    new = CochainComplex.build(c.lo, c.dims, diffs)
    iso = ChainMap.build(c, new, {k: g[k] for k in c.degrees()})
    return new, iso

