"""Braids of long exact sequences and the splice they support.

Six families A..F of graded spaces, indexed by an integer k, are wired by
twelve arrows into four strands::

    (1)  A^k -> B^k -> F^k -> A^{k+1}
    (2)  D^k -> F^k -> C^k -> D^{k+1}
    (3)  E^k -> B^k -> C^k -> E^{k+1}
    (4)  A^k -> E^k -> D^k -> A^{k+1}

The arcs A->B, B->C, C->D, D->A must equal the two-step composites through
the middle row (triangles), and E->F, F->E^{+1} must agree along both
routes (diamonds).  A commutative braid with exact strands splices into

    E^k -(3,4)-> B^k + D^k -(1)-(2)-> F^k -(3)(2)-> E^{k+1}

and, reading around F instead,

    F^k -(1,2)-> A^{k+1} + C^k -(4)-(3)-> E^{k+1} -(1)(3)-> F^{k+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .cochain import (
    ChainMap,
    CochainComplex,
    StructuralError,
    cohomology,
    induced_block,
    quotient,
    subcomplex,
)
from .exactness import (
    ExactnessReport,
    LongSequence,
    Node,
    ShortExactSequence,
    _connecting,
    check_exact,
    validate_ses,
)
from .linalg import Matrix, Subspace, hstack, left_inverse, vstack

FAMILIES = ("A", "B", "C", "D", "E", "F")

# arrow key -> (source family, target family, degree step)
ARROWS: dict[str, tuple[str, str, int]] = {
    "AB": ("A", "B", 0), "BF": ("B", "F", 0), "FA": ("F", "A", 1),
    "DF": ("D", "F", 0), "FC": ("F", "C", 0), "CD": ("C", "D", 1),
    "EB": ("E", "B", 0), "BC": ("B", "C", 0), "CE": ("C", "E", 1),
    "AE": ("A", "E", 0), "ED": ("E", "D", 0), "DA": ("D", "A", 1),
}

STRANDS: dict[int, tuple[str, str, str]] = {
    1: ("AB", "BF", "FA"),
    2: ("DF", "FC", "CD"),
    3: ("EB", "BC", "CE"),
    4: ("AE", "ED", "DA"),
}


class BraidNotExact(Exception):
    def __init__(self, report: BraidReport):
        self.report = report
        super().__init__(report.summary())


@dataclass(frozen=True, eq=False)
class Braid:
    """Node dimensions per family and arrow matrices per k, for k in [lo, hi].

    ``offsets[f]`` converts the braid index k of family f into an absolute
    cohomological degree, and ``labels[f]`` names the underlying object.
    Node objects are created once here; strands and splices share them.
    """

    lo: int
    hi: int
    dims: Mapping[str, tuple[int, ...]]
    arrows: Mapping[str, tuple[Matrix, ...]]
    labels: Mapping[str, str] = field(default_factory=lambda: {f: f for f in FAMILIES})
    offsets: Mapping[str, int] = field(default_factory=lambda: {f: 0 for f in FAMILIES})
    _nodes: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.hi - self.lo + 1
        for f in FAMILIES:
            if f not in self.dims:
                raise StructuralError(f"braid has no family {f}")
            if len(self.dims[f]) != n:
                raise StructuralError(f"family {f} needs {n} dimensions, got {len(self.dims[f])}")
        for key in ARROWS:
            if key not in self.arrows:
                raise StructuralError(f"braid is missing arrow family {key}")
            if len(self.arrows[key]) != n:
                raise StructuralError(f"arrow family {key} needs {n} matrices")
            for k in range(self.lo, self.hi + 1):
                m = self.arrows[key][k - self.lo]
                want = self._shape(key, k)
                if m.shape != want:
                    raise StructuralError(f"arrow {key} at k={k} has shape {m.shape}, expected {want}")
        for f in FAMILIES:
            for k in range(self.lo - 1, self.hi + 2):
                self._nodes[(f, k)] = Node(
                    f"{self.labels.get(f, f)}^{k + self.offsets.get(f, 0)}",
                    k + self.offsets.get(f, 0), self.dim(f, k))

    def __eq__(self, other):
        if not isinstance(other, Braid):
            return NotImplemented
        return (self.lo, self.hi, dict(self.dims), {k: tuple(v) for k, v in self.arrows.items()},
                dict(self.labels), dict(self.offsets)) == (
            other.lo, other.hi, dict(other.dims), {k: tuple(v) for k, v in other.arrows.items()},
            dict(other.labels), dict(other.offsets))

    __hash__ = None

    def dim(self, f: str, k: int) -> int:
        if self.lo <= k <= self.hi:
            return self.dims[f][k - self.lo]
        return 0

    def _shape(self, key: str, k: int) -> tuple[int, int]:
        src, dst, step = ARROWS[key]
        return (self.dim(dst, k + step), self.dim(src, k))

    def node(self, f: str, k: int) -> Node:
        n = self._nodes.get((f, k))
        if n is None:
            n = Node(f"{self.labels.get(f, f)}^{k + self.offsets.get(f, 0)}",
                     k + self.offsets.get(f, 0), 0)
        return n

    def arrow(self, key: str, k: int) -> Matrix:
        if self.lo <= k <= self.hi:
            return self.arrows[key][k - self.lo]
        return Matrix.zeros(*self._shape(key, k))

    def strand(self, s: int) -> LongSequence:
        keys = STRANDS[s]
        fams = [ARROWS[key][0] for key in keys]
        nodes, arrows = [], []
        for k in range(self.lo, self.hi + 1):
            nodes += [self.node(f, k) for f in fams]
            arrows += [self.arrow(key, k) for key in keys]
        return LongSequence(tuple(nodes), tuple(arrows[:-1]), 3, f"strand {s}")

    def perturbed(self, key: str, k: int, delta: Matrix) -> Braid:
        arrows = {a: tuple(v) for a, v in self.arrows.items()}
        seq = list(arrows[key])
        seq[k - self.lo] = seq[k - self.lo] + delta
        arrows[key] = tuple(seq)
        return Braid(self.lo, self.hi, dict(self.dims), arrows, dict(self.labels), dict(self.offsets))


@dataclass(frozen=True)
class Defect:
    kind: str      # triangle | diamond
    name: str
    k: int
    matrix: Matrix


@dataclass(frozen=True)
class BraidReport:
    defects: tuple[Defect, ...]
    strands: dict[int, ExactnessReport]

    @property
    def commutative(self) -> bool:
        return not self.defects

    @property
    def exact(self) -> bool:
        return all(r.exact for r in self.strands.values())

    @property
    def ok(self) -> bool:
        return self.commutative and self.exact

    def summary(self) -> str:
        parts = [f"{d.kind} {d.name} fails at k={d.k}" for d in self.defects]
        parts += [f"strand {s} inexact at nodes {r.failing_nodes() or list(r.not_a_complex)}"
                  for s, r in self.strands.items() if not r.exact]
        return "; ".join(parts) if parts else "commutative exact"


def _relations(b: Braid, k: int):
    a = b.arrow
    yield "triangle", "A->B = A->E->B", a("AB", k), a("EB", k) @ a("AE", k)
    yield "triangle", "B->C = B->F->C", a("BC", k), a("FC", k) @ a("BF", k)
    yield "triangle", "C->D = C->E->D", a("CD", k), a("ED", k + 1) @ a("CE", k)
    yield "triangle", "D->A = D->F->A", a("DA", k), a("FA", k) @ a("DF", k)
    yield "diamond", "E->B->F = E->D->F", a("BF", k) @ a("EB", k), a("DF", k) @ a("ED", k)
    yield "diamond", "F->C->E = F->A->E", a("CE", k) @ a("FC", k), a("AE", k + 1) @ a("FA", k)


def validate_braid(b: Braid) -> BraidReport:
    defects = []
    for k in range(b.lo - 1, b.hi + 1):
        for kind, name, lhs, rhs in _relations(b, k):
            if lhs != rhs:
                defects.append(Defect(kind, name, k, lhs - rhs))
    strands = {s: check_exact(b.strand(s)) for s in STRANDS}
    return BraidReport(tuple(defects), strands)


def _sum_node(parts: list[Node]) -> Node:
    label = " + ".join(p.label for p in parts)
    return Node(label, parts[0].degree, sum(p.dim for p in parts), tuple(parts))


def splice(b: Braid, pivot: str = "E", check: bool = True) -> LongSequence:
    """The long sequence through the E (or F) family of a commutative exact braid."""
    if pivot not in ("E", "F"):
        raise ValueError("pivot must be 'E' or 'F'")
    if check:
        report = validate_braid(b)
        if not report.ok:
            raise BraidNotExact(report)
    a = b.arrow
    nodes, arrows = [], []
    for k in range(b.lo, b.hi + 1):
        if pivot == "E":
            nodes += [b.node("E", k), _sum_node([b.node("B", k), b.node("D", k)]), b.node("F", k)]
            arrows += [
                vstack([a("EB", k), a("ED", k)], ncols=b.dim("E", k)),
                hstack([a("BF", k), -a("DF", k)], nrows=b.dim("F", k)),
                a("CE", k) @ a("FC", k),
            ]
        else:
            nodes += [b.node("F", k), _sum_node([b.node("A", k + 1), b.node("C", k)]), b.node("E", k + 1)]
            arrows += [
                vstack([a("FA", k), a("FC", k)], ncols=b.dim("F", k)),
                hstack([a("AE", k + 1), -a("CE", k)], nrows=b.dim("E", k + 1)),
                a("BF", k + 1) @ a("EB", k + 1),
            ]
    return LongSequence(tuple(nodes), tuple(arrows[:-1]), 3, f"splice {pivot}")


# --------------------------------------------------------------------------
# braids from a commuting square of short exact sequences

@dataclass(frozen=True)
class DoubleSesDiagram:
    """Two rows and two columns of short exact sequences::

        P -> R -> C        (row 1)
        S -> T -> C        (row 2)
        P -> S -> Q        (column 1)
        R -> T -> Q        (column 2)

    with P->R->T = P->S->T, R->C = R->T->C and S->Q = S->T->Q.
    """

    p_r: ChainMap
    r_c: ChainMap
    s_t: ChainMap
    t_c: ChainMap
    p_s: ChainMap
    s_q: ChainMap
    r_t: ChainMap
    t_q: ChainMap

    @property
    def complexes(self) -> dict[str, CochainComplex]:
        return {"P": self.p_r.source, "R": self.r_c.source, "S": self.s_t.source,
                "T": self.t_c.source, "C": self.r_c.target, "Q": self.t_q.target}

    def rows_and_columns(self) -> dict[str, ShortExactSequence]:
        return {
            "row1": ShortExactSequence(self.p_r, self.r_c),
            "row2": ShortExactSequence(self.s_t, self.t_c),
            "col1": ShortExactSequence(self.p_s, self.s_q),
            "col2": ShortExactSequence(self.r_t, self.t_q),
        }


@dataclass(frozen=True)
class DoubleSesReport:
    ses: dict[str, tuple[tuple[int, str], ...]]
    squares: tuple[tuple[str, int], ...]

    @property
    def ok(self) -> bool:
        return not self.squares and not any(self.ses.values())

    def summary(self) -> str:
        parts = [f"{name}: degree {k} {msg}" for name, ds in self.ses.items() for k, msg in ds]
        parts += [f"square {name} fails in degree {k}" for name, k in self.squares]
        return "; ".join(parts) if parts else "ok"


class InvalidDiagram(Exception):
    def __init__(self, report: DoubleSesReport):
        self.report = report
        super().__init__(report.summary())


def validate_double_ses(d: DoubleSesDiagram) -> DoubleSesReport:
    cx = d.complexes
    wiring = [("p_s", d.p_s.source, cx["P"]), ("r_t", d.r_t.source, cx["R"]),
              ("s_t", d.s_t.target, cx["T"]), ("t_c", d.t_c.target, cx["C"]),
              ("s_q", d.s_q.source, cx["S"]), ("s_q", d.s_q.target, cx["Q"]),
              ("r_t", d.r_t.target, cx["T"]), ("p_s", d.p_s.target, cx["S"])]
    for name, got, want in wiring:
        if got != want:
            raise StructuralError(f"map {name} has the wrong endpoint")
    ses = {name: validate_ses(s).defects for name, s in d.rows_and_columns().items()}
    squares = []
    pairs = [("P->R->T = P->S->T", d.r_t @ d.p_r, d.s_t @ d.p_s),
             ("R->C = R->T->C", d.r_c, d.t_c @ d.r_t),
             ("S->Q = S->T->Q", d.s_q, d.t_q @ d.s_t)]
    for name, f, g in pairs:
        for k in sorted(set(f.source.degrees())):
            if f.block(k) != g.block(k):
                squares.append((name, k))
    return DoubleSesReport(ses, tuple(squares))


def braid_from_double_ses(d: DoubleSesDiagram, check: bool = True) -> Braid:
    """Assemble the braid of the four long exact sequences of ``d``.

    Families: A = H(R), B = H(C), C = H^{+1}(S), D = H(Q), E = H(T),
    F = H^{+1}(P).  Strand (1) is row 1, (3) is row 2, (2) is column 1 and
    (4) is column 2.  The connecting maps of the two columns enter with a
    minus sign: with unsigned connecting maps the square E->B->F vs E->D->F
    anticommutes, and negating the column connecting maps is the one choice
    that fixes it while keeping every triangle.
    """
    if check:
        report = validate_double_ses(d)
        if not report.ok:
            raise InvalidDiagram(report)
    cx = d.complexes
    h = {name: cohomology(c) for name, c in cx.items()}
    nonempty = [c for c in cx.values() if c.dims]
    lo = min((c.lo for c in nonempty), default=0) - 2
    hi = max((c.hi for c in nonempty), default=0) + 1
    ses = d.rows_and_columns()

    def delta(name, k, sign=1):
        s = ses[name]
        m = _connecting(s, k, "pivot", None)
        return -m if sign < 0 else m

    fam = {"A": ("R", 0), "B": ("C", 0), "C": ("S", 1), "D": ("Q", 0), "E": ("T", 0), "F": ("P", 1)}
    dims = {f: tuple(h[src].dim(k + off) for k in range(lo, hi + 1)) for f, (src, off) in fam.items()}
    builders = {
        "AB": lambda k: induced_block(d.r_c, k),
        "BF": lambda k: delta("row1", k),
        "FA": lambda k: induced_block(d.p_r, k + 1),
        "DF": lambda k: delta("col1", k, -1),
        "FC": lambda k: induced_block(d.p_s, k + 1),
        "CD": lambda k: induced_block(d.s_q, k + 1),
        "EB": lambda k: induced_block(d.t_c, k),
        "BC": lambda k: delta("row2", k),
        "CE": lambda k: induced_block(d.s_t, k + 1),
        "AE": lambda k: induced_block(d.r_t, k),
        "ED": lambda k: induced_block(d.t_q, k),
        "DA": lambda k: delta("col2", k, -1),
    }
    arrows = {key: tuple(fn(k) for k in range(lo, hi + 1)) for key, fn in builders.items()}
    labels = {f: f"H({src})" for f, (src, _) in fam.items()}
    offsets = {f: off for f, (_, off) in fam.items()}
    return Braid(lo, hi, dims, arrows, labels, offsets)


def _coords(basis: Matrix, vectors: Matrix) -> Matrix:
    """Coordinates of the columns of ``vectors`` in the column basis ``basis``."""
    if basis.ncols == 0:
        return Matrix.zeros(0, vectors.ncols)
    return left_inverse(basis) @ vectors


def double_ses_from_subcomplexes(t: CochainComplex, r_spans: dict[int, Subspace],
                                 s_spans: dict[int, Subspace]) -> DoubleSesDiagram:
    """The double diagram of two subcomplexes R, S of T with R + S = T.

    P = R n S, C = T/S and Q = T/R.
    """
    p_spans = {k: r_spans[k].intersect(s_spans[k]) for k in t.degrees()}
    for k in t.degrees():
        if (r_spans[k] + s_spans[k]).dim != t.dim(k):
            raise ValueError(f"R + S does not span T in degree {k}")
    r, r_t = subcomplex(t, r_spans)
    s, s_t = subcomplex(t, s_spans)
    p, p_t = subcomplex(t, p_spans)
    c, t_c = quotient(t, s_spans)
    q, t_q = quotient(t, r_spans)
    p_r = ChainMap.build(p, r, {k: _coords(r_t.block(k), p_t.block(k)) for k in p.degrees()})
    p_s = ChainMap.build(p, s, {k: _coords(s_t.block(k), p_t.block(k)) for k in p.degrees()})
    r_c = t_c @ r_t
    s_q = t_q @ s_t
    return DoubleSesDiagram(p_r=p_r, r_c=r_c, s_t=s_t, t_c=t_c, p_s=p_s, s_q=s_q, r_t=r_t, t_q=t_q)


def zero_braid(lo: int = 0, hi: int = 0) -> Braid:
    n = hi - lo + 1
    return Braid(lo, hi, {f: (0,) * n for f in FAMILIES},
                 {key: (Matrix.zeros(0, 0),) * n for key in ARROWS})


__all__ = [
    "ARROWS", "Braid", "BraidNotExact", "BraidReport", "DoubleSesDiagram", "DoubleSesReport",
    "double_ses_from_subcomplexes",
    "FAMILIES", "InvalidDiagram", "STRANDS", "braid_from_double_ses", "splice",
    "validate_braid", "validate_double_ses", "zero_braid",
]
