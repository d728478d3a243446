"""Short and long exact sequences.

A long sequence is checked by treating it as a cochain complex (node i in
degree i) and computing its cohomology, so exactness defects come out as
dimensions rather than a yes/no.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .cochain import (
    ChainMap,
    CochainComplex,
    StructuralError,
    cohomology,
    induced_block,
    validate_chain_map,
    validate_complex,
)
from .linalg import Matrix, kernel_basis, rank, solve


# --------------------------------------------------------------------------
# short exact sequences

@dataclass(frozen=True)
class ShortExactSequence:
    """``0 -> A --inj--> B --surj--> C -> 0``, both maps of degree 0."""

    inj: ChainMap
    surj: ChainMap

    @property
    def sub(self) -> CochainComplex:
        return self.inj.source

    @property
    def middle(self) -> CochainComplex:
        return self.inj.target

    @property
    def quotient(self) -> CochainComplex:
        return self.surj.target

    def window(self) -> tuple[int, int]:
        cs = [c for c in (self.sub, self.middle, self.quotient) if c.dims]
        if not cs:
            return (0, -1)
        return (min(c.lo for c in cs), max(c.hi for c in cs))


@dataclass(frozen=True)
class SesReport:
    defects: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.defects


def validate_ses(s: ShortExactSequence) -> SesReport:
    if s.inj.shift or s.surj.shift:
        raise StructuralError("maps of a short exact sequence must have degree 0")
    if s.inj.target != s.surj.source:
        raise StructuralError("inj and surj do not share the middle complex")
    defects: list[tuple[int, str]] = []
    for name, f in (("inj", s.inj), ("surj", s.surj)):
        for k in validate_chain_map(f).defects:
            defects.append((k, f"{name} is not a chain map"))
    lo, hi = s.window()
    for k in range(lo, hi + 1):
        i, p = s.inj.block(k), s.surj.block(k)
        a, b, c = s.sub.dim(k), s.middle.dim(k), s.quotient.dim(k)
        if rank(i) != a:
            defects.append((k, "not injective"))
        if rank(p) != c:
            defects.append((k, "not surjective"))
        if not (p @ i).is_zero() or a + c != b:
            defects.append((k, "not exact in the middle"))
    return SesReport(tuple(defects))


class InvalidSes(Exception):
    def __init__(self, report: SesReport):
        self.report = report
        super().__init__("; ".join(f"degree {k}: {msg}" for k, msg in report.defects))


def _require_ses(s: ShortExactSequence) -> None:
    report = validate_ses(s)
    if not report.ok:
        raise InvalidSes(report)


def _connecting(s: ShortExactSequence, k: int, lift: str, rng: random.Random | None) -> Matrix:
    hA, hC = cohomology(s.sub), cohomology(s.quotient)
    surj, inj_next = s.surj.block(k), s.inj.block(k + 1)
    d_b = s.middle.d(k)
    reps = hC.reps(k)
    noise = kernel_basis(surj).basis if lift == "perturbed" else ()
    rng = rng or random.Random(0)
    cols = []
    for c in reps.columns():
        b = solve(surj, c)
        if b is None:  # unreachable for a valid SES
            raise StructuralError(f"surj not onto in degree {k}")
        for v in noise:
            coeff = rng.randint(-3, 3)
            b = tuple(x + coeff * y for x, y in zip(b, v))
        db = d_b.apply(b) if d_b.ncols else ()
        a = solve(inj_next, db) if inj_next.nrows else ()
        if a is None:
            raise StructuralError(f"d(lift) does not pull back in degree {k + 1}")
        cols.append(hA.proj(k + 1).apply(a) if hA.dim(k + 1) else ())
    return Matrix.from_columns(cols, hA.dim(k + 1))


def connecting_map(s: ShortExactSequence, k: int, lift: str = "pivot",
                   rng: random.Random | None = None) -> Matrix:
    """The snake-lemma map ``H^k(C) -> H^{k+1}(A)``.

    ``lift="pivot"`` lifts with the pivot-first particular solution;
    ``lift="perturbed"`` adds a random element of ``ker(surj)`` to each lift,
    which must not change the result.
    """
    if lift not in ("pivot", "perturbed"):
        raise ValueError(f"unknown lift strategy {lift!r}")
    _require_ses(s)
    return _connecting(s, k, lift, rng)


# --------------------------------------------------------------------------
# long sequences

@dataclass(frozen=True)
class Node:
    """One term of a long sequence, with its absolute degree."""

    label: str
    degree: int
    dim: int
    summands: tuple[Node, ...] = ()

    def __post_init__(self):
        if self.summands and sum(s.dim for s in self.summands) != self.dim:
            raise ValueError(f"summand dimensions of {self.label!r} do not add up")


@dataclass(frozen=True)
class LongSequence:
    """Nodes in order with the arrows between consecutive nodes.

    Zero is implied before the first and after the last node.  ``arrows`` is
    None for a dimension-only sequence.
    """

    nodes: tuple[Node, ...]
    arrows: tuple[Matrix, ...] | None = None
    period: int = 3
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if self.arrows is None:
            return
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(self.arrows) != max(len(self.nodes) - 1, 0):
            raise StructuralError(
                f"{len(self.nodes)} nodes need {max(len(self.nodes) - 1, 0)} arrows, got {len(self.arrows)}")
        for i, m in enumerate(self.arrows):
            want = (self.nodes[i + 1].dim, self.nodes[i].dim)
            if m.shape != want:
                raise StructuralError(f"arrow {i} has shape {m.shape}, expected {want}")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(n.dim for n in self.nodes)

    @property
    def explicit(self) -> bool:
        return self.arrows is not None

    def as_complex(self) -> CochainComplex:
        if self.arrows is None:
            raise StructuralError("dimension-only sequence has no maps")
        return CochainComplex.build(0, self.dims, dict(enumerate(self.arrows)))

    def trimmed(self) -> LongSequence:
        """Drop zero nodes at both ends."""
        start, stop = 0, len(self.nodes)
        while start < stop and self.nodes[start].dim == 0:
            start += 1
        while stop > start and self.nodes[stop - 1].dim == 0:
            stop -= 1
        arrows = None if self.arrows is None else self.arrows[start:max(stop - 1, start)]
        return LongSequence(self.nodes[start:stop], arrows, self.period, self.name)


@dataclass(frozen=True)
class Segment:
    start: int
    stop: int
    alternating_sum: int


@dataclass(frozen=True)
class ExactnessReport:
    defects: tuple[int, ...]
    not_a_complex: tuple[int, ...]
    segments: tuple[Segment, ...]

    @property
    def exact(self) -> bool:
        return not self.not_a_complex and not any(self.defects)

    def failing_nodes(self) -> list[int]:
        return [i for i, d in enumerate(self.defects) if d]


def segments(dims: Sequence[int]) -> tuple[Segment, ...]:
    """Maximal runs of nonzero dimensions with their alternating sums."""
    out, i = [], 0
    while i < len(dims):
        if dims[i] == 0:
            i += 1
            continue
        j = i
        while j < len(dims) and dims[j]:
            j += 1
        out.append(Segment(i, j, sum((-1) ** (t - i) * dims[t] for t in range(i, j))))
        i = j
    return tuple(out)


def check_exact(ls: LongSequence) -> ExactnessReport:
    c = ls.as_complex()
    segs = segments(ls.dims)
    bad = validate_complex(c).defects
    if bad:
        # not a complex: report the naive ker/im count per node for context
        arrows = ls.arrows
        n = len(ls.nodes)
        defects = []
        for i in range(n):
            out_rank = rank(arrows[i]) if i < n - 1 else 0
            in_rank = rank(arrows[i - 1]) if i > 0 else 0
            defects.append(ls.nodes[i].dim - out_rank - in_rank)
        return ExactnessReport(tuple(defects), tuple(sorted(bad)), segs)
    h = cohomology(c)
    return ExactnessReport(tuple(h.dim(i) for i in range(len(ls.nodes))), (), segs)


def les_of_ses(s: ShortExactSequence, labels: Sequence[str] = ("A", "B", "C"),
               name: str = "") -> LongSequence:
    """``... -> H^k(A) -> H^k(B) -> H^k(C) -> H^{k+1}(A) -> ...``"""
    _require_ses(s)
    lo, hi = s.window()
    hA, hB, hC = (cohomology(x) for x in (s.sub, s.middle, s.quotient))
    la, lb, lc = labels
    nodes, arrows = [], []
    for k in range(lo, hi + 1):
        nodes += [Node(f"H^{k}({la})", k, hA.dim(k)),
                  Node(f"H^{k}({lb})", k, hB.dim(k)),
                  Node(f"H^{k}({lc})", k, hC.dim(k))]
        arrows += [induced_block(s.inj, k), induced_block(s.surj, k)]
        if k < hi:
            arrows.append(_connecting(s, k, "pivot", None))
    return LongSequence(tuple(nodes), tuple(arrows), 3, name)


def betti_feasible(dims: Sequence[int]) -> tuple[bool, tuple[int, ...]]:
    """Whether ``dims`` can be the dimensions of an exact sequence.

    Exactness forces ``dim_i = r_{i-1} + r_i`` with ``r_i`` the rank of the
    arrow out of node i, so the ranks are determined left to right.
    """
    dims = list(dims)
    if not dims or dims[0] != 0 or dims[-1] != 0:
        raise ValueError("dimension list must start and end with 0")
    ranks, prev = [], 0
    for d in dims[:-1]:
        r = d - prev
        if r < 0:
            return False, tuple(ranks)
        ranks.append(r)
        prev = r
    return prev == dims[-1], tuple(ranks)


def exact_sequence_from_ranks(ranks: Sequence[int], label: str = "V") -> LongSequence:
    """The standard exact sequence whose i-th arrow has rank ``ranks[i]``.

    Node i is ``Q^{r_{i-1}} + Q^{r_i}``; arrow i maps the second block
    identically onto the first block of node i+1.
    """
    r = [0] + list(ranks) + [0]
    nodes, arrows = [], []
    for i in range(len(r) - 1):
        nodes.append(Node(f"{label}{i}", i, r[i] + r[i + 1]))
    for i in range(len(nodes) - 1):
        a, b = r[i], r[i + 1]        # node i = Q^a + Q^b
        c = r[i + 2]                  # node i+1 = Q^b + Q^c
        rows = []
        for row in range(b + c):
            rows.append([1 if (row < b and col == a + row) else 0 for col in range(a + b)])
        arrows.append(Matrix.from_rows(rows, a + b) if rows else Matrix.zeros(0, a + b))
    return LongSequence(tuple(nodes), tuple(arrows), 1)


# --------------------------------------------------------------------------
# transfer diagrams

@dataclass(frozen=True)
class TransferDiagram:
    """Three aligned rows with vertical maps top->middle and middle->bottom."""

    top: LongSequence
    middle: LongSequence
    bottom: LongSequence
    down_top: tuple[Matrix, ...]
    down_bottom: tuple[Matrix, ...]

    def __post_init__(self):
        n = len(self.top.nodes)
        if len(self.middle.nodes) != n or len(self.bottom.nodes) != n:
            raise StructuralError("rows of a transfer diagram must have equal length")
        if not (self.top.explicit and self.middle.explicit and self.bottom.explicit):
            raise StructuralError("transfer rows need explicit arrows")
        if len(self.down_top) != n or len(self.down_bottom) != n:
            raise StructuralError("one vertical map per column is required")
        for i in range(n):
            t, m, b = self.top.nodes[i].dim, self.middle.nodes[i].dim, self.bottom.nodes[i].dim
            if self.down_top[i].shape != (m, t):
                raise StructuralError(f"column {i}: top->middle has shape {self.down_top[i].shape}")
            if self.down_bottom[i].shape != (b, m):
                raise StructuralError(f"column {i}: middle->bottom has shape {self.down_bottom[i].shape}")

    def column_ses(self) -> ShortExactSequence:
        top, mid, bot = (r.as_complex() for r in (self.top, self.middle, self.bottom))
        inj = ChainMap.build(top, mid, {i: m for i, m in enumerate(self.down_top) if m.ncols})
        surj = ChainMap.build(mid, bot, {i: m for i, m in enumerate(self.down_bottom) if m.ncols})
        return ShortExactSequence(inj, surj)


@dataclass(frozen=True)
class TransferReport:
    status: str                      # certified | hypothesis-failed | structural-error
    structural: tuple[str, ...] = ()
    not_a_complex: dict[str, tuple[int, ...]] = field(default_factory=dict)
    row_defects: dict[str, tuple[int, ...]] = field(default_factory=dict)
    les_exact: bool | None = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def acyclicity_transfer(t: TransferDiagram) -> TransferReport:
    """Certify the bottom row exact from exactness of the top and middle rows.

    Columns must be short exact and squares must commute.  The rows then form
    a short exact sequence of complexes; its long exact sequence forces the
    bottom row to be acyclic when the other two are.
    """
    ses = t.column_ses()
    structural = []
    for name, f in (("top->middle", ses.inj), ("middle->bottom", ses.surj)):
        for k in validate_chain_map(f).defects:
            structural.append(f"square at column {k} ({name}) does not commute")
    for k, msg in validate_ses(ses).defects:
        if "chain map" not in msg:
            structural.append(f"column {k}: {msg}")
    if structural:
        return TransferReport("structural-error", tuple(structural))

    rows = {"top": t.top, "middle": t.middle, "bottom": t.bottom}
    not_complex, defects = {}, {}
    for name, row in rows.items():
        rep = check_exact(row)
        if rep.not_a_complex:
            not_complex[name] = rep.not_a_complex
        defects[name] = rep.defects
    hypotheses_ok = all(name not in not_complex and not any(defects[name])
                        for name in ("top", "middle"))
    if not hypotheses_ok:
        return TransferReport("hypothesis-failed", (), not_complex, defects, None)
    les_ok = check_exact(les_of_ses(ses, ("top", "middle", "bottom"))).exact
    status = "certified" if les_ok else "hypothesis-failed"
    return TransferReport(status, (), not_complex, defects, les_ok)
