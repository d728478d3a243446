"""Group actions on manifolds described by finite models, and their sequences.

An instance does not simulate the action.  It supplies simplicial models of
the orbit space B = M/G with the fixed set F and the singular part Sigma/G
inside it, the circle-fixed set M^{S1} with the involution induced by j, an
Euler cocycle on B, and a model (or a Betti table) of M itself.

From these a cochain-level model of M is assembled as a twisted sum

    T = C(B) + Q,    Q = C(B, Sigma)[-n] + C(M^{S1})^{-}[-(n-1)],

with n the dimension of the group, ``d_Q = -d`` on the first summand and
``d_T(q) = d_Q(q) + q u e`` where ``u e`` is the cup product with the Euler
cocycle.  The subcomplexes C(B) and C(B, F) + Q of T realize the two rows
of the double diagram whose braid produces the Smith-Gysin sequences.  The
Betti numbers of this model are compared with the independent model of M.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .braid import Braid, DoubleSesDiagram, braid_from_double_ses, double_ses_from_subcomplexes
from .cochain import CochainComplex, GradedSpace, cohomology, direct_sum, shift
from .exactness import (
    LongSequence,
    Node,
    Segment,
    TransferDiagram,
    betti_feasible,
    check_exact,
    segments,
)
from .linalg import Matrix, Subspace, block_matrix, hstack, vstack
from .simplicial import (
    SimplicialComplex,
    SimplicialInvolution,
    anti_invariant_subcomplex,
    anti_invariants,
    betti,
    coboundary,
    path,
    polygon,
    relative_betti,
    relative_cochain_complex,
    simplex_boundary,
    simplicial_cochain_complex,
)

GROUP_DIM = {"S1": 1, "S3": 3}
ACTION_CLASSES = ("free", "semi-free", "general")

# the terms whose cohomology the displayed sequences use
TERMS = ("M", "M,F", "B", "B,F", "B,Sigma", "F", "exotic")


class SequenceKind(enum.Enum):
    S3_FREE_GYSIN = "S3_FREE_GYSIN"
    S3_SEMIFREE_GYSIN = "S3_SEMIFREE_GYSIN"
    S3_EXOTIC_GYSIN = "S3_EXOTIC_GYSIN"
    S3_SMITH_GYSIN = "S3_SMITH_GYSIN"
    S3_SECOND = "S3_SECOND"
    S1_GYSIN = "S1_GYSIN"
    S1_SMITH_GYSIN = "S1_SMITH_GYSIN"
    S1_SECOND = "S1_SECOND"

    @property
    def group(self) -> str:
        return self.value[:2]


GYSIN_KINDS = {SequenceKind.S3_FREE_GYSIN, SequenceKind.S3_SEMIFREE_GYSIN,
               SequenceKind.S3_EXOTIC_GYSIN, SequenceKind.S1_GYSIN}
SMITH_KINDS = {SequenceKind.S3_SMITH_GYSIN, SequenceKind.S1_SMITH_GYSIN}
SECOND_KINDS = {SequenceKind.S3_SECOND, SequenceKind.S1_SECOND}


class InstanceError(ValueError):
    pass


class MissingModel(InstanceError):
    def __init__(self, kind: str, model: str):
        self.model = model
        super().__init__(f"{kind} needs the {model} model, which the instance does not carry")


class KindMismatch(InstanceError):
    pass


@dataclass(frozen=True, eq=False)
class ActionInstance:
    """Finite data standing in for an action of S1 or S3 on a manifold M.

    ``betti`` holds dimension tables keyed by the names in ``TERMS``; a
    table wins over a simplicial model.  An instance whose orbit data is
    missing is dimension-only and cannot produce explicit maps.
    """

    name: str
    group: str
    action_class: str
    description: str = ""
    orbit: SimplicialComplex | None = None
    fixed: SimplicialComplex | None = None
    singular: SimplicialComplex | None = None
    circle_fixed: SimplicialInvolution | None = None
    euler: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)
    total: SimplicialComplex | None = None
    total_fixed: SimplicialComplex | None = None
    betti: Mapping[str, GradedSpace] = field(default_factory=dict)
    _terms: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.group not in GROUP_DIM:
            raise InstanceError(f"group must be S1 or S3, got {self.group!r}")
        if self.action_class not in ACTION_CLASSES:
            raise InstanceError(f"unknown action class {self.action_class!r}")
        if self.group == "S1" and self.action_class == "general":
            raise InstanceError("only free and semi-free circle actions are modeled")
        unknown = set(self.betti) - set(TERMS)
        if unknown:
            raise InstanceError(f"unknown Betti table {sorted(unknown)[0]!r}")
        object.__setattr__(self, "euler", {tuple(s): Fraction(v) for s, v in self.euler.items()})
        b = self.orbit
        if b is not None:
            for label, sub in (("fixed set", self.fixed), ("singular part", self.singular)):
                if sub is not None and not sub.is_subcomplex_of(b):
                    raise InstanceError(f"the {label} is not a subcomplex of the orbit space")
            for s in self.euler:
                if s not in b.simplices or len(s) != self.n + 2:
                    raise InstanceError(f"Euler cocycle entry {s} is not a {self.n + 1}-simplex of B")
        if self.fixed is not None and self.singular is not None:
            if not self.fixed.is_subcomplex_of(self.singular):
                raise InstanceError("the fixed set must lie inside the singular part")
        if self.action_class == "free" and self.fixed is not None and self.fixed.simplices:
            raise InstanceError("a free action has no fixed points")
        if self.action_class != "general":
            if self.circle_fixed is not None and self.circle_fixed.complex.simplices:
                raise InstanceError("only the general class has a circle-fixed set outside F")
            if (self.singular is not None and self.fixed is not None
                    and self.singular.simplices != self.fixed.simplices):
                raise InstanceError("for a semi-free action the singular part is the fixed set")
        if self.total_fixed is not None and self.total is not None:
            if not self.total_fixed.is_subcomplex_of(self.total):
                raise InstanceError("the fixed set is not a subcomplex of the model of M")

    def _key(self) -> tuple:
        return (self.name, self.group, self.action_class, self.description, self.orbit, self.fixed,
                self.singular, self.circle_fixed, dict(self.euler), self.total, self.total_fixed,
                dict(self.betti))

    def __eq__(self, other):
        if not isinstance(other, ActionInstance):
            return NotImplemented
        return self._key() == other._key()

    __hash__ = None

    @property
    def n(self) -> int:
        return GROUP_DIM[self.group]

    @property
    def _fixed(self) -> SimplicialComplex | None:
        if self.fixed is not None:
            return self.fixed
        return SimplicialComplex.empty() if self.action_class == "free" else None

    @property
    def _singular(self) -> SimplicialComplex | None:
        if self.singular is not None:
            return self.singular
        return self._fixed if self.action_class != "general" else None

    @property
    def explicit(self) -> bool:
        """Whether cochain-level maps can be built."""
        if self.orbit is None or self._fixed is None or self._singular is None:
            return False
        return self.action_class != "general" or self.circle_fixed is not None

    def supported_kinds(self) -> tuple[SequenceKind, ...]:
        return tuple(k for k in SequenceKind if _kind_problem(self, k) is None)

    # ---------------------------------------------------------------- terms

    def term(self, key: str) -> GradedSpace:
        """Graded dimensions of one term, from a table or from the models."""
        if key in self.betti:
            return self.betti[key]
        if key not in self._terms:
            self._terms[key] = self._term_from_models(key)
        return self._terms[key]

    def _term_from_models(self, key: str) -> GradedSpace:
        need = {
            "M": "M", "M,F": "M", "B": "orbit space", "B,F": "orbit space",
            "B,Sigma": "orbit space", "F": "fixed set", "exotic": "circle-fixed set",
        }[key]
        if key == "M":
            if self.total is None:
                raise MissingModel(key, need)
            return betti(self.total)
        if key == "M,F":
            if self.total is None:
                raise MissingModel(key, need)
            fixed = self.total_fixed
            if fixed is None:
                if self.action_class != "free":
                    raise MissingModel(key, "fixed set inside M")
                fixed = SimplicialComplex.empty()
            return relative_betti(self.total, fixed)
        if key == "exotic":
            if self.action_class != "general":
                return GradedSpace(0, ())
            if self.circle_fixed is None:
                raise MissingModel(key, need)
            return anti_invariants(self.circle_fixed).graded
        if key == "F":
            if self._fixed is None:
                raise MissingModel(key, need)
            return betti(self._fixed)
        if self.orbit is None:
            raise MissingModel(key, need)
        if key == "B":
            return betti(self.orbit)
        sub = self._fixed if key == "B,F" else self._singular
        if sub is None:
            raise MissingModel(key, "fixed set" if key == "B,F" else "singular part")
        return relative_betti(self.orbit, sub)

    def exotic_node(self) -> GradedSpace:
        """The anti-invariant summand placed at the degree of its sequence node."""
        return self.term("exotic").shifted(self.n - 1)

    # ------------------------------------------------------- explicit model

    @cached_property
    def double_ses(self) -> DoubleSesDiagram:
        if not self.explicit:
            raise MissingModel("explicit maps", "orbit-space")
        return _twisted_double_ses(self)

    @cached_property
    def braid(self) -> Braid:
        return braid_from_double_ses(self.double_ses)

    def model_terms(self) -> dict[str, GradedSpace]:
        """Cohomology of the six complexes of the explicit model, by term name."""
        cx = self.double_ses.complexes
        h = {name: cohomology(c).graded for name, c in cx.items()}
        return {"B,F": h["P"], "B": h["R"], "M,F": h["S"], "M": h["T"], "F": h["C"], "Q": h["Q"]}


def _cup_matrix(b: SimplicialComplex, keep: Sequence[tuple[int, ...]],
                euler: Mapping[tuple[int, ...], Fraction], p: int, q: int) -> Matrix:
    """x -> x u e from cochains on the p-simplices ``keep`` to C^{p+q}(B)."""
    col = {s: i for i, s in enumerate(keep)}
    rows = b.faces(p + q)
    entries = [[Fraction(0)] * len(keep) for _ in rows]
    for r, tau in enumerate(rows):
        front, back = tau[:p + 1], tau[p:]
        j = col.get(front)
        if j is not None:
            entries[r][j] += euler.get(back, 0)
    return Matrix.from_rows(entries, len(keep)) if rows else Matrix.zeros(0, len(keep))


def _negated(c: CochainComplex) -> CochainComplex:
    if not c.dims:
        return c
    return CochainComplex.build(c.lo, c.dims, {k: -c.d(k) for k in c.degrees()})


def _twisted_double_ses(inst: ActionInstance) -> DoubleSesDiagram:
    b, fixed, sing, n = inst.orbit, inst._fixed, inst._singular, inst.n
    if inst.euler:
        eu_vec = [inst.euler.get(s, 0) for s in b.faces(n + 1)]
        if not (coboundary(b, n + 1).apply(eu_vec) == tuple(0 for _ in b.faces(n + 2))):
            raise InstanceError("the Euler cochain is not a cocycle")
    r = simplicial_cochain_complex(b)
    rel = _negated(relative_cochain_complex(b, sing))
    exotic = CochainComplex.zero()
    if inst.action_class == "general" and inst.circle_fixed is not None:
        exotic = shift(anti_invariant_subcomplex(inst.circle_fixed), n - 1)
    q = direct_sum(shift(rel, n), exotic)

    keep = {p: [s for s in b.faces(p) if s not in sing.simplices] for p in range(b.dimension + 1)}
    nonempty = [c for c in (r, q) if c.dims]
    lo = min((c.lo for c in nonempty), default=0)
    hi = max((c.hi for c in nonempty), default=0)
    dims, diffs = [], {}
    for k in range(lo, hi + 1):
        dims.append(r.dim(k) + q.dim(k))
        rel_cols = len(keep.get(k - n, []))
        twist = _cup_matrix(b, keep.get(k - n, []), inst.euler, k - n, n + 1)
        twist = hstack([twist, Matrix.zeros(r.dim(k + 1), q.dim(k) - rel_cols)], nrows=r.dim(k + 1))
        diffs[k] = block_matrix([
            [r.d(k), twist],
            [Matrix.zeros(q.dim(k + 1), r.dim(k)), q.d(k)],
        ])
    t = CochainComplex.build(lo, dims, diffs, f"model of M for {inst.name}")

    r_spans, s_spans = {}, {}
    for k in t.degrees():
        nr, nt = r.dim(k), t.dim(k)
        unit = lambda i: tuple(int(i == j) for j in range(nt))  # noqa: E731
        r_spans[k] = Subspace.span(nt, [unit(i) for i in range(nr)])
        rel_f = [r_i for r_i, s in enumerate(b.faces(k)) if s not in fixed.simplices] if nr else []
        s_spans[k] = Subspace.span(nt, [unit(i) for i in rel_f] + [unit(i) for i in range(nr, nt)])
    return double_ses_from_subcomplexes(t, r_spans, s_spans)


# --------------------------------------------------------------------------
# sequences

def _kind_problem(inst: ActionInstance, kind: SequenceKind) -> str | None:
    """Why ``kind`` does not apply to ``inst``, or None."""
    if kind.group != inst.group:
        return f"{kind.value} is a sequence for {kind.group} actions, the instance has {inst.group}"
    if kind is SequenceKind.S3_FREE_GYSIN and inst.action_class != "free":
        return f"{kind.value} requires a free action (empty fixed set)"
    if kind is SequenceKind.S3_SEMIFREE_GYSIN and inst.action_class == "general":
        return f"{kind.value} requires a semi-free action (singular part equal to the fixed set)"
    return None


def _require(inst: ActionInstance, kind: SequenceKind) -> None:
    problem = _kind_problem(inst, kind)
    if problem:
        raise KindMismatch(problem)
    if inst.action_class == "general" and "exotic" not in inst.betti and inst.circle_fixed is None:
        raise MissingModel(kind.value, "circle-fixed set")


def _sum(degree: int, parts: Sequence[Node]) -> Node:
    if len(parts) == 1:
        return parts[0]
    return Node(" + ".join(p.label for p in parts), degree, sum(p.dim for p in parts), tuple(parts))


def _h(term: str, inst: ActionInstance, space: str, k: int) -> Node:
    return Node(f"H^{k}({space})", k, inst.term(term)[k])


def _window(inst: ActionInstance, terms: Iterable[str]) -> tuple[int, int]:
    his = [inst.term(t).hi for t in terms if inst.term(t).dims]
    top = max(his, default=0) + inst.n + 2
    return -1, top


def _rows(inst: ActionInstance, kind: SequenceKind, k: int) -> tuple[Node, Node, Node]:
    """The three nodes of ``kind`` starting at degree k."""
    n = inst.n
    cls = inst.action_class
    if kind in SECOND_KINDS:
        return (_h("B,F", inst, "B,F", k),
                _sum(k, [_h("B", inst, "B", k), _h("M,F", inst, "M,F", k)]),
                _h("M", inst, "M", k))
    first = _h("M", inst, "M", k)
    if kind is SequenceKind.S3_FREE_GYSIN:
        mid = [_h("B", inst, "B", k - n)]
    elif kind in (SequenceKind.S3_SEMIFREE_GYSIN, SequenceKind.S1_GYSIN, SequenceKind.S1_SMITH_GYSIN):
        mid = [_h("B,F", inst, "B,F", k - n)]
    elif cls == "general":
        mid = [_h("B,Sigma", inst, "B,Sigma", k - n),
               Node(f"H^{k - n + 1}(M^S1)^-", k - n + 1, inst.term("exotic")[k - n + 1])]
    else:
        mid = [_h("B,F", inst, "B,F", k - n)]
    if kind in SMITH_KINDS:
        mid.append(_h("F", inst, "F", k))
        last = _h("B,F", inst, "B,F", k + 1)
    else:
        last = _h("B", inst, "B", k + 1)
    return first, _sum(k, mid), last


def _terms_of(kind: SequenceKind, cls: str) -> tuple[str, ...]:
    if kind in SECOND_KINDS:
        return ("B,F", "B", "M,F", "M")
    if kind is SequenceKind.S3_FREE_GYSIN:
        return ("M", "B")
    mid = ("B,Sigma", "exotic") if (cls == "general" and kind in
                                    (SequenceKind.S3_EXOTIC_GYSIN, SequenceKind.S3_SMITH_GYSIN)) \
        else ("B,F",)
    if kind in SMITH_KINDS:
        return ("M",) + mid + ("F", "B,F")
    return ("M",) + mid + ("B",)


def _braid_arrows(b: Braid, kind: SequenceKind, k: int) -> list[Matrix]:
    """Arrows out of the three nodes at k, read off the instance braid.

    Braid families: A = H(B), B = H(F), C = H^{+1}(M,F), D = H(Q), E = H(M),
    F = H^{+1}(B,F).
    """
    a = b.arrow
    if kind in GYSIN_KINDS:
        return [a("ED", k), a("DA", k), a("AE", k + 1)]
    if kind in SMITH_KINDS:
        # middle node is D + B (the fixed-set summand last)
        into = vstack([a("ED", k), a("EB", k)], ncols=b.dim("E", k))
        out = hstack([-a("DF", k), a("BF", k)], nrows=b.dim("F", k))
        return [into, out, a("CE", k) @ a("FC", k)]
    # second sequence at degree k: F^{k-1} -> A^k + C^{k-1} -> E^k -> F^k
    into = vstack([a("FA", k - 1), a("FC", k - 1)], ncols=b.dim("F", k - 1))
    out = hstack([a("AE", k), -a("CE", k - 1)], nrows=b.dim("E", k))
    return [into, out, a("BF", k) @ a("EB", k)]


class ModelMismatch(InstanceError):
    pass


def build_sequence(inst: ActionInstance, kind: SequenceKind, explicit: bool | None = None) -> LongSequence:
    """The displayed sequence of ``kind`` for ``inst``.

    Nodes come from the term dimensions.  When the instance carries an
    explicit model (and ``explicit`` is not False) the arrows are read off
    its braid; the braid's node dimensions must then agree with the terms.
    """
    _require(inst, kind)
    lo, hi = _window(inst, _terms_of(kind, inst.action_class))
    nodes: list[Node] = []
    for k in range(lo, hi + 1):
        nodes += _rows(inst, kind, k)
    use_maps = inst.explicit if explicit is None else explicit
    if not use_maps:
        return LongSequence(tuple(nodes), None, 3, f"{kind.value} for {inst.name}")
    b = inst.braid
    arrows: list[Matrix] = []
    for i, k in enumerate(range(lo, hi + 1)):
        for j, m in enumerate(_braid_arrows(b, kind, k)):
            src = nodes[3 * i + j]
            if m.ncols != src.dim:
                raise ModelMismatch(
                    f"{kind.value}: node {src.label} has dimension {src.dim} in the terms "
                    f"but {m.ncols} in the explicit model")
            arrows.append(m)
    last = arrows.pop()
    if last.nrows:
        raise ModelMismatch(f"{kind.value}: sequence window too small")
    for i, m in enumerate(arrows):
        if m.nrows != nodes[i + 1].dim:
            raise ModelMismatch(
                f"{kind.value}: node {nodes[i + 1].label} has dimension {nodes[i + 1].dim} "
                f"in the terms but {m.nrows} in the explicit model")
    return LongSequence(tuple(nodes), tuple(arrows), 3, f"{kind.value} for {inst.name}")


# --------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class KindResult:
    kind: SequenceKind
    status: str                        # pass | fail | structural-error
    dims: tuple[int, ...] = ()
    feasible: bool | None = None
    ranks: tuple[int, ...] = ()
    segments: tuple[Segment, ...] = ()
    explicit: bool = False
    defects: tuple[int, ...] = ()
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class InstanceReport:
    instance: str
    results: tuple[KindResult, ...]
    model_mismatches: tuple[tuple[str, GradedSpace, GradedSpace], ...] = ()
    explicit: bool = False

    @property
    def ok(self) -> bool:
        return not self.model_mismatches and all(r.ok for r in self.results)

    @property
    def status(self) -> str:
        if any(r.status == "structural-error" for r in self.results):
            return "structural-error"
        return "pass" if self.ok else "fail"


def check_model(inst: ActionInstance) -> tuple[tuple[str, GradedSpace, GradedSpace], ...]:
    """Terms whose independent model disagrees with the explicit cochain model."""
    if not inst.explicit:
        return ()
    out = []
    model = inst.model_terms()
    for key in ("M", "M,F", "B", "B,F", "F"):
        try:
            expected = inst.term(key)
        except MissingModel:
            continue
        if expected != model[key]:
            out.append((key, expected, model[key]))
    return tuple(out)


def verify_kind(inst: ActionInstance, kind: SequenceKind) -> KindResult:
    try:
        ls = build_sequence(inst, kind)
    except (InstanceError, ValueError) as e:
        return KindResult(kind, "structural-error", message=str(e))
    dims = ls.dims
    feasible, ranks = betti_feasible((0,) + dims + (0,))
    segs = segments(dims)
    problems = []
    if not feasible:
        problems.append("dimensions admit no exact rank profile")
    bad = [s for s in segs if s.alternating_sum]
    if bad:
        problems.append(f"segment {bad[0].start}..{bad[0].stop - 1} has alternating sum {bad[0].alternating_sum}")
    defects: tuple[int, ...] = ()
    if ls.explicit:
        report = check_exact(ls)
        defects = report.defects
        if report.not_a_complex:
            problems.append(f"consecutive arrows do not compose to zero at {list(report.not_a_complex)}")
        elif not report.exact:
            problems.append(f"inexact at nodes {report.failing_nodes()}")
    status = "fail" if problems else "pass"
    return KindResult(kind, status, dims, feasible, ranks, segs, ls.explicit, defects, "; ".join(problems))


def verify_instance(inst: ActionInstance, kinds: Iterable[SequenceKind] | None = None) -> InstanceReport:
    kinds = tuple(kinds) if kinds is not None else inst.supported_kinds()
    mismatches: tuple = ()
    results = []
    try:
        mismatches = check_model(inst)
    except (InstanceError, ValueError) as e:
        results.append(KindResult(next(iter(kinds), SequenceKind.S3_SMITH_GYSIN), "structural-error",
                                  message=f"explicit model: {e}"))
    results += [verify_kind(inst, k) for k in kinds]
    return InstanceReport(inst.name, tuple(results), mismatches, inst.explicit)


# --------------------------------------------------------------------------
# the transfer diagram of a semi-free action

def gysin_transfer(inst: ActionInstance) -> TransferDiagram:
    """Pair sequence of (B, F) -> Smith-Gysin + identity -> Gysin, columnwise exact.

    Rows at degree i::

        H^i(B,F)            -> H^i(B)           -> H^i(F)           -> ...
        H^i(B,F) + H^i(B)   -> H^i(M) + H^i(B)  -> H^i(Q) + H^i(F)  -> ...
        H^i(B)              -> H^i(M)           -> H^i(Q)           -> ...

    with H(Q) = H^{*-n}(B,F).  Columns are (1, i), (pi*, 1), (0, 1) down and
    i - 1, 1 - pi*, projection further down.  The Euler arrow of the bottom
    row is i composed with the Euler part of the middle row.
    """
    if inst.action_class == "general":
        raise KindMismatch("the transfer diagram is built for free and semi-free actions")
    b = inst.braid
    a = b.arrow
    d = b.dim

    def eye(m):
        return Matrix.identity(m)

    def z(r, c):
        return Matrix.zeros(r, c)

    top_n, mid_n, bot_n = [], [], []
    top_a, mid_a, bot_a = [], [], []
    down1, down2 = [], []
    for i in range(b.lo, b.hi + 1):
        pf, ab, fb, em, dq = d("F", i - 1), d("A", i), d("B", i), d("E", i), d("D", i)
        top_n += [Node(f"H^{i}(B,F)", i, pf), Node(f"H^{i}(B)", i, ab), Node(f"H^{i}(F)", i, fb)]
        mid_n += [Node(f"H^{i}(B,F)+H^{i}(B)", i, pf + ab), Node(f"H^{i}(M)+H^{i}(B)", i, em + ab),
                  Node(f"H^{i}(Q)+H^{i}(F)", i, dq + fb)]
        bot_n += [Node(f"H^{i}(B)", i, ab), Node(f"H^{i}(M)", i, em), Node(f"H^{i}(Q)", i, dq)]
        nxt_pf, nxt_ab = d("F", i), d("A", i + 1)
        top_a += [a("FA", i - 1), a("AB", i), a("BF", i)]
        mid_a += [
            block_matrix([[a("CE", i - 1) @ a("FC", i - 1), z(em, ab)], [z(ab, pf), eye(ab)]]),
            block_matrix([[a("ED", i), z(dq, ab)], [a("EB", i), z(fb, ab)]]),
            block_matrix([[-a("DF", i), a("BF", i)], [z(nxt_ab, dq), z(nxt_ab, fb)]]),
        ]
        bot_a += [a("AE", i), a("ED", i), -(a("FA", i) @ a("DF", i))]
        down1 += [vstack([eye(pf), a("FA", i - 1)], ncols=pf),
                  vstack([a("AE", i), eye(ab)], ncols=ab),
                  vstack([z(dq, fb), eye(fb)], ncols=fb)]
        down2 += [hstack([a("FA", i - 1), -eye(ab)], nrows=ab),
                  hstack([eye(em), -a("AE", i)], nrows=em),
                  hstack([eye(dq), z(dq, fb)], nrows=dq)]
    rows = []
    for nodes, arrows, label in ((top_n, top_a, "pair sequence"), (mid_n, mid_a, "Smith-Gysin + identity"),
                                 (bot_n, bot_a, "Gysin")):
        rows.append(LongSequence(tuple(nodes), tuple(arrows[:-1]), 3, f"{label} for {inst.name}"))
    return TransferDiagram(rows[0], rows[1], rows[2], tuple(down1), tuple(down2))


# --------------------------------------------------------------------------
# catalog

def _two_points(a: int, b: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets([[a], [b]], "two points")


def s1_rotation_s2() -> ActionInstance:
    b = path(3)
    m = simplex_boundary(3)
    return ActionInstance(
        name="s1-rotation-s2", group="S1", action_class="semi-free",
        description="Rotation of S2 about an axis: B is an interval, F the two poles.",
        orbit=b, fixed=_two_points(0, 2), total=m, total_fixed=_two_points(0, 1))


def s1_hopf_s3() -> ActionInstance:
    b = simplex_boundary(3)
    return ActionInstance(
        name="s1-hopf-s3", group="S1", action_class="free",
        description="Hopf action of S1 on S3 with orbit space S2; Euler class generates H2(S2).",
        orbit=b, euler={(0, 1, 2): 1}, total=simplex_boundary(4))


def s3_free_s7() -> ActionInstance:
    b = simplex_boundary(5)
    return ActionInstance(
        name="s3-free-s7", group="S3", action_class="free",
        description="Quaternionic Hopf action of S3 on S7 with orbit space S4. "
                    "M is a Betti table; the orbit space is simplicial.",
        orbit=b, euler={(0, 1, 2, 3, 4): 1},
        betti={"M": GradedSpace(0, (1, 0, 0, 0, 0, 0, 0, 1)),
               "M,F": GradedSpace(0, (1, 0, 0, 0, 0, 0, 0, 1))})


def s3_semifree_s4() -> ActionInstance:
    b = path(3)
    m = simplex_boundary(5)
    return ActionInstance(
        name="s3-semifree-s4", group="S3", action_class="semi-free",
        description="Suspension of the free action on S3: S3 acts on S4 fixing the two poles; "
                    "B is an interval, F its endpoints.",
        orbit=b, fixed=_two_points(0, 2), total=m, total_fixed=_two_points(0, 1))


def s3_conjugation_s3() -> ActionInstance:
    b = path(3)
    m = simplex_boundary(4)
    hexagon = polygon(6)
    return ActionInstance(
        name="s3-conjugation-s3", group="S3", action_class="general",
        description="S3 acting on itself by conjugation: F = {1, -1}, every other point has "
                    "circle isotropy, so Sigma = M and Sigma/G = B is an interval. M^{S1} is "
                    "a circle and j acts on it by a reflection fixing 1 and -1.",
        orbit=b, fixed=_two_points(0, 2), singular=b,
        circle_fixed=SimplicialInvolution(hexagon, {1: 5, 5: 1, 2: 4, 4: 2}),
        total=m, total_fixed=_two_points(0, 1))


def catalog() -> list[ActionInstance]:
    return [s1_rotation_s2(), s1_hopf_s3(), s3_free_s7(), s3_semifree_s4(), s3_conjugation_s3()]


def find_instance(name: str) -> ActionInstance:
    for inst in catalog():
        if inst.name == name:
            return inst
    raise KeyError(f"no catalog instance named {name!r}")


def corrupted_instance() -> ActionInstance:
    """Dimension-only S4 data with three fixed points over an interval: inconsistent."""
    return ActionInstance(
        name="corrupted-s4", group="S3", action_class="semi-free",
        description="Deliberately inconsistent: three fixed points over an interval.",
        betti={"M": GradedSpace(0, (1, 0, 0, 0, 1)), "M,F": GradedSpace(1, (2, 0, 0, 1)),
               "B": GradedSpace(0, (1,)), "B,F": GradedSpace(1, (1,)), "F": GradedSpace(0, (3,))})


def as_general(inst: ActionInstance) -> ActionInstance:
    """The same data tagged as a general action with Sigma = F and no circle-fixed set."""
    if inst.action_class == "general":
        return inst
    fixed = inst._fixed
    betti_tables = dict(inst.betti)
    if "B,F" in betti_tables:
        betti_tables.setdefault("B,Sigma", betti_tables["B,F"])
    betti_tables.setdefault("exotic", GradedSpace(0, ()))
    return ActionInstance(
        name=f"{inst.name}-as-general", group=inst.group, action_class="general",
        description=inst.description, orbit=inst.orbit, fixed=fixed, singular=fixed,
        circle_fixed=SimplicialInvolution.identity(SimplicialComplex.empty()),
        euler=inst.euler, total=inst.total, total_fixed=inst.total_fixed, betti=betti_tables)


__all__ = [
    "ACTION_CLASSES", "ActionInstance", "GROUP_DIM", "InstanceError", "InstanceReport", "KindMismatch",
    "KindResult", "MissingModel", "ModelMismatch", "SequenceKind", "TERMS", "as_general",
    "build_sequence", "catalog", "check_model", "corrupted_instance", "find_instance",
    "gysin_transfer", "s1_hopf_s3", "s1_rotation_s2", "s3_conjugation_s3", "s3_free_s7",
    "s3_semifree_s4", "verify_instance", "verify_kind",
]
