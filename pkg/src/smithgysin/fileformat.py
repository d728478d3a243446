"""The diagram description format: one YAML (or JSON) document per file.

::

    format: smithgysin-diagram
    version: 1
    objects:
      X:
        type: complex
        lo: 0
        dims: [1, 1]
        differentials: {0: [["1"]]}
    checks:
      - {check: check-complex, target: X}

Matrices are row-major lists of rational strings ("p/q" or "p").  Every
shape is cross-checked against the declared dimensions.  Objects refer to
each other by name, in any order.  Unknown fields are errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping

import yaml

from .braid import ARROWS, FAMILIES, Braid, DoubleSesDiagram
from .cochain import ChainMap, CochainComplex, GradedSpace, StructuralError
from .exactness import LongSequence, Node, ShortExactSequence, TransferDiagram
from .instances import TERMS, ActionInstance, InstanceError
from .linalg import Matrix, RationalParseError, format_rational, parse_rational
from .simplicial import SimplicialComplex, SimplicialError, SimplicialInvolution

FORMAT_TAG = "smithgysin-diagram"
FORMAT_VERSION = 1

CHECKS = ("check-complex", "check-chain-map", "check-ses", "les", "check-exact", "braid-validate",
          "braid-splice", "transfer", "verify-instance", "catalog")
# checks whose target may also name a catalog instance
CATALOG_TARGETS = ("braid-validate", "braid-splice", "transfer", "verify-instance")


class FormatError(Exception):
    """A problem with a diagram file, located by field path and line."""

    def __init__(self, message: str, path: str = "", line: int | None = None):
        self.message = message
        self.path = path
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(path)
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class DocumentSyntaxError(FormatError):
    pass


class SchemaError(FormatError):
    pass


class RationalError(FormatError):
    pass


class DanglingReference(FormatError):
    pass


class ReferenceCycle(DanglingReference):
    pass


class ShapeMismatch(FormatError):
    pass


class InvalidObject(FormatError):
    """The fields are well formed but the engine rejects the object."""


@dataclass(frozen=True)
class Check:
    check: str
    target: str | None = None
    options: Mapping[str, Any] = field(default_factory=dict)


@dataclass
class DiagramFile:
    objects: dict[str, Any]
    checks: list[Check]
    version: int = FORMAT_VERSION
    source: str = "<string>"


# --------------------------------------------------------------------------
# parsing

def _line_map(node, path: tuple[str, ...], out: dict[tuple[str, ...], int]) -> None:
    out[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            key = str(k.value)
            out[path + (key,)] = k.start_mark.line + 1
            _line_map(v, path + (key,), out)
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            _line_map(v, path + (str(i),), out)


def _render(path: tuple[str, ...]) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if p.isdigit() and out else (f".{p}" if out else p)
    return out


class _Parser:
    def __init__(self, data: Any, lines: dict[tuple[str, ...], int], source: str):
        self.data = data
        self.lines = lines
        self.source = source
        self.raw: dict[str, Any] = {}
        self.done: dict[str, Any] = {}
        self.active: list[str] = []

    # errors -------------------------------------------------------------

    def fail(self, cls: type[FormatError], path: tuple[str, ...], message: str):
        line = None
        p = path
        while p and line is None:
            line = self.lines.get(p)
            p = p[:-1]
        if line is None:
            line = self.lines.get(())
        raise cls(message, _render(path), line)

    # primitives ---------------------------------------------------------

    def mapping(self, value, path, allowed: Iterable[str], required: Iterable[str] = ()) -> dict:
        if value is None:
            value = {}
        if not isinstance(value, dict):
            self.fail(SchemaError, path, "expected a mapping")
        allowed = set(allowed)
        for key in value:
            if str(key) not in allowed:
                self.fail(SchemaError, path + (str(key),), f"unknown field {key!r}")
        for key in required:
            if key not in value:
                self.fail(SchemaError, path, f"missing field {key!r}")
        return value

    def integer(self, value, path, minimum: int | None = None) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(SchemaError, path, f"expected an integer, got {value!r}")
        if minimum is not None and value < minimum:
            self.fail(SchemaError, path, f"expected an integer >= {minimum}, got {value}")
        return value

    def string(self, value, path) -> str:
        if not isinstance(value, str):
            self.fail(SchemaError, path, f"expected a string, got {value!r}")
        return value

    def listing(self, value, path) -> list:
        if not isinstance(value, list):
            self.fail(SchemaError, path, "expected a list")
        return value

    def dims(self, value, path) -> list[int]:
        return [self.integer(d, path + (str(i),), 0) for i, d in enumerate(self.listing(value, path))]

    def degree_key(self, key, path) -> int:
        if isinstance(key, bool):
            self.fail(SchemaError, path, f"degree key {key!r} is not an integer")
        if isinstance(key, int):
            return key
        try:
            return int(str(key))
        except ValueError:
            self.fail(SchemaError, path, f"degree key {key!r} is not an integer")

    def rational(self, value, path) -> Fraction:
        try:
            return parse_rational(value)
        except RationalParseError as e:
            self.fail(RationalError, path, f"malformed rational entry {value!r} ({e})")

    def matrix(self, value, path, shape: tuple[int, int]) -> Matrix:
        rows = self.listing(value, path)
        nrows, ncols = shape
        if len(rows) != nrows:
            self.fail(ShapeMismatch, path, f"matrix has {len(rows)} rows, expected {nrows} (shape {nrows}x{ncols})")
        entries = []
        for i, row in enumerate(rows):
            row = self.listing(row, path + (str(i),))
            if len(row) != ncols:
                self.fail(ShapeMismatch, path + (str(i),),
                          f"row has {len(row)} entries, expected {ncols} (shape {nrows}x{ncols})")
            entries.append([self.rational(x, path + (str(i), str(j))) for j, x in enumerate(row)])
        return Matrix.from_rows(entries, ncols) if nrows else Matrix.zeros(0, ncols)

    def graded_matrices(self, value, path, lo: int, count: int | None,
                        shape: Callable[[int], tuple[int, int]]) -> dict[int, Matrix]:
        """Matrices keyed by degree, given as a mapping or as a list starting at ``lo``."""
        if value is None:
            return {}
        if isinstance(value, list):
            items = [(lo + i, v, path + (str(i),)) for i, v in enumerate(value)]
            if count is not None and len(value) > count:
                self.fail(ShapeMismatch, path, f"{len(value)} matrices for {count} degrees")
        elif isinstance(value, dict):
            items = [(self.degree_key(k, path + (str(k),)), v, path + (str(k),)) for k, v in value.items()]
        else:
            self.fail(SchemaError, path, "expected a mapping from degree to matrix or a list")
        return {k: self.matrix(v, p, shape(k)) for k, v, p in items}

    # references ---------------------------------------------------------

    def ref(self, value, path, want: tuple[type, ...], what: str):
        name = self.string(value, path)
        if name not in self.raw:
            self.fail(DanglingReference, path, f"reference to undeclared object {name!r}")
        obj = self.resolve(name)
        if not isinstance(obj, want):
            self.fail(SchemaError, path, f"{name!r} is not a {what}")
        return obj

    def resolve(self, name: str):
        if name in self.done:
            return self.done[name]
        if name in self.active:
            cycle = " -> ".join(self.active + [name])
            self.fail(ReferenceCycle, ("objects", name), f"reference cycle {cycle}")
        self.active.append(name)
        path = ("objects", name)
        spec = self.raw[name]
        if not isinstance(spec, dict) or "type" not in spec:
            self.fail(SchemaError, path, "object needs a 'type' field")
        kind = spec["type"]
        builder = _BUILDERS.get(kind)
        if builder is None:
            self.fail(SchemaError, path + ("type",), f"unknown object type {kind!r}")
        try:
            obj = builder(self, name, spec, path)
        except (StructuralError, SimplicialError, InstanceError) as e:
            self.fail(InvalidObject, path, str(e))
        self.active.pop()
        self.done[name] = obj
        return obj

    # document -----------------------------------------------------------

    def document(self) -> DiagramFile:
        root = self.data
        if root is None:
            root = {}
        top = self.mapping(root, (), ("format", "version", "objects", "checks"))
        if "format" in top and top["format"] != FORMAT_TAG:
            self.fail(SchemaError, ("format",), f"format tag must be {FORMAT_TAG!r}")
        version = self.integer(top.get("version", FORMAT_VERSION), ("version",))
        if version != FORMAT_VERSION:
            self.fail(SchemaError, ("version",), f"unsupported version {version}")
        objects = top.get("objects") or {}
        if not isinstance(objects, dict):
            self.fail(SchemaError, ("objects",), "expected a mapping of named objects")
        self.raw = {str(k): v for k, v in objects.items()}
        for name in self.raw:
            self.resolve(name)
        checks = []
        for i, item in enumerate(self.listing(top.get("checks") or [], ("checks",))):
            checks.append(self.check(item, ("checks", str(i))))
        return DiagramFile({n: self.done[n] for n in self.raw}, checks, version, self.source)

    def check(self, item, path) -> Check:
        spec = self.mapping(item, path, ("check", "target", "pivot", "kinds", "lift"), ("check",))
        name = self.string(spec["check"], path + ("check",))
        if name not in CHECKS:
            self.fail(SchemaError, path + ("check",), f"unknown check {name!r}")
        target = spec.get("target")
        if name == "catalog":
            if target is not None:
                self.fail(SchemaError, path + ("target",), "the catalog check takes no target")
        else:
            if target is None:
                self.fail(SchemaError, path, f"check {name!r} needs a target")
            target = self.string(target, path + ("target",))
            if target not in self.done and name not in CATALOG_TARGETS:
                self.fail(DanglingReference, path + ("target",), f"reference to undeclared object {target!r}")
        options = {}
        if "pivot" in spec:
            if name != "braid-splice":
                self.fail(SchemaError, path + ("pivot",), "only braid-splice takes a pivot")
            if spec["pivot"] not in ("E", "F"):
                self.fail(SchemaError, path + ("pivot",), "pivot must be E or F")
            options["pivot"] = spec["pivot"]
        if "kinds" in spec:
            if name != "verify-instance":
                self.fail(SchemaError, path + ("kinds",), "only verify-instance takes kinds")
            options["kinds"] = tuple(self.string(k, path + ("kinds", str(i)))
                                     for i, k in enumerate(self.listing(spec["kinds"], path + ("kinds",))))
        if "lift" in spec:
            if name != "les":
                self.fail(SchemaError, path + ("lift",), "only les takes a lift strategy")
            if spec["lift"] not in ("pivot", "perturbed"):
                self.fail(SchemaError, path + ("lift",), "lift must be pivot or perturbed")
            options["lift"] = spec["lift"]
        return Check(name, target, options)


# object builders ------------------------------------------------------------

def _graded_space(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "lo", "dims"), ("dims",))
    return GradedSpace(p.integer(spec.get("lo", 0), path + ("lo",)), tuple(p.dims(spec["dims"], path + ("dims",))))


def _complex(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "lo", "dims", "differentials"), ("dims",))
    lo = p.integer(spec.get("lo", 0), path + ("lo",))
    dims = p.dims(spec["dims"], path + ("dims",))

    def dim(k):
        return dims[k - lo] if 0 <= k - lo < len(dims) else 0

    diffs = p.graded_matrices(spec.get("differentials"), path + ("differentials",), lo, len(dims),
                              lambda k: (dim(k + 1), dim(k)))
    for k, m in diffs.items():
        if not lo <= k < lo + len(dims) and m.ncols:
            p.fail(ShapeMismatch, path + ("differentials", str(k)), f"degree {k} is outside the declared window")
    return CochainComplex.build(lo, dims, diffs, name)


def _chain_map(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "source", "target", "shift", "blocks"), ("source", "target"))
    src = p.ref(spec["source"], path + ("source",), (CochainComplex,), "complex")
    tgt = p.ref(spec["target"], path + ("target",), (CochainComplex,), "complex")
    r = p.integer(spec.get("shift", 0), path + ("shift",))
    blocks = p.graded_matrices(spec.get("blocks"), path + ("blocks",), src.lo, None,
                               lambda k: (tgt.dim(k + r), src.dim(k)))
    return ChainMap.build(src, tgt, blocks, r)


def _ses(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "inj", "surj"), ("inj", "surj"))
    inj = p.ref(spec["inj"], path + ("inj",), (ChainMap,), "chain map")
    surj = p.ref(spec["surj"], path + ("surj",), (ChainMap,), "chain map")
    if inj.target != surj.source:
        p.fail(ShapeMismatch, path, "inj and surj do not share the middle complex")
    return ShortExactSequence(inj, surj)


def _node(p: _Parser, value, path) -> Node:
    spec = p.mapping(value, path, ("label", "degree", "dim", "summands"), ("label", "degree", "dim"))
    summands = tuple(_node(p, v, path + ("summands", str(i)))
                     for i, v in enumerate(p.listing(spec.get("summands", []), path + ("summands",))))
    dim = p.integer(spec["dim"], path + ("dim",), 0)
    if summands and sum(s.dim for s in summands) != dim:
        p.fail(ShapeMismatch, path + ("dim",), "summand dimensions do not add up")
    return Node(p.string(spec["label"], path + ("label",)), p.integer(spec["degree"], path + ("degree",)),
                dim, summands)


def _long_sequence(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "nodes", "arrows", "period", "name"), ("nodes",))
    nodes = [_node(p, v, path + ("nodes", str(i)))
             for i, v in enumerate(p.listing(spec["nodes"], path + ("nodes",)))]
    arrows = None
    if spec.get("arrows") is not None:
        raw = p.listing(spec["arrows"], path + ("arrows",))
        if len(raw) != max(len(nodes) - 1, 0):
            p.fail(ShapeMismatch, path + ("arrows",),
                   f"{len(nodes)} nodes need {max(len(nodes) - 1, 0)} arrows, got {len(raw)}")
        arrows = tuple(p.matrix(m, path + ("arrows", str(i)), (nodes[i + 1].dim, nodes[i].dim))
                       for i, m in enumerate(raw))
    period = p.integer(spec.get("period", 3), path + ("period",), 1)
    label = p.string(spec.get("name", ""), path + ("name",))
    return LongSequence(tuple(nodes), arrows, period, label)


_DOUBLE_FIELDS = ("p_r", "r_c", "s_t", "t_c", "p_s", "s_q", "r_t", "t_q")


def _double_ses(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type",) + _DOUBLE_FIELDS, _DOUBLE_FIELDS)
    maps = {f: p.ref(spec[f], path + (f,), (ChainMap,), "chain map") for f in _DOUBLE_FIELDS}
    return DoubleSesDiagram(**maps)


def _braid(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "lo", "hi", "dims", "arrows", "labels", "offsets"),
                     ("lo", "hi", "dims", "arrows"))
    lo = p.integer(spec["lo"], path + ("lo",))
    hi = p.integer(spec["hi"], path + ("hi",))
    if hi < lo:
        p.fail(SchemaError, path + ("hi",), "hi must be at least lo")
    n = hi - lo + 1
    dspec = p.mapping(spec["dims"], path + ("dims",), FAMILIES, FAMILIES)
    dims = {}
    for f in FAMILIES:
        dims[f] = tuple(p.dims(dspec[f], path + ("dims", f)))
        if len(dims[f]) != n:
            p.fail(ShapeMismatch, path + ("dims", f), f"family {f} needs {n} dimensions")

    def dim(f, k):
        return dims[f][k - lo] if lo <= k <= hi else 0

    aspec = p.mapping(spec["arrows"], path + ("arrows",), ARROWS, ARROWS)
    arrows = {}
    for key, (src, dst, step) in ARROWS.items():
        raw = p.listing(aspec[key], path + ("arrows", key))
        if len(raw) != n:
            p.fail(ShapeMismatch, path + ("arrows", key), f"arrow family {key} needs {n} matrices")
        arrows[key] = tuple(p.matrix(m, path + ("arrows", key, str(i)), (dim(dst, lo + i + step), dim(src, lo + i)))
                            for i, m in enumerate(raw))
    labels = {f: f for f in FAMILIES}
    offsets = {f: 0 for f in FAMILIES}
    if "labels" in spec:
        lspec = p.mapping(spec["labels"], path + ("labels",), FAMILIES)
        labels.update({f: p.string(v, path + ("labels", f)) for f, v in lspec.items()})
    if "offsets" in spec:
        ospec = p.mapping(spec["offsets"], path + ("offsets",), FAMILIES)
        offsets.update({f: p.integer(v, path + ("offsets", f)) for f, v in ospec.items()})
    return Braid(lo, hi, dims, arrows, labels, offsets)


def _transfer(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "top", "middle", "bottom", "down_top", "down_bottom"),
                     ("top", "middle", "bottom", "down_top", "down_bottom"))
    rows = {r: p.ref(spec[r], path + (r,), (LongSequence,), "long sequence") for r in ("top", "middle", "bottom")}
    n = len(rows["top"].nodes)
    for r in ("middle", "bottom"):
        if len(rows[r].nodes) != n:
            p.fail(ShapeMismatch, path + (r,), "rows of a transfer diagram must have equal length")
    verticals = {}
    for key, (a, b) in (("down_top", ("top", "middle")), ("down_bottom", ("middle", "bottom"))):
        raw = p.listing(spec[key], path + (key,))
        if len(raw) != n:
            p.fail(ShapeMismatch, path + (key,), f"one vertical map per column is required ({n})")
        verticals[key] = tuple(
            p.matrix(m, path + (key, str(i)), (rows[b].nodes[i].dim, rows[a].nodes[i].dim))
            for i, m in enumerate(raw))
    return TransferDiagram(rows["top"], rows["middle"], rows["bottom"], verticals["down_top"],
                           verticals["down_bottom"])


def _simplicial(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "facets"), ("facets",))
    facets = []
    for i, f in enumerate(p.listing(spec["facets"], path + ("facets",))):
        fp = path + ("facets", str(i))
        verts = [p.integer(v, fp + (str(j),), 0) for j, v in enumerate(p.listing(f, fp))]
        if not verts:
            p.fail(SchemaError, fp, "a facet needs at least one vertex")
        facets.append(verts)
    return SimplicialComplex.from_facets(facets, name)


def _involution(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "complex", "vertex_map"), ("complex",))
    sc = p.ref(spec["complex"], path + ("complex",), (SimplicialComplex,), "simplicial complex")
    raw = spec.get("vertex_map") or {}
    if not isinstance(raw, dict):
        p.fail(SchemaError, path + ("vertex_map",), "expected a mapping from vertex to vertex")
    vm = {}
    for k, v in raw.items():
        kp = path + ("vertex_map", str(k))
        src = p.degree_key(k, kp)
        vm[src] = p.integer(v, kp)
        if src not in sc.vertices or vm[src] not in sc.vertices:
            p.fail(InvalidObject, kp, f"vertex {src} -> {vm[src]} is not a map of the complex's vertices")
    return SimplicialInvolution(sc, vm)


_INSTANCE_REFS = {"orbit": SimplicialComplex, "fixed": SimplicialComplex, "singular": SimplicialComplex,
                  "total": SimplicialComplex, "total_fixed": SimplicialComplex,
                  "circle_fixed": SimplicialInvolution}


def _instance(p: _Parser, name, spec, path):
    spec = p.mapping(spec, path, ("type", "group", "action_class", "description", "euler", "betti")
                     + tuple(_INSTANCE_REFS), ("group", "action_class"))
    kwargs: dict[str, Any] = {}
    for key, cls in _INSTANCE_REFS.items():
        if spec.get(key) is not None:
            kwargs[key] = p.ref(spec[key], path + (key,), (cls,), cls.__name__)
    euler = {}
    for i, item in enumerate(p.listing(spec.get("euler") or [], path + ("euler",))):
        ip = path + ("euler", str(i))
        entry = p.mapping(item, ip, ("simplex", "value"), ("simplex", "value"))
        simplex = tuple(p.integer(v, ip + ("simplex", str(j)), 0)
                        for j, v in enumerate(p.listing(entry["simplex"], ip + ("simplex",))))
        euler[simplex] = p.rational(entry["value"], ip + ("value",))
    tables = {}
    bspec = p.mapping(spec.get("betti"), path + ("betti",), TERMS)
    for key, value in bspec.items():
        tables[key] = _graded_space(p, key, value, path + ("betti", key))
    return ActionInstance(
        name=name, group=p.string(spec["group"], path + ("group",)),
        action_class=p.string(spec["action_class"], path + ("action_class",)),
        description=p.string(spec.get("description", ""), path + ("description",)),
        euler=euler, betti=tables, **kwargs)


_BUILDERS: dict[str, Callable] = {
    "graded-space": _graded_space,
    "complex": _complex,
    "chain-map": _chain_map,
    "ses": _ses,
    "long-sequence": _long_sequence,
    "double-ses": _double_ses,
    "braid": _braid,
    "transfer": _transfer,
    "simplicial-complex": _simplicial,
    "involution": _involution,
    "action-instance": _instance,
}


def parse_text(text: str, source: str = "<string>") -> DiagramFile:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise DocumentSyntaxError(f"not a valid YAML/JSON document: {getattr(e, 'problem', e)}", "", line) from e
    lines: dict[tuple[str, ...], int] = {}
    if node is not None:
        _line_map(node, (), lines)
    return _Parser(data, lines, source).document()


def parse_file(path: str) -> DiagramFile:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), path)


# --------------------------------------------------------------------------
# serialization

def matrix_rows(m: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.entries]


class _Writer:
    def __init__(self, objects: Mapping[str, Any]):
        self.names: dict[int, str] = {}
        self.out: dict[str, dict] = {}
        self.pending = dict(objects)
        for name, obj in objects.items():
            self.names[id(obj)] = name

    def name_of(self, obj, hint: str) -> str:
        name = self.names.get(id(obj))
        if name is None:
            for other_name, other in self.pending.items():
                if type(other) is type(obj) and other == obj:
                    name = other_name
                    break
        if name is None:
            name = hint
            i = 2
            while name in self.pending:
                name, i = f"{hint}-{i}", i + 1
            self.pending[name] = obj
        self.names[id(obj)] = name
        if name not in self.out:
            self.out[name] = {}  # placeholder keeps declaration order and breaks cycles
            self.out[name] = self.encode(obj, name)
        return name

    def encode(self, obj, name: str) -> dict:
        if isinstance(obj, GradedSpace):
            return {"type": "graded-space", "lo": obj.lo, "dims": list(obj.dims)}
        if isinstance(obj, CochainComplex):
            diffs = {k: matrix_rows(obj.d(k)) for k in obj.degrees() if not obj.d(k).is_zero()}
            doc = {"type": "complex", "lo": obj.lo, "dims": list(obj.dims)}
            if diffs:
                doc["differentials"] = diffs
            return doc
        if isinstance(obj, ChainMap):
            doc = {"type": "chain-map", "source": self.name_of(obj.source, f"{name}.source"),
                   "target": self.name_of(obj.target, f"{name}.target")}
            if obj.shift:
                doc["shift"] = obj.shift
            blocks = {k: matrix_rows(m) for k, m in sorted(obj.blocks.items()) if not m.is_zero()}
            if blocks:
                doc["blocks"] = blocks
            return doc
        if isinstance(obj, ShortExactSequence):
            return {"type": "ses", "inj": self.name_of(obj.inj, f"{name}.inj"),
                    "surj": self.name_of(obj.surj, f"{name}.surj")}
        if isinstance(obj, LongSequence):
            doc = {"type": "long-sequence", "period": obj.period,
                   "nodes": [_encode_node(n) for n in obj.nodes]}
            if obj.name:
                doc["name"] = obj.name
            if obj.arrows is not None:
                doc["arrows"] = [matrix_rows(m) for m in obj.arrows]
            return doc
        if isinstance(obj, DoubleSesDiagram):
            doc = {"type": "double-ses"}
            for f in _DOUBLE_FIELDS:
                doc[f] = self.name_of(getattr(obj, f), f"{name}.{f}")
            return doc
        if isinstance(obj, Braid):
            return {"type": "braid", "lo": obj.lo, "hi": obj.hi,
                    "dims": {f: list(obj.dims[f]) for f in FAMILIES},
                    "arrows": {k: [matrix_rows(m) for m in obj.arrows[k]] for k in ARROWS},
                    "labels": {f: obj.labels.get(f, f) for f in FAMILIES},
                    "offsets": {f: obj.offsets.get(f, 0) for f in FAMILIES}}
        if isinstance(obj, TransferDiagram):
            return {"type": "transfer",
                    "top": self.name_of(obj.top, f"{name}.top"),
                    "middle": self.name_of(obj.middle, f"{name}.middle"),
                    "bottom": self.name_of(obj.bottom, f"{name}.bottom"),
                    "down_top": [matrix_rows(m) for m in obj.down_top],
                    "down_bottom": [matrix_rows(m) for m in obj.down_bottom]}
        if isinstance(obj, SimplicialComplex):
            facets = [list(s) for s in sorted(obj.simplices)
                      if not any(set(s) < set(t) for t in obj.simplices)]
            return {"type": "simplicial-complex", "facets": facets}
        if isinstance(obj, SimplicialInvolution):
            vm = {v: w for v, w in sorted(obj.vertex_map.items()) if v != w}
            doc = {"type": "involution", "complex": self.name_of(obj.complex, f"{name}.complex")}
            if vm:
                doc["vertex_map"] = vm
            return doc
        if isinstance(obj, ActionInstance):
            doc: dict[str, Any] = {"type": "action-instance", "group": obj.group,
                                   "action_class": obj.action_class}
            if obj.description:
                doc["description"] = obj.description
            for key in _INSTANCE_REFS:
                value = getattr(obj, key)
                if value is not None:
                    doc[key] = self.name_of(value, f"{name}.{key}")
            if obj.euler:
                doc["euler"] = [{"simplex": list(s), "value": format_rational(v)}
                                for s, v in sorted(obj.euler.items())]
            if obj.betti:
                doc["betti"] = {k: {"lo": g.lo, "dims": list(g.dims)} for k, g in obj.betti.items()}
            return doc
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _encode_node(n: Node) -> dict:
    doc = {"label": n.label, "degree": n.degree, "dim": n.dim}
    if n.summands:
        doc["summands"] = [_encode_node(s) for s in n.summands]
    return doc


def to_document(objects: Mapping[str, Any], checks: Iterable[Check] = ()) -> dict:
    """The document tree for ``objects``; referenced but unnamed objects get derived names."""
    w = _Writer(objects)
    for name, obj in objects.items():
        w.name_of(obj, name)
    doc: dict[str, Any] = {"format": FORMAT_TAG, "version": FORMAT_VERSION, "objects": w.out}
    entries = []
    for c in checks:
        entry: dict[str, Any] = {"check": c.check}
        if c.target is not None:
            entry["target"] = c.target
        for k, v in c.options.items():
            entry[k] = list(v) if isinstance(v, tuple) else v
        entries.append(entry)
    if entries:
        doc["checks"] = entries
    return doc


def dumps(doc: dict, fmt: str = "yaml") -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "yaml":
        return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)
    raise ValueError(f"unknown output format {fmt!r}")


def serialize(objects: Mapping[str, Any], checks: Iterable[Check] = (), fmt: str = "yaml") -> str:
    return dumps(to_document(objects, checks), fmt)


__all__ = [
    "CATALOG_TARGETS", "CHECKS", "Check", "DanglingReference", "DiagramFile", "DocumentSyntaxError", "FORMAT_TAG",
    "FORMAT_VERSION", "FormatError", "InvalidObject", "RationalError", "ReferenceCycle", "SchemaError", "ShapeMismatch",
    "dumps", "matrix_rows", "parse_file", "parse_text", "serialize", "to_document",
]
