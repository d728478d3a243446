"""Run the checks declared in a diagram file and assemble a report."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .braid import Braid, BraidNotExact, DoubleSesDiagram, InvalidDiagram, braid_from_double_ses, splice, \
    validate_braid
from .cochain import ChainMap, CochainComplex, StructuralError, cohomology, validate_chain_map, \
    validate_complex
from .exactness import (
    ExactnessReport,
    InvalidSes,
    LongSequence,
    ShortExactSequence,
    TransferDiagram,
    acyclicity_transfer,
    betti_feasible,
    check_exact,
    connecting_map,
    les_of_ses,
    segments,
    validate_ses,
)
from .fileformat import CATALOG_TARGETS, Check, DiagramFile, matrix_rows
from .instances import ActionInstance, InstanceError, InstanceReport, SequenceKind, catalog, find_instance, \
    gysin_transfer, verify_instance
from .linalg import LinalgError

PASS, FAIL, STRUCTURAL = "pass", "fail", "structural-error"
REPORT_SCHEMA = "smithgysin-report/1"


@dataclass
class CheckResult:
    index: int
    check: str
    target: str | None
    status: str
    message: str = ""
    payload: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {"index": self.index, "check": self.check, "target": self.target, "status": self.status,
                "message": self.message, "payload": self.payload}


@dataclass
class Report:
    source: str
    results: list[CheckResult]
    error: dict[str, Any] | None = None  # parse errors: the file never got to run

    @property
    def exit_code(self) -> int:
        if self.error is not None or any(r.status == STRUCTURAL for r in self.results):
            return 2
        if any(r.status == FAIL for r in self.results):
            return 1
        return 0

    @property
    def status(self) -> str:
        return {0: PASS, 1: FAIL, 2: STRUCTURAL}[self.exit_code]

    def as_dict(self) -> dict[str, Any]:
        counts = {s: sum(r.status == s for r in self.results) for s in (PASS, FAIL, STRUCTURAL)}
        return {"schema": REPORT_SCHEMA, "source": self.source, "status": self.status,
                "exit_code": self.exit_code, "error": self.error, "summary": counts,
                "checks": [r.as_dict() for r in self.results]}

    def text(self) -> str:
        lines = []
        if self.error is not None:
            where = ", ".join(str(x) for x in (self.error.get("line") and f"line {self.error['line']}",
                                                self.error.get("path")) if x)
            lines.append(f"{self.source}: {self.error['class']}: {where + ': ' if where else ''}"
                         f"{self.error['message']}")
        for r in self.results:
            target = f" {r.target}" if r.target else ""
            msg = f": {r.message}" if r.message else ""
            lines.append(f"[{r.index}] {r.check}{target} ... {r.status.upper()}{msg}")
        ok = sum(r.status == PASS for r in self.results)
        lines.append(f"{ok}/{len(self.results)} checks passed; exit {self.exit_code}")
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# payload helpers

def _graded(g) -> dict[str, Any]:
    return {"lo": g.lo, "dims": list(g.dims)}


def _exactness(report: ExactnessReport, ls: LongSequence) -> dict[str, Any]:
    return {
        "dims": list(ls.dims),
        "labels": [n.label for n in ls.nodes],
        "defects": list(report.defects),
        "failing_nodes": report.failing_nodes(),
        "not_a_complex": list(report.not_a_complex),
        "segments": [{"start": s.start, "stop": s.stop, "alternating_sum": s.alternating_sum}
                     for s in report.segments],
    }


def _sequence_status(report: ExactnessReport) -> tuple[str, str]:
    if report.not_a_complex:
        return FAIL, f"consecutive arrows do not compose to zero at nodes {list(report.not_a_complex)}"
    if not report.exact:
        return FAIL, f"inexact at nodes {report.failing_nodes()}"
    return PASS, ""


def _check_sequence(ls: LongSequence) -> tuple[str, str, dict]:
    if ls.explicit:
        report = check_exact(ls)
        status, msg = _sequence_status(report)
        return status, msg, _exactness(report, ls)
    feasible, ranks = betti_feasible((0,) + ls.dims + (0,))
    segs = segments(ls.dims)
    payload = {"dims": list(ls.dims), "labels": [n.label for n in ls.nodes], "feasible": feasible,
               "ranks": list(ranks),
               "segments": [{"start": s.start, "stop": s.stop, "alternating_sum": s.alternating_sum}
                            for s in segs]}
    if not feasible:
        return FAIL, "dimensions admit no exact rank profile", payload
    return PASS, "", payload


def _instance_payload(rep: InstanceReport) -> dict[str, Any]:
    return {
        "instance": rep.instance,
        "explicit": rep.explicit,
        "model_mismatches": [{"term": t, "expected": _graded(a), "model": _graded(b)}
                             for t, a, b in rep.model_mismatches],
        "kinds": [{"kind": r.kind.value, "status": r.status, "dims": list(r.dims), "feasible": r.feasible,
                   "ranks": list(r.ranks), "explicit": r.explicit, "defects": list(r.defects),
                   "message": r.message} for r in rep.results],
    }


def _instance_status(rep: InstanceReport) -> tuple[str, str]:
    if rep.status == "structural-error":
        bad = [r for r in rep.results if r.status == STRUCTURAL]
        return STRUCTURAL, "; ".join(f"{r.kind.value}: {r.message}" for r in bad)
    if rep.ok:
        return PASS, ""
    parts = [f"{t} model disagrees" for t, _, _ in rep.model_mismatches]
    parts += [f"{r.kind.value}: {r.message}" for r in rep.results if r.status == FAIL]
    return FAIL, "; ".join(parts)


# --------------------------------------------------------------------------
# checks

class _Structural(Exception):
    pass


def _as(obj, types, what):
    if not isinstance(obj, types):
        raise _Structural(f"target is a {type(obj).__name__}, expected {what}")
    return obj


def _check_complex(obj, opts):
    c = _as(obj, CochainComplex, "a complex")
    report = validate_complex(c)
    payload = {"dims": {"lo": c.lo, "dims": list(c.dims)},
               "defects": [{"degree": k, "matrix": matrix_rows(m)} for k, m in sorted(report.defects.items())]}
    if not report.ok:
        return FAIL, f"d∘d is nonzero in degrees {sorted(report.defects)}", payload
    payload["cohomology"] = _graded(cohomology(c).graded)
    return PASS, "", payload


def _check_chain_map(obj, opts):
    f = _as(obj, ChainMap, "a chain map")
    report = validate_chain_map(f)
    payload = {"shift": f.shift,
               "defects": [{"degree": k, "matrix": matrix_rows(m)} for k, m in sorted(report.defects.items())]}
    if not report.ok:
        return FAIL, f"fails to commute with d in degrees {sorted(report.defects)}", payload
    return PASS, "", payload


def _check_ses(obj, opts):
    s = _as(obj, ShortExactSequence, "a short exact sequence")
    report = validate_ses(s)
    payload = {"window": list(s.window()),
               "defects": [{"degree": k, "message": m} for k, m in report.defects]}
    if not report.ok:
        return FAIL, "; ".join(f"degree {k}: {m}" for k, m in report.defects), payload
    return PASS, "", payload


def _check_les(obj, opts):
    s = _as(obj, ShortExactSequence, "a short exact sequence")
    ls = les_of_ses(s)
    status, msg, payload = _check_sequence(ls)
    lo, hi = s.window()
    if opts.get("lift") == "perturbed":
        rng = random.Random(0)
        disagree = [k for k in range(lo, hi) if connecting_map(s, k, "pivot") != connecting_map(s, k, "perturbed", rng)]
        payload["lift_disagreements"] = disagree
        if disagree and status == PASS:
            status, msg = FAIL, f"connecting maps depend on the lift in degrees {disagree}"
    return status, msg, payload


def _check_exact(obj, opts):
    return _check_sequence(_as(obj, LongSequence, "a long sequence"))


def _braid_of(obj) -> Braid:
    if isinstance(obj, Braid):
        return obj
    if isinstance(obj, DoubleSesDiagram):
        return braid_from_double_ses(obj)
    if isinstance(obj, ActionInstance):
        if not obj.explicit:
            raise _Structural(f"instance {obj.name} has no explicit cochain model")
        return obj.braid
    raise _Structural(f"target is a {type(obj).__name__}, expected a braid, double-ses or action instance")


def _braid_payload(report) -> dict:
    return {
        "defects": [{"kind": d.kind, "relation": d.name, "degree": d.k, "matrix": matrix_rows(d.matrix)}
                    for d in report.defects],
        "strands": {str(s): {"defects": list(r.defects), "failing_nodes": r.failing_nodes(),
                             "not_a_complex": list(r.not_a_complex)}
                    for s, r in sorted(report.strands.items())},
    }


def _check_braid(obj, opts):
    report = validate_braid(_braid_of(obj))
    payload = _braid_payload(report)
    return (PASS, "", payload) if report.ok else (FAIL, report.summary(), payload)


def _check_splice(obj, opts):
    pivot = opts.get("pivot", "E")
    try:
        ls = splice(_braid_of(obj), pivot)
    except BraidNotExact as e:
        return FAIL, f"braid is not commutative and exact: {e}", _braid_payload(e.report)
    status, msg, payload = _check_sequence(ls)
    payload["pivot"] = pivot
    return status, msg, payload


def _check_transfer(obj, opts):
    if isinstance(obj, ActionInstance):
        obj = gysin_transfer(obj)
    t = _as(obj, TransferDiagram, "a transfer diagram or action instance")
    rep = acyclicity_transfer(t)
    payload = {"verdict": rep.status, "structural": list(rep.structural),
               "not_a_complex": {k: list(v) for k, v in rep.not_a_complex.items()},
               "row_defects": {k: list(v) for k, v in rep.row_defects.items()},
               "les_exact": rep.les_exact}
    if rep.status == "certified":
        return PASS, "bottom row certified exact", payload
    if rep.status == "structural-error":
        return STRUCTURAL, "; ".join(rep.structural), payload
    broken = [f"{row} row inexact at {[i for i, d in enumerate(ds) if d]}"
              for row, ds in rep.row_defects.items() if row != "bottom" and any(ds)]
    broken += [f"{row} row not a complex" for row in rep.not_a_complex if row != "bottom"]
    return FAIL, "; ".join(broken) or "hypotheses fail", payload


def _kinds(opts) -> list[SequenceKind] | None:
    if "kinds" not in opts:
        return None
    try:
        return [SequenceKind(k) for k in opts["kinds"]]
    except ValueError as e:
        raise _Structural(str(e)) from None


def _check_instance(obj, opts):
    inst = _as(obj, ActionInstance, "an action instance")
    rep = verify_instance(inst, _kinds(opts))
    status, msg = _instance_status(rep)
    return status, msg, _instance_payload(rep)


def _check_catalog(obj, opts):
    reports = [verify_instance(inst) for inst in catalog()]
    statuses = [_instance_status(r) for r in reports]
    payload = {"instances": [_instance_payload(r) for r in reports]}
    if any(s == STRUCTURAL for s, _ in statuses):
        return STRUCTURAL, "; ".join(m for s, m in statuses if s == STRUCTURAL), payload
    failed = [r.instance for r, (s, _) in zip(reports, statuses) if s != PASS]
    if failed:
        return FAIL, f"instances failing: {failed}", payload
    return PASS, f"{len(reports)} instances verified", payload


CHECK_FUNCTIONS: dict[str, Callable] = {
    "check-complex": _check_complex,
    "check-chain-map": _check_chain_map,
    "check-ses": _check_ses,
    "les": _check_les,
    "check-exact": _check_exact,
    "braid-validate": _check_braid,
    "braid-splice": _check_splice,
    "transfer": _check_transfer,
    "verify-instance": _check_instance,
    "catalog": _check_catalog,
}


def run_check(index: int, check: Check, objects: dict[str, Any]) -> CheckResult:
    """Run one check; every error is caught and reported, never raised."""
    try:
        if check.target is None:
            obj = None
        elif check.target in objects:
            obj = objects[check.target]
        elif check.check in CATALOG_TARGETS:
            obj = find_instance(check.target)
        else:
            raise _Structural(f"no object named {check.target!r}")
        status, message, payload = CHECK_FUNCTIONS[check.check](obj, check.options)
    except (_Structural, StructuralError, InvalidSes, InvalidDiagram, InstanceError, LinalgError, KeyError,
            ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        return CheckResult(index, check.check, check.target, STRUCTURAL, f"{type(e).__name__}: {msg}")
    return CheckResult(index, check.check, check.target, status, message, payload)


def run(diagram: DiagramFile) -> Report:
    return Report(diagram.source, [run_check(i, c, diagram.objects) for i, c in enumerate(diagram.checks)])


def error_report(source: str, error: Exception) -> Report:
    return Report(source, [], {"class": type(error).__name__,
                               "message": getattr(error, "message", str(error)),
                               "path": getattr(error, "path", "") or None,
                               "line": getattr(error, "line", None)})


__all__ = ["CHECK_FUNCTIONS", "CheckResult", "FAIL", "PASS", "REPORT_SCHEMA", "Report", "STRUCTURAL",
           "error_report", "run", "run_check"]
