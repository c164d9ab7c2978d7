"""Pipeline orchestration shared by the CLI and the fixture runner."""
from __future__ import annotations

from dataclasses import dataclass

from . import report
from .bott import homogeneous_ext_table, recognize
from .collection import (Collection, H0Report, HypothesisError, base_assumptions, build_absolute,
                         build_relative, build_tower, check_relative_conditions, resolve_order_vector,
                         verify_h0)
from .nefcone import NefData, nef_data
from .specfile import QuiverSpec

MODES = ("absolute", "relative", "tower")


class ScopeError(ValueError):
    """The requested computation does not apply to this input (exit code 3)."""


class UsageError(ValueError):
    """The input file lacks data the requested mode needs (exit code 1)."""


@dataclass
class Outcome:
    doc: dict
    passed: bool = True
    nef: NefData | None = None
    collection: Collection | None = None
    h0: H0Report | None = None


def analyze(spec: QuiverSpec, threads: int = 1) -> Outcome:
    Q = spec.quiver
    assumptions = base_assumptions(Q)  # raises HypothesisError on K[V]^T != K
    nd = nef_data(Q, threads)
    ell = resolve_order_vector(Q, spec.order_vector)
    body = report.analysis_doc(Q, nd, ell)
    return Outcome(report.envelope("analyze", body, assumptions, name=spec.name), True, nd)


def collection(spec: QuiverSpec, mode: str = "absolute", threads: int = 1, full_scan: bool = True) -> Outcome:
    Q = spec.quiver
    ell = resolve_order_vector(Q, spec.order_vector) if spec.order_vector else None
    body = {}
    if mode == "absolute":
        C = build_absolute(Q, ell, threads)
    elif mode == "relative":
        if spec.relative is None:
            raise UsageError("relative mode needs a 'relative' section in the input file")
        rel = spec.relative
        if set(rel.subquiver) != {a.id for a in Q.arrows}:
            split = check_relative_conditions(Q, rel.subquiver, threads)
            body["split"] = report.split_doc(split)
        C = build_relative(Q, rel.subquiver, ell, threads, rel.assert_condition_i, rel.b_overrides or None)
        absolute = build_absolute(Q, ell, threads)
        a_set, r_set = set(absolute.modules()), set(C.modules())
        body["comparison"] = {
            "absolute_entries": len(a_set),
            "relative_entries": len(r_set),
            "absolute_subset": a_set <= r_set,
            "strict_superset": a_set < r_set,
            "absolute_boxes": [[s.module.label(), s.bound, s.d] for s in absolute.slots],
        }
    elif mode == "tower":
        if spec.tower is None:
            raise UsageError("tower mode needs a 'tower' section in the input file")
        assert_i = spec.relative.assert_condition_i if spec.relative else False
        C = build_tower(Q, spec.tower, ell, threads, assert_i)
    else:
        raise UsageError(f"unknown mode {mode!r}")
    h0 = verify_h0(Q, C, threads, full_scan)
    nd = C.levels[-1] if mode == "absolute" else nef_data(Q, threads)
    body["analysis"] = report.analysis_doc(Q, nd, C.order_vector)
    body["collection"] = report.collection_doc(Q, C, h0)
    body["mode"] = mode
    status = "ok" if h0.passed else "verification-failed"
    doc = report.envelope("collection", body, C.assumptions, status, spec.name)
    return Outcome(doc, h0.passed, nd, C, h0)


def oracle(spec: QuiverSpec, mode: str | None = None, threads: int = 1) -> Outcome:
    Q = spec.quiver
    fx = recognize(Q)
    if fx is None:
        raise ScopeError("quiver is not a recognized Grassmannian or flag fixture")
    if mode is None:
        mode = "tower" if spec.tower else ("relative" if spec.relative else "absolute")
    out = collection(spec, mode, threads)
    table = homogeneous_ext_table(fx, out.collection.modules())
    body = dict(out.doc)
    body["command"] = "oracle"
    body["oracle"] = report.oracle_doc(table, out.collection.modules())
    body["status"] = "ok" if table.passed else "oracle-failed"
    return Outcome(body, table.passed, out.nef, out.collection, out.h0)


def hypothesis_doc(command: str, spec_name: str, exc: HypothesisError) -> dict:
    witness = None
    if exc.witness is not None:
        witness = [{"weight": w, "coefficient": c} for w, c in exc.witness]
    return report.envelope(command, {"diagnostic": {"hypothesis": exc.hypothesis, "message": str(exc),
                                                    "witness": witness}},
                           status="hypothesis-failure", name=spec_name)
