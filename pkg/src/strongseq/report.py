"""Deterministic JSON reports for the pipeline stages."""
from __future__ import annotations

import json
from fractions import Fraction

from . import cones
from .bott import ExtTable
from .collection import Collection, H0Report, RelativeSplit, collection_stats
from .lattice import OrderVector, Weight
from .nefcone import NefData
from .quiver import Quiver, anticanonical, genericity_check, invariants_trivial, multiplicity_hypothesis, rep_weights
from .schur import IrredModule

SCHEMA_VERSION = "1"
_SAFE_INT = 2 ** 53


def canon(x):
    """Convert to plain JSON values; rationals and big integers become strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x if abs(x) < _SAFE_INT else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Weight):
        return [canon(c) for c in x.coords]
    if isinstance(x, IrredModule):
        return module_doc(x)
    if isinstance(x, dict):
        return {str(k): canon(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [canon(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(canon(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def module_doc(M: IrredModule) -> dict:
    return {"label": M.label(), "highest_weight": list(M.highest_weight.coords), "dimension": M.dimension}


def cone_doc(C: cones.Cone) -> dict:
    return {
        "generators": [list(v) for v in C.generators],
        "inequalities": [list(v) for v in C.inequalities],
        "rays": [list(v) for v in C.rays],
        "lineality": [list(v) for v in C.lineality],
        "facets": [list(v) for v in C.facets],
        "equations": [list(v) for v in C.equations],
    }


def quiver_doc(Q: Quiver) -> dict:
    return {
        "vertices": [{"id": v.id, "dim": v.dim, "frozen": v.frozen} for v in Q.vertices],
        "arrows": [{"id": a.id, "tail": a.tail, "head": a.head, "multiplicity": a.multiplicity} for a in Q.arrows],
        "shape": [[vid, d] for vid, d in Q.shape.blocks],
    }


def nef_doc(nd: NefData) -> dict:
    return {
        "anticanonical": nd.theta,
        "minimal_sets": [[list(w.coords) for w in S] for S in nd.minimal_sets],
        "nef_cone": cone_doc(nd.nef_cone),
        "extremal_weights": list(nd.extremal_weights),
        "vb_plus": list(nd.vb_plus),
        "coefficients": [{"module": M.label(), "m": c} for M, c in nd.decomposition.coefficients],
        "coefficient_vertices": [list(v) for v in nd.decomposition.vertices],
        "integral": nd.integral,
    }


def analysis_doc(Q: Quiver, nd: NefData | None, ell: OrderVector | None = None) -> dict:
    inv = invariants_trivial(Q)
    mh = multiplicity_hypothesis(Q)
    gv = genericity_check(Q)
    doc = {
        "quiver": quiver_doc(Q),
        "weight_table": [{"weight": w, "multiplicity": m} for w, m in rep_weights(Q).entries],
        "anticanonical": anticanonical(Q),
        "invariants": {
            "trivial": inv.trivial,
            "functional": list(inv.functional.coords) if inv.functional else None,
            "relation": [{"weight": w, "coefficient": c} for w, c in inv.relation],
        },
        "multiplicity_hypothesis": {
            "components": [{"arrow": c.arrow_id, "d_omega": c.d_omega, "m_omega": c.m_omega,
                            "weak": c.weak, "strict": c.strict} for c in mh.components],
            "effective_codim2": mh.effective_codim2,
            "semistable_bundles": mh.semistable_bundles,
        },
        "genericity": {"verdict": gv.verdict, "test": gv.test, "detail": gv.detail},
    }
    if nd is not None:
        doc["nef"] = nef_doc(nd)
    if ell is not None:
        doc["order_vector"] = list(ell.coords)
    return doc


def assumptions_doc(items) -> list:
    return [{"name": a.name, "status": a.status, "detail": a.detail} for a in items]


def collection_doc(Q: Quiver, C: Collection, h0: H0Report | None) -> dict:
    entries = []
    for i, e in enumerate(C.entries):
        entries.append({
            "index": i,
            "module": module_doc(e.module),
            "order_key": [e.key[0], list(e.key[1])],
            "multiplicity": e.multiplicity,
            "sources": [[{"module": M.label(), "diagram": list(lam.entries)} for M, lam in lab]
                        for lab in e.sources],
        })
    doc = {
        "theorem": C.theorem,
        "order_vector": list(C.order_vector.coords),
        "slots": [{"module": s.module.label(), "level": s.level, "m": s.m, "dimension": s.d,
                   "box": [s.bound, s.d], "empty_box": s.empty_box} for s in C.slots],
        "entries": entries,
        "stats": collection_stats(C, Q),
    }
    if h0 is not None:
        counts: dict[str, int] = {}
        for _, _, v in h0.verdicts:
            key = v.status if v.status != "vanishes" else f"vanishes:{v.probe}"
            counts[key] = counts.get(key, 0) + 1
        doc["verification"] = {
            "passed": h0.passed,
            "pairs": h0.pairs,
            "failures": [list(p) for p in h0.failures],
            "verdict_counts": counts,
            "matrix": [[i, j, v.status, v.probe] for i, j, v in h0.verdicts],
            "diagonal": "scalar (theorem-backed)",
        }
    return doc


def split_doc(split: RelativeSplit) -> dict:
    return {
        "subquiver": list(split.sub_arrows),
        "fibre_shape": [[v, d] for v, d in split.fibre.shape.blocks],
        "fibre_weights": [{"weight": w, "multiplicity": m} for w, m in split.fibre.weights],
        "vb_base": list(split.vb_base),
        "vb_fibre": list(split.vb_fibre),
        "condition_i": split.condition_i,
        "condition_ii": split.condition_ii,
        "condition_iii": split.condition_iii,
        "vb_partition": split.vb_partition,
        "details": split.details,
    }


def oracle_doc(table: ExtTable, modules) -> dict:
    fx = table.fixture
    return {
        "fixture": {"kind": fx.kind, "m": fx.m, "chain": [[v, d] for v, d in fx.chain], "dimension": fx.dimension},
        "modules": [M.label() for M in modules],
        "ext": [[a, b, [[q, d] for q, d in row]] for a, b, row in table.table],
        "higher_vanish": table.higher_vanish,
        "backward_hom_vanish": table.backward_hom_vanish,
        "endomorphisms_scalar": table.endomorphisms_scalar,
        "verdict": "pass" if table.passed else "fail",
    }


def envelope(command: str, body: dict, assumptions=(), status: str = "ok", name: str = "") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "name": name,
        "status": status,
        "assumptions": assumptions_doc(assumptions),
        **body,
    }
