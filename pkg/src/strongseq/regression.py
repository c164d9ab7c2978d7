"""Regression runner for the bundled example quivers."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from . import pipeline, report
from .collection import HypothesisError
from .specfile import load_spec

ENV_DIR = "STRONGSEQ_FIXTURE_DIR"


def fixture_dir() -> Path:
    override = os.environ.get(ENV_DIR)
    return Path(override) if override else Path(__file__).parent / "fixtures"


def load_table(directory: Path | None = None) -> list[dict]:
    directory = directory or fixture_dir()
    return json.loads((directory / "expectations.json").read_text())["fixtures"]


def observe(path: Path, mode: str, threads: int = 1) -> dict:
    """Computed values for one fixture, keyed like the expectation table."""
    spec = load_spec(path)
    if mode == "analyze":
        try:
            out = pipeline.analyze(spec, threads)
        except HypothesisError as exc:
            return {"hypothesis_error": exc.hypothesis}
        return _nef_fields(report.canon(out.doc)["nef"]) | {"hypothesis_error": None}
    try:
        out = pipeline.collection(spec, mode, threads)
    except HypothesisError as exc:
        return {"hypothesis_error": exc.hypothesis}
    doc = report.canon(out.doc)
    nef = doc["analysis"]["nef"]
    col = doc["collection"]
    obs = _nef_fields(nef)
    obs.update({
        "hypothesis_error": None,
        "anticanonical": doc["analysis"]["anticanonical"],
        "genericity": doc["analysis"]["genericity"]["verdict"],
        "genericity_test": doc["analysis"]["genericity"]["test"],
        "slot_boxes": sorted([s["module"], s["box"][0], s["box"][1]] for s in col["slots"]),
        "collection_size": len(col["entries"]),
        "modules": [e["module"]["label"] for e in col["entries"]],
        "h0_pass": col["verification"]["passed"],
        "h0_pairs": col["verification"]["pairs"],
    })
    if "euler_characteristic" in col["stats"]:
        obs["euler_characteristic"] = col["stats"]["euler_characteristic"]
    if mode == "relative" and "split" in doc:
        sp = doc["split"]
        obs["relative_conditions"] = {"i": sp["condition_i"], "ii": sp["condition_ii"], "iii": sp["condition_iii"]}
        obs["absolute_subset"] = doc["comparison"]["absolute_subset"]
    try:
        obs["oracle_pass"] = pipeline.oracle(spec, mode, threads).passed
    except pipeline.ScopeError:
        obs["oracle_pass"] = None
    return obs


def _nef_fields(nef: dict) -> dict:
    return {
        "vb_plus": sorted(M["label"] for M in nef["vb_plus"]),
        "extremal_weights": sorted(nef["extremal_weights"]),
        "coefficients": {c["module"]: c["m"] for c in nef["coefficients"]},
    }


@dataclass(frozen=True)
class Mismatch:
    fixture: str
    field: str
    expected: object
    observed: object


def run(name_filter: str | None = None, threads: int = 1, directory: Path | None = None):
    """Run every (matching) fixture; returns (names run, mismatches)."""
    directory = directory or fixture_dir()
    ran, bad = [], []
    for fx in load_table(directory):
        if name_filter and not (name_filter in fx["name"] or any(name_filter in t for t in fx.get("tags", []))):
            continue
        ran.append(fx["name"])
        obs = observe(directory / fx["file"], fx["mode"], threads)
        for key, want in sorted(fx["expect"].items()):
            got = obs.get(key, "<missing>")
            if got != want:
                bad.append(Mismatch(fx["name"], key, want, got))
    return ran, bad
