"""Command line interface: analyze, collection, oracle, fixtures.

Exit codes: 0 success, 1 parse/usage error, 2 hypothesis failure (including a
failed H^0 or oracle verification), 3 input outside the oracle's scope,
4 fixture regression mismatch.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import pipeline, regression, report
from .collection import HypothesisError
from .specfile import SpecError, load_spec

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_SCOPE, EXIT_REGRESSION = 0, 1, 2, 3, 4


def _emit(doc: dict, output: str | None):
    text = report.dumps(doc)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strongseq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True):
        if spec:
            sp.add_argument("spec", help="quiver specification (JSON)")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--threads", type=int, default=1, help="worker threads (output is unaffected)")

    common(sub.add_parser("analyze", help="weights, anticanonical character, nef cone, VB+"))
    sp = sub.add_parser("collection", help="build and verify a Schur-power collection")
    common(sp)
    sp.add_argument("--mode", choices=pipeline.MODES, default="absolute")
    sp.add_argument("--no-full-scan", action="store_true", help="only probe the two order weights")
    sp = sub.add_parser("oracle", help="Borel-Weil-Bott Ext table for Grassmannian/flag fixtures")
    common(sp)
    sp.add_argument("--mode", choices=pipeline.MODES, default=None)
    sp = sub.add_parser("fixtures", help="run the bundled regression suite")
    common(sp, spec=False)
    sp.add_argument("--filter", help="substring of fixture names or tags")
    return p


def _run_fixtures(args) -> int:
    t0 = time.perf_counter()
    ran, bad = regression.run(args.filter, args.threads)
    for name in ran:
        fails = [m for m in bad if m.fixture == name]
        print(f"{'FAIL' if fails else 'ok  '} {name}", file=sys.stderr)
        for m in fails:
            print(f"     {m.field}: expected {m.expected!r}, got {m.observed!r}", file=sys.stderr)
    print(f"{len(ran)} fixture(s), {len(bad)} mismatch(es), {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    doc = report.envelope("fixtures", {
        "fixtures": ran,
        "mismatches": [{"fixture": m.fixture, "field": m.field, "expected": m.expected, "observed": m.observed}
                       for m in bad],
    }, status="ok" if not bad else "regression")
    if args.output:
        _emit(doc, args.output)
    return EXIT_REGRESSION if bad else EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    if args.command == "fixtures":
        return _run_fixtures(args)
    try:
        spec = load_spec(args.spec)
    except SpecError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.command == "analyze":
            out = pipeline.analyze(spec, args.threads)
        elif args.command == "collection":
            out = pipeline.collection(spec, args.mode, args.threads, not args.no_full_scan)
        else:
            out = pipeline.oracle(spec, args.mode, args.threads)
    except HypothesisError as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        _emit(pipeline.hypothesis_doc(args.command, spec.name, exc), args.output)
        return EXIT_HYPOTHESIS
    except pipeline.ScopeError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (pipeline.UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _emit(out.doc, args.output)
    if not out.passed:
        print(f"verification failed ({out.doc.get('status')})", file=sys.stderr)
        return EXIT_HYPOTHESIS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
