"""Run the bundled fixtures and print a timing table.

    python3 scripts/run_fixtures.py [--filter gr] [--threads 4]
"""
import argparse
import time

from strongseq import regression


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--filter")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    total_bad = 0
    for fx in regression.load_table():
        name = fx["name"]
        if args.filter and not (args.filter in name or any(args.filter in t for t in fx.get("tags", []))):
            continue
        t0 = time.perf_counter()
        obs = regression.observe(regression.fixture_dir() / fx["file"], fx["mode"], args.threads)
        dt = time.perf_counter() - t0
        bad = [k for k, v in sorted(fx["expect"].items()) if obs.get(k) != v]
        total_bad += len(bad)
        size = obs.get("collection_size", "-")
        print(f"{name:20s} {fx['mode']:9s} entries={size!s:>4s} {dt:6.2f}s  {'ok' if not bad else 'MISMATCH ' + ','.join(bad)}")
    print(f"mismatched fields: {total_bad}")


if __name__ == "__main__":
    main()
