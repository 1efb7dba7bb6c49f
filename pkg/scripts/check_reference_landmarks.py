"""
Check a Huang He level record against the published landmarks.

The landmarks are: theta near 0.25 at thresholds below 57 m in both
segments, theta reaching 1 at 58.95 m (before the drop) and 57.8 m (after),
and a record minimum of 56.4 m. The record itself is not bundled; obtain it
from the altimetry database and pass the CSV path:

    python3 scripts/check_reference_landmarks.py levels.csv [--split auto]

Exit status is 0 when every landmark holds within tolerance, 1 otherwise.
"""

import argparse
import sys

import numpy as np

from riverevt import ingest, reference, theta


def check(path, split="auto", theta_tol=0.1, level_tol=0.25, gap=0):
    series = ingest.read_series(path)
    results = []

    lo = float(series.levels.min())
    results.append((f"minimum level {lo:.2f} m vs {reference.MINIMUM_LEVEL_M} m",
                    abs(lo - reference.MINIMUM_LEVEL_M) <= level_tol))

    if split == "auto":
        splits = [ingest.detect_change_point(series).index]
    else:
        splits = [int(s) for s in split.split(",")]
    segments = ingest.split_segments(series, splits, gap)
    if len(segments) != 2:
        results.append((f"expected 2 segments, got {len(segments)}", False))
        return results

    for seg, column in zip(segments, (reference.BEFORE_DROP, reference.AFTER_DROP)):
        x = seg.take(series.levels)
        grid = np.arange(np.floor(x.min() * 20) / 20, x.max(), 0.05)
        curve = theta.theta_sweep(x, grid)
        low = curve.defined & (curve.thresholds < 57.0)
        if low.any():
            t = float(np.mean(curve.thetas[low]))
            results.append((f"{column.name}: mean theta below 57 m {t:.3f} vs {reference.LOW_THRESHOLD_THETA}",
                            abs(t - reference.LOW_THRESHOLD_THETA) <= theta_tol))
        else:
            results.append((f"{column.name}: no defined theta below 57 m", False))
        u = theta.declustering_threshold(curve)
        target = column.declustering_threshold_m
        results.append((f"{column.name}: theta reaches 1 at {u if u is None else round(u, 2)} m vs {target} m",
                        u is not None and abs(u - target) <= level_tol))
    return results


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    p.add_argument("csv")
    p.add_argument("--split", default="auto", help="auto | index of the first post-drop sample")
    p.add_argument("--gap", type=int, default=0)
    p.add_argument("--theta-tol", type=float, default=0.1)
    p.add_argument("--level-tol", type=float, default=0.25, help="metres")
    args = p.parse_args(argv)
    results = check(args.csv, args.split, args.theta_tol, args.level_tol, args.gap)
    for what, ok in results:
        print(f"{'PASS' if ok else 'FAIL'} {what}")
    return 0 if all(ok for _, ok in results) else 1


if __name__ == "__main__":
    sys.exit(main())
