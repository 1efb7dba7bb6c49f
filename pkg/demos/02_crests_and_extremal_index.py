# %% [markdown]
# # Crests and the extremal index
#
# Consecutive high readings belong to the same flood wave, so raw
# exceedances are not independent. The extremal index theta measures that
# clustering: 1/theta is the mean cluster size. Two processes with known
# answers show what the estimators do.

# %%
import numpy as np

from riverevt import synthetic, theta

iid = synthetic.iid_uniform(100_000, seed=1)
mm = synthetic.moving_maximum(100_000, seed=1)
for name, x in (("iid", iid), ("moving max", mm)):
    u = np.quantile(x, 0.95)
    r = theta.runs_estimator(x, u, 1)
    i = theta.interexceedance_estimator(x, u)
    print(f"{name:>10}: runs {r.theta:.3f}, interexceedance {i.theta:.3f}")

# %% [markdown]
# On a level series theta rises with the threshold. The declustering
# threshold is where it settles at 1: above it, excesses behave as
# independent draws. Crest extraction offers the alternative of one value
# per wave.

# %%
from pathlib import Path

from riverevt import crest, ingest

series = ingest.read_series(Path(__file__).resolve().parents[1] / "data" / "synthetic" / "levels.csv")
first = ingest.split_segments(series, [10_000], gap=2)[0].take(series.levels)
curve = theta.theta_sweep(first)
print(f"theta from {curve.thetas[0]:.2f} at {curve.thresholds[0]:.2f} m "
      f"to {curve.thetas[-1]:.2f} at {curve.thresholds[-1]:.2f} m")
print(f"declustering threshold: {theta.declustering_threshold(curve):.2f} m")

crests = crest.extract_crests(first)
print(f"{len(crests)} crests above the segment mean {crests.reference_level:.3f} m")
