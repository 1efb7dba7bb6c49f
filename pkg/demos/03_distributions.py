# %% [markdown]
# # Tail distributions
#
# Four families describe threshold excesses: exponential, Weibull in the
# rate/shape form F = 1 - exp(-rate x^shape), Gumbel and Frechet. Deep tail
# probabilities come from the survival function directly, which keeps
# digits that 1 - cdf would lose.

# %%
import numpy as np

from riverevt import dist

w = dist.weibull(1.135, 1.410)
for x in (1.0, 3.4, 8.0, 14.0):
    print(f"x={x:>5}: cdf {float(dist.cdf(w, x)):.6f}  1-cdf {1 - float(dist.cdf(w, x)):.3e}  "
          f"survival {float(dist.survival(w, x)):.3e}")

# %% [markdown]
# Quantiles invert the cdf, and inversion sampling uses the same path.

# %%
p = np.array([0.5, 0.9, 0.99])
print("quantiles", dist.quantile(w, p))
draws = dist.sample(w, 10_000, np.random.default_rng(0))
print("sample median", np.median(draws), "model median", float(dist.quantile(w, 0.5)))

# %% [markdown]
# The empirical distribution is the step function of a sample.

# %%
e = dist.empirical(draws)
print("empirical cdf at the model median:", dist.empirical_cdf(e, float(dist.quantile(w, 0.5))))
