# %% [markdown]
# # Choosing and fitting a tail family
#
# On a Q-Q plot with the right coordinates a family's sample falls on a
# line. The Weibull plot uses ln(-ln(1-p)) against ln x; the fitted slope
# and intercept give the shape and rate. R^2 of the line ranks the
# families.

# %%
import numpy as np

from riverevt import dist, fitgof

x = dist.sample(dist.weibull(1.135, 1.410), 500, np.random.default_rng(20080721))
sel = fitgof.select_family(x)
for fam, r2 in sel.ranking:
    print(f"{fam:>12}: R^2 {r2:.4f}")

# %% [markdown]
# Q-Q regression and maximum likelihood agree closely on a sample this size.

# %%
qq = fitgof.fit(x, "weibull", fitgof.QQ)
mle = fitgof.fit(x, "weibull", fitgof.MLE)
print(f"qq : rate {qq.rate:.4f} shape {qq.shape:.4f}")
print(f"mle: rate {mle.rate:.4f} shape {mle.shape:.4f}")

# %% [markdown]
# The plot itself is a pair of arrays; any plotting tool can draw it.

# %%
plot = fitgof.qq_points(x, "weibull")
line = fitgof.linearity(plot)
print(f"{len(plot)} points, slope {line.slope:.4f}, intercept {line.intercept:.4f}")
