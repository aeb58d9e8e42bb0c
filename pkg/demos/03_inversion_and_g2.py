# %% [markdown]
# # Population inversion and photon statistics
#
# Collapse and revival of the isospin inversion `W` and the normalized
# second-order correlation `g2` for `lambda1 = 0.3`, `lambda2 = 0.2`.
# The same data is produced by the command line:
#
# ```bash
# dmosc run --lambda2 0.2 --observables W,g2 --plot --out-dir out/w_g2
# ```

# %%
import numpy as np

from dmosc.harness import ExperimentConfig, compute_series

cfg = ExperimentConfig(lambda1=0.3, lambda2=0.2, observables="W,g2", out_dir="out/w_g2")
rows = compute_series(cfg)
tau, w, g2 = rows.T

# %% [markdown]
# Envelope of `|W|` in windows of width 5: the Rabi oscillations collapse
# after `tau ~ 10` and slowly rephase towards the end of the window.

# %%
for start in range(0, 100, 10):
    m = (tau >= start) & (tau < start + 5)
    print(f"tau in [{start:3d},{start + 5:3d})  max|W| = {np.abs(w[m]).max():.3f}")

# %% [markdown]
# `g2` starts Poissonian (`g2 = 1`) and then oscillates just above 1.

# %%
m = (tau >= 5) & (tau <= 50)
print("g2(0) =", g2[0])
print("mean g2 on [5, 50] =", g2[m].mean())
print("range on [1, 100]   =", g2[tau >= 1].min(), g2[tau >= 1].max())
