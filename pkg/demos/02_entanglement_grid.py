# %% [markdown]
# # Entanglement across the coupling grid
#
# Von Neumann entropy of the isospin and the pair concurrence for
# `alpha = 3`, `Omega = 0.2`, sweeping one coupling over
# `{0.2, 0.5, 0.8, 1.2}` with the other fixed at `0.3`.
#
# Requires matplotlib.

# %%
import matplotlib.pyplot as plt
import numpy as np

from dmosc import ModelParams, evolve_exact_many, initial_state, plan, record
from dmosc.harness import time_grid

taus = time_grid(100.0, 0.05)
values = (0.2, 0.5, 0.8, 1.2)


def series(lambda1, lambda2):
    mp = ModelParams(lambda1=lambda1, lambda2=lambda2, omega=0.2, alpha=3.0)
    states = evolve_exact_many(initial_state(mp), plan(mp, taus), taus)
    return np.array([record(s).as_row() for s in states])


# %%
grids = {
    "lambda1": [series(v, 0.3) for v in values],
    "lambda2": [series(0.3, v) for v in values],
}
for name, runs in grids.items():
    print(name, "mean S:", [round(float(r[:, 1].mean()), 4) for r in runs],
          "max C:", [round(float(r[:, 2].max()), 4) for r in runs])

# %%
fig, axes = plt.subplots(2, 4, figsize=(16, 6), sharex=True, sharey="row")
for row, (name, runs) in enumerate(grids.items()):
    for ax, v, r in zip(axes[row], values, runs):
        ax.plot(r[:, 0], r[:, 1], lw=0.8, label="S")
        ax.plot(r[:, 0], r[:, 2], lw=0.8, label="C")
        ax.axhline(np.log(2), color="gray", ls=":", lw=0.8)
        ax.set_title(f"{name} = {v}")
axes[0, 0].legend()
for ax in axes[1]:
    ax.set_xlabel(r"$\lambda t$")
fig.tight_layout()
fig.savefig("entanglement_grid.png", dpi=120)
