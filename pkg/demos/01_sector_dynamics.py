# %% [markdown]
# # Sector dynamics and solver cross-checks
#
# The excitation number `I` is conserved, so the state splits into
# independent 4-dimensional sectors (3-dimensional for `I = 0`).  This
# script builds a few blocks, evolves the coherent initial state with the
# spectral propagator and compares it with RK4 and with a dense
# diagonalization of the whole truncated space.

# %%
import numpy as np

from dmosc import (ModelParams, build_block, dense_oracle, evolve_exact, evolve_rk4,
                   excitation_expectation, initial_state, plan, total_norm)

mp = ModelParams(lambda1=0.3, lambda2=0.3, omega=0.2, alpha=3.0)
print(mp)

# %% [markdown]
# Block of sector `n = 0`: diagonal `(-2 Omega, 0, 0, 2 Omega)` and four
# couplings `a, d, c, b`.

# %%
np.set_printoptions(precision=6, suppress=True)
print(build_block(0, mp).matrix)
print(build_block(-2, mp).matrix)

# %% [markdown]
# ## Initial state

# %%
s0 = initial_state(mp)
print("norm", total_norm(s0), " <I>", excitation_expectation(s0))
print("first sectors:", {n: np.round(v, 5) for n, v in list(s0.sectors.items())[:4]})

# %% [markdown]
# ## Three solvers, one answer

# %%
p = plan(mp)
for tau in (1.0, 10.0, 50.0):
    exact = evolve_exact(s0, p, tau).amplitudes
    dense = dense_oracle(s0, mp, tau).amplitudes
    print(f"tau={tau:5.1f}  |exact - dense| = {np.max(np.abs(exact - dense)):.2e}")

exact = evolve_exact(s0, p, 10.0).amplitudes
for dt in (0.2, 0.1, 0.05, 0.025):
    err = np.max(np.abs(evolve_rk4(s0, mp, 10.0, dt).amplitudes - exact))
    print(f"RK4 dt={dt:<6} error {err:.3e}")
