# %% [markdown]
# # Werner and MEMS states at time zero
#
# Build the two state families, attach the environment qubit and look at
# the two entanglement measures side by side.  Run with
# `python3 notebooks/01_states_and_measures.py` or open as a percent-format
# notebook.

# %%
import numpy as np

from sqconc import ModelParams, concurrence, find_sce, measure_point, mems, werner
from sqconc.linalg import eigvalsh

# %% [markdown]
# A Werner state mixes the singlet with white noise.  Its spectrum is one
# large eigenvalue (1+3g)/4 and three copies of (1-g)/4.

# %%
for g in (0.0, 0.5, 1.0):
    print(f"gamma={g:.1f}  spectrum={np.round(eigvalsh(werner(g)), 4)}")

# %% [markdown]
# MEMS switch their shape at gamma = 2/3 but stay continuous there; the
# concurrence is gamma on the whole range.

# %%
for g in (0.2, 2 / 3, 0.9):
    print(f"gamma={g:.3f}  C(mems)={concurrence(mems(g)):.6f}")

# %% [markdown]
# Sweep gamma at alpha = jt = 0.  The squashed proxy is half the conditional
# mutual information of the (A, B, E) state, in bits.

# %%
print(" gamma   SE_W      C_W       SE_M      C_M")
for g in np.linspace(0, 1, 11):
    w = measure_point(ModelParams(float(g), state_family="werner"))
    m = measure_point(ModelParams(float(g), state_family="mems"))
    print(f" {g:.1f}   {w[0].value:.6f}  {w[1].value:.6f}  {m[0].value:.6f}  {m[1].value:.6f}")

# %% [markdown]
# Where the two Werner curves meet:

# %%
for fam in ("werner", "mems"):
    res = find_sce(fam)
    print(f"{fam}: curves cross at gamma={res.location:.6f} (bracket {res.bracket})")
