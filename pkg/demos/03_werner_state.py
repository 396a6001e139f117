"""
The two-spin Werner state
=========================

At separation r the two spins are in a Werner state whose weight p on the
singlet is fixed by g and f. Separability and concurrence follow from p.
"""

import numpy as np

from cooperspin import (
    MaterialParams,
    concurrence_werner,
    concurrence_wootters,
    f_norm,
    g_norm,
    ppt_min_eigenvalue,
    werner_from_gf,
    werner_matrix,
)

params = MaterialParams(delta=1e-3, w=0.1)
np.set_printoptions(precision=5, suppress=True)

# %%
# At the origin the state is the singlet; it mixes towards I/4 as g decays.
for x in (0.0, 1.0, 1.8, 3.0, 10.0):
    g, f = g_norm(x, params), f_norm(x, params)
    rho, state = werner_from_gf(g, f)
    print(f"x = {x:4.1f}   g = {g:+.4f}   f = {f:+.2e}   p = {state.p:.4f}   "
          f"PPT min eig = {ppt_min_eigenvalue(rho):+.4f}   C = {concurrence_werner(state.p):.4f}")

# %%
# The explicit matrix and the Werner expansion are the same object.
rho, state = werner_from_gf(g_norm(1.0, params), f_norm(1.0, params))
print(rho.m.real)
print("max difference:", np.max(np.abs(rho.m - werner_matrix(state.p))))

# %%
# Wootters' general algorithm reproduces the closed-form concurrence.
for p in (0.2, 1 / 3, 0.5, 0.8, 1.0):
    print(f"p = {p:.3f}   Wootters = {concurrence_wootters(werner_matrix(p)):.6f}   closed form = {concurrence_werner(p):.6f}")
