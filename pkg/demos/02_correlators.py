"""
Normal and anomalous correlators
================================

g(x) = G(r)/G(0) and F~(x) = F(r)/F(0) against x = k_F r, the free-gas
limit of g, the size of F(0)/G(0), and the sinc * K0 approximation of F~.
"""

import math

import numpy as np

from cooperspin import (
    MaterialParams,
    approx_f,
    f0_over_g0,
    f_tilde,
    free_gas_g,
    g_norm,
    weak_coupling_ratio,
)

# %%
# Delta = 1 meV, hbar omega_D = 100 meV, eps_F = 1 eV.
params = MaterialParams.from_physical(gap_mev=1.0, debye_mev=100.0, fermi_ev=1.0)
print(params, f"k_F xi_0 = {params.kf_xi0:.1f}")

# %%
# The anomalous correlator is tiny compared with the density: its ratio to
# G(0) is set by delta * ln(2 w / delta).
print(f"F(0)/G(0) numeric     = {f0_over_g0(params):.4e}")
print(f"F(0)/G(0) closed form = {weak_coupling_ratio(params):.4e}")

# %%
# g is indistinguishable from the free-gas Fourier transform of the Fermi
# sphere; it falls off like 1/x^2. F~ oscillates with zeros near n pi and
# decays only like 1/x out to the coherence length.
xs = np.arange(0.01, 20.0, 0.01)
g = np.array([g_norm(x, params) for x in xs])
ft = np.array([f_tilde(x, params) for x in xs])
print(f"max |g - g_free| on the grid: {np.max(np.abs(g - free_gas_g(xs))):.2e}")
for x in (1.0, 2.0, 5.0, 10.0, 20.0):
    print(f"x = {x:5.1f}   g = {g_norm(x, params):+.5f}   F~ = {f_tilde(x, params):+.5f}   approx = {approx_f(x, params):+.5f}")

# %%
# The approximation drops the Debye cutoff of the shell integral. Beyond
# x ~ 2 pi it stays within about 0.01 of the exact curve.
window = np.linspace(2 * math.pi + 1e-6, 50.0, 500)
diff = max(abs(f_tilde(x, params) - approx_f(x, params)) for x in window)
print(f"max |F~ - approx| on (2 pi, 50): {diff:.3e}")

if __name__ == "__main__":
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(xs, ft, "-", label=r"$\tilde F$")
    ax.plot(xs, g, ":", label="$g$")
    ax.axhline(0.0, color="0.7", lw=0.5)
    ax.set_xlabel("$k_F r$")
    ax.legend()
    fig.tight_layout()
    fig.savefig("correlators.png", dpi=150)
    print("wrote correlators.png")
