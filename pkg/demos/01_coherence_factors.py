"""
Coherence factors of the BCS ground state
=========================================

The pair occupation ``v_k^2`` and the pair amplitude ``u_k v_k`` against
``eps_k / eps_F`` for a gap of one thousandth of the Fermi energy.
"""

# %%
# Everything is dimensionless: energies in units of eps_F, momenta in
# units of k_F, so eps_k / eps_F = kappa**2.
import numpy as np

from cooperspin import MaterialParams, uv, v2

params = MaterialParams(delta=1e-3, w=0.1)
eps = np.linspace(0.0, 2.0, 20001)
kappa = np.sqrt(eps)

occupation = v2(kappa, params)
amplitude = uv(kappa, params)

# %%
# v^2 is a Fermi step smeared over a few delta; u v is a narrow peak of
# height 1/2 sitting on the Fermi surface and vanishing outside the
# Debye shell |eps - 1| <= w.
for e in (0.5, 0.99, 0.999, 1.0, 1.001, 1.01, 1.5):
    k = np.sqrt(e)
    print(f"eps/eps_F = {e:6.3f}   v2 = {v2(k, params):.6f}   uv = {uv(k, params):.6f}")

half = eps[amplitude >= 0.25]
print(f"FWHM of uv in eps/eps_F: {half[-1] - half[0]:.2e}  (2 sqrt(3) delta = {2 * np.sqrt(3) * params.delta:.2e})")

# %%
# The same table is what ``cooperspin coherence`` prints.
if __name__ == "__main__":
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(eps, occupation, "-", label=r"$v_k^2$")
    ax.plot(eps, amplitude, ":", label=r"$u_k v_k$")
    ax.set_xlabel(r"$\epsilon_k/\epsilon_F$")
    ax.legend()
    fig.tight_layout()
    fig.savefig("coherence_factors.png", dpi=150)
    print("wrote coherence_factors.png")
