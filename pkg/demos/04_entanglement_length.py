"""
Entanglement length versus coherence length
===========================================

Entanglement requires f^2 + 2 g^2 > 1. Because f^2 ~ 1e-4, that is in
practice g > 1/sqrt(2), which fails after a fraction of a Fermi
wavelength, hundreds of times shorter than the Cooper-pair size.
"""

import math

from cooperspin import MaterialParams, entanglement_length

# The re-entrance scan runs to 2 / delta by default; cap it for the
# smallest gap to keep the demo quick.
for delta in (1e-4, 1e-3, 1e-2):
    res = entanglement_length(MaterialParams(delta=delta, w=0.1), x_max=min(2.0 / delta, 2000.0))
    print(
        f"delta = {delta:.0e}:  k_F r_c = {res.x_c:.4f}  (r_c = {res.rc_over_lambda_f:.3f} lambda_F),  "
        f"k_F xi_0 = {res.kf_xi0:9.1f},  xi_0 / r_c = {res.xi0_over_rc:8.1f},  "
        f"re-entrant up to x = {res.x_max:.0f}: {res.reentrant}"
    )

# %%
# Beyond r_c the singlet weight stays far below the 1/3 threshold.
res = entanglement_length(MaterialParams(delta=1e-3, w=0.1))
print(f"largest p beyond x_c + pi: {res.max_p_beyond:.4f}  (threshold {1 / 3:.4f})")
print(f"free-gas value for comparison: r_c / lambda_F = {1.8148 / (2 * math.pi):.4f}")
