"""Spin entanglement of the BCS superconducting ground state.

The equal-time normal and anomalous correlators of an s-wave BCS state
fix a two-spin Werner state at every separation ``r``. This package
evaluates those correlators by quadrature, builds the spin state, tests
it for entanglement and finds the separation at which entanglement dies.
"""

__version__ = "0.1.0"

from .correlators import (
    CorrelatorSample,
    approx_f,
    bessel_k0,
    bessel_k0_quadrature,
    big_f_dimensionless,
    big_g_dimensionless,
    f0_over_g0,
    f_norm,
    f_tilde,
    free_gas_g,
    g_norm,
    rho2_spin_tensor,
    sample,
    weak_coupling_ratio,
)
from .entanglement import (
    EntanglementLength,
    SpinDensityMatrix,
    WernerState,
    concurrence_werner,
    concurrence_wootters,
    entanglement_condition,
    entanglement_length,
    ppt_min_eigenvalue,
    werner_from_gf,
    werner_matrix,
)
from .errors import (
    ConfigError,
    CooperSpinError,
    DivisionDegenerate,
    DomainError,
    NoRootFound,
    NonConvergence,
    NumericalDegeneracy,
)
from .model import MaterialParams, gap, quasiparticle_energy, u2, uv, v2, xi
from .quadrature import QuadratureSettings, integrate_adaptive, integrate_oscillatory, integrate_shell
