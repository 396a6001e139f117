"""Dimensionless BCS model: dispersion, gap and coherence factors.

Energies are measured in units of the Fermi energy and momenta in units
of the Fermi wave number, so that for a parabolic band

    xi(kappa) = kappa**2 - 1,   kappa = k / k_F.

The chemical potential is pinned to the Fermi energy. The gap is a
constant ``delta`` inside the Debye shell ``|xi| <= w`` (closed interval)
and zero outside it.

All functions accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "MaterialParams",
    "WeakCouplingWarning",
    "xi",
    "gap",
    "quasiparticle_energy",
    "v2",
    "u2",
    "uv",
    "uv_of_xi",
    "shell_bounds",
]


class WeakCouplingWarning(UserWarning):
    """Emitted when the gap is not small compared with the Debye energy."""


@dataclass(frozen=True)
class MaterialParams:
    """Model inputs as ratios to the Fermi energy.

    Parameters
    ----------
    delta : float
        Gap, ``Delta / eps_F``. Zero gives the normal (free-gas) state.
    w : float
        Debye energy, ``hbar omega_D / eps_F``; must lie in (0, 1) so the
        pairing shell sits inside the band.
    """

    delta: float = 1e-3
    w: float = 0.1

    def __post_init__(self):
        delta, w = float(self.delta), float(self.w)
        if not math.isfinite(delta) or delta < 0.0:
            raise DomainError(f"delta must be finite and >= 0, got {self.delta!r}")
        if not (0.0 < w < 1.0):
            raise DomainError(f"w must satisfy 0 < w < 1, got {self.w!r}")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "w", w)
        if delta >= w:
            warnings.warn(
                f"delta={delta:g} is not below w={w:g}; outside the weak-coupling regime",
                WeakCouplingWarning,
                stacklevel=3,
            )

    @classmethod
    def from_physical(cls, gap_mev=1.0, debye_mev=100.0, fermi_ev=1.0):
        """Build from a gap and Debye energy in meV and a Fermi energy in eV."""
        if fermi_ev <= 0:
            raise DomainError(f"fermi_ev must be > 0, got {fermi_ev!r}")
        ef_mev = 1000.0 * fermi_ev
        return cls(delta=gap_mev / ef_mev, w=debye_mev / ef_mev)

    @property
    def kf_xi0(self) -> float:
        """BCS coherence length times k_F, ``2 / (pi delta)``."""
        if self.delta == 0.0:
            return math.inf
        return 2.0 / (math.pi * self.delta)


def _kappa(kappa):
    k = np.asarray(kappa, dtype=float)
    if np.any(k < 0):
        raise DomainError("kappa must be >= 0")
    return k


def _out(a):
    return a.item() if a.ndim == 0 else a


def shell_bounds(params: MaterialParams) -> tuple[float, float]:
    """Momenta bounding the pairing shell, ``sqrt(1 -+ w)``."""
    return math.sqrt(1.0 - params.w), math.sqrt(1.0 + params.w)


def xi(kappa):
    """Single-particle energy relative to the Fermi level."""
    k = _kappa(kappa)
    return _out(k * k - 1.0)


def gap(kappa, params: MaterialParams):
    k = _kappa(kappa)
    return _out(np.where(np.abs(k * k - 1.0) <= params.w, params.delta, 0.0))


def quasiparticle_energy(kappa, params: MaterialParams):
    k = _kappa(kappa)
    e = k * k - 1.0
    d = np.where(np.abs(e) <= params.w, params.delta, 0.0)
    return _out(np.hypot(e, d))


def _ratio(kappa, params):
    """Return (xi/E, gap, E) with xi/E := 0 where E vanishes."""
    k = _kappa(kappa)
    e = k * k - 1.0
    d = np.where(np.abs(e) <= params.w, params.delta, 0.0)
    energy = np.hypot(e, d)
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.where(energy > 0, e / energy, 0.0)
    return r, d, energy


def v2(kappa, params: MaterialParams):
    """Pair occupation probability ``v_k**2``."""
    r, _, _ = _ratio(kappa, params)
    return _out(0.5 * (1.0 - r))


def u2(kappa, params: MaterialParams):
    """Pair vacancy probability ``u_k**2 = 1 - v_k**2``."""
    r, _, _ = _ratio(kappa, params)
    return _out(0.5 * (1.0 + r))


def uv(kappa, params: MaterialParams):
    """Pair amplitude ``u_k v_k``, taken non-negative (real positive gap).

    Equals ``gap / (2 E)`` inside the shell and vanishes outside it.
    """
    _, d, energy = _ratio(kappa, params)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(d > 0, d / (2.0 * energy), 0.0)
    return _out(out)


def uv_of_xi(xi_value, params: MaterialParams):
    """``u v`` written as a function of ``xi`` rather than of ``kappa``."""
    e = np.asarray(xi_value, dtype=float)
    d = np.where(np.abs(e) <= params.w, params.delta, 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(d > 0, d / (2.0 * np.hypot(e, d)), 0.0)
    return _out(out)
