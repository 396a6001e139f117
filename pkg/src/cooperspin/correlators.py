"""Equal-time normal and anomalous correlators of the BCS ground state.

In units where momenta are measured in ``k_F`` and lengths in ``1/k_F``
the two continuum Fourier transforms are

    I_G(x) = int_0^inf v^2(kappa) kappa sin(kappa x) / x dkappa
    I_F(x) = int_shell u v(kappa) kappa sin(kappa x) / x dkappa

with ``x = k_F r``. Both are proportional to the physical ``iG(r)`` and
``iF(r)`` with a common factor ``k_F**3 / (2 pi**2)``; since only ratios
enter the spin state, that factor is dropped everywhere. ``I_G(0)`` is
half the electron density in these units (``1/3`` for the free gas).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DivisionDegenerate, DomainError
from .model import MaterialParams, shell_bounds, uv_of_xi, v2
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    integrate_adaptive,
    integrate_oscillatory,
    integrate_shell,
    shell_breakpoints,
)

__all__ = [
    "CorrelatorSample",
    "big_g_dimensionless",
    "big_f_dimensionless",
    "g_norm",
    "f_norm",
    "f_tilde",
    "sample",
    "clear_cache",
    "f0_over_g0",
    "weak_coupling_ratio",
    "free_gas_g",
    "bessel_k0",
    "bessel_k0_quadrature",
    "approx_f",
    "SIGMA_Y_I",
    "rho2_spin_tensor",
]

_EULER_GAMMA = 0.57721566490153286061


@dataclass(frozen=True)
class CorrelatorSample:
    """Normalized correlators at one separation ``x = k_F r``.

    ``f_tilde`` is NaN in the normal state, where ``F(0)`` vanishes.
    """

    x: float
    g: float
    f: float
    f_tilde: float


def _check_x(x) -> float:
    x = float(x)
    if not x >= 0.0:
        raise DomainError(f"x must be >= 0, got {x!r}")
    return x


def _g_breakpoints(params: MaterialParams) -> np.ndarray:
    lo, _ = shell_bounds(params)
    return np.concatenate([[lo], np.sqrt(1.0 + shell_breakpoints(params))])


@lru_cache(maxsize=8192)
def _big_g(x: float, params: MaterialParams, settings: QuadratureSettings) -> float:
    _, hi = shell_bounds(params)
    bp = _g_breakpoints(params)
    if x == 0.0:
        value, _ = integrate_adaptive(lambda k: v2(k, params) * k * k, 0.0, hi, settings, breakpoints=bp)
        return value
    value = integrate_oscillatory(lambda k: v2(k, params) * k, x, 0.0, hi, settings, breakpoints=bp)
    return value / x


@lru_cache(maxsize=8192)
def _big_f(x: float, params: MaterialParams, settings: QuadratureSettings) -> float:
    if params.delta == 0.0:
        return 0.0
    return integrate_shell(lambda e: uv_of_xi(e, params), x, params, settings)


def clear_cache() -> None:
    """Drop memoized correlator integrals."""
    _big_g.cache_clear()
    _big_f.cache_clear()


def big_g_dimensionless(x, params: MaterialParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Normal correlator ``I_G(x)``; continuous at ``x = 0``."""
    return _big_g(_check_x(x), params, settings)


def big_f_dimensionless(x, params: MaterialParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Anomalous correlator ``I_F(x)``; identically zero when ``delta == 0``."""
    return _big_f(_check_x(x), params, settings)


def g_norm(x, params: MaterialParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """``g = G(r) / G(0)``."""
    return big_g_dimensionless(x, params, settings) / big_g_dimensionless(0.0, params, settings)


def f_norm(x, params: MaterialParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """``f = F(r) / G(0)``."""
    return big_f_dimensionless(x, params, settings) / big_g_dimensionless(0.0, params, settings)


def f_tilde(x, params: MaterialParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """``F(r) / F(0)``; raises DivisionDegenerate in the normal state."""
    f0 = big_f_dimensionless(0.0, params, settings)
    if f0 == 0.0:
        raise DivisionDegenerate("F(0) vanishes (delta == 0); F(r)/F(0) is undefined")
    return big_f_dimensionless(x, params, settings) / f0


def sample(x, params: MaterialParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> CorrelatorSample:
    x = _check_x(x)
    g0 = big_g_dimensionless(0.0, params, settings)
    f0 = big_f_dimensionless(0.0, params, settings)
    fx = big_f_dimensionless(x, params, settings)
    ft = fx / f0 if f0 != 0.0 else math.nan
    return CorrelatorSample(x=x, g=big_g_dimensionless(x, params, settings) / g0, f=fx / g0, f_tilde=ft)


def f0_over_g0(params: MaterialParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Numerically computed ``F(0) / G(0)``."""
    return f_norm(0.0, params, settings)


def weak_coupling_ratio(params: MaterialParams) -> float:
    """Closed-form estimate ``(3/2) delta ln(2 w / delta)`` of ``F(0)/G(0)``."""
    if params.delta == 0.0:
        return 0.0
    return 1.5 * params.delta * math.log(2.0 * params.w / params.delta)


def free_gas_g(x):
    """``g(x)`` of the non-interacting gas, ``3 (sin x - x cos x) / x**3``."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 1e-2
    xs = x[small]
    # Taylor series keeps full precision where the closed form cancels
    out[small] = 1.0 - xs**2 / 10.0 + xs**4 / 280.0 - xs**6 / 15120.0
    xl = x[~small]
    out[~small] = 3.0 * (np.sin(xl) - xl * np.cos(xl)) / xl**3
    return out.item() if out.ndim == 0 else out


def _k0_series(y: float) -> float:
    q = 0.25 * y * y
    term = 1.0
    harmonic = 0.0
    i0 = 1.0
    tail = 0.0
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        harmonic += 1.0 / k
        i0 += term
        tail += term * harmonic
        if term * max(harmonic, 1.0) < 1e-17 * abs(tail + 1.0):
            break
    return -(math.log(0.5 * y) + _EULER_GAMMA) * i0 + tail


def _k0_continued_fraction(y: float) -> float:
    # Steed's evaluation of Temme's CF2 at order zero
    b = 2.0 * (1.0 + y)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 100_000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    return math.sqrt(math.pi / (2.0 * y)) * math.exp(-y) / s


def bessel_k0(y) -> float:
    """Modified Bessel function of the second kind, order zero.

    Power series about the origin for ``y <= 2`` and a continued fraction
    for the scaled function beyond. Relative accuracy ~1e-14 on
    ``[1e-6, 700]``.
    """
    y = float(y)
    if not y > 0.0:
        raise DomainError(f"K0 is defined for y > 0, got {y!r}")
    if y <= 2.0:
        return _k0_series(y)
    return _k0_continued_fraction(y)


def bessel_k0_quadrature(y, settings: QuadratureSettings = QuadratureSettings(rel_tol=1e-12, abs_tol=1e-12)) -> float:
    """``K0(y) = int_0^inf cos(y t) / sqrt(1 + t**2) dt`` by Fourier quadrature."""
    y = float(y)
    if not y > 0.0:
        raise DomainError(f"K0 is defined for y > 0, got {y!r}")
    value, _ = integrate_adaptive(lambda t: 1.0 / math.sqrt(1.0 + t * t), 0.0, math.inf, settings, weight="cos", wvar=y)
    return value


def approx_f(x, params: MaterialParams) -> float:
    """Closed-form approximation to ``F(r) / F(0)``.

    ``sinc(x) K0(x / (pi k_F xi_0)) / ln(2 w / delta)``: the sinc-times-K0
    form of ``F(r)`` divided by the weak-coupling value of ``F(0)``. Only
    meaningful away from the origin, where K0 diverges.
    """
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"approx_f requires x > 0, got {x!r}")
    if params.delta == 0.0:
        raise DivisionDegenerate("approx_f is undefined in the normal state")
    return math.sin(x) / x * bessel_k0(x / (math.pi * params.kf_xi0)) / math.log(2.0 * params.w / params.delta)


SIGMA_Y_I = np.array([[0.0, 1.0], [-1.0, 0.0]])
"""Spin structure ``i sigma_y`` of the anomalous correlator, index 0 = up."""


def rho2_spin_tensor(x1, x2, x1p, x2p, params: MaterialParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> np.ndarray:
    """Two-electron space-spin density matrix at four positions.

    Positions are 3-vectors in units of ``1/k_F``. Returns a complex array
    ``rho[s1, s2, s1p, s2p]`` (spin index 0 = up, 1 = down), built from
    ``G = -i I_G`` and ``F = -i I_F`` with the constant
    ``(k_F**3 / 2 pi**2)**2`` dropped. Reshaping to ``(4, 4)`` gives rows
    ``(s1, s2)`` and columns ``(s1p, s2p)`` in the order up-up, up-down,
    down-up, down-down.
    """
    r1, r2, r1p, r2p = (np.asarray(v, dtype=float).reshape(3) for v in (x1, x2, x1p, x2p))

    def big_g(d):
        return -1j * big_g_dimensionless(float(np.linalg.norm(d)), params, settings)

    def big_f(d):
        return -1j * big_f_dimensionless(float(np.linalg.norm(d)), params, settings)

    eye = np.eye(2)
    direct = np.einsum("ac,bd->abcd", eye, eye) * (big_g(r1 - r1p) * big_g(r2 - r2p))
    exchange = np.einsum("ad,bc->abcd", eye, eye) * (big_g(r1 - r2p) * big_g(r2 - r1p))
    pairing = np.einsum("ab,cd->abcd", SIGMA_Y_I, SIGMA_Y_I) * (big_f(r1 - r2) * np.conj(big_f(r1p - r2p)))
    return -0.5 * (direct - exchange - pairing)
