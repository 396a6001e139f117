"""Adaptive quadrature for the correlator integrals.

Every momentum integral in the model has compact support: ``v**2``
vanishes identically above the pairing shell and ``u v`` vanishes outside
it, so the nominal ``int_0^inf dk`` reduces to a finite interval. The
integrands are, however, non-smooth at the shell edges (the step in the
gap), sharply peaked on a scale ``delta`` around the Fermi surface, and
multiplied by ``sin(kappa x)`` which oscillates quickly at large ``x``.

The engine below is a globally adaptive 7/15-point Gauss-Kronrod rule
evaluated on all active panels at once. Callers seed it with breakpoints
(shell edges, peak scales, zeros of the sine) so that each initial panel
is smooth and covers at most half an oscillation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate as _scipy_integrate

from .errors import DomainError, NonConvergence
from .model import MaterialParams, shell_bounds

__all__ = [
    "QuadratureSettings",
    "DEFAULT_SETTINGS",
    "integrate_adaptive",
    "integrate_oscillatory",
    "integrate_shell",
    "shell_breakpoints",
]


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 10_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol!r}")
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol!r}")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be a positive integer, got {self.max_subdivisions!r}")


DEFAULT_SETTINGS = QuadratureSettings()

# Kronrod 15-point abscissae on [-1, 1] (non-negative half, descending) and
# weights; the embedded 7-point Gauss rule uses the odd-indexed abscissae.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[7] = _WG[3]
_WG15[[9, 11, 13]] = _WG[2::-1]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


def _as_vectorized(f: Callable) -> Callable:
    """Return ``f`` if it maps arrays elementwise, otherwise a vectorized wrapper."""
    probe = np.array([0.25, 0.5])
    try:
        out = np.asarray(f(probe), dtype=float)
        if out.shape == probe.shape:
            return f
    except (TypeError, ValueError):
        pass
    return np.vectorize(f, otypes=[float])


def _gk15(f, lo, hi):
    """Kronrod estimate and QUADPACK-style error bound on each panel."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    t = center[:, None] + half[:, None] * _NODES[None, :]
    fv = np.asarray(f(t.ravel()), dtype=float).reshape(t.shape)
    if not np.all(np.isfinite(fv)):
        raise DomainError("integrand returned a non-finite value")
    resk = fv @ _WK
    resg = fv @ _WG15
    reskh = 0.5 * resk
    resabs = np.abs(fv) @ _WK
    resasc = np.abs(fv - reskh[:, None]) @ _WK
    value = resk * half
    resabs = resabs * np.abs(half)
    resasc = resasc * np.abs(half)
    err = np.abs((resk - resg) * half)
    with np.errstate(invalid="ignore", divide="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > _TINY / (50.0 * _EPS), np.maximum(err, floor), err)
    return value, err


def _sum_ascending(values) -> float:
    v = np.asarray(values, dtype=float)
    return math.fsum(v[np.argsort(np.abs(v), kind="stable")])


def _integrate_panels(f, edges: np.ndarray, settings: QuadratureSettings, x=None):
    """Globally adaptive integration over the panels delimited by ``edges``."""
    lo, hi = edges[:-1].copy(), edges[1:].copy()
    length = float(edges[-1] - edges[0])
    if length == 0.0:
        return 0.0, 0.0
    acc_vals: list[np.ndarray] = []
    acc_errs: list[np.ndarray] = []
    acc_val = 0.0
    acc_err = 0.0
    subdivisions = 0
    while True:
        vals, errs = _gk15(f, lo, hi)
        total = acc_val + _sum_ascending(vals)
        total_err = acc_err + math.fsum(errs)
        tol = max(settings.abs_tol, settings.rel_tol * abs(total))
        if total_err <= tol:
            acc_vals.append(vals)
            acc_errs.append(errs)
            break
        ok = errs <= tol * (hi - lo) / length
        # panels too narrow to split further are accepted as they are
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        ok |= stuck
        if np.any(ok):
            acc_vals.append(vals[ok])
            acc_errs.append(errs[ok])
            acc_val += _sum_ascending(vals[ok])
            acc_err += math.fsum(errs[ok])
        bad = ~ok
        if not np.any(bad):
            break
        subdivisions += int(np.count_nonzero(bad))
        if subdivisions > settings.max_subdivisions:
            raise NonConvergence(
                f"tolerance {tol:.3g} not met after {settings.max_subdivisions} subdivisions "
                f"(error estimate {total_err:.3g})",
                value=total,
                err_est=total_err,
                x=x,
            )
        blo, bhi, bmid = lo[bad], hi[bad], mid[bad]
        lo = np.concatenate([blo, bmid])
        hi = np.concatenate([bmid, bhi])
    value = _sum_ascending(np.concatenate(acc_vals))
    err = math.fsum(np.concatenate(acc_errs))
    return value, err


def _edges(a: float, b: float, breakpoints: Iterable[float]) -> np.ndarray:
    pts = np.asarray(list(breakpoints), dtype=float)
    pts = pts[(pts > a) & (pts < b)]
    return np.unique(np.concatenate([[a], pts, [b]]))


def integrate_adaptive(
    f: Callable,
    a: float,
    b: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    breakpoints: Sequence[float] = (),
    weight: str | None = None,
    wvar: float | None = None,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]``; return ``(value, err_est)``.

    ``f`` should accept a numpy array and act elementwise; scalar-only
    callables are wrapped automatically. Interior ``breakpoints`` mark
    discontinuities or kinks. An infinite upper limit is delegated to
    QUADPACK; there ``weight='cos'`` or ``'sin'`` with frequency ``wvar``
    selects the Fourier-integral routine.
    """
    a, b = float(a), float(b)
    if math.isnan(a) or math.isnan(b) or a > b:
        raise DomainError(f"need a <= b, got a={a!r}, b={b!r}")
    if math.isinf(a):
        raise DomainError("lower limit must be finite")
    if math.isinf(b):
        return _integrate_infinite(f, a, settings, weight, wvar)
    if weight is not None:
        if weight not in ("cos", "sin"):
            raise DomainError(f"unknown weight {weight!r}")
        w = float(wvar)
        g = _as_vectorized(f)
        trig = np.cos if weight == "cos" else np.sin
        return _integrate_panels(lambda t: g(t) * trig(w * t), _edges(a, b, breakpoints), settings)
    if a == b:
        return 0.0, 0.0
    return _integrate_panels(_as_vectorized(f), _edges(a, b, breakpoints), settings)


def _integrate_infinite(f, a, settings, weight, wvar):
    def scalar(t):
        return float(f(t))

    kwargs = dict(epsabs=settings.abs_tol, epsrel=settings.rel_tol, limit=settings.max_subdivisions)
    if weight is not None:
        if weight not in ("cos", "sin"):
            raise DomainError(f"unknown weight {weight!r}")
        kwargs = dict(epsabs=settings.abs_tol, limlst=200, limit=settings.max_subdivisions)
        kwargs.update(weight=weight, wvar=float(wvar))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _scipy_integrate.IntegrationWarning)
        out = _scipy_integrate.quad(scalar, a, np.inf, full_output=1, **kwargs)
    value, err = out[0], out[1]
    if len(out) > 3:
        raise NonConvergence(f"QUADPACK did not converge: {out[3]}", value=value, err_est=err)
    return float(value), float(err)


def integrate_oscillatory(
    envelope: Callable,
    x: float,
    a: float,
    b: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    breakpoints: Sequence[float] = (),
    return_error: bool = False,
):
    """Compute ``int_a^b envelope(kappa) sin(kappa x) dkappa``.

    The interval is cut at every zero of ``sin(kappa x)`` so that no
    panel spans more than half a period, then refined adaptively; panel
    contributions are summed in order of increasing magnitude. At
    ``x == 0`` the result is exactly 0: this routine never divides by
    ``x``, that limit belongs to the caller.
    """
    x = float(x)
    a, b = float(a), float(b)
    if x < 0 or math.isnan(x):
        raise DomainError(f"x must be >= 0, got {x!r}")
    if not (math.isfinite(a) and math.isfinite(b)) or a > b:
        raise DomainError(f"need a finite interval a <= b, got [{a!r}, {b!r}]")
    if x == 0.0 or a == b:
        return (0.0, 0.0) if return_error else 0.0
    env = _as_vectorized(envelope)
    j0 = math.floor(a * x / math.pi) + 1
    j1 = math.ceil(b * x / math.pi) - 1
    zeros = np.arange(j0, j1 + 1, dtype=float) * (math.pi / x) if j1 >= j0 else np.empty(0)
    edges = _edges(a, b, np.concatenate([zeros, np.asarray(list(breakpoints), dtype=float)]))
    value, err = _integrate_panels(lambda k: env(k) * np.sin(k * x), edges, settings, x=x)
    return (value, err) if return_error else value


def shell_breakpoints(params: MaterialParams) -> np.ndarray:
    """Points in ``xi`` that resolve the ``1/sqrt(xi**2 + delta**2)`` peak."""
    d = params.delta
    pts = [0.0] if d == 0.0 else [s * m * d for m in (1.0, 10.0, 100.0) for s in (-1.0, 1.0)]
    pts = np.asarray(pts)
    return np.unique(pts[np.abs(pts) < params.w])


def integrate_shell(
    peaked: Callable,
    x: float,
    params: MaterialParams,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    return_error: bool = False,
):
    """Integrate a function of ``xi`` over the pairing shell in 3D.

    Returns ``int peaked(xi(kappa)) kappa sin(kappa x) / x dkappa`` taken
    over ``sqrt(1-w) <= kappa <= sqrt(1+w)``, or with the kernel
    ``kappa**2`` at ``x == 0``. The integration runs in ``xi`` itself
    (``dkappa = dxi / (2 kappa)``), split at ``+-delta``, ``+-10 delta``,
    ``+-100 delta`` and at the zeros of the sine.
    """
    x = float(x)
    if x < 0 or math.isnan(x):
        raise DomainError(f"x must be >= 0, got {x!r}")
    w = params.w
    pk = _as_vectorized(peaked)
    pts = shell_breakpoints(params)
    if x == 0.0:
        def integrand(e):
            return pk(e) * np.sqrt(1.0 + e) * 0.5
    else:
        k_lo, k_hi = shell_bounds(params)
        j0 = math.floor(k_lo * x / math.pi) + 1
        j1 = math.ceil(k_hi * x / math.pi) - 1
        if j1 >= j0:
            kz = np.arange(j0, j1 + 1, dtype=float) * (math.pi / x)
            pts = np.concatenate([pts, kz * kz - 1.0])
        inv2x = 0.5 / x

        def integrand(e):
            return pk(e) * np.sin(np.sqrt(1.0 + e) * x) * inv2x
    value, err = _integrate_panels(integrand, _edges(-w, w, pts), settings, x=x)
    return (value, err) if return_error else value
