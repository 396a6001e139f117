"""Two-spin Werner state of the BCS ground state and its entanglement.

Basis order is up-up, up-down, down-up, down-down throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .correlators import g_norm, f_norm
from .errors import DomainError, NoRootFound, NumericalDegeneracy
from .model import MaterialParams
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings

__all__ = [
    "SINGLET",
    "SpinDensityMatrix",
    "WernerState",
    "werner_matrix",
    "werner_from_gf",
    "werner_p",
    "partial_transpose",
    "ppt_min_eigenvalue",
    "concurrence_wootters",
    "concurrence_werner",
    "entanglement_condition",
    "EntanglementLength",
    "entanglement_length",
]

SINGLET = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
_SINGLET_PROJECTOR = np.outer(SINGLET, SINGLET)
_SYSY = np.kron(np.array([[0.0, -1j], [1j, 0.0]]), np.array([[0.0, -1j], [1j, 0.0]]))


@dataclass(frozen=True, eq=False)
class SpinDensityMatrix:
    """A validated two-qubit density matrix.

    Raises DomainError unless ``m`` is 4x4, Hermitian and of unit trace to
    1e-12, with no eigenvalue below -1e-10.
    """

    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=complex)
        if m.shape != (4, 4):
            raise DomainError(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise DomainError("matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > 1e-12:
            raise DomainError(f"trace is {np.trace(m).real!r}, not 1")
        if np.linalg.eigvalsh(m)[0] < -1e-10:
            raise DomainError("matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.m, dtype=dtype)


@dataclass(frozen=True)
class WernerState:
    """``(1 - p) I/4 + p |singlet><singlet|`` with ``0 <= p <= 1``."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"Werner parameter must lie in [0, 1], got {self.p!r}")
        object.__setattr__(self, "p", p)

    def density_matrix(self) -> SpinDensityMatrix:
        return SpinDensityMatrix(werner_matrix(self.p))

    @property
    def concurrence(self) -> float:
        return concurrence_werner(self.p)

    @property
    def is_entangled(self) -> bool:
        return self.p > 1.0 / 3.0


def werner_matrix(p: float) -> np.ndarray:
    """Expand ``(1 - p) I/4 + p |singlet><singlet|`` as a 4x4 array."""
    return (1.0 - p) * np.eye(4) / 4.0 + p * _SINGLET_PROJECTOR


def werner_p(g: float, f: float) -> float:
    """Werner parameter ``(f**2 + g**2) / (2 + f**2 - g**2)``."""
    g2, f2 = g * g, f * f
    if g2 > 1.0:
        raise DomainError(f"need g**2 <= 1, got g={g!r}")
    # g**2 <= 1 bounds p by 1 analytically; clip the last-ulp overshoot
    return min(1.0, (f2 + g2) / (2.0 + f2 - g2))


def werner_from_gf(g: float, f: float) -> tuple[SpinDensityMatrix, WernerState]:
    """Two-spin state for normalized correlators ``g`` and ``f``.

    Returns the explicit matrix, built entry by entry from ``g`` and ``f``
    and divided by ``4 - 2 g**2 + 2 f**2``, together with its Werner
    parameter.
    """
    g2, f2 = float(g) ** 2, float(f) ** 2
    if g2 > 1.0:
        raise DomainError(f"need g**2 <= 1, got g={g!r}")
    norm = 4.0 - 2.0 * g2 + 2.0 * f2
    m = np.zeros((4, 4))
    m[0, 0] = m[3, 3] = 1.0 - g2
    m[1, 1] = m[2, 2] = 1.0 + f2
    m[1, 2] = m[2, 1] = -g2 - f2
    return SpinDensityMatrix(m / norm), WernerState(werner_p(g, f))


def partial_transpose(rho) -> np.ndarray:
    """Transpose over the second qubit."""
    m = np.asarray(rho).reshape(2, 2, 2, 2)
    return m.transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_min_eigenvalue(rho) -> float:
    """Smallest eigenvalue of the partial transpose; negative iff entangled."""
    return float(np.linalg.eigvalsh(partial_transpose(rho))[0])


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(m)
    return (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T


def concurrence_wootters(rho) -> float:
    """Wootters concurrence of an arbitrary two-qubit state.

    The ``lambda_i`` are the singular values of ``sqrt(rho) sqrt(rho_tilde)``
    with ``rho_tilde = (sy x sy) rho* (sy x sy)``, which equal the square
    roots of the eigenvalues of ``rho rho_tilde`` without taking square
    roots of tiny, noisy eigenvalues.
    """
    m = np.asarray(rho, dtype=complex)
    rho_tilde = _SYSY @ m.conj() @ _SYSY
    try:
        lam = np.linalg.svd(_psd_sqrt(m) @ _psd_sqrt(rho_tilde), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalDegeneracy(str(exc)) from exc
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_werner(p: float) -> float:
    """Closed-form concurrence of a Werner state, ``max(0, (3p - 1)/2)``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Werner parameter must lie in [0, 1], got {p!r}")
    return max(0.0, 0.5 * (3.0 * p - 1.0))


def entanglement_condition(g: float, f: float) -> bool:
    """True iff ``f**2 + 2 g**2 > 1``, i.e. the Werner state is entangled."""
    if g * g > 1.0:
        raise DomainError(f"need g**2 <= 1, got g={g!r}")
    return f * f + 2.0 * g * g > 1.0


@dataclass(frozen=True, eq=False)
class EntanglementLength:
    """Result of :func:`entanglement_length`.

    ``x_c`` is ``k_F r_c``; the grid arrays hold the re-entrance check
    from ``x_c`` out to ``x_max``.
    """

    x_c: float
    params: MaterialParams
    x_max: float
    grid: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)
    concurrence: np.ndarray = field(repr=False)

    @property
    def rc_over_lambda_f(self) -> float:
        return self.x_c / (2.0 * math.pi)

    @property
    def kf_xi0(self) -> float:
        return self.params.kf_xi0

    @property
    def xi0_over_rc(self) -> float:
        return self.kf_xi0 / self.x_c

    @property
    def reentrant(self) -> bool:
        beyond = self.grid > self.x_c + math.pi
        return bool(np.any(self.concurrence[beyond] > 0.0))

    @property
    def max_p_beyond(self) -> float:
        beyond = self.grid > self.x_c + math.pi
        return float(np.max(self.p[beyond])) if np.any(beyond) else math.nan


def _criterion(x, params, settings) -> float:
    g = g_norm(x, params, settings)
    f = f_norm(x, params, settings)
    return f * f + 2.0 * g * g - 1.0


def entanglement_length(
    params: MaterialParams,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    coarse_step: float = 0.05,
    xtol: float = 1e-6,
    check_step: float = math.pi / 4.0,
    x_max: float | None = None,
) -> EntanglementLength:
    """Separation beyond which the two spins are no longer entangled.

    ``f**2 + 2 g**2 - 1`` is scanned on a grid of ``coarse_step`` until it
    changes sign, the crossing is refined by bisection to ``xtol``, and the
    state must then stay separable over the following half wavelength
    (``pi``). A grid with spacing ``check_step`` out to ``x_max``
    (default ``2 / delta``, about the coherence-length scale) records
    ``p`` and the concurrence to expose any re-entrant entanglement.
    """
    if x_max is None:
        x_max = 2.0 / params.delta if params.delta > 0 else 100.0
    h = lambda x: _criterion(x, params, settings)  # noqa: E731
    x_lo, h_lo = 0.0, h(0.0)
    x_c = None
    n = 1
    while x_lo < x_max:
        x_hi = n * coarse_step
        h_hi = h(x_hi)
        if h_lo > 0.0 >= h_hi:
            root = optimize.bisect(h, x_lo, x_hi, xtol=xtol) if h_hi < 0.0 else x_hi
            tail = np.arange(root + coarse_step, root + math.pi + 0.5 * coarse_step, coarse_step)
            if all(h(t) <= 0.0 for t in tail):
                x_c = root
                break
        x_lo, h_lo = x_hi, h_hi
        n += 1
    if x_c is None:
        raise NoRootFound(f"spins remain entangled on the whole search grid up to x={x_max:g}")

    grid = x_c + check_step * np.arange(int(math.floor((x_max - x_c) / check_step)) + 1)
    p = np.empty_like(grid)
    conc = np.empty_like(grid)
    for i, x in enumerate(grid):
        p[i] = werner_p(g_norm(x, params, settings), f_norm(x, params, settings))
        conc[i] = concurrence_werner(p[i])
    return EntanglementLength(x_c=float(x_c), params=params, x_max=float(x_max), grid=grid, p=p, concurrence=conc)
