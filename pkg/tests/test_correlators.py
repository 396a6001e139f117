import math

import numpy as np
import pytest
from scipy import special

from cooperspin.correlators import (
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
from cooperspin.entanglement import concurrence_werner, werner_from_gf
from cooperspin.errors import DivisionDegenerate, DomainError
from cooperspin.model import MaterialParams, shell_bounds, uv, uv_of_xi
from cooperspin.quadrature import integrate_shell

from conftest import brute_force

P = MaterialParams(delta=1e-3, w=0.1)
NORMAL = MaterialParams(delta=0.0, w=0.1)


# --- normal correlator ---------------------------------------------------

def test_free_gas_density():
    assert big_g_dimensionless(0.0, NORMAL) == pytest.approx(1.0 / 3.0, abs=1e-12)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0, 10.0])
def test_free_gas_fourier_transform(x):
    expected = 3.0 * (math.sin(x) - x * math.cos(x)) / x**3
    assert abs(g_norm(x, NORMAL) - expected) < 1e-8
    assert abs(g_norm(x, MaterialParams(delta=1e-8, w=0.1)) - expected) < 1e-8


def test_free_gas_at_pi():
    assert g_norm(math.pi, NORMAL) == pytest.approx(3.0 / math.pi**2, abs=1e-12)
    assert 3.0 / math.pi**2 == pytest.approx(0.30396, abs=1e-5)


def test_free_gas_g_series_branch():
    x = np.array([1e-4, 5e-3, 9.99e-3, 1.001e-2])
    direct = 3.0 * (np.sin(x) - x * np.cos(x)) / x**3
    assert np.allclose(free_gas_g(x)[2:], direct[2:], rtol=1e-9)
    assert free_gas_g(0.0) == 1.0


def test_big_g_continuous_at_origin():
    assert big_g_dimensionless(1e-6, P) == pytest.approx(big_g_dimensionless(0.0, P), rel=1e-11)


def test_big_g_origin_against_brute_force():
    lo, hi = shell_bounds(P)
    from cooperspin.model import v2

    oracle = brute_force(lambda k: v2(k, P) * k * k, 0.0, lo, 10**5) + brute_force(lambda k: v2(k, P) * k * k, lo, hi)
    assert big_g_dimensionless(0.0, P) == pytest.approx(oracle, rel=1e-12)


def test_g_bounded():
    xs = np.arange(0.05, 30.0, 0.05)
    assert max(abs(g_norm(x, P)) for x in xs) <= 1.0


# --- anomalous correlator ------------------------------------------------

def test_anomalous_vanishes_in_normal_state():
    for x in (0.0, 0.3, 7.0):
        assert big_f_dimensionless(x, NORMAL) == 0.0
        assert f_norm(x, NORMAL) == 0.0


def test_anomalous_origin():
    lo, hi = shell_bounds(P)
    oracle = brute_force(lambda k: uv(k, P) * k * k, lo, hi)
    value = big_f_dimensionless(0.0, P)
    assert value == pytest.approx(oracle, rel=1e-10)
    assert value == pytest.approx(2.648858342804343e-3, rel=1e-12)
    # leading order: (delta / 2) arcsinh(w / delta)
    assert value / P.delta == pytest.approx(0.5 * math.asinh(100.0), rel=2e-4)


@pytest.mark.parametrize(
    "x, frozen",
    [(1.0, 0.0022287685436252155), (5.0, -0.0005066622358862928), (20.0, 0.00011535173387732771)],
)
def test_anomalous_against_brute_force(x, frozen):
    assert big_f_dimensionless(x, P) == pytest.approx(frozen, rel=1e-10)


def test_anomalous_smooth_at_origin():
    assert big_f_dimensionless(1e-5, P) == pytest.approx(big_f_dimensionless(0.0, P), rel=1e-9)


def test_weak_coupling_ratio(paper_params):
    closed = weak_coupling_ratio(paper_params)
    assert closed == pytest.approx(1.5e-3 * math.log(200.0), rel=1e-12)
    assert closed == pytest.approx(7.95e-3, abs=5e-6)
    ratio = f0_over_g0(paper_params)
    assert 5e-3 <= ratio <= 2e-2
    assert abs(ratio / closed - 1.0) < 0.15


def test_normalisations_exact_at_origin():
    assert g_norm(0.0, P) == 1.0
    assert f_tilde(0.0, P) == 1.0
    s = sample(0.0, P)
    assert (s.g, s.f_tilde) == (1.0, 1.0)
    assert s.f == f0_over_g0(P)


def test_f_tilde_degenerate_in_normal_state():
    with pytest.raises(DivisionDegenerate):
        f_tilde(1.0, NORMAL)
    assert math.isnan(sample(1.0, NORMAL).f_tilde)


def test_negative_separation_rejected():
    with pytest.raises(DomainError):
        g_norm(-1.0, P)


def test_f_maximal_at_origin():
    xs = np.arange(0.01, 40.0, 0.01)
    f0 = f_norm(0.0, P)
    assert max(abs(f_norm(x, P)) for x in xs) <= f0


def test_f_tilde_decays_much_slower_than_g():
    xs = np.arange(50.0, 60.0, 0.05)
    assert max(abs(f_tilde(x, P)) for x in xs) > 10.0 * max(abs(g_norm(x, P)) for x in xs)
    far = np.arange(600.0, 610.0, 0.05)
    assert max(abs(f_tilde(x, P)) for x in far) > 10.0 * max(abs(g_norm(x, P)) for x in far)
    # beyond the Debye scale the envelope of x F~ follows K0(x / (pi k_F xi_0))
    envelope = max(abs(x * f_tilde(x, P)) for x in far)
    assert envelope == pytest.approx(bessel_k0(605.0 / (math.pi * P.kf_xi0)) / math.log(200.0), rel=0.1)


def test_gauge_sign_flip_leaves_state_unchanged():
    for x in (0.0, 0.8, 2.5, 9.0):
        g = g_norm(x, P)
        f = f_norm(x, P)
        flipped = -integrate_shell(lambda e: -uv_of_xi(e, P), x, P) / big_g_dimensionless(0.0, P)
        minus_f = integrate_shell(lambda e: -uv_of_xi(e, P), x, P) / big_g_dimensionless(0.0, P)
        assert flipped == pytest.approx(f, rel=1e-14)
        rho_a, w_a = werner_from_gf(g, f)
        rho_b, w_b = werner_from_gf(g, minus_f)
        assert minus_f**2 == pytest.approx(f**2, rel=1e-14)
        assert w_a.p == w_b.p
        assert concurrence_werner(w_a.p) == concurrence_werner(w_b.p)
        assert np.array_equal(rho_a.m, rho_b.m)


# --- K0 --------------------------------------------------------------------

def test_k0_reference_value():
    assert bessel_k0(1.0) == pytest.approx(bessel_k0_quadrature(1.0), abs=1e-12)
    assert bessel_k0(1.0) == pytest.approx(0.4210244382, abs=1e-10)


@pytest.mark.parametrize("y", np.logspace(-6, math.log10(700.0), 60))
def test_k0_against_scipy(y):
    assert bessel_k0(y) == pytest.approx(special.k0(y), rel=1e-10)


@pytest.mark.parametrize("y", [0.1, 1.0, 5.0, 10.0])
def test_k0_against_integral_definition(y):
    assert abs(bessel_k0_quadrature(y) - bessel_k0(y)) < 1e-8


def test_k0_asymptotic():
    asym = math.sqrt(math.pi / 10.0) * math.exp(-5.0)
    assert asym == pytest.approx(0.003777, abs=1e-6)
    assert abs(bessel_k0(5.0) / asym - 1.0) < 0.05


def test_k0_monotone():
    assert bessel_k0(2.0) > bessel_k0(3.0)
    ys = np.linspace(0.01, 50.0, 500)
    assert np.all(np.diff([bessel_k0(y) for y in ys]) < 0)


@pytest.mark.parametrize("y", [0.0, -1.0])
def test_k0_domain(y):
    with pytest.raises(DomainError):
        bessel_k0(y)


# --- closed-form approximation -------------------------------------------

def test_approx_f_zeros():
    for n in range(1, 6):
        assert abs(approx_f(n * math.pi, P)) < 1e-15


def test_approx_f_coherence_length():
    assert P.kf_xi0 == pytest.approx(636.6, abs=0.05)
    x = math.pi * P.kf_xi0
    expected = math.sin(x) / x * bessel_k0(1.0) / math.log(200.0)
    assert approx_f(x, P) == pytest.approx(expected, rel=1e-12)
    assert bessel_k0(1.0) == pytest.approx(math.sqrt(math.pi / 2.0) * math.exp(-1.0), rel=0.1)


def test_approx_f_domain():
    with pytest.raises(DomainError):
        approx_f(0.0, P)


def test_approx_f_tracks_exact():
    xs = np.linspace(2 * math.pi + 1e-9, 50.0, 1500)
    diff = max(abs(f_tilde(x, P) - approx_f(x, P)) for x in xs)
    assert diff < 0.1


def test_approx_f_near_sinc_at_moderate_x():
    # K0 argument ~ 0.005 at x = 10: the decay factor is still flat
    x = 10.0
    assert approx_f(x, P) == pytest.approx(math.sin(x) / x * bessel_k0(0.005) / math.log(200.0), rel=1e-12)
    assert abs(approx_f(x, P) - f_tilde(x, P)) < 0.1 * abs(math.sin(x) / x)


# --- two-electron density matrix -------------------------------------------

SIGNS = np.array([[0.0, 1.0], [-1.0, 0.0]])


def test_rho2_diagonal_reduces_to_two_spin_state():
    r1, r2 = np.zeros(3), np.array([0.6, 0.8, 1.2])
    x = float(np.linalg.norm(r2))
    t = rho2_spin_tensor(r1, r2, r1, r2, P)
    ig0, igr, ifr = (big_g_dimensionless(0.0, P), big_g_dimensionless(x, P), big_f_dimensionless(x, P))
    eye = np.eye(2)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    # G = -i I_G, so G^2 = -I_G^2; |F|^2 = I_F^2
                    expected = -0.5 * (
                        eye[a, c] * eye[b, d] * (-(ig0**2))
                        - eye[a, d] * eye[b, c] * (-(igr**2))
                        - SIGNS[a, b] * SIGNS[c, d] * ifr**2
                    )
                    assert t[a, b, c, d] == pytest.approx(expected, abs=1e-15)
    g, f = igr / ig0, ifr / ig0
    rho, _ = werner_from_gf(g, f)
    norm = 4.0 - 2.0 * g * g + 2.0 * f * f
    assert np.allclose(t.reshape(4, 4), ig0**2 * norm / 2.0 * rho.m, atol=1e-15, rtol=1e-12)


def test_rho2_odlro_limit():
    r1, r2 = np.zeros(3), np.array([0.5, 0.0, 0.0])
    shift = np.array([0.0, 1000.0, 0.0])
    t = rho2_spin_tensor(r1, r2, r1 + shift, r2 + shift, P)
    ff = big_f_dimensionless(0.5, P) ** 2
    pairing_only = 0.5 * np.einsum("ab,cd->abcd", SIGNS, SIGNS) * ff
    assert np.max(np.abs(t - pairing_only)) < 1e-3 * ff


def test_rho2_fermion_antisymmetry():
    r = [np.array(v, dtype=float) for v in ([0, 0, 0], [0.7, 0.1, 0], [0.2, -0.4, 0.3], [1.1, 0, 0.5])]
    t = rho2_spin_tensor(*r, P)
    swapped = rho2_spin_tensor(r[1], r[0], r[2], r[3], P)
    assert np.allclose(swapped, -t.transpose(1, 0, 2, 3), atol=1e-16, rtol=1e-12)


def test_rho2_hermitian():
    r = [np.array(v, dtype=float) for v in ([0, 0, 0], [0.7, 0.1, 0], [0.2, -0.4, 0.3], [1.1, 0, 0.5])]
    t = rho2_spin_tensor(*r, P).reshape(4, 4)
    tdag = rho2_spin_tensor(r[2], r[3], r[0], r[1], P).reshape(4, 4).conj().T
    assert np.allclose(t, tdag, atol=1e-16, rtol=1e-12)
