import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bohmspec.core import DomainError, PhysicalConstants
from bohmspec.ermakov import WeakModBranch
from bohmspec.geometry import (
    ParabolicSlit,
    ParaxialWarning,
    RectAperture,
    ShiftedPair,
    in_paraxial_window,
    parabolic_amplitude_sq,
    parabolic_amplitude_sq_sine,
    parabolic_phase,
    parabolic_wavefunction,
    quantized_wavenumbers,
    rect_wavefunction,
    shifted_diff,
    shifted_sum,
    sideband_chirp,
    sideband_term,
)
from bohmspec.spectral import decompose, reconstruct

X = np.linspace(-5, 5, 333)


def pair(eps, a, A=1.0, k=1.0, S0=0.0):
    return ShiftedPair(decompose(WeakModBranch.from_constraint(A, eps, k, S0=S0)), a)


def test_shifted_coincident_sources():
    p = pair(0.1, 0.0)
    assert np.max(np.abs(shifted_sum(p, X) - 2 * reconstruct(p.base, X))) == 0.0
    assert np.all(shifted_diff(p, X) == 0)


def test_shifted_single_term_full_wavelength():
    p = pair(0.0, 2 * math.pi, A=1.6)
    psi = shifted_sum(p, X)
    assert np.allclose(np.abs(psi), 2 * math.sqrt(1.6), atol=1e-14)
    assert np.allclose(psi, -2 * math.sqrt(1.6) * np.exp(1j * X), atol=1e-14)


@given(eps=st.floats(-0.4, 0.4), a=st.floats(-8.0, 8.0), S0=st.floats(-1.0, 1.0))
@settings(max_examples=50, deadline=None)
def test_shifted_translation_oracles(eps, a, S0):
    p = pair(eps, a, A=0.7, k=1.3, S0=S0)
    p1, p2 = reconstruct(p.base, X + a / 2), reconstruct(p.base, X - a / 2)
    Psi, Chi = shifted_sum(p, X), shifted_diff(p, X)
    assert np.max(np.abs(Psi - (p1 + p2))) <= 1e-10
    assert np.max(np.abs(Chi - (p1 - p2))) <= 1e-10
    lhs = np.abs(Psi) ** 2 + np.abs(Chi) ** 2
    assert np.max(np.abs(lhs - 2 * (np.abs(p1) ** 2 + np.abs(p2) ** 2))) <= 1e-10


def test_quantized_examples():
    kx, ky, E = quantized_wavenumbers(math.pi, 1, 1)
    assert (kx, ky) == pytest.approx((1.0, 1.0), abs=1e-15) and E == pytest.approx(1.0, abs=1e-15)
    assert quantized_wavenumbers(math.pi, 3, 4)[2] == pytest.approx(12.5, abs=1e-13)
    for bad in ((math.pi, 0, 1), (math.pi, 1, -2), (math.pi, 1.5, 1), (0.0, 1, 1)):
        with pytest.raises(DomainError):
            quantized_wavenumbers(*bad)


def test_quantization_closure():
    c = PhysicalConstants(hbar=1.3, mass=0.4)
    for L, u, v in ((math.pi, 1, 2), (0.3, 5, 5), (7.0, 11, 3)):
        kx, ky, E = quantized_wavenumbers(L, u, v, c)
        assert abs(kx * kx + ky * ky - 2 * c.mass * E / c.hbar ** 2) <= 1e-14 * (kx * kx + ky * ky)


def test_rect_defaults_and_properties():
    ap = RectAperture(2.0, 1, 3, eps_x=0.1)
    assert ap.A_x == pytest.approx(1 / 2.1, abs=1e-15) and ap.A_y == 0.5
    assert ap.k_y == pytest.approx(1.5 * math.pi) and ap.energy == pytest.approx(math.pi ** 2 * 10 / 8)


def test_rect_plane_wave_limit():
    ap = RectAperture(math.pi, 2, 1, A_x=0.5, A_y=2.0)
    Xg, Yg = np.meshgrid(X[:40], X[:30], indexing="ij")
    ref = np.exp(1j * (2 * Xg + Yg))
    assert np.max(np.abs(rect_wavefunction(ap, Xg, Yg) - ref)) < 1e-14


def test_rect_separability_and_envelope():
    ap = RectAperture(math.pi, 2, 3, eps_x=0.2, eps_y=-0.1)
    g = np.linspace(0, math.pi, 64)
    Xg, Yg = np.meshgrid(g, g, indexing="ij")
    dx, dy = ap.decompositions()
    psi = rect_wavefunction(ap, Xg, Yg)
    assert np.max(np.abs(psi - reconstruct(dx, Xg) * reconstruct(dy, Yg))) <= 1e-10
    env = (ap.A_x * (1 + 0.2 * np.sin(2 * Xg) ** 2)) * (ap.A_y * (1 - 0.1 * np.sin(3 * Yg) ** 2))
    # first-order amplitude squared differs from the exact envelope at O(eps^2)
    assert np.max(np.abs(np.abs(psi) ** 2 - env)) <= 0.02 * ap.A_x * ap.A_y


SLIT = ParabolicSlit(R_curv=10.0, k_x=0.4, k_y=5.0, A_kx=0.8, eps_kx=0.2, N=8)
W = np.linspace(-SLIT.half_window, SLIT.half_window, 601)


def test_slit_validation():
    with pytest.raises(DomainError):
        ParabolicSlit(0.0, 0.0, 1.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        ParabolicSlit(1.0, 0.0, 1.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        ParabolicSlit(1.0, 0.0, 1.0, 1.0, 0.1, N=-1)


def test_parabolic_amplitude_examples():
    flat = ParabolicSlit(10.0, 0.0, 5.0, 0.8, 0.0)
    assert np.all(parabolic_amplitude_sq(flat, W) == 0.8)
    apex = 0.8 * (1 + 0.2 * math.sin(50.0) ** 2)
    assert parabolic_amplitude_sq(SLIT, 0.0) == pytest.approx(apex, abs=1e-15)
    x = np.random.default_rng(3).uniform(-3, 3, 500)
    assert np.max(np.abs(parabolic_amplitude_sq(SLIT, x) - parabolic_amplitude_sq_sine(SLIT, x))) <= 1e-14


def test_parabolic_phase_examples():
    flat = ParabolicSlit(10.0, 0.0, 5.0, 0.8, 0.0, hbar=0.5)
    assert parabolic_phase(flat, 0.0) == pytest.approx(0.5 * 50.0, abs=1e-14)
    even = ParabolicSlit(10.0, 0.0, 5.0, 0.8, 0.2)
    assert parabolic_phase(even, 2.5) == pytest.approx(parabolic_phase(even, -2.5), abs=1e-14)
    h = 1e-4
    d2 = (parabolic_phase(SLIT, h) - 2 * parabolic_phase(SLIT, 0.0) + parabolic_phase(SLIT, -h)) / h ** 2
    analytic = -5.0 / 10.0 * (1 + 0.1 * math.cos(100.0))
    assert d2 == pytest.approx(analytic, abs=1e-5)


def test_parabolic_modulus_identity():
    for N in (8, 10):
        s = ParabolicSlit(10.0, 0.4, 5.0, 0.8, 0.2, N=N)
        gap = np.abs(np.abs(parabolic_wavefunction(s, W)) ** 2 - parabolic_amplitude_sq(s, W))
        assert np.max(gap) <= 1e-10


def test_parabolic_fresnel_limit():
    s = ParabolicSlit(10.0, 0.4, 5.0, 0.8, 0.0)
    ref = math.sqrt(0.8) * np.exp(1j * (0.4 * W + 50.0 - 5.0 * W * W / 20.0))
    assert np.max(np.abs(parabolic_wavefunction(s, W) - ref)) < 1e-13


def test_sideband_chirp_examples_and_fit():
    assert sideband_chirp(SLIT, 0) == -0.25
    assert sideband_chirp(SLIT, 1) == -0.75
    assert sideband_chirp(SLIT, -1) == 0.25
    for n in (-3, -1, 0, 2):
        phase = np.unwrap(np.angle(sideband_term(SLIT, n, W)))
        fitted = np.polyfit(W, phase, 2)[0]
        assert fitted == pytest.approx(sideband_chirp(SLIT, n), rel=1e-6)


def test_sidebands_sum_to_wavefunction():
    total = sum(sideband_term(SLIT, n, W) for n in range(-8, 9))
    assert np.max(np.abs(total - parabolic_wavefunction(SLIT, W))) < 1e-14


def test_paraxial_warning():
    assert in_paraxial_window(SLIT, W) and not in_paraxial_window(SLIT, 3.5)
    with pytest.warns(ParaxialWarning):
        parabolic_wavefunction(SLIT, np.array([0.0, 4.0]))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parabolic_wavefunction(SLIT, W)
