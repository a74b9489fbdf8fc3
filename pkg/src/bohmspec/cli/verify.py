"""Self-check suite run by the ``verify`` scenario.

Each group compares a library path against an independent route: closed
forms, direct products, translated sums or exact branches.
"""
from __future__ import annotations

import math

import numpy as np

from ..core import PhysicalConstants, build_grid
from ..ermakov import WeakModBranch, WronskianBranch, ermakov_residual
from ..geometry import (
    ParabolicSlit,
    RectAperture,
    ShiftedPair,
    parabolic_amplitude_sq,
    parabolic_wavefunction,
    quantized_wavenumbers,
    rect_wavefunction,
    shifted_diff,
    shifted_sum,
    sideband_chirp,
    sideband_term,
)
from ..moddiff import (
    BranchPair,
    MeanDiffParams,
    decompose_pair,
    exact_difference_oracle,
    forcing_energy,
    integrate_difference,
)
from ..phase import hj_residual, phase_profile, wavefunction_direct
from ..spectral import (
    bessel_identity_suite,
    closed_form_norm,
    coefficient,
    coefficient_raw,
    decompose,
    norm_sum,
    reconstruct,
)
from .report import VerificationReport

SEED = 20240611


def check_norm_identity(report, tol=1e-12):
    for eps in (0.02, 0.05, 0.1, 0.2):
        d = decompose(WeakModBranch.from_constraint(1.0, eps, 1.0), tol)
        report.add(f"norm_identity[eps={eps}]", norm_sum(d), 1e-10, closed_form_norm(eps))


def check_reconstruction(report, tol=1e-12):
    x = np.linspace(0.0, 2 * math.pi, 2000, endpoint=False)
    for eps in (0.05, 0.1, 0.2):
        b = WeakModBranch.from_constraint(1.0, eps, 1.0)
        gap = np.max(np.abs(reconstruct(decompose(b, tol), x) - wavefunction_direct(b, x)))
        report.add(f"spectral_reconstruction[eps={eps}]", gap, 1e-10)


def check_principal_index(report):
    for eps in (0.05, 0.1, 0.2):
        gap = max(abs(coefficient(n, eps) - coefficient_raw(n, eps)) for n in range(-12, 13))
        report.add(f"principal_index[eps={eps}]", gap, 1e-14)


def check_bessel_identities(report):
    for z in (0.0125, 0.025, 0.05):
        s0, s1, s2 = bessel_identity_suite(z, 12)
        gap = max(abs(s0 - 1.0), abs(s1), abs(s2 - 0.5 * z * z))
        report.add(f"bessel_identities[z={z}]", gap, 1e-12)


def random_ermakov_branches(rng, count=8):
    """Constraint-satisfying branches with random ``A, B, D`` (``D`` may be non-zero)."""
    out = []
    for i in range(count):
        A, B = rng.uniform(0.3, 2.0, size=2)
        D = 0.0 if i == 0 else rng.uniform(-0.9, 0.9) * math.sqrt(A * B)
        k = rng.uniform(0.5, 3.0)
        out.append(WronskianBranch.from_constraint(A, B, D, k))
    return out


def check_residuals(report):
    rng = np.random.default_rng(SEED)
    c = PhysicalConstants()
    worst_e = worst_hj = 0.0
    for b in random_ermakov_branches(rng):
        x = rng.uniform(0.0, 2 * math.pi, 1000)
        E = c.V + c.hbar ** 2 * b.k ** 2 / (2 * c.mass)
        worst_e = max(worst_e, float(np.max(np.abs(ermakov_residual(b, x)))))
        worst_hj = max(worst_hj, float(np.max(np.abs(hj_residual(b, E, c, x)))))
    report.add("ermakov_residual", worst_e, 1e-9)
    report.add("hj_residual", worst_hj, 1e-9)


def _phase_error(eps, n=801):
    b = WeakModBranch.from_constraint(1.0, eps, 1.0)
    grid = build_grid(0.0, 2 * math.pi, n)
    exact = phase_profile(b, grid, "exact-quadrature", tol=1e-13).S_values
    first = phase_profile(b, grid, "first-order").S_values
    return float(np.max(np.abs(exact - first)))


def check_phase_convergence(report):
    for eps in (0.2, 0.1, 0.05):
        ratio = _phase_error(eps) / _phase_error(eps / 2)
        report.add(f"phase_first_order_ratio[eps={eps}]", ratio, 0.5, 4.0)


def linearization_gap(s, eps_mean=0.0, d_eps=0.1, d_k=0.1, A=1.0, k_m=1.0, n=2001):
    """Sup-norm gap in ``rho`` over one period for a pair split by ``s``.

    Returns ``(gap, flags)``; flags collect both solutions' validity flags.
    """
    k1, k2 = k_m + 0.5 * s * d_k, k_m - 0.5 * s * d_k
    e1, e2 = eps_mean + 0.5 * s * d_eps, eps_mean - 0.5 * s * d_eps
    pair = BranchPair.from_weakmod(A, e1, e2, k1, k2)
    params = decompose_pair(pair, A, 0.5 * (e1 + e2))
    grid = build_grid(0.0, 2 * math.pi / params.k_m, n)
    approx = integrate_difference(params, 0.0, 0.0, grid)
    exact = exact_difference_oracle(pair, A, e1, e2, grid)
    gap = float(np.max(np.abs(approx.rho - exact.rho)))
    return gap, approx.flags + exact.flags


def check_linearization(report, s=0.1):
    gap, flags = linearization_gap(s)
    gap_half, flags_half = linearization_gap(s / 2)
    report.add(f"linearization_ratio[s={s}]", gap / gap_half, 1.0, 4.0)
    report.add("linearization_flags", len(flags + flags_half), 0.0)


def check_energy_coherent(report):
    base = MeanDiffParams(k_m=1.0, dk=0.0, E_m=0.5, dE=0.0, C=1.05, dC=0.02, A=1.0, eps=0.1)
    grid = build_grid(0.0, 2 * math.pi, 1001)
    x = grid.samples
    report.add("energy_coherent_forcing", np.max(np.abs(forcing_energy(base, x))), 0.0)
    ref = integrate_difference(base, grid=grid).rho
    worst = 0.0
    for variant in (MeanDiffParams(1.0, 0.0, 3.7, 0.0, 1.05, 0.02, 1.0, 0.1),
                    MeanDiffParams(1.0, 0.0, 0.5, 0.0, 1.05, 0.02, 1.0, 0.1,
                                   PhysicalConstants(mass=4.0, V=-1.0))):
        worst = max(worst, float(np.max(np.abs(integrate_difference(variant, grid=grid).rho - ref))))
    report.add("energy_coherent_rho_invariance", worst, 0.0)


def check_translation(report, tol=1e-12):
    x = np.linspace(0.0, 2 * math.pi, 1000, endpoint=False)
    worst_sum = worst_diff = worst_par = 0.0
    for eps in (0.0, 0.1):
        d = decompose(WeakModBranch.from_constraint(1.0, eps, 1.0), tol)
        for a in (0.3, 1.7, math.pi):
            pair = ShiftedPair(d, a)
            p1, p2 = reconstruct(d, x + a / 2), reconstruct(d, x - a / 2)
            Psi, Chi = shifted_sum(pair, x), shifted_diff(pair, x)
            worst_sum = max(worst_sum, float(np.max(np.abs(Psi - (p1 + p2)))))
            worst_diff = max(worst_diff, float(np.max(np.abs(Chi - (p1 - p2)))))
            par = np.abs(Psi) ** 2 + np.abs(Chi) ** 2 - 2 * (np.abs(p1) ** 2 + np.abs(p2) ** 2)
            worst_par = max(worst_par, float(np.max(np.abs(par))))
    report.add("translation_sum", worst_sum, 1e-10)
    report.add("translation_diff", worst_diff, 1e-10)
    report.add("parallelogram", worst_par, 1e-10)
    d = decompose(WeakModBranch.from_constraint(1.0, 0.1, 1.0), tol)
    coincident = ShiftedPair(d, 0.0)
    degenerate = max(float(np.max(np.abs(shifted_sum(coincident, x) - 2 * reconstruct(d, x)))),
                     float(np.max(np.abs(shifted_diff(coincident, x)))))
    report.add("translation_coincident", degenerate, 0.0)


def check_aperture(report):
    ap = RectAperture(L=math.pi, u=2, v=3, eps_x=0.1, eps_y=0.05)
    g = np.linspace(-ap.L / 2, ap.L / 2, 64)
    X, Y = np.meshgrid(g, g, indexing="ij")
    dx, dy = ap.decompositions()
    product = reconstruct(dx, X) * reconstruct(dy, Y)
    report.add("rect_separability", np.max(np.abs(rect_wavefunction(ap, X, Y) - product)), 1e-10)
    worst = 0.0
    c = PhysicalConstants(hbar=0.7, mass=1.9)
    for L, u, v in ((math.pi, 1, 1), (1.0, 3, 4), (2.5, 7, 2)):
        _, _, E = quantized_wavenumbers(L, u, v, c)
        lhs = math.pi ** 2 / L ** 2 * (u * u + v * v)
        worst = max(worst, abs(lhs - 2 * c.mass * E / c.hbar ** 2) / lhs)
    report.add("quantization_closure", worst, 1e-14)


def check_parabolic(report):
    slit = ParabolicSlit(R_curv=10.0, k_x=0.4, k_y=5.0, A_kx=0.8, eps_kx=0.2, N=8)
    x = np.linspace(-slit.half_window, slit.half_window, 801)
    gap = np.abs(np.abs(parabolic_wavefunction(slit, x)) ** 2 - parabolic_amplitude_sq(slit, x))
    report.add("parabolic_modulus", np.max(gap), 1e-10)
    worst = 0.0
    for n in (-2, -1, 0, 1, 2):
        phase = np.unwrap(np.angle(sideband_term(slit, n, x)))
        fitted = np.polyfit(x, phase, 2)[0]
        expected = sideband_chirp(slit, n)
        worst = max(worst, abs(fitted - expected) / abs(expected))
    report.add("sideband_chirp_fit", worst, 1e-6)


def run_checks(tol: float = 1e-12) -> VerificationReport:
    """Run every identity and convergence check; ``tol`` is the truncation tolerance."""
    report = VerificationReport()
    check_norm_identity(report, tol)
    check_reconstruction(report, tol)
    check_principal_index(report)
    check_bessel_identities(report)
    check_residuals(report)
    check_phase_convergence(report)
    check_linearization(report)
    check_energy_coherent(report)
    check_translation(report, tol)
    check_aperture(report)
    check_parabolic(report)
    return report
