import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bohmspec.core import DomainError, PhysicalConstants
from bohmspec.ermakov import (
    WeakModBranch,
    WronskianBranch,
    amplitude_derivatives,
    amplitude_squared,
    current_from_weakmod,
    ermakov_residual,
    mean_wavenumber,
    to_wronskian,
    weakmod_amplitude_squared,
)

SQRT_1_1 = 1.0488088481701516


def test_amplitude_squared_examples():
    x = np.linspace(0, 7, 50)
    flat = WronskianBranch(1, 1, 0, 1.3, 1.3)
    assert np.allclose(amplitude_squared(flat, x), 1.0, atol=1e-15)
    assert amplitude_squared(WronskianBranch(1, 2, 0, 1, 1), 0.0) == 2.0
    assert amplitude_squared(WronskianBranch(1, 1.1, 0, 1, 1), math.pi / 4) == pytest.approx(1.05, abs=1e-15)


def test_weakmod_amplitude_examples():
    x = np.linspace(-3, 3, 13)
    assert np.all(weakmod_amplitude_squared(WeakModBranch(2.0, 0.0, 1.0, 2.0), x) == 2.0)
    b = WeakModBranch.from_constraint(1.0, 0.1, 1.0)
    assert weakmod_amplitude_squared(b, 0.0) == 1.0
    assert weakmod_amplitude_squared(b, math.pi / 2) == pytest.approx(1.1, abs=1e-15)


def test_current_examples():
    assert current_from_weakmod(1, 0, 1, 1) == 1.0
    assert current_from_weakmod(1, 0.1, 1, 1) == pytest.approx(SQRT_1_1, abs=1e-15)
    assert current_from_weakmod(2, 0, 3, 1) == 6.0
    assert current_from_weakmod(1, 0.1, 1, 1, negative=True) == pytest.approx(-SQRT_1_1, abs=1e-15)


def test_mean_wavenumber_examples():
    c = PhysicalConstants()
    assert mean_wavenumber(0.5, c) == pytest.approx(1.0, abs=1e-15)
    assert mean_wavenumber(2.0, c) == pytest.approx(2.0, abs=1e-15)
    with pytest.raises(DomainError):
        mean_wavenumber(1.0, PhysicalConstants(V=1.0))


def test_residual_vanishes_for_plane_wave():
    x = np.linspace(0, 2 * math.pi, 200)
    assert np.max(np.abs(ermakov_residual(WronskianBranch(1, 1, 0, 1.7, 1.7), x))) < 1e-14


def test_residual_detects_doubled_current():
    good = WronskianBranch.from_constraint(1.0, 1.4, 0.3, 1.2)
    bad = WronskianBranch(good.A, good.B, good.D, good.k, 2 * good.C)
    x = np.linspace(0, 2 * math.pi, 500)
    assert np.max(np.abs(ermakov_residual(good, x))) < 1e-10
    assert np.max(np.abs(ermakov_residual(bad, x))) > 0.1


def test_constraint_rejects_non_positive_form():
    with pytest.raises(DomainError):
        WronskianBranch.from_constraint(1.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        WeakModBranch.from_constraint(1.0, 0.6, 1.0)


@given(A=st.floats(0.2, 3.0), B=st.floats(0.2, 3.0), frac=st.floats(-0.95, 0.95),
       k=st.floats(0.3, 4.0), neg=st.booleans())
@settings(max_examples=60, deadline=None)
def test_residual_small_for_constrained_branches(A, B, frac, k, neg):
    b = WronskianBranch.from_constraint(A, B, frac * math.sqrt(A * B), k, negative_current=neg)
    assert abs(b.constraint_defect()) < 1e-12
    x = np.linspace(0, 2 * math.pi / k, 257)
    assert np.max(np.abs(ermakov_residual(b, x))) < 1e-9 * max(1.0, k * k * max(A, B))


def test_analytic_derivatives_match_finite_differences():
    b = WronskianBranch.from_constraint(0.7, 1.6, -0.4, 1.3)
    x = np.linspace(0.1, 4.0, 40)
    h = 1e-5
    r, d1, d2 = amplitude_derivatives(b, x)
    rp = np.sqrt(amplitude_squared(b, x + h))
    rm = np.sqrt(amplitude_squared(b, x - h))
    assert np.allclose(d1, (rp - rm) / (2 * h), atol=1e-8)
    assert np.allclose(d2, (rp - 2 * r + rm) / (h * h), atol=1e-4)


def test_to_wronskian_degenerate_case():
    w = to_wronskian(WeakModBranch.from_constraint(1.3, 0.0, 2.0))
    assert w.A == w.B == 1.3 and w.D == 0.0


def test_to_wronskian_matches_amplitude_and_constraint():
    # the enhanced coefficient A(1+eps) sits on the sin^2 slot so the
    # two closed forms agree pointwise
    b = WeakModBranch.from_constraint(1.0, 0.1, 1.0)
    w = to_wronskian(b)
    assert (w.A, w.B) == pytest.approx((1.1, 1.0), abs=1e-15)
    x = np.linspace(0, 2 * math.pi, 300)
    assert np.max(np.abs(amplitude_squared(w, x) - weakmod_amplitude_squared(b, x))) < 1e-15
    assert np.max(np.abs(ermakov_residual(w, x))) < 1e-10
    assert abs(w.constraint_defect()) < 1e-14
