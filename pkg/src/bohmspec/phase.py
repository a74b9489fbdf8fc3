"""Stationary phase from the continuity relation ``S' = C / R^2``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .core import DomainError, Grid1D, PhysicalConstants
from .ermakov import (
    WeakModBranch,
    WronskianBranch,
    amplitude_derivatives,
    weakmod_amplitude_squared,
)

Method = Literal["exact-quadrature", "first-order"]
METHODS = ("exact-quadrature", "first-order")

_MAX_DEPTH = 48


class QuadratureError(ArithmeticError):
    """Adaptive quadrature stopped before reaching the requested tolerance."""

    def __init__(self, message, error_estimate):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]`` by adaptive Simpson bisection.

    Returns ``(value, error_estimate)``. Each panel is accepted once the
    Richardson difference ``|S_left + S_right - S_whole| / 15`` falls below
    its share of ``tol``.

    Raises
    ------
    QuadratureError
        If a panel is still unresolved at the maximum bisection depth.
    """
    if not tol > 0:
        raise DomainError(f"quadrature tolerance must be positive, got {tol}")
    if a == b:
        return 0.0, 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    err_total = 0.0
    while stack:
        a, b, fa, fm, fb, whole, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
            err_total += abs(delta) / 15.0
        elif depth >= _MAX_DEPTH:
            raise QuadratureError(
                f"no convergence on [{a}, {b}] after {depth} bisections",
                err_total + abs(delta) / 15.0)
        else:
            stack.append((a, m, fa, flm, fm, left, 0.5 * eps, depth + 1))
            stack.append((m, b, fm, frm, fb, right, 0.5 * eps, depth + 1))
    return total, err_total


@dataclass(frozen=True)
class PhaseProfile:
    """Phase samples on a grid together with the method that produced them."""

    grid: Grid1D
    S_values: np.ndarray = field(repr=False)
    method: Method = "exact-quadrature"

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"unknown phase method {self.method!r}")
        values = np.array(self.S_values, dtype=float)
        if values.shape != (self.grid.n,):
            raise DomainError("phase samples do not match the grid")
        values.flags.writeable = False
        object.__setattr__(self, "S_values", values)


def phase_derivative_exact(branch: WeakModBranch, x):
    return branch.C / weakmod_amplitude_squared(branch, x)


def _integrand(branch: WeakModBranch):
    A, eps, k, C = branch.A, branch.eps, branch.k, branch.C

    def f(xi):
        s = math.sin(k * xi)
        return C / (A * (1.0 + eps * s * s))

    return f


def phase_exact(branch: WeakModBranch, x0: float, x: float, tol: float = 1e-12) -> float:
    """``S0 + integral_{x0}^{x} C / R^2`` by adaptive Simpson quadrature."""
    value, _ = adaptive_simpson(_integrand(branch), float(x0), float(x), tol)
    return branch.S0 + value


def phase_profile(branch: WeakModBranch, grid: Grid1D, method: Method = "exact-quadrature",
                  tol: float = 1e-12) -> PhaseProfile:
    """Phase sampled on ``grid`` with ``S(grid.x0) = S0``.

    The exact profile integrates panel by panel between neighbouring samples
    and accumulates, so ``tol`` bounds the error at the last sample.
    """
    x = grid.samples
    if method == "first-order":
        return PhaseProfile(grid, phase_first_order(branch, x) - phase_first_order(branch, x[0])
                            + branch.S0, method)
    if method != "exact-quadrature":
        raise DomainError(f"unknown phase method {method!r}")
    f = _integrand(branch)
    panel_tol = tol / (grid.n - 1)
    pieces = [adaptive_simpson(f, x[i], x[i + 1], panel_tol)[0] for i in range(grid.n - 1)]
    S = branch.S0 + np.concatenate(([0.0], np.cumsum(pieces)))
    return PhaseProfile(grid, S, method)


def phase_first_order(branch: WeakModBranch, x):
    """Carrier plus first-order modulation ``S0 + hbar k x + hbar eps/4 sin(2kx)``."""
    x = np.asarray(x, dtype=float)
    h = branch.hbar
    return branch.S0 + h * branch.k * x + 0.25 * h * branch.eps * np.sin(2.0 * branch.k * x)


def _phase_first_order_derivative(branch: WeakModBranch, x):
    h, k = branch.hbar, branch.k
    return h * k + 0.5 * h * k * branch.eps * np.cos(2.0 * k * np.asarray(x, dtype=float))


def wavefunction_direct(branch: WeakModBranch, x):
    """First-order amplitude times the modulated phase factor.

    ``sqrt(A) [1 + eps/2 sin^2(kx)] e^{ikx} e^{i eps/4 sin(2kx)}`` with the
    global factor ``e^{i S0/hbar}``.
    """
    x = np.asarray(x, dtype=float)
    k, eps = branch.k, branch.eps
    s = np.sin(k * x)
    amp = math.sqrt(branch.A) * (1.0 + 0.5 * eps * s * s)
    arg = k * x + 0.25 * eps * np.sin(2.0 * k * x) + branch.S0 / branch.hbar
    return amp * np.exp(1j * arg)


def hj_residual(branch: WronskianBranch, E: float, constants: PhysicalConstants, x):
    """``S'^2/2m + V - (hbar^2/2m) R''/R - E`` with ``S' = C/R^2``.

    ``branch.hbar`` is used for the current and ``constants.hbar`` for the
    quantum potential; callers keep them equal.
    """
    r, _, d2r = amplitude_derivatives(branch, x)
    m, h = constants.mass, constants.hbar
    dS = branch.C / (r * r)
    return dS * dS / (2.0 * m) + constants.V - h * h / (2.0 * m) * d2r / r - E


def continuity_residual(branch: WeakModBranch, method: Method, x, h: float = 1e-4):
    """Central difference of ``R^2 S'`` with step ``h``.

    ``method`` selects which phase derivative multiplies the exact envelope:
    the exact ``C/R^2`` or the derivative of the first-order phase.
    """
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    if method == "exact-quadrature":
        dS = phase_derivative_exact
    elif method == "first-order":
        dS = _phase_first_order_derivative
    else:
        raise DomainError(f"unknown phase method {method!r}")
    x = np.asarray(x, dtype=float)

    def flux(xi):
        return weakmod_amplitude_squared(branch, xi) * dS(branch, xi)

    return (flux(x + h) - flux(x - h)) / (2.0 * h)
