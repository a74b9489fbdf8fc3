"""Closed-form Ermakov-Pinney amplitudes built from the cos/sin basis.

A stationary branch with constant potential and current ``C`` has

    R^2(x) = A sin^2(kx) + B cos^2(kx) + 2 D sin(kx) cos(kx),

which solves ``R'' + k^2 R = C^2 / (hbar^2 R^3)`` exactly when the constants
obey ``A B - D^2 = C^2 / (hbar^2 W^2)`` with Wronskian ``W = k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, PhysicalConstants

#: Upper bound on |eps| for weakly modulated branches.
WEAK_EPS_LIMIT = 0.5


@dataclass(frozen=True)
class WronskianBranch:
    """Stationary amplitude ``R^2 = A sin^2 + B cos^2 + 2 D sin cos``."""

    A: float
    B: float
    D: float
    k: float
    C: float
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.A > 0 and self.B > 0):
            raise DomainError(f"A and B must be positive, got A={self.A}, B={self.B}")
        if not self.k > 0:
            raise DomainError(f"k must be positive, got {self.k}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")

    @property
    def W(self) -> float:
        """Wronskian of cos(kx) and sin(kx)."""
        return self.k

    def constraint_defect(self) -> float:
        """``A B - D^2 - C^2/(hbar^2 W^2)``; zero on a true Ermakov branch."""
        return self.A * self.B - self.D ** 2 - (self.C / (self.hbar * self.W)) ** 2

    @classmethod
    def from_constraint(cls, A, B, D, k, hbar=1.0, negative_current=False):
        """Branch whose current is fixed by the Wronskian constraint."""
        q = A * B - D ** 2
        if not q > 0:
            raise DomainError(f"A B - D^2 must be positive, got {q}")
        C = hbar * k * math.sqrt(q)
        return cls(A, B, D, k, -C if negative_current else C, hbar)


@dataclass(frozen=True)
class WeakModBranch:
    """Weakly modulated branch ``R^2 = A (1 + eps sin^2(kx))``.

    ``C`` is the stationary current and ``S0`` the phase at the reference
    point, in action units.
    """

    A: float
    eps: float
    k: float
    C: float
    S0: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.A > 0:
            raise DomainError(f"A must be positive, got {self.A}")
        if not abs(self.eps) < WEAK_EPS_LIMIT:
            raise DomainError(
                f"|eps| must be below {WEAK_EPS_LIMIT} for weak modulation, got {self.eps}")
        if not self.k > 0:
            raise DomainError(f"k must be positive, got {self.k}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")

    @classmethod
    def from_constraint(cls, A, eps, k, S0=0.0, hbar=1.0, negative_current=False):
        """Branch carrying the current implied by ``B = A (1 + eps)``."""
        C = current_from_weakmod(A, eps, k, hbar, negative=negative_current)
        return cls(A, eps, k, C, S0, hbar)


def amplitude_squared(branch: WronskianBranch, x):
    kx = branch.k * np.asarray(x, dtype=float)
    s, c = np.sin(kx), np.cos(kx)
    return branch.A * s * s + branch.B * c * c + 2.0 * branch.D * s * c


def amplitude_derivatives(branch: WronskianBranch, x):
    """Return ``(R, R', R'')`` from analytic differentiation of the closed form."""
    k = branch.k
    kx = k * np.asarray(x, dtype=float)
    s2, c2 = np.sin(2 * kx), np.cos(2 * kx)
    q = amplitude_squared(branch, x)
    dq = k * (branch.A - branch.B) * s2 + 2.0 * branch.D * k * c2
    d2q = 2.0 * k * k * (branch.A - branch.B) * c2 - 4.0 * branch.D * k * k * s2
    r = np.sqrt(q)
    dr = dq / (2.0 * r)
    d2r = d2q / (2.0 * r) - dq * dq / (4.0 * r ** 3)
    return r, dr, d2r


def weakmod_amplitude_squared(branch: WeakModBranch, x):
    s = np.sin(branch.k * np.asarray(x, dtype=float))
    return branch.A * (1.0 + branch.eps * s * s)


def current_from_weakmod(A: float, eps: float, k: float, hbar: float = 1.0,
                         negative: bool = False) -> float:
    """Current ``hbar k A sqrt(1 + eps)`` of the weakly modulated branch.

    The positive root is returned unless ``negative`` is set; the sign only
    reverses the direction of phase advance.
    """
    if not 1.0 + eps > 0:
        raise DomainError(f"1 + eps must be positive, got eps={eps}")
    C = hbar * k * A * math.sqrt(1.0 + eps)
    return -C if negative else C


def mean_wavenumber(E_m: float, constants: PhysicalConstants) -> float:
    if not E_m > constants.V:
        raise DomainError(
            f"mean energy {E_m} must exceed the potential {constants.V}")
    return math.sqrt(2.0 * constants.mass * (E_m - constants.V)) / constants.hbar


def ermakov_residual(branch: WronskianBranch, x):
    """``R'' + k^2 R - C^2/(hbar^2 R^3)`` evaluated at ``x``."""
    r, _, d2r = amplitude_derivatives(branch, x)
    return d2r + branch.k ** 2 * r - branch.C ** 2 / (branch.hbar ** 2 * r ** 3)


def to_wronskian(branch: WeakModBranch) -> WronskianBranch:
    """Express a weakly modulated branch through the general closed form.

    ``A (1 + eps sin^2)`` equals ``A cos^2 + A (1 + eps) sin^2``, so the
    enhanced coefficient ``A (1 + eps)`` lands on the sin^2 slot.
    """
    return WronskianBranch(
        A=branch.A * (1.0 + branch.eps),
        B=branch.A,
        D=0.0,
        k=branch.k,
        C=branch.C,
        hbar=branch.hbar,
    )
