"""Shifted sources, separable rectangular apertures and the parabolic slit."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, PhysicalConstants
from .ermakov import WEAK_EPS_LIMIT, WeakModBranch
from .spectral import (
    DEFAULT_TOL,
    SpectralDecomposition,
    bessel_j,
    decompose,
    normalization_constant,
)

#: Paraxial window half-width as a fraction of the curvature radius.
PARAXIAL_FRACTION = 0.3


class ParaxialWarning(UserWarning):
    """Evaluation point outside the paraxial window of the parabolic slit."""


# ---------------------------------------------------------------------------
# two shifted copies of one branch

@dataclass(frozen=True)
class ShiftedPair:
    """Copies of ``base`` centred at ``-a/2`` and ``+a/2``."""

    base: SpectralDecomposition
    a: float


def _shifted(pair: ShiftedPair, x, weights):
    d = pair.base
    x = np.asarray(x, dtype=float)
    phases = np.exp(1j * np.multiply.outer(x, d.wavenumbers))
    psi = 2.0 * math.sqrt(d.A) * (phases @ (d.coeffs * weights))
    if d.S0:
        psi = psi * np.exp(1j * d.S0 / d.hbar)
    return psi


def shifted_sum(pair: ShiftedPair, x):
    """Symmetric combination ``psi(x + a/2) + psi(x - a/2)``."""
    half = 0.5 * pair.a * pair.base.wavenumbers
    return _shifted(pair, x, np.cos(half))


def shifted_diff(pair: ShiftedPair, x):
    """Antisymmetric combination ``psi(x + a/2) - psi(x - a/2)``."""
    half = 0.5 * pair.a * pair.base.wavenumbers
    return 1j * _shifted(pair, x, np.sin(half))


# ---------------------------------------------------------------------------
# rectangular aperture

def quantized_wavenumbers(L: float, u: int, v: int,
                          constants: PhysicalConstants | None = None) -> tuple[float, float, float]:
    """Dirichlet wave numbers ``(u pi/L, v pi/L)`` and the implied energy."""
    c = constants or PhysicalConstants()
    for name, val in (("u", u), ("v", v)):
        if isinstance(val, bool) or int(val) != val or val < 1:
            raise DomainError(f"mode index {name} must be an integer >= 1, got {val}")
    if not L > 0:
        raise DomainError(f"aperture width must be positive, got {L}")
    kx = u * math.pi / L
    ky = v * math.pi / L
    E = c.hbar ** 2 * math.pi ** 2 * (u * u + v * v) / (2.0 * c.mass * L * L)
    return kx, ky, E


@dataclass(frozen=True)
class RectAperture:
    """Separable aperture of width ``L`` in Dirichlet mode ``(u, v)``.

    Per-axis envelope scales default to the interval normalisation over ``L``.
    """

    L: float
    u: int
    v: int
    eps_x: float = 0.0
    eps_y: float = 0.0
    A_x: float | None = None
    A_y: float | None = None
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        quantized_wavenumbers(self.L, self.u, self.v, self.constants)
        if self.A_x is None:
            object.__setattr__(self, "A_x", normalization_constant(self.L, self.eps_x))
        if self.A_y is None:
            object.__setattr__(self, "A_y", normalization_constant(self.L, self.eps_y))

    @property
    def k_x(self) -> float:
        return self.u * math.pi / self.L

    @property
    def k_y(self) -> float:
        return self.v * math.pi / self.L

    @property
    def energy(self) -> float:
        return quantized_wavenumbers(self.L, self.u, self.v, self.constants)[2]

    def axis_branches(self) -> tuple[WeakModBranch, WeakModBranch]:
        h = self.constants.hbar
        return (WeakModBranch.from_constraint(self.A_x, self.eps_x, self.k_x, hbar=h),
                WeakModBranch.from_constraint(self.A_y, self.eps_y, self.k_y, hbar=h))

    def decompositions(self, tol: float = DEFAULT_TOL):
        bx, by = self.axis_branches()
        return decompose(bx, tol), decompose(by, tol)


def rect_wavefunction(ap: RectAperture, x, y, tol: float = DEFAULT_TOL):
    """Double Fourier-Bessel sum over both axes, broadcasting ``x`` against ``y``."""
    dx, dy = ap.decompositions(tol)
    X, Y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    ex = np.exp(1j * X[..., None] * dx.wavenumbers)
    ey = np.exp(1j * Y[..., None] * dy.wavenumbers)
    weights = np.outer(dx.coeffs, dy.coeffs)
    return math.sqrt(ap.A_x * ap.A_y) * np.einsum("...u,uv,...v->...", ex, weights, ey)


# ---------------------------------------------------------------------------
# parabolic slit

@dataclass(frozen=True)
class ParabolicSlit:
    """Parabolic reduction of a narrow slit with curvature radius ``R_curv``.

    One modulation depth ``eps_kx`` feeds both the amplitude and the
    Jacobi-Anger argument; ``N`` is the sideband half-width kept in the sum.
    """

    R_curv: float
    k_x: float
    k_y: float
    A_kx: float
    eps_kx: float
    N: int = 8
    hbar: float = 1.0

    def __post_init__(self):
        if not self.R_curv > 0:
            raise DomainError(f"curvature radius must be positive, got {self.R_curv}")
        if not self.k_x >= 0:
            raise DomainError(f"k_x must be non-negative, got {self.k_x}")
        if not self.k_y > 0:
            raise DomainError(f"k_y must be positive, got {self.k_y}")
        if not self.A_kx > 0:
            raise DomainError(f"A_kx must be positive, got {self.A_kx}")
        if not abs(self.eps_kx) < WEAK_EPS_LIMIT:
            raise DomainError(f"|eps_kx| must be below {WEAK_EPS_LIMIT}, got {self.eps_kx}")
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 0:
            raise DomainError(f"N must be a non-negative integer, got {self.N}")

    @property
    def half_window(self) -> float:
        return PARAXIAL_FRACTION * self.R_curv


def in_paraxial_window(slit: ParabolicSlit, x) -> bool:
    return bool(np.all(np.abs(np.asarray(x, dtype=float)) <= slit.half_window))


def _checked(slit: ParabolicSlit, x):
    x = np.asarray(x, dtype=float)
    if not in_paraxial_window(slit, x):
        warnings.warn(
            f"evaluation beyond the paraxial window |x| <= {slit.half_window:g}",
            ParaxialWarning, stacklevel=3)
    return x


def _chirp_angle(slit: ParabolicSlit, x):
    return 2.0 * slit.k_y * slit.R_curv - slit.k_y * x * x / slit.R_curv


def _amp_sq(slit: ParabolicSlit, x):
    e = slit.eps_kx
    return slit.A_kx * (1.0 + 0.5 * e - 0.5 * e * np.cos(_chirp_angle(slit, x)))


def parabolic_amplitude_sq(slit: ParabolicSlit, x):
    """``A [1 + eps/2 - eps/2 cos(2 k_y R - k_y x^2/R)]``."""
    return _amp_sq(slit, _checked(slit, x))


def parabolic_amplitude_sq_sine(slit: ParabolicSlit, x):
    """Sine form ``A [1 + eps sin^2(k_y R - k_y x^2/(2R))]`` of the same envelope."""
    x = _checked(slit, x)
    s = np.sin(slit.k_y * slit.R_curv - slit.k_y * x * x / (2.0 * slit.R_curv))
    return slit.A_kx * (1.0 + slit.eps_kx * s * s)


def parabolic_phase(slit: ParabolicSlit, x):
    x = _checked(slit, x)
    h, ky, R = slit.hbar, slit.k_y, slit.R_curv
    return (h * slit.k_x * x + h * ky * R - h * ky * x * x / (2.0 * R)
            + 0.25 * h * slit.eps_kx * np.sin(_chirp_angle(slit, x)))


def _carrier_fresnel(slit: ParabolicSlit, x):
    ky, R = slit.k_y, slit.R_curv
    return np.exp(1j * (slit.k_x * x + ky * R - ky * x * x / (2.0 * R)))


def sideband_term(slit: ParabolicSlit, n: int, x):
    """Sideband ``n`` of the reduced wavefunction, envelope and chirp included."""
    x = _checked(slit, x)
    amp = np.sqrt(_amp_sq(slit, x))
    j = bessel_j(n, 0.25 * slit.eps_kx)
    return amp * _carrier_fresnel(slit, x) * j * np.exp(1j * n * _chirp_angle(slit, x))


def parabolic_wavefunction(slit: ParabolicSlit, x):
    """Square-root envelope times carrier, Fresnel factor and sideband sum."""
    x = _checked(slit, x)
    theta = _chirp_angle(slit, x)
    orders = np.arange(-slit.N, slit.N + 1)
    j = np.array([bessel_j(n, 0.25 * slit.eps_kx) for n in orders])
    series = np.exp(1j * np.multiply.outer(theta, orders)) @ j
    amp = np.sqrt(_amp_sq(slit, x))
    return amp * _carrier_fresnel(slit, x) * series


def sideband_chirp(slit: ParabolicSlit, n: int) -> float:
    """Coefficient of ``x^2`` in the phase of sideband ``n``: ``-(n + 1/2) k_y / R``."""
    return -(n + 0.5) * slit.k_y / slit.R_curv
