"""Mean/difference split of two near-degenerate stationary branches.

Writing ``R_{1,2} = R_m +- rho`` and ``S_{1,2} = S_m +- dS/2`` about the weakly
modulated mean ``R_m^2 = A (1 + eps sin^2(k_m x))`` turns the difference of
the two Ermakov equations into the forced Hill equation

    rho'' + [4 k_m^2 + 3 eps k_m^2 cos(2 k_m x)] rho = F_C(x) - F_E(x),

with the phase difference slaved to ``rho`` through the continuity relation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, Grid1D, PhysicalConstants
from .ermakov import (
    WeakModBranch,
    amplitude_derivatives,
    to_wronskian,
    weakmod_amplitude_squared,
)
from .phase import phase_profile

#: Largest |dk| / k_m still treated as near-degenerate.
DETUNING_LIMIT = 0.1
#: Largest max|rho| / sqrt(A) still treated as a small difference.
RHO_LIMIT = 0.5
#: Largest h k_m accepted by the fixed-step integrator.
STEP_LIMIT = 0.05

FLAG_DETUNED = "detuning"
FLAG_RHO = "rho-overflow"


@dataclass(frozen=True)
class BranchPair:
    """Energies, currents and wave numbers of two stationary branches."""

    E1: float
    E2: float
    C1: float
    C2: float
    k1: float
    k2: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if not (self.k1 > 0 and self.k2 > 0):
            raise DomainError(f"wave numbers must be positive, got {self.k1}, {self.k2}")

    @classmethod
    def from_weakmod(cls, A, eps1, eps2, k1, k2, constants=None):
        """Pair of exact Ermakov branches sharing the envelope scale ``A``.

        Currents follow from the Wronskian constraint and energies from
        ``E = V + hbar^2 k^2 / 2m``.
        """
        c = constants or PhysicalConstants()
        h, m = c.hbar, c.mass
        return cls(
            E1=c.V + h * h * k1 * k1 / (2 * m),
            E2=c.V + h * h * k2 * k2 / (2 * m),
            C1=h * k1 * A * math.sqrt(1 + eps1),
            C2=h * k2 * A * math.sqrt(1 + eps2),
            k1=k1, k2=k2, constants=c,
        )

    @property
    def near_degenerate(self) -> bool:
        k_m = 0.5 * (self.k1 + self.k2)
        return abs(self.k1 - self.k2) <= DETUNING_LIMIT * k_m


@dataclass(frozen=True)
class MeanDiffParams:
    k_m: float
    dk: float
    E_m: float
    dE: float
    C: float
    dC: float
    A: float
    eps: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    @property
    def flags(self) -> tuple[str, ...]:
        if abs(self.dk) > DETUNING_LIMIT * self.k_m:
            return (FLAG_DETUNED,)
        return ()

    def mean_branch(self) -> WeakModBranch:
        return WeakModBranch(self.A, self.eps, self.k_m, self.C, 0.0, self.constants.hbar)


@dataclass(frozen=True)
class DifferenceSolution:
    grid: Grid1D
    rho: np.ndarray = field(repr=False)
    rho_prime: np.ndarray = field(repr=False)
    dS: np.ndarray = field(repr=False)
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("rho", "rho_prime", "dS"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (self.grid.n,):
                raise DomainError(f"{name} does not match the grid")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def valid(self) -> bool:
        return not self.flags


def decompose_pair(pair: BranchPair, A: float, eps: float, C: float | None = None) -> MeanDiffParams:
    """Mean and difference quantities of ``pair``.

    The mean current defaults to ``(C1 + C2) / 2``; pass ``C`` to override.
    """
    E_m = 0.5 * (pair.E1 + pair.E2)
    if not E_m > pair.constants.V:
        raise DomainError(f"mean energy {E_m} must exceed the potential {pair.constants.V}")
    if not A > 0:
        raise DomainError(f"A must be positive, got {A}")
    return MeanDiffParams(
        k_m=0.5 * (pair.k1 + pair.k2),
        dk=pair.k1 - pair.k2,
        E_m=E_m,
        dE=pair.E1 - pair.E2,
        C=0.5 * (pair.C1 + pair.C2) if C is None else C,
        dC=pair.C1 - pair.C2,
        A=A,
        eps=eps,
        constants=pair.constants,
    )


def forcing_current(params: MeanDiffParams, x):
    h = params.constants.hbar
    e = params.eps
    c2 = np.cos(2 * params.k_m * np.asarray(x, dtype=float))
    scale = params.C * params.dC / (h * h * params.A ** 1.5)
    return scale * (1 - 0.75 * e + 0.75 * e * c2)


def forcing_energy(params: MeanDiffParams, x):
    h, m = params.constants.hbar, params.constants.mass
    e = params.eps
    c2 = np.cos(2 * params.k_m * np.asarray(x, dtype=float))
    scale = m * params.dE / (h * h) * math.sqrt(params.A)
    return scale * (1 + 0.25 * e - 0.25 * e * c2)


def hill_coefficient(params: MeanDiffParams, x):
    k2 = params.k_m ** 2
    return 4 * k2 + 3 * params.eps * k2 * np.cos(2 * params.k_m * np.asarray(x, dtype=float))


def phase_difference_rate(params: MeanDiffParams, x, rho):
    """First-order ``dS'``: current mismatch term minus the ``rho`` back-reaction."""
    e = params.eps
    c2 = np.cos(2 * params.k_m * np.asarray(x, dtype=float))
    current = params.dC / params.A * (1 - 0.5 * e + 0.5 * e * c2)
    back = 4 * params.C / params.A ** 1.5 * (1 - 0.75 * e + 0.75 * e * c2)
    return current - back * rho


def integrate_difference(params: MeanDiffParams, rho0: float = 0.0, rho0_prime: float = 0.0,
                         grid: Grid1D | None = None) -> DifferenceSolution:
    """Fixed-step RK4 for ``(rho, rho', dS)`` on the samples of ``grid``.

    ``dS`` starts at zero on ``grid.x0``. The step must satisfy
    ``h k_m <= 0.05``.
    """
    if grid is None:
        raise DomainError("a grid is required")
    h = grid.spacing
    if h * params.k_m > STEP_LIMIT:
        raise DomainError(
            f"step {h} too coarse: h k_m = {h * params.k_m:.4f} exceeds {STEP_LIMIT}")

    hb, m = params.constants.hbar, params.constants.mass
    k_m, e, A = params.k_m, params.eps, params.A
    fc = params.C * params.dC / (hb * hb * A ** 1.5)
    fe = m * params.dE / (hb * hb) * math.sqrt(A)
    cur = params.dC / A
    back = 4 * params.C / A ** 1.5
    k2 = k_m * k_m

    def rhs(x, rho, rp):
        c2 = math.cos(2 * k_m * x)
        force = fc * (1 - 0.75 * e + 0.75 * e * c2) - fe * (1 + 0.25 * e - 0.25 * e * c2)
        rpp = force - (4 * k2 + 3 * e * k2 * c2) * rho
        dsp = cur * (1 - 0.5 * e + 0.5 * e * c2) - back * (1 - 0.75 * e + 0.75 * e * c2) * rho
        return rp, rpp, dsp

    x = grid.samples.tolist()
    n = grid.n
    rho = np.empty(n)
    rp = np.empty(n)
    dS = np.empty(n)
    y0, y1, y2 = float(rho0), float(rho0_prime), 0.0
    rho[0], rp[0], dS[0] = y0, y1, y2
    for i in range(n - 1):
        xi = x[i]
        a0, a1, a2 = rhs(xi, y0, y1)
        b0, b1, b2 = rhs(xi + 0.5 * h, y0 + 0.5 * h * a0, y1 + 0.5 * h * a1)
        g0, g1, g2 = rhs(xi + 0.5 * h, y0 + 0.5 * h * b0, y1 + 0.5 * h * b1)
        d0, d1, d2 = rhs(xi + h, y0 + h * g0, y1 + h * g1)
        y0 += h / 6 * (a0 + 2 * b0 + 2 * g0 + d0)
        y1 += h / 6 * (a1 + 2 * b1 + 2 * g1 + d1)
        y2 += h / 6 * (a2 + 2 * b2 + 2 * g2 + d2)
        rho[i + 1], rp[i + 1], dS[i + 1] = y0, y1, y2

    flags = list(params.flags)
    if not np.all(np.isfinite(rho)) or np.max(np.abs(rho)) > RHO_LIMIT * math.sqrt(A):
        flags.append(FLAG_RHO)
    return DifferenceSolution(grid, rho, rp, dS, tuple(flags))


def exact_difference_oracle(pair: BranchPair, A: float, eps1: float, eps2: float,
                            grid: Grid1D, tol: float = 1e-12) -> DifferenceSolution:
    """Difference fields of two exact weakly modulated Ermakov branches.

    ``rho = (R1 - R2)/2`` comes from the closed forms and ``dS = S1 - S2`` from
    the two phase quadratures, both phases vanishing at ``grid.x0``.

    Raises
    ------
    DomainError
        If either current violates the Wronskian constraint of its branch.
    """
    h = pair.constants.hbar
    branches = []
    for C, eps, k in ((pair.C1, eps1, pair.k1), (pair.C2, eps2, pair.k2)):
        expected = h * k * A * math.sqrt(1 + eps)
        if not math.isclose(abs(C), expected, rel_tol=1e-9, abs_tol=1e-300):
            raise DomainError(
                f"current {C} violates the Ermakov constraint (|C| should be {expected})")
        branches.append(WeakModBranch(A, eps, k, C, 0.0, h))

    x = grid.samples
    R1, dR1, _ = amplitude_derivatives(to_wronskian(branches[0]), x)
    R2, dR2, _ = amplitude_derivatives(to_wronskian(branches[1]), x)
    S1 = phase_profile(branches[0], grid, tol=tol).S_values
    S2 = phase_profile(branches[1], grid, tol=tol).S_values
    rho = 0.5 * (R1 - R2)
    flags = [] if pair.near_degenerate else [FLAG_DETUNED]
    if np.max(np.abs(rho)) > RHO_LIMIT * math.sqrt(A):
        flags.append(FLAG_RHO)
    return DifferenceSolution(grid, rho, 0.5 * (dR1 - dR2), S1 - S2, tuple(flags))


def diff_hj_residual(params: MeanDiffParams, sol: DifferenceSolution, x_index: int) -> float:
    """Residual of the linearised difference Hamilton-Jacobi relation.

    ``S_m' dS'/m - (hbar^2/m) rho''/R_m + (hbar^2/m) rho R_m''/R_m^2 - dE`` at
    an interior sample, with ``rho''`` and ``dS'`` from central differences.
    """
    i = int(x_index)
    if not 0 < i < sol.grid.n - 1:
        raise DomainError(f"index {x_index} is not an interior sample")
    h = sol.grid.spacing
    x = sol.grid.samples[i]
    hb, m = params.constants.hbar, params.constants.mass
    mean = params.mean_branch()
    Rm, _, dRm2 = amplitude_derivatives(to_wronskian(mean), x)
    Sm_prime = params.C / weakmod_amplitude_squared(mean, x)
    rho_pp = (sol.rho[i + 1] - 2 * sol.rho[i] + sol.rho[i - 1]) / (h * h)
    dS_p = (sol.dS[i + 1] - sol.dS[i - 1]) / (2 * h)
    return float(Sm_prime * dS_p / m - hb * hb / m * rho_pp / Rm
                 + hb * hb / m * sol.rho[i] * dRm2 / (Rm * Rm) - params.dE)
