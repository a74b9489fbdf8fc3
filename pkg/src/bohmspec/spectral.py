"""Fourier-Bessel representation of a weakly modulated stationary branch.

The branch ``psi = sqrt(A) sum_n C_n(eps) e^{i(2n+1)kx}`` has real weights

    C_n(eps) = (1 + eps/4 - n) J_n(eps/4),

obtained from the Jacobi-Anger series of the phase factor multiplied by the
first-order amplitude envelope.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError
from .ermakov import WEAK_EPS_LIMIT, WeakModBranch

#: Largest |z| accepted by the ascending series.
BESSEL_Z_LIMIT = 0.5
DEFAULT_TOL = 1e-12
# |n| scanned when choosing the truncation; J_40(0.125) is far below 1e-300
_SCAN_ORDER = 40


def bessel_j(n: int, z: float) -> float:
    """Integer-order Bessel function by its ascending power series.

    Only ``|z| <= 0.5`` is accepted; there the terms fall off so quickly that
    a dozen of them reach full double precision.
    """
    n = int(n)
    z = float(z)
    if abs(z) > BESSEL_Z_LIMIT:
        raise DomainError(f"|z| = {abs(z)} outside the series domain |z| <= {BESSEL_Z_LIMIT}")
    if n < 0:
        return (-1) ** n * bessel_j(-n, z)
    half = 0.5 * z
    term = half ** n / math.factorial(n)
    if term == 0.0:
        return 0.0
    q = -half * half
    total = term
    j = 0
    while True:
        j += 1
        term *= q / (j * (j + n))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total


def coefficient(n: int, eps: float) -> float:
    """Principal-index weight ``(1 + eps/4 - n) J_n(eps/4)``."""
    _check_eps(eps)
    return (1.0 + 0.25 * eps - n) * bessel_j(n, 0.25 * eps)


def coefficient_raw(n: int, eps: float) -> float:
    """Unreduced weight ``(1 + eps/4) J_n - eps/8 (J_{n-1} + J_{n+1})`` at ``eps/4``."""
    _check_eps(eps)
    z = 0.25 * eps
    return ((1.0 + 0.25 * eps) * bessel_j(n, z)
            - 0.125 * eps * (bessel_j(n - 1, z) + bessel_j(n + 1, z)))


def _check_eps(eps):
    if not abs(eps) < WEAK_EPS_LIMIT:
        raise DomainError(f"|eps| must be below {WEAK_EPS_LIMIT}, got {eps}")


@dataclass(frozen=True)
class SpectralDecomposition:
    """Truncated weights ``coeffs[j] = C_{j-N}`` for ``n`` in ``[-N, N]``."""

    k: float
    A: float
    eps: float
    N: int
    coeffs: np.ndarray = field(repr=False)
    S0: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        if self.N < 0 or coeffs.shape != (2 * self.N + 1,):
            raise DomainError(f"expected {2 * self.N + 1} coefficients, got {coeffs.size}")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    @property
    def wavenumbers(self) -> np.ndarray:
        """Sideband wave numbers ``(2n+1) k``."""
        return (2 * self.orders + 1) * self.k

    def __getitem__(self, n: int) -> float:
        if abs(n) > self.N:
            return 0.0
        return float(self.coeffs[n + self.N])


def truncation_order(weights, tol: float) -> int:
    """Smallest ``N`` with ``|weights(n)| < tol`` for every ``|n| > N``."""
    if not tol > 0:
        raise DomainError(f"truncation tolerance must be positive, got {tol}")
    N = 0
    for n in range(1, _SCAN_ORDER + 1):
        if abs(weights(n)) >= tol or abs(weights(-n)) >= tol:
            N = n
    return N


def decompose(branch: WeakModBranch, tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    eps = branch.eps
    N = truncation_order(lambda n: coefficient(n, eps), tol)
    coeffs = [coefficient(n, eps) for n in range(-N, N + 1)]
    return SpectralDecomposition(branch.k, branch.A, eps, N, np.array(coeffs),
                                 branch.S0, branch.hbar)


def decompose_to(branch: WeakModBranch, N: int) -> SpectralDecomposition:
    """Decomposition with a fixed truncation half-width ``N``."""
    coeffs = [coefficient(n, branch.eps) for n in range(-N, N + 1)]
    return SpectralDecomposition(branch.k, branch.A, branch.eps, N, np.array(coeffs),
                                 branch.S0, branch.hbar)


def reconstruct(decomp: SpectralDecomposition, x):
    """Truncated sum ``sqrt(A) sum_n C_n e^{i(2n+1)kx}`` times ``e^{i S0/hbar}``."""
    x = np.asarray(x, dtype=float)
    phases = np.exp(1j * np.multiply.outer(x, decomp.wavenumbers))
    psi = math.sqrt(decomp.A) * (phases @ decomp.coeffs)
    if decomp.S0:
        psi = psi * np.exp(1j * decomp.S0 / decomp.hbar)
    return psi


def norm_sum(decomp: SpectralDecomposition) -> float:
    """Sum of squared stored weights.

    Summed from the smallest terms up so the tail is not lost against the
    carrier weight.
    """
    c2 = decomp.coeffs ** 2
    return math.fsum(sorted(c2))


def closed_form_norm(eps: float) -> float:
    """Exact coefficient norm ``1 + eps/2 + 3 eps^2/32``."""
    return 1.0 + 0.5 * eps + 3.0 * eps * eps / 32.0


def bessel_identity_suite(z: float, N: int) -> tuple[float, float, float]:
    """Truncated ``sum J_n^2``, ``sum n J_n^2`` and ``sum n^2 J_n^2`` over ``|n| <= N``."""
    if abs(z) > BESSEL_Z_LIMIT:
        raise DomainError(f"|z| = {abs(z)} outside the series domain")
    if N < 8:
        raise DomainError(f"identity suite needs N >= 8, got {N}")
    orders = range(-N, N + 1)
    j2 = [bessel_j(n, z) ** 2 for n in orders]
    return (math.fsum(j2),
            math.fsum(n * v for n, v in zip(orders, j2)),
            math.fsum(n * n * v for n, v in zip(orders, j2)))


def normalization_constant(L: float, eps: float) -> float:
    """Envelope scale ``A = 1 / (L (1 + eps/2))`` over an interval of length ``L``."""
    if not L > 0:
        raise DomainError(f"interval length must be positive, got {L}")
    if not 1.0 + 0.5 * eps > 0:
        raise DomainError(f"1 + eps/2 must be positive, got eps={eps}")
    return 1.0 / (L * (1.0 + 0.5 * eps))
