"""Jacobi polynomials, their monic rescaling, two contiguous-parameter
identities, and roots on the doubled variable.

Conventions: P_n^{(gamma, delta)} is the degree-n orthogonal polynomial for
the weight (1-x)^gamma (1+x)^delta on [-1, 1], normalized with leading
coefficient (n + gamma + delta + 1)_n / (2^n n!). All public root output
lives on the [-2, 2] spectral variable (roots of P_n(x/2)); the [-1, 1]
variable is internal only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError
from .trieig import Spectrum, eig_tridiag
from .ensemble import SymTridiag


@dataclass(frozen=True)
class JacobiPolyParams:
    """Degree n >= 0 and weight exponents gamma, delta > -1."""

    n: int
    gamma: float
    delta: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ParameterDomainError("degree must satisfy n >= 0")
        if not (self.gamma > -1.0 and self.delta > -1.0):
            raise ParameterDomainError(
                "weight exponents must satisfy gamma > -1 and delta > -1"
            )


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); empty product is 1.

    Product form; fine for the moderate n used here, overflows like Gamma
    for large arguments.
    """
    if int(n) != n or n < 0:
        raise ParameterDomainError("pochhammer order must be a nonnegative integer")
    out = 1.0
    for k in range(int(n)):
        out *= a + k
    return out


def _eval_recurrence(n: int, g: float, d: float, xa: np.ndarray) -> np.ndarray:
    """Ascending-degree recurrence for P_n^{(g, d)}; no domain guard.

    The contiguous identities below shift parameters by -1, which can leave
    the orthogonality domain while the polynomial itself stays well defined.
    """
    p0 = np.ones_like(xa)
    if n == 0:
        return p0
    p1 = 0.5 * (g + d + 2.0) * xa + 0.5 * (g - d)
    for k in range(2, n + 1):
        s = 2.0 * k + g + d
        c1 = 2.0 * k * (k + g + d) * (s - 2.0)
        c2 = (s - 1.0) * (g - d) * (g + d)
        c3 = (s - 2.0) * (s - 1.0) * s
        c4 = 2.0 * (k + g - 1.0) * (k + d - 1.0) * s
        p0, p1 = p1, ((c2 + c3 * xa) * p1 - c4 * p0) / c1
    return p1


def jacobi_eval(p: JacobiPolyParams, x):
    """Value of P_n^{(gamma, delta)} at x (scalar or array)."""
    out = _eval_recurrence(p.n, p.gamma, p.delta, np.asarray(x, dtype=np.float64))
    return float(out) if np.ndim(x) == 0 else out


def monic_factor(p: JacobiPolyParams) -> float:
    """Factor 2^n n! / (n + gamma + delta + 1)_n turning P_n into the monic one."""
    denom = pochhammer(p.n + p.gamma + p.delta + 1.0, p.n)
    if denom == 0.0:
        raise ParameterDomainError("zero Pochhammer divisor in monic factor")
    num = 1.0
    for k in range(1, p.n + 1):
        num *= 2.0 * k
    return num / denom


def recurrence_coefficients(p: JacobiPolyParams) -> tuple[np.ndarray, np.ndarray]:
    """Monic three-term recurrence data (A_0..A_{n-1}, B_1..B_{n-1}) on [-1, 1].

    x Phat_k = Phat_{k+1} + A_k Phat_k + B_k Phat_{k-1}; the B_k are the
    squared off-diagonal entries of the symmetrized recurrence matrix. All
    factors are kept in product form to avoid subtractive cancellation at
    large parameters.
    """
    g, d = p.gamma, p.delta
    n = p.n
    diag = np.empty(n)
    k = np.arange(1, n, dtype=np.float64)
    diag[0] = (d - g) / (g + d + 2.0)
    if n > 1:
        diag[1:] = (d - g) * (d + g) / ((2.0 * k + g + d) * (2.0 * k + g + d + 2.0))
    s = 2.0 * k + g + d
    with np.errstate(invalid="ignore", divide="ignore"):
        off_sq = 4.0 * k * (k + g) * (k + d) * (k + g + d) / (s * s * (s * s - 1.0))
    if n > 1:
        # k = 1 has a removable 0/0 at g + d = -1: cancel (1 + g + d)/(s - 1)
        off_sq[0] = 4.0 * (1.0 + g) * (1.0 + d) / ((g + d + 2.0) ** 2 * (g + d + 3.0))
    return diag, off_sq


def jacobi_roots_scaled(p: JacobiPolyParams) -> Spectrum:
    """Ascending roots of P_n^{(gamma, delta)}(x/2), all inside (-2, 2).

    Computed as eigenvalues of the symmetric tridiagonal matrix obtained by
    symmetrizing the monic recurrence (Golub-Welsch shape), then doubling.
    """
    if p.n < 1:
        raise ParameterDomainError("need degree n >= 1 for roots")
    diag, off_sq = recurrence_coefficients(p)
    # B_k > 0 in exact arithmetic for an integrable weight; guard rounding
    off = np.sqrt(np.maximum(off_sq, 0.0))
    spec = eig_tridiag(SymTridiag(diag, off), provenance="deterministic")
    return Spectrum(2.0 * spec.values, "deterministic")


def first_param_lowering_residual(p: JacobiPolyParams, x: float) -> float:
    """Absolute residual of the contiguous relation lowering the first parameter.

    (n + delta - 1) P_{n-2}^{(g, d)} - (n + g + d - 1) P_{n-1}^{(g, d)}
        + (2n + g + d - 2) P_{n-1}^{(g-1, d)}  ==  0
    (Abramowitz & Stegun 22.7.18, shifted to degree n - 1); requires n >= 2.
    """
    if p.n < 2:
        raise ParameterDomainError("identity needs degree n >= 2")
    n, g, d = p.n, p.gamma, p.delta
    t1 = (n + d - 1.0) * _eval_recurrence(n - 2, g, d, np.float64(x))
    t2 = (n + g + d - 1.0) * _eval_recurrence(n - 1, g, d, np.float64(x))
    t3 = (2.0 * n + g + d - 2.0) * _eval_recurrence(n - 1, g - 1.0, d, np.float64(x))
    return abs(t1 - t2 + t3)


def second_param_lowering_residual(p: JacobiPolyParams, x: float) -> float:
    """Absolute residual of the contiguous relation lowering the second parameter.

    (n + g - 1) P_{n-1}^{(g-1, d)} - (2n + g + d - 1) P_n^{(g-1, d-1)}
        + (n + g + d - 1) P_n^{(g-1, d)}  ==  0
    (Abramowitz & Stegun 22.7.19); requires n >= 1.
    """
    if p.n < 1:
        raise ParameterDomainError("identity needs degree n >= 1")
    n, g, d = p.n, p.gamma, p.delta
    t1 = (n + g - 1.0) * _eval_recurrence(n - 1, g - 1.0, d, np.float64(x))
    t2 = (2.0 * n + g + d - 1.0) * _eval_recurrence(n, g - 1.0, d - 1.0, np.float64(x))
    t3 = (n + g + d - 1.0) * _eval_recurrence(n, g - 1.0, d, np.float64(x))
    return abs(t1 - t2 + t3)
