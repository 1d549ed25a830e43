"""Tridiagonal matrix models for the beta-Jacobi eigenvalue ensemble.

The random matrix follows the construction of Killip & Nenciu (2004): its
entries are simple products of independent beta variates on (-1, 1), and its
spectrum has the beta-Jacobi joint eigenvalue density on (-2, 2) with weight
(2 - x)^a (2 + x)^b and repulsion exponent beta.

``expected_matrix`` builds the deterministic comparison matrix obtained by
replacing every beta variate of the row/column-REVERSED random matrix by its
mean. Both matrices have reversal-invariant spectra, so spectral comparisons
are orientation-free, but entrywise comparisons must mirror indices.
Storage is two vectors (diagonal, off-diagonal); no dense matrix is ever
materialized, which keeps sampling O(n) in memory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .betarand import BetaParams, RngStream, sample_beta_pm1
from .errors import InternalConsistencyError, ParameterDomainError


@dataclass(frozen=True)
class JacobiParams:
    """Ensemble parameters (n, a, b, beta) with a > -1, b > -1, beta > 0."""

    n: int
    a: float
    b: float
    beta: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ParameterDomainError("matrix size must satisfy n >= 1")
        if not self.a > -1.0:
            raise ParameterDomainError("weight exponent must satisfy a > -1")
        if not self.b > -1.0:
            raise ParameterDomainError("weight exponent must satisfy b > -1")
        if not self.beta > 0.0:
            raise ParameterDomainError("repulsion exponent must satisfy beta > 0")

    @property
    def a_tilde(self) -> float:
        """Rescaled first parameter (2a + 2)/beta; always > 0."""
        return (2.0 * self.a + 2.0) / self.beta

    @property
    def b_tilde(self) -> float:
        """Rescaled second parameter (2b + 2)/beta; always > 0."""
        return (2.0 * self.b + 2.0) / self.beta


@dataclass(frozen=True)
class SymTridiag:
    """Symmetric tridiagonal matrix: diagonal of length n, off-diagonal n - 1."""

    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=np.float64)
        e = np.asarray(self.off, dtype=np.float64)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "off", e)
        if d.ndim != 1 or e.ndim != 1 or e.size != max(d.size - 1, 0):
            raise ParameterDomainError(
                "tridiagonal storage needs len(off) == len(diag) - 1"
            )

    @property
    def n(self) -> int:
        return self.diag.size

    def norm_inf(self) -> float:
        """Maximum absolute row sum."""
        pad = np.concatenate(([0.0], np.abs(self.off), [0.0]))
        return float(np.max(np.abs(self.diag) + pad[:-1] + pad[1:]))


@dataclass(frozen=True)
class AlphaVector:
    """The 2n-1 independent beta variates alpha_0..alpha_{2n-2} driving one draw.

    Interior entries lie in (-1, 1); the boundary convention
    alpha_{2n-1} = alpha_{-1} = alpha_{-2} = -1 is applied by the matrix
    builder, not stored here.
    """

    alpha: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.alpha, dtype=np.float64)
        object.__setattr__(self, "alpha", arr)
        if arr.ndim != 1 or arr.size % 2 != 1:
            raise ParameterDomainError("alpha vector must have odd length 2n - 1")
        if not np.all((arr > -1.0) & (arr < 1.0)):
            raise ParameterDomainError("alpha entries must lie strictly inside (-1, 1)")

    @property
    def n(self) -> int:
        return (self.alpha.size + 1) // 2


def alpha_shapes(p: JacobiParams) -> tuple[np.ndarray, np.ndarray]:
    """Beta shape pairs (p_k, q_k) for k = 0..2n-2, vectorized."""
    k = np.arange(2 * p.n - 1, dtype=np.float64)
    even = k % 2 == 0
    ps = np.where(
        even,
        (2.0 * p.n - k - 2.0) / 4.0 * p.beta + p.a + 1.0,
        (2.0 * p.n - k - 3.0) / 4.0 * p.beta + p.a + p.b + 2.0,
    )
    qs = np.where(
        even,
        (2.0 * p.n - k - 2.0) / 4.0 * p.beta + p.b + 1.0,
        (2.0 * p.n - k - 1.0) / 4.0 * p.beta,
    )
    return ps, qs


def alpha_shape_params(p: JacobiParams, k: int) -> BetaParams:
    """Shape pair of the k-th driving variate; k even and odd use different laws."""
    if not 0 <= k <= 2 * p.n - 2:
        raise IndexError(f"alpha index k={k} outside 0..{2 * p.n - 2}")
    ps, qs = alpha_shapes(p)
    return BetaParams(float(ps[k]), float(qs[k]))


def sample_alphas(p: JacobiParams, rng: RngStream) -> AlphaVector:
    """Draw the 2n-1 independent variates for one matrix realization."""
    ps, qs = alpha_shapes(p)
    return AlphaVector(sample_beta_pm1(BetaParams(ps, qs), rng))


def random_matrix(alphas: AlphaVector) -> SymTridiag:
    """Random tridiagonal matrix built from one alpha draw.

    Diagonal entries lie in [-2, 2]; off-diagonal entries are square roots of
    products of factors in (0, 2), hence strictly positive for interior alphas.
    """
    n = alphas.n

    def at(j: np.ndarray) -> np.ndarray:
        # boundary convention: indices -1, -2 (and 2n-1) evaluate to -1
        out = np.where(j >= 0, alphas.alpha[np.maximum(j, 0)], -1.0)
        return out

    k = np.arange(n)
    diag = (1.0 - at(2 * k - 1)) * at(2 * k) - (1.0 + at(2 * k - 1)) * at(2 * k - 2)
    ko = np.arange(n - 1)
    arg = (
        (1.0 - at(2 * ko - 1))
        * (1.0 - at(2 * ko) ** 2)
        * (1.0 + at(2 * ko + 1))
    )
    if np.any(arg < 0.0):
        raise InternalConsistencyError("negative square-root argument in off-diagonal")
    return SymTridiag(diag, np.sqrt(arg))


def expected_matrix(p: JacobiParams) -> SymTridiag:
    """Deterministic tridiagonal matrix with the variates replaced by their means.

    Entries use the rescaled parameters (a_tilde, b_tilde) in cancellation-free
    product form; its eigenvalues are exactly the roots of the degree-n Jacobi
    polynomial with parameters (a_tilde - 1, b_tilde - 1) evaluated at x/2.
    Note the reversed orientation relative to :func:`random_matrix`.
    """
    n, at, bt = p.n, p.a_tilde, p.b_tilde
    diag = np.empty(n)
    if n > 1:
        k = np.arange(n - 1, dtype=np.float64)
        diag[: n - 1] = (
            2.0 * (bt - at) * (bt + at) / ((2.0 * k + at + bt) * (2.0 * k + at + bt + 2.0))
        )
    diag[n - 1] = 2.0 * (bt - at) / (2.0 * n + at + bt - 2.0)
    off = np.empty(max(n - 1, 0))
    if n > 2:
        k = np.arange(n - 2, dtype=np.float64)
        off[: n - 2] = (
            4.0
            / (2.0 * k + at + bt + 2.0)
            * np.sqrt(
                (k + at + bt + 1.0)
                * (k + at + 1.0)
                * (k + bt + 1.0)
                * (k + 1.0)
                / ((2.0 * k + at + bt + 3.0) * (2.0 * k + at + bt + 1.0))
            )
        )
    if n > 1:
        off[n - 2] = (
            4.0
            / (2.0 * n + at + bt - 2.0)
            * np.sqrt((n + at - 1.0) * (n + bt - 1.0) * (n - 1.0) / (2.0 * n + at + bt - 3.0))
        )
    return SymTridiag(diag, off)
