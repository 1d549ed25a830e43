"""Multivariate F-matrix pipeline: Gaussian construction, the eigenvalue
correspondence with the beta = 1 Jacobi ensemble, and the transformed-
eigenvalue limit laws.

The F-matrix (X X^T / n1)(Y Y^T / n2)^{-1} built from independent standard
normal X (n x n1) and Y (n x n2) shares a realization-exact Moebius
correspondence with the matrix 2 (Y Y^T - X X^T)(Y Y^T + X X^T)^{-1}, whose
eigenvalues follow the beta = 1 Jacobi ensemble with a = (n1 - n - 1)/2,
b = (n2 - n - 1)/2. The tridiagonal sampler therefore gives F-spectra in
O(n) memory; the dense Gaussian route is kept as a desk-scale oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .betarand import RngStream
from .ensemble import JacobiParams, random_matrix, sample_alphas
from .errors import DegenerateSampleError, NotPositiveDefiniteError, ParameterDomainError
from .spectra import EdgeDensity, FMatrixDensity, SemicircleDensity, cdf_grid, run_trials
from .trieig import DENSE_SIZE_CAP, DenseSym, Spectrum, eig_generalized_sym, eig_tridiag


@dataclass(frozen=True)
class FDims:
    """F-matrix dimensions n, n1 >= n, n2 >= n.

    The induced Jacobi-ensemble parameters are a = (n1 - n - 1)/2,
    b = (n2 - n - 1)/2 with repulsion exponent beta = 1, so n1, n2 >= n keeps
    both aspect ratios y = n/n1 and y' = n/n2 at or below 1 (the point-mass
    regime y > 1 is rejected at the type level).
    """

    n: int
    n1: int
    n2: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterDomainError("size must satisfy n >= 1")
        if self.n1 < self.n or self.n2 < self.n:
            raise ParameterDomainError("dimensions must satisfy n1 >= n and n2 >= n")

    @property
    def a(self) -> float:
        return 0.5 * (self.n1 - self.n - 1)

    @property
    def b(self) -> float:
        return 0.5 * (self.n2 - self.n - 1)

    @property
    def ratio(self) -> float:
        """n2 / n1, the fixed point of the Jacobi<->F eigenvalue map."""
        return self.n2 / self.n1

    def jacobi_params(self) -> JacobiParams:
        return JacobiParams(self.n, self.a, self.b, 1.0)


@dataclass(frozen=True)
class GaussianPair:
    """Independent standard normal matrices X (n x n1) and Y (n x n2)."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        if self.x.ndim != 2 or self.y.ndim != 2 or self.x.shape[0] != self.y.shape[0]:
            raise ParameterDomainError("matrices must share their row count n")


def sample_gaussian_pair(d: FDims, rng: RngStream) -> GaussianPair:
    """Draw the Gaussian pair; row count n, column counts n1 and n2."""
    x = rng.normals(d.n * d.n1).reshape(d.n, d.n1)
    y = rng.normals(d.n * d.n2).reshape(d.n, d.n2)
    return GaussianPair(x, y)


def _check_dense_cap(d: FDims):
    if d.n > DENSE_SIZE_CAP:
        raise ParameterDomainError(
            f"dense F-matrix route is a desk-scale oracle capped at n = {DENSE_SIZE_CAP}"
        )


def f_eigs_direct(g: GaussianPair, d: FDims) -> Spectrum:
    """Eigenvalues of (X X^T / n1)(Y Y^T / n2)^{-1} from an explicit Gaussian pair.

    Solved as the symmetric-definite pencil (X X^T / n1) v = lambda (Y Y^T / n2) v;
    all eigenvalues are nonnegative. Desk-scale oracle (n <= 500).
    """
    _check_dense_cap(d)
    a = DenseSym(g.x @ g.x.T / d.n1)
    b = DenseSym(g.y @ g.y.T / d.n2)
    try:
        spec = eig_generalized_sym(a, b)
    except NotPositiveDefiniteError as exc:
        raise DegenerateSampleError(f"rank-deficient Gaussian sample: {exc}") from exc
    # pencil of PSD vs PD matrices; clip the rounding fuzz below zero
    return Spectrum(np.maximum(spec.values, 0.0), "random")


def manova_eigs(g: GaussianPair, d: FDims) -> Spectrum:
    """Eigenvalues of 2 (Y Y^T - X X^T)(Y Y^T + X X^T)^{-1}, all inside (-2, 2).

    These follow the beta = 1 Jacobi ensemble with the dimension-induced
    (a, b). The matrix is never formed nonsymmetrically; the spectrum comes
    from the pencil 2 (Y Y^T - X X^T) v = lambda (Y Y^T + X X^T) v.
    """
    _check_dense_cap(d)
    xxt = g.x @ g.x.T
    yyt = g.y @ g.y.T
    try:
        return eig_generalized_sym(DenseSym(2.0 * (yyt - xxt)), DenseSym(yyt + xxt))
    except NotPositiveDefiniteError as exc:
        raise DegenerateSampleError(f"rank-deficient Gaussian sample: {exc}") from exc


def jacobi_to_f(lam_j, d: FDims):
    """Map a Jacobi-side eigenvalue in (-2, 2] to the F side: r (2 - t)/(2 + t).

    Monotone decreasing bijection onto [0, inf); the pole sits at t = -2.
    """
    t = np.asarray(lam_j, dtype=np.float64)
    if np.any(t == -2.0):
        raise ParameterDomainError("jacobi_to_f has a pole at lambda = -2")
    out = d.ratio * (2.0 - t) / (2.0 + t)
    return float(out) if np.ndim(lam_j) == 0 else out


def f_to_jacobi(lam_f, d: FDims):
    """Inverse map: F-side eigenvalue >= 0 to the Jacobi side 2 (r - s)/(r + s)."""
    s = np.asarray(lam_f, dtype=np.float64)
    if np.any(s < 0.0):
        raise ParameterDomainError("F-matrix eigenvalues must be >= 0")
    out = 2.0 * (d.ratio - s) / (d.ratio + s)
    return float(out) if np.ndim(lam_f) == 0 else out


def f_eigs_tridiag(d: FDims, rng: RngStream) -> Spectrum:
    """F-matrix spectrum via the tridiagonal Jacobi sampler plus the Moebius map.

    O(n) sampling memory and an O(n^2) eigenvalue solve; the production route
    for large n.
    """
    p = d.jacobi_params()
    lam_j = eig_tridiag(random_matrix(sample_alphas(p, rng))).values
    lam_f = jacobi_to_f(lam_j, d)  # decreasing map: reverse to ascend
    return Spectrum(np.maximum(lam_f[::-1], 0.0), "transformed")


# ---------------------------------------------------------------------------
# transformed-eigenvalue limit laws (centerings for degenerate aspect ratios)


def semicircle_transform(lam_f, d: FDims):
    """Center/scale F eigenvalues for the balanced-growth semicircle limit.

    mu = 2 sqrt(n1/n - 1) ((n2 - n)/(n1 + n2 - 2n) - n2/(n1 lam + n2));
    increasing in lam. Limit: semicircle with radius 4 g/(1 + g)^{3/2},
    g = lim n1/n2, when n1, n2 >> n grow proportionally.
    """
    n, n1, n2 = d.n, d.n1, d.n2
    if n1 <= n:
        raise ParameterDomainError("transform needs n1 > n")
    s = np.asarray(lam_f, dtype=np.float64)
    out = 2.0 * math.sqrt(n1 / n - 1.0) * (
        (n2 - n) / (n1 + n2 - 2.0 * n) - n2 / (n1 * s + n2)
    )
    return float(out) if np.ndim(lam_f) == 0 else out


def reciprocal_edge_transform(lam_f, d: FDims):
    """Affine rescaling mu = n/(2 (n1 - n)) (lam n1/n2 + 1).

    Limit when n1 >> n but n/n2 -> y' in (0, 1): the reciprocal image of
    :class:`EdgeDensity` with beta0 = 1/y' - 1, i.e. density
    (1/4pi) sqrt((x s2 - 1)(1 - x s1)) / x^2 on (1/s2, 1/s1).
    """
    n, n1, n2 = d.n, d.n1, d.n2
    if n1 <= n:
        raise ParameterDomainError("transform needs n1 > n")
    s = np.asarray(lam_f, dtype=np.float64)
    out = n / (2.0 * (n1 - n)) * (s * n1 / n2 + 1.0)
    return float(out) if np.ndim(lam_f) == 0 else out


def shifted_semicircle_transform(lam_f, d: FDims):
    """Transform for the strongly imbalanced regime n1 >> n2 >> n.

    mu = 2 (n1 - n)/(n1 + n2) *
         ((n1/n2)(n2 - w) lam - (n1 + w)) / (w (1 + (n1/n2) lam)),  w = sqrt(n(n2 - n));
    increasing in lam. Limit: semicircle with radius 4 centered at -2
    (support [-6, 2]).
    """
    n, n1, n2 = d.n, d.n1, d.n2
    if n2 <= n:
        raise ParameterDomainError("transform needs n2 > n")
    w = math.sqrt(n * (n2 - n))
    s = np.asarray(lam_f, dtype=np.float64)
    num = (n1 / n2) * (n2 - w) * s - (n1 + w)
    den = w * (1.0 + (n1 / n2) * s)
    out = 2.0 * (n1 - n) / (n1 + n2) * num / den
    return float(out) if np.ndim(lam_f) == 0 else out


TRANSFORMS = {
    "none": lambda lam, d: np.asarray(lam, dtype=np.float64),
    "thm42": semicircle_transform,
    "thm43": reciprocal_edge_transform,
    "thm44": shifted_semicircle_transform,
}


def transform_limit_cdf(kind: str, d: FDims):
    """CDF callable of the limiting law matching a transform at dimensions d.

    Plug-in parameters are used (y = n/n1, y' = n/n2, g = n1/n2). For
    ``thm43`` the limit is the distribution of 1/Z with Z ~ EdgeDensity, so
    its CDF is evaluated by reflection rather than through a density model.
    """
    if kind == "none":
        return lambda xs: cdf_grid(FMatrixDensity(d.n / d.n1, d.n / d.n2), xs)
    if kind == "thm42":
        g = d.n1 / d.n2
        return lambda xs: cdf_grid(SemicircleDensity(4.0 * g / (1.0 + g) ** 1.5), xs)
    if kind == "thm43":
        edge = EdgeDensity(d.n2 / d.n - 1.0)

        def cdf(xs):
            xs = np.asarray(xs, dtype=np.float64)
            with np.errstate(divide="ignore"):
                inv = np.where(xs > 0.0, 1.0 / np.where(xs > 0.0, xs, 1.0), np.inf)
            return 1.0 - cdf_grid(edge, inv)

        return cdf
    if kind == "thm44":
        return lambda xs: cdf_grid(SemicircleDensity(4.0, -2.0), xs)
    raise ParameterDomainError(f"unknown transform {kind!r}")


def f_esd_pooled(
    d: FDims,
    trials: int,
    rng: RngStream,
    transform: str = "none",
    threads: int = 1,
) -> np.ndarray:
    """Pooled sorted (optionally transformed) F eigenvalues over trials.

    Tridiagonal route; trial t consumes rng.substream(t), so the pool is
    schedule-independent.
    """
    fn = TRANSFORMS.get(transform)
    if fn is None:
        raise ParameterDomainError(f"unknown transform {transform!r}")

    def one(t: int) -> np.ndarray:
        vals = f_eigs_tridiag(d, rng.substream(t)).values
        return np.asarray(fn(vals, d), dtype=np.float64)

    return np.sort(np.concatenate(run_trials(one, trials, threads)))
