"""Empirical spectral distributions, limiting densities, deviation statistics
and the Monte Carlo driver.

Two scaled-eigenvalue conventions coexist and are selected explicitly by the
caller, because mixing them is the most likely implementation bug:

* ``plain``:    xi = (lambda - eps_n) / delta_n
* ``doubled``:  xi = (lambda - 2*(2*eps_n - 1)) / (2*delta_n)

Monte Carlo trials run one RNG substream per trial (substream index = trial
index), so pooled results are identical for any thread count or schedule.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .betarand import BetaParams, RngStream, beta_mean_pm1
from .ensemble import JacobiParams, alpha_shapes, random_matrix, sample_alphas
from .errors import NumericalFailureError, ParameterDomainError
from .polyroots import JacobiPolyParams, jacobi_roots_scaled
from .trieig import eig_tridiag

# ---------------------------------------------------------------------------
# empirical distribution functions and distances


@dataclass(frozen=True)
class Ecdf:
    """Right-continuous empirical CDF carried by its sorted sample."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.sort(np.asarray(self.points, dtype=np.float64))
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size == 0:
            raise ParameterDomainError("ECDF needs a nonempty sample")

    @property
    def n(self) -> int:
        return self.points.size


def ecdf_eval(e: Ecdf, xi):
    """Fraction of the sample <= xi; 0 below the minimum, 1 at/above the maximum."""
    idx = np.searchsorted(e.points, np.asarray(xi, dtype=np.float64), side="right")
    out = idx / e.n
    return float(out) if np.ndim(xi) == 0 else out


def ks_distance(e: Ecdf, cdf) -> float:
    """One-sample Kolmogorov-Smirnov statistic against a CDF callable.

    ``cdf`` must accept an array of points and return CDF values, assumed
    nondecreasing from 0 to 1. The lower comparison uses the left limit of
    the CDF, which coincides with the classical two-sided sample formula for
    continuous references and handles point masses at sample points exactly.
    """
    pts = e.points
    left = np.nextafter(pts, -np.inf)
    f_all = np.asarray(cdf(np.concatenate([pts, left])), dtype=np.float64)
    f_hi, f_lo = f_all[: e.n], f_all[e.n :]
    i = np.arange(1, e.n + 1)
    return float(
        np.max(np.maximum(np.abs(f_hi - i / e.n), np.abs(f_lo - (i - 1) / e.n)))
    )


def two_sample_sup_distance(e: Ecdf, f: Ecdf) -> float:
    """sup_x |F_e(x) - F_f(x)| for two ECDFs (Kolmogorov distance)."""
    grid = np.concatenate([e.points, f.points])
    return float(np.max(np.abs(ecdf_eval(e, grid) - ecdf_eval(f, grid))))


def _levy_feasible(e: Ecdf, f: Ecdf, eps: float) -> bool:
    # F(x - eps) - eps <= G(x) <= F(x + eps) + eps for all x, checked at the
    # jump points of each step function (the binding points)
    ge = ecdf_eval(e, e.points)          # values just after each jump of e
    gf = ecdf_eval(f, f.points)
    if np.any(ge > np.asarray(ecdf_eval(f, e.points + eps)) + eps):
        return False
    if np.any(gf > np.asarray(ecdf_eval(e, f.points + eps)) + eps):
        return False
    return True


def levy_distance(e: Ecdf, f: Ecdf) -> float:
    """Levy distance between two ECDFs, by bisection on the band half-width.

    Exact to ~1e-14: feasibility of a given half-width is checked exactly at
    the merged jump points, and the infimum is bracketed by bisection.
    """
    hi = max(two_sample_sup_distance(e, f), 1e-15)
    if _levy_feasible(e, f, 0.0):
        return 0.0
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _levy_feasible(e, f, mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# limiting density models


class DensityModel:
    """Base class: a closed-form limiting spectral density on a finite support.

    Concrete models implement :meth:`edge_density`, the density written in
    terms of the exact distances to the two support endpoints; this avoids the
    subtractive cancellation that otherwise wrecks the quadrature near
    inverse-square-root edges (arcsine-type laws).
    """

    support: tuple[float, float]

    def edge_density(self, dlo, dhi):
        """Density at x = lo + dlo = hi - dhi for interior distances dlo, dhi > 0."""
        raise NotImplementedError

    def density(self, x: np.ndarray) -> np.ndarray:
        """Density values on interior points of the support (no masking)."""
        lo, hi = self.support
        return self.edge_density(np.asarray(x) - lo, hi - np.asarray(x))

    def label(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class GeneralDensity(DensityModel):
    """Four-parameter limiting density on [a2 - 2*sqrt(b2), a2 + 2*sqrt(b2)].

    f(x) = (b1 / 2pi) sqrt(4 b2 - (x - a2)^2) /
           ((b2-b1) x^2 + (b1 a2 + b1 a1 - 2 b2 a1) x + b2 a1^2 - a1 a2 b1 + b1^2)
    """

    a1: float
    a2: float
    b1: float
    b2: float

    def __post_init__(self):
        if not (self.b1 > 0.0 and self.b2 > 0.0):
            raise ParameterDomainError("scale parameters must satisfy b1, b2 > 0")
        lo = self.a2 - 2.0 * math.sqrt(self.b2)
        hi = self.a2 + 2.0 * math.sqrt(self.b2)
        object.__setattr__(self, "support", (lo, hi))

    def edge_density(self, dlo, dhi):
        a1, a2, b1, b2 = self.a1, self.a2, self.b1, self.b2
        x = self.support[0] + dlo
        num = b1 / (2.0 * np.pi) * np.sqrt(dlo * dhi)
        den = (
            (b2 - b1) * x * x
            + (b1 * a2 + b1 * a1 - 2.0 * b2 * a1) * x
            + b2 * a1 * a1
            - a1 * a2 * b1
            + b1 * b1
        )
        return num / den


def ratio_density_support(alpha0: float, beta0: float) -> tuple[float, float]:
    """Support endpoints (2 r1, 2 r2) of :class:`RatioDensity` on the [-2, 2] scale."""
    if alpha0 < 0.0 or beta0 < 0.0:
        raise ParameterDomainError("growth ratios must satisfy alpha0, beta0 >= 0")
    root = 4.0 * math.sqrt((alpha0 + 1.0) * (beta0 + 1.0) * (alpha0 + beta0 + 1.0))
    den = (2.0 + alpha0 + beta0) ** 2
    r1 = (beta0**2 - alpha0**2 - root) / den
    r2 = (beta0**2 - alpha0**2 + root) / den
    return 2.0 * r1, 2.0 * r2


@dataclass(frozen=True)
class RatioDensity(DensityModel):
    """Limit law when the rescaled parameters grow linearly with n.

    alpha0 and beta0 are the limits of a_tilde/n and b_tilde/n. The density is
    ((2 + alpha0 + beta0) / 2pi) sqrt((2 r2 - x)(x - 2 r1)) / (4 - x^2); for
    alpha0 = beta0 = 0 it degenerates to the arcsine law.
    """

    alpha0: float
    beta0: float

    def __post_init__(self):
        object.__setattr__(self, "support", ratio_density_support(self.alpha0, self.beta0))

    def edge_density(self, dlo, dhi):
        lo, hi = self.support
        c = (2.0 + self.alpha0 + self.beta0) / (2.0 * np.pi)
        # 4 - x^2 written via endpoint distances; exact when the support
        # touches +-2 (alpha0 or beta0 = 0), where the density is singular
        return c * np.sqrt(dlo * dhi) / (((2.0 - hi) + dhi) * ((2.0 + lo) + dlo))


@dataclass(frozen=True)
class ArcsineDensity(DensityModel):
    """Arcsine law on (-2, 2): f(x) = 1 / (pi sqrt(4 - x^2))."""

    def __post_init__(self):
        object.__setattr__(self, "support", (-2.0, 2.0))

    def edge_density(self, dlo, dhi):
        return 1.0 / (np.pi * np.sqrt(dlo * dhi))

    @staticmethod
    def cdf_closed_form(xi):
        return 0.5 + np.arcsin(np.clip(np.asarray(xi) / 2.0, -1.0, 1.0)) / np.pi


@dataclass(frozen=True)
class SemicircleDensity(DensityModel):
    """Semicircle of given radius (and optional center).

    f(x) = (2 / (pi r^2)) sqrt(r^2 - (x - c)^2) on [c - r, c + r]. The shifted
    variant with radius 4 and center 2 (support [-2, 6]) is the limit in the
    strongly imbalanced parameter-growth regime; its mirror image (center -2,
    support [-6, 2]) appears for the correspondingly transformed F-matrix
    eigenvalues.
    """

    radius: float
    center: float = 0.0

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ParameterDomainError("semicircle radius must be positive")
        object.__setattr__(
            self, "support", (self.center - self.radius, self.center + self.radius)
        )

    def edge_density(self, dlo, dhi):
        r = self.radius
        return 2.0 / (np.pi * r * r) * np.sqrt(dlo * dhi)


@dataclass(frozen=True)
class EdgeDensity(DensityModel):
    """Marchenko-Pastur-type limit when the first parameter dominates.

    beta0 is the limit of b_tilde/n while a_tilde/n diverges. Support is
    [s1, s2] with s1, s2 = 2 (2 + beta0) -/+ 4 sqrt(1 + beta0) and density
    (1 / 4pi) sqrt((s2 - x)(x - s1)) / x.
    """

    beta0: float

    def __post_init__(self):
        if self.beta0 < 0.0:
            raise ParameterDomainError("growth ratio must satisfy beta0 >= 0")
        s = 2.0 * (2.0 + self.beta0)
        w = 4.0 * math.sqrt(1.0 + self.beta0)
        object.__setattr__(self, "support", (s - w, s + w))

    def edge_density(self, dlo, dhi):
        # x = lo + dlo is exact even when the support starts at 0 (beta0 = 0)
        return np.sqrt(dlo * dhi) / (4.0 * np.pi * (self.support[0] + dlo))


@dataclass(frozen=True)
class FMatrixDensity(DensityModel):
    """Classical limiting eigenvalue density of the multivariate F-matrix.

    y in (0, 1] and yprime in (0, 1) are the limits of n/n1 and n/n2;
    f(x) = (1 - y') / (2 pi x (x y' + y)) sqrt((x - s1)(s2 - x)) on (s1, s2)
    with s1, s2 = ((1 -/+ sqrt(1 - (1-y)(1-y')))/(1 - y'))^2.
    """

    y: float
    yprime: float

    def __post_init__(self):
        if not (0.0 < self.y <= 1.0):
            raise ParameterDomainError("aspect ratio must satisfy y in (0, 1]")
        if not (0.0 < self.yprime < 1.0):
            raise ParameterDomainError("aspect ratio must satisfy yprime in (0, 1)")
        root = math.sqrt(1.0 - (1.0 - self.y) * (1.0 - self.yprime))
        s1 = ((1.0 - root) / (1.0 - self.yprime)) ** 2
        s2 = ((1.0 + root) / (1.0 - self.yprime)) ** 2
        object.__setattr__(self, "support", (s1, s2))

    def edge_density(self, dlo, dhi):
        x = self.support[0] + dlo
        c = (1.0 - self.yprime) / (2.0 * np.pi)
        return c * np.sqrt(dlo * dhi) / (x * (x * self.yprime + self.y))


def density_eval(m: DensityModel, x):
    """Density of the model at x (scalar or array); 0 outside the open support."""
    xa = np.asarray(x, dtype=np.float64)
    lo, hi = m.support
    inside = (xa > lo) & (xa < hi)
    out = np.zeros_like(xa, dtype=np.float64)
    if np.any(inside):
        vals = m.density(np.atleast_1d(xa)[np.atleast_1d(inside)])
        if out.ndim == 0:
            out = np.float64(vals[0])
        else:
            out[inside] = vals
    return float(out) if np.ndim(x) == 0 else out


# ---------------------------------------------------------------------------
# quadrature: adaptive Simpson with sqrt substitution at the support endpoints


def _adaptive_simpson(g, a: float, b: float, tol: float, max_depth: int = 40) -> float:
    """Classic adaptive Simpson with Richardson correction; absolute tol."""
    if a == b:
        return 0.0

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(x0, x2, f0, f1, f2, whole, tol, depth):
        x1 = 0.5 * (x0 + x2)
        lm = 0.5 * (x0 + x1)
        rm = 0.5 * (x1 + x2)
        flm = g(lm)
        frm = g(rm)
        left = simpson(f0, flm, f1, x1 - x0)
        right = simpson(f1, frm, f2, x2 - x1)
        err = left + right - whole
        if abs(err) <= 15.0 * tol:
            return left + right + err / 15.0
        if depth >= max_depth:
            raise NumericalFailureError("adaptive quadrature did not converge")
        return recurse(x0, x1, f0, flm, f1, left, tol / 2.0, depth + 1) + recurse(
            x1, x2, f1, frm, f2, right, tol / 2.0, depth + 1
        )

    fa, fm, fb = g(a), g(0.5 * (a + b)), g(b)
    whole = simpson(fa, fm, fb, b - a)
    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def _integrate_density(m: DensityModel, lo: float, hi: float, tol: float) -> float:
    """Integral of the density over [lo, hi] inside the support.

    Integrable inverse-square-root endpoint behaviour is removed by the
    substitutions x = s1 + t^2 near the lower support endpoint and
    x = s2 - u^2 near the upper one, which make the integrand analytic; the
    edge distances t^2 and u^2 feed :meth:`DensityModel.edge_density` exactly,
    with no subtractive cancellation.
    """
    s1, s2 = m.support
    width = s2 - s1
    lo = max(lo, s1)
    hi = min(hi, s2)
    if hi <= lo:
        return 0.0
    mid = 0.5 * (s1 + s2)
    total = 0.0
    left_hi = min(hi, mid)
    if lo < left_hi:
        # avoid evaluating 2t * f at exactly t = 0 (0 * inf at singular edges);
        # the skipped mass below t = 1e-12 is O(1e-12) even for 1/sqrt edges
        ta = max(math.sqrt(lo - s1), 1e-12)
        tb = math.sqrt(left_hi - s1)
        if ta < tb:
            total += _adaptive_simpson(
                lambda t: 2.0 * t * float(m.edge_density(t * t, width - t * t)),
                ta, tb, tol,
            )
    right_lo = max(lo, mid)
    if right_lo < hi:
        ua = max(math.sqrt(s2 - hi), 1e-12)
        ub = math.sqrt(s2 - right_lo)
        if ua < ub:
            total += _adaptive_simpson(
                lambda u: 2.0 * u * float(m.edge_density(width - u * u, u * u)),
                ua, ub, tol,
            )
    return total


def density_norm(m: DensityModel, tol: float = 1e-8) -> float:
    """Raw quadrature of the density over its support (should be 1)."""
    lo, hi = m.support
    return _integrate_density(m, lo, hi, tol)


def cdf_eval(m: DensityModel, xi: float, tol: float = 1e-8) -> float:
    """CDF of the model at xi by adaptive quadrature; clamped to [0, 1]."""
    lo, hi = m.support
    if xi <= lo:
        return 0.0
    if xi >= hi:
        return 1.0
    return min(max(_integrate_density(m, lo, xi, tol), 0.0), 1.0)


def cdf_grid(m: DensityModel, xs: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """CDF at many (arbitrary-order) points, by incremental panel integration."""
    xs = np.asarray(xs, dtype=np.float64)
    order = np.argsort(xs, kind="stable")
    sorted_xs = xs[order]
    lo, hi = m.support
    vals = np.empty_like(sorted_xs)
    acc = 0.0
    prev = lo
    for i, x in enumerate(sorted_xs):
        if x <= lo:
            vals[i] = 0.0
            continue
        if x >= hi:
            vals[i] = 1.0
            continue
        acc += _integrate_density(m, prev, x, tol)
        prev = x
        vals[i] = min(max(acc, 0.0), 1.0)
    out = np.empty_like(vals)
    out[order] = vals
    return out


def model_cdf(m: DensityModel):
    """CDF callable suitable for :func:`ks_distance`."""
    return lambda xs: cdf_grid(m, xs)


def ks_vs_model(e: Ecdf, m: DensityModel) -> float:
    """One-sample KS statistic of an ECDF against a density model."""
    return ks_distance(e, model_cdf(m))


# ---------------------------------------------------------------------------
# deviation machinery


@dataclass(frozen=True)
class DeviationReport:
    """Per-realization deviation between random eigenvalues and deterministic roots.

    ``chain_bound`` = 4 sqrt(3 X) + 6 X with X = ``alpha_max_dev`` bounds
    ``max_dev`` for every realization; ``scaled_dev`` multiplies ``max_dev``
    by ((a + b)/log n)^(1/4), the rate at which the approximation error decays.
    """

    max_dev: float
    alpha_max_dev: float
    chain_bound: float
    scaled_dev: float

    def __post_init__(self):
        if min(self.max_dev, self.alpha_max_dev, self.chain_bound, self.scaled_dev) < 0:
            raise ParameterDomainError("deviation statistics must be nonnegative")


def deviation_report(
    p: JacobiParams, rng: RngStream, roots: np.ndarray | None = None
) -> DeviationReport:
    """Sample one realization and compare it to the deterministic roots.

    ``roots`` may carry precomputed ascending roots for the same parameters
    (they are deterministic, so sweeps over many trials can share them).
    """
    alphas = sample_alphas(p, rng)
    lam = eig_tridiag(random_matrix(alphas)).values
    if roots is None:
        roots = jacobi_roots_scaled(
            JacobiPolyParams(p.n, p.a_tilde - 1.0, p.b_tilde - 1.0)
        ).values
    max_dev = float(np.max(np.abs(lam - roots)))
    ps, qs = alpha_shapes(p)
    means = beta_mean_pm1(BetaParams(ps, qs))
    x_n = float(np.max(np.abs(alphas.alpha - means)))
    chain = 4.0 * math.sqrt(3.0 * x_n) + 6.0 * x_n
    logn = math.log(p.n)
    scaled = max_dev * ((p.a + p.b) / logn) ** 0.25 if logn > 0.0 else math.inf
    return DeviationReport(max_dev, x_n, chain, scaled)


def deviation_probability_bound(n: int, a: float, b: float, eps: float) -> float:
    """Tail bound 4 (2n - 1) exp(c(eps) (a + b + 2)) for the max deviation.

    c(eps) = log(1 + u) - u with u = eps^2 / (648 + 2 eps^2) is strictly
    negative, so the bound decays in a + b; it is typically vacuous (> 1) at
    desk scale.
    """
    if not (0.0 < eps <= 1.0):
        raise ParameterDomainError("eps must lie in (0, 1]")
    u = eps * eps / (648.0 + 2.0 * eps * eps)
    c = math.log1p(u) - u
    return 4.0 * (2.0 * n - 1.0) * math.exp(c * (a + b + 2.0))


# ---------------------------------------------------------------------------
# scaling sequences and the Monte Carlo driver


@dataclass(frozen=True)
class ScalingSequence:
    """One member (delta_n, eps_n) of an affine eigenvalue-scaling sequence."""

    delta_n: float
    epsilon_n: float
    n: int

    def __post_init__(self):
        if not self.delta_n > 0.0:
            raise ParameterDomainError("scale must satisfy delta_n > 0")


SCALING_MODES = ("plain", "doubled")


def scale_eigenvalues(lam: np.ndarray, s: ScalingSequence, mode: str) -> np.ndarray:
    """Apply one of the two affine scaled-eigenvalue conventions."""
    if mode == "plain":
        return (lam - s.epsilon_n) / s.delta_n
    if mode == "doubled":
        return (lam - 2.0 * (2.0 * s.epsilon_n - 1.0)) / (2.0 * s.delta_n)
    raise ParameterDomainError(f"unknown scaling mode {mode!r}; use plain or doubled")


def general_density_params_at_n(
    p: JacobiParams, s: ScalingSequence
) -> tuple[float, float, float, float]:
    """Finite-n values of the four limit-density parameters (a1, a2, b1, b2).

    Evaluates the four normalized-recurrence expressions whose limits define
    :class:`GeneralDensity`, multiplied by (2, 2, 4, 4) so the outputs estimate
    the parameters directly. No convergence is asserted; these are plug-ins.
    """
    n, at, bt = p.n, p.a_tilde, p.b_tilde
    t = 2.0 * n + at + bt - 2.0
    if t == 0.0 or s.delta_n == 0.0:
        raise ParameterDomainError("zero denominator in limit-parameter expressions")
    a1 = 2.0 / s.delta_n * ((n + bt - 1.0) / t - s.epsilon_n)
    a2 = (
        2.0
        / s.delta_n
        * ((n * (n + at - 1.0) + (n + bt - 1.0) * (n + at + bt - 2.0)) / t**2 - s.epsilon_n)
    )
    b1 = 4.0 / s.delta_n**2 * ((n + bt - 1.0) * (n + at - 1.0) * n / t**3)
    b2 = (
        4.0
        / s.delta_n**2
        * ((n + bt - 1.0) * (n + at - 1.0) * (n + at + bt - 2.0) * n / t**4)
    )
    return a1, a2, b1, b2


def run_trials(fn, trials: int, threads: int = 1) -> list:
    """Evaluate fn(trial_index) for each trial, optionally on a thread pool.

    Results are gathered in trial order, so the output is independent of the
    schedule. fn must derive all randomness from its trial index.
    """
    if trials < 1:
        raise ParameterDomainError("need trials >= 1")
    if threads <= 1 or trials == 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def monte_carlo_esd(
    p: JacobiParams,
    s: ScalingSequence,
    trials: int,
    rng: RngStream,
    mode: str = "plain",
    threads: int = 1,
) -> Ecdf:
    """Pooled ECDF of affinely scaled eigenvalues over independent trials.

    Trial t consumes ``rng.substream(t)``; output is deterministic for a given
    base stream regardless of the thread count.
    """
    if mode not in SCALING_MODES:
        raise ParameterDomainError(f"unknown scaling mode {mode!r}")
    if p.n >= 2:
        transfer = s.delta_n**4 * (p.a + p.b) / math.log(p.n)
        if transfer < 10.0:
            warnings.warn(
                "scaled-comparison transfer proxy delta^4 (a+b)/log n = "
                f"{transfer:.3g} < 10; the root approximation may be too coarse "
                "at this scale",
                stacklevel=2,
            )

    def one(t: int) -> np.ndarray:
        sub = rng.substream(t)
        lam = eig_tridiag(random_matrix(sample_alphas(p, sub))).values
        return scale_eigenvalues(lam, s, mode)

    pooled = np.concatenate(run_trials(one, trials, threads))
    return Ecdf(np.sort(pooled))
