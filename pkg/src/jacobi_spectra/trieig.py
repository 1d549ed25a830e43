"""Eigenvalue machinery: tridiagonal solver, characteristic polynomial
recurrence, desk-scale dense symmetric solver, Cholesky, and the
symmetric-definite generalized problem.

The tridiagonal path is the production solver (bisection with Sturm counts,
deterministic accuracy, eigenvalues only). The dense routines are a desk-scale
oracle for the Gaussian-matrix cross-checks and are capped at n = 500 by
policy; they deliberately avoid LAPACK so the cross-checks do not share a
solver with the tridiagonal path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal, solve_triangular

from .ensemble import SymTridiag
from .errors import (
    MagnitudeOverflowError,
    NotPositiveDefiniteError,
    NumericalFailureError,
    ParameterDomainError,
)

DENSE_SIZE_CAP = 500  # dense routines are an oracle, not a production path


@dataclass(frozen=True)
class Spectrum:
    """Ascending real eigenvalues (or roots) with a provenance tag."""

    values: np.ndarray
    provenance: str = "random"  # random | deterministic | transformed

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or v.size == 0:
            raise ParameterDomainError("spectrum must be a nonempty vector")
        if np.any(np.diff(v) < 0.0):
            raise ParameterDomainError("spectrum must be sorted ascending")
        if self.provenance not in ("random", "deterministic", "transformed"):
            raise ParameterDomainError(f"unknown provenance tag {self.provenance!r}")

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class DenseSym:
    """Dense real symmetric matrix; lower triangle authoritative."""

    a: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.a, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ParameterDomainError("dense matrix must be square")
        scale = np.max(np.abs(m)) or 1.0
        if np.max(np.abs(m - m.T)) > 1e-12 * scale:
            raise ParameterDomainError("matrix is not symmetric to 1e-12 relative")
        lower = np.tril(m)
        object.__setattr__(self, "a", lower + np.tril(m, -1).T)

    @property
    def n(self) -> int:
        return self.a.shape[0]


def eig_tridiag(t: SymTridiag, rel_tol: float = 1e-13, provenance: str = "random") -> Spectrum:
    """All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.

    Each eigenvalue is located to about rel_tol * ||T||_inf + 1e-30 inside the
    Gershgorin enclosure. Multiplicities are resolved by the Sturm counts.
    """
    if not rel_tol >= 1e-14:
        raise ParameterDomainError("rel_tol must satisfy rel_tol >= 1e-14")
    norm = t.norm_inf()
    if norm == 0.0:
        return Spectrum(np.zeros(t.n), provenance)
    vals = eigvalsh_tridiagonal(
        t.diag, t.off, lapack_driver="stebz", tol=rel_tol * norm + 1e-30,
        check_finite=False,
    )
    return Spectrum(np.sort(vals), provenance)


def sturm_count(t: SymTridiag, x: float) -> int:
    """Number of eigenvalues strictly below x (negated-pivot count of T - xI)."""
    count = 0
    d = 1.0
    off2 = t.off * t.off
    for k in range(t.n):
        d = (t.diag[k] - x) - (off2[k - 1] / d if k > 0 else 0.0)
        if d == 0.0:
            d = -1e-300
        if d < 0.0:
            count += 1
    return count


def charpoly_eval(t: SymTridiag, x):
    """det(xI - T) via the leading-principal-minor three-term recurrence.

    G_k(x) = (x - d_k) G_{k-1}(x) - c_{k-1}^2 G_{k-2}(x), G_0 = 1, G_{-1} = 0,
    with the final step being the expansion along the last row. Overflows
    float64 for n of a few hundred once |x| is well outside the spectrum; no
    internal rescaling is attempted.
    """
    xa = np.asarray(x, dtype=np.float64)
    gm1 = np.zeros_like(xa)
    g = np.ones_like(xa)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(t.n):
            gm1, g = g, (xa - t.diag[k]) * g - (t.off[k - 1] ** 2 * gm1 if k > 0 else 0.0)
    if not np.all(np.isfinite(g)):
        raise MagnitudeOverflowError(
            "characteristic polynomial overflowed float64; evaluate on a scaled "
            "variable or use the eigenvalue solver instead"
        )
    return float(g) if np.ndim(x) == 0 else g


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint index pairings covering all (i, j), i < j (circle method)."""
    players = list(range(n)) + ([n] if n % 2 else [])  # n = dummy when odd
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def eig_dense_sym(a: DenseSym, tol: float = 1e-12, provenance: str = "random") -> Spectrum:
    """All eigenvalues of a dense symmetric matrix via cyclic plane rotations.

    Disjoint pivot pairs are rotated simultaneously (round-robin schedule);
    sweeps repeat until the off-diagonal Frobenius mass drops below
    tol * ||A||_F, with a hard cap of 50 sweeps.
    """
    if a.n > DENSE_SIZE_CAP:
        raise ParameterDomainError(f"dense solver is capped at n = {DENSE_SIZE_CAP}")
    m = a.a.copy()
    n = a.n
    if n == 1:
        return Spectrum(m[0, :1].copy(), provenance)
    norm_f = float(np.linalg.norm(m))
    if norm_f == 0.0:
        return Spectrum(np.zeros(n), provenance)
    rounds = _round_robin(n)
    for _ in range(50):
        # off-diagonal Frobenius mass, summed directly (a difference of
        # near-equal squares would stall at the rounding floor)
        msq = m * m
        np.fill_diagonal(msq, 0.0)
        if math.sqrt(float(np.sum(msq))) <= tol * norm_f:
            return Spectrum(np.sort(np.diag(m)), provenance)
        for p, q in rounds:
            apq = m[p, q]
            live = apq != 0.0
            if not live.any():
                continue
            tau = np.zeros_like(apq)
            tau[live] = (m[q, q][live] - m[p, p][live]) / (2.0 * apq[live])
            with np.errstate(over="ignore"):
                tval = np.where(
                    live, np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau)), 0.0
                )
            tval = np.where(live & (tau == 0.0), 1.0, tval)
            c = 1.0 / np.sqrt(1.0 + tval * tval)
            s = tval * c
            cols_p = m[:, p] * c - m[:, q] * s
            cols_q = m[:, p] * s + m[:, q] * c
            m[:, p] = cols_p
            m[:, q] = cols_q
            rows_p = m[p, :] * c[:, None] - m[q, :] * s[:, None]
            rows_q = m[p, :] * s[:, None] + m[q, :] * c[:, None]
            m[p, :] = rows_p
            m[q, :] = rows_q
    raise NumericalFailureError("plane-rotation sweeps did not converge in 50 sweeps")


def cholesky(a: DenseSym) -> np.ndarray:
    """Lower-triangular L with L L^T = A for symmetric positive definite A."""
    m = a.a
    n = a.n
    low = np.zeros_like(m)
    for j in range(n):
        pivot = m[j, j] - np.dot(low[j, :j], low[j, :j])
        if not pivot > 0.0:
            raise NotPositiveDefiniteError(f"nonpositive pivot at column {j}")
        low[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            low[j + 1 :, j] = (m[j + 1 :, j] - low[j + 1 :, :j] @ low[j, :j]) / low[j, j]
    return low


def eig_generalized_sym(a: DenseSym, b: DenseSym, tol: float = 1e-12,
                        provenance: str = "random") -> Spectrum:
    """Eigenvalues of A v = lambda B v with B positive definite.

    Reduces to the standard symmetric problem L^-1 A L^-T via the Cholesky
    factor of B, then applies the plane-rotation solver.
    """
    if a.n != b.n:
        raise ParameterDomainError("pencil matrices must have matching size")
    low = cholesky(b)
    half = solve_triangular(low, a.a, lower=True, check_finite=False)
    reduced = solve_triangular(low, half.T, lower=True, check_finite=False)
    reduced = (reduced + reduced.T) / 2.0
    return eig_dense_sym(DenseSym(reduced), tol=tol, provenance=provenance)
