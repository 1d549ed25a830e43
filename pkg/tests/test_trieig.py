import numpy as np
import pytest

from jacobi_spectra.betarand import RngStream
from jacobi_spectra.ensemble import SymTridiag
from jacobi_spectra.errors import (
    MagnitudeOverflowError,
    NotPositiveDefiniteError,
    ParameterDomainError,
)
from jacobi_spectra.trieig import (
    DenseSym,
    charpoly_eval,
    cholesky,
    eig_dense_sym,
    eig_generalized_sym,
    eig_tridiag,
    sturm_count,
)


def _tridiag(diag, off):
    return SymTridiag(np.asarray(diag, float), np.asarray(off, float))


def test_eig_tridiag_diagonal_and_closed_forms():
    s = eig_tridiag(_tridiag([3.0, 3.0, 3.0], [0.0, 0.0]))
    assert s.values == pytest.approx([3.0, 3.0, 3.0], abs=1e-12)
    s = eig_tridiag(_tridiag([0.0, 0.0], [2.0 / np.sqrt(3.0)]))
    assert s.values == pytest.approx([-2 / np.sqrt(3), 2 / np.sqrt(3)], rel=1e-12)
    # free Jacobi matrix: 2 cos(k pi / 6)
    s = eig_tridiag(_tridiag([0.0] * 5, [1.0] * 4))
    expected = np.sort(2.0 * np.cos(np.arange(1, 6) * np.pi / 6.0))
    assert s.values == pytest.approx(expected, abs=1e-12)


def test_eig_tridiag_single_entry_and_tolerance_domain():
    assert eig_tridiag(_tridiag([4.2], [])).values == pytest.approx([4.2])
    with pytest.raises(ParameterDomainError):
        eig_tridiag(_tridiag([1.0], []), rel_tol=1e-15)


def test_sturm_count_matches_spectrum():
    rng = np.random.default_rng(0)
    t = _tridiag(rng.normal(size=9), np.abs(rng.normal(size=8)) + 0.1)
    vals = eig_tridiag(t).values
    for x in (-3.0, -0.5, 0.2, 2.5):
        assert sturm_count(t, x) == int(np.sum(vals < x))


def test_eig_matches_charpoly_bisection_oracle():
    # locate charpoly sign changes by exhaustive bisection; n <= 12
    rng = np.random.default_rng(1)
    for n in (2, 5, 12):
        t = _tridiag(rng.normal(size=n), np.abs(rng.normal(size=n - 1)) + 0.05)
        vals = eig_tridiag(t).values
        bound = t.norm_inf() + 1.0
        xs = np.linspace(-bound, bound, 20001)
        fs = charpoly_eval(t, xs)
        roots = []
        for i in np.nonzero(np.sign(fs[:-1]) * np.sign(fs[1:]) < 0)[0]:
            lo, hi = xs[i], xs[i + 1]
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if np.sign(charpoly_eval(t, mid)) == np.sign(charpoly_eval(t, lo)):
                    lo = mid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        assert len(roots) == n
        assert np.max(np.abs(np.array(roots) - vals)) < 1e-9


def test_charpoly_values():
    assert charpoly_eval(_tridiag([1.5], []), 4.0) == pytest.approx(2.5)
    assert charpoly_eval(_tridiag([0.0, 0.0], [1.0]), 2.0) == pytest.approx(3.0)
    t = _tridiag([0.0] * 6, [1.0] * 5)
    for v in eig_tridiag(t).values:
        assert abs(charpoly_eval(t, v)) < 1e-8


def test_charpoly_overflow_raises():
    t = _tridiag(np.zeros(400), np.ones(399))
    with pytest.raises(MagnitudeOverflowError):
        charpoly_eval(t, 1e3)


def test_trace_conservation():
    rng = np.random.default_rng(2)
    t = _tridiag(rng.normal(size=50), np.abs(rng.normal(size=49)))
    vals = eig_tridiag(t).values
    assert abs(vals.sum() - t.diag.sum()) < 1e-9 * 50 * t.norm_inf()
    m = rng.normal(size=(40, 40))
    a = DenseSym((m + m.T) / 2.0)
    dv = eig_dense_sym(a).values
    assert dv.sum() == pytest.approx(np.trace(a.a), rel=1e-8)


def test_dense_sym_validation():
    with pytest.raises(ParameterDomainError):
        DenseSym(np.array([[0.0, 1.0], [0.5, 0.0]]))
    with pytest.raises(ParameterDomainError):
        DenseSym(np.zeros((2, 3)))


def test_eig_dense_examples():
    assert eig_dense_sym(DenseSym(np.eye(5))).values == pytest.approx(np.ones(5))
    assert eig_dense_sym(DenseSym(np.array([[0.0, 1.0], [1.0, 0.0]]))).values == pytest.approx(
        [-1.0, 1.0]
    )
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    a = DenseSym(q @ np.diag([1.0, 2.0, 3.0]) @ q.T)
    assert eig_dense_sym(a).values == pytest.approx([1.0, 2.0, 3.0], abs=1e-10)


def test_eig_dense_odd_size_and_cap():
    rng = np.random.default_rng(4)
    m = rng.normal(size=(7, 7))
    a = DenseSym((m + m.T) / 2.0)
    assert eig_dense_sym(a).values == pytest.approx(np.linalg.eigvalsh(a.a), abs=1e-10)
    with pytest.raises(ParameterDomainError):
        eig_dense_sym(DenseSym(np.eye(501)))


def test_cholesky():
    assert cholesky(DenseSym(np.eye(4))) == pytest.approx(np.eye(4))
    low = cholesky(DenseSym(np.array([[4.0, 2.0], [2.0, 5.0]])))
    assert low == pytest.approx(np.array([[2.0, 0.0], [1.0, 2.0]]))
    with pytest.raises(NotPositiveDefiniteError):
        cholesky(DenseSym(np.array([[1.0, 2.0], [2.0, 1.0]])))
    # Wishart matrices with n2 >= n are a.s. positive definite
    rng = RngStream(99, 0)
    for t in range(1000):
        y = rng.normals(6 * 10).reshape(6, 10)
        low = cholesky(DenseSym(y @ y.T))
        assert np.all(np.diag(low) > 0.0)


def test_generalized_eig():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(6, 6))
    a = DenseSym((m + m.T) / 2.0)
    b = DenseSym(np.eye(6))
    # A = B and A = 2B
    w = rng.normal(size=(6, 9))
    spd = DenseSym(w @ w.T)
    assert eig_generalized_sym(spd, spd).values == pytest.approx(np.ones(6))
    two = DenseSym(2.0 * spd.a)
    assert eig_generalized_sym(two, spd).values == pytest.approx(2.0 * np.ones(6))
    # diagonal case
    da = DenseSym(np.diag([1.0, 2.0]))
    db = DenseSym(np.diag([4.0, 1.0]))
    assert eig_generalized_sym(da, db).values == pytest.approx([0.25, 2.0])
    # identity B reduces to the standard problem
    assert eig_generalized_sym(a, b).values == pytest.approx(
        eig_dense_sym(a).values, abs=1e-10
    )
