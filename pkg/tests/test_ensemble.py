import numpy as np
import pytest

from jacobi_spectra.betarand import BetaParams, RngStream, sample_beta_pm1
from jacobi_spectra.ensemble import (
    AlphaVector,
    JacobiParams,
    alpha_shape_params,
    alpha_shapes,
    expected_matrix,
    random_matrix,
    sample_alphas,
)
from jacobi_spectra.errors import ParameterDomainError
from jacobi_spectra.spectra import Ecdf, two_sample_sup_distance
from jacobi_spectra.trieig import eig_tridiag

from oracles import max_over_cube

SEED = 0x4A41434F424921


def test_params_validation():
    with pytest.raises(ParameterDomainError):
        JacobiParams(0, 0.0, 0.0, 2.0)
    with pytest.raises(ParameterDomainError):
        JacobiParams(2, -1.0, 0.0, 2.0)
    with pytest.raises(ParameterDomainError):
        JacobiParams(2, 0.0, -1.5, 2.0)
    with pytest.raises(ParameterDomainError):
        JacobiParams(2, 0.0, 0.0, 0.0)
    p = JacobiParams(4, 1.0, 2.0, 2.0)
    assert p.a_tilde == 2.0 and p.b_tilde == 3.0


def test_alpha_shape_params_examples():
    p = JacobiParams(2, 0.0, 0.0, 2.0)
    even = alpha_shape_params(p, 0)
    assert (even.p, even.q) == (2.0, 2.0)
    odd = alpha_shape_params(p, 1)
    assert (odd.p, odd.q) == (2.0, 1.0)
    with pytest.raises(IndexError):
        alpha_shape_params(p, 3)


def test_alpha_shapes_always_positive():
    for n in (1, 2, 5, 40):
        for a, b, beta in ((-0.99, -0.99, 0.05), (0.0, 0.0, 2.0), (100.0, 3.0, 7.5)):
            ps, qs = alpha_shapes(JacobiParams(n, a, b, beta))
            assert np.all(ps > 0.0) and np.all(qs > 0.0)
            assert ps.size == 2 * n - 1


def test_sample_alphas_shape_and_support():
    p = JacobiParams(30, 1.0, 2.0, 2.0)
    al = sample_alphas(p, RngStream(SEED, 0))
    assert al.alpha.size == 59 and al.n == 30
    assert np.all((al.alpha > -1.0) & (al.alpha < 1.0))
    al1 = sample_alphas(JacobiParams(1, 1.0, 2.0, 2.0), RngStream(SEED, 0))
    assert al1.alpha.size == 1


def test_even_entries_symmetric_for_equal_weights():
    # a = b makes the even-index variates symmetric around zero
    p = JacobiParams(4, 3.0, 3.0, 2.0)
    rng = RngStream(SEED, 1)
    acc = np.zeros(7)
    trials = 10**4
    for t in range(trials):
        acc += sample_alphas(p, rng.substream(t)).alpha
    mean = acc / trials
    assert np.all(np.abs(mean[::2]) < 0.02)


def test_boundary_convention_first_diagonal():
    # alpha_{-1} = alpha_{-2} = -1 collapses the first diagonal entry to 2*alpha_0
    alpha = np.array([0.3, -0.2, 0.5, 0.1, -0.4])
    t = random_matrix(AlphaVector(alpha))
    assert t.diag[0] == pytest.approx(2.0 * 0.3, abs=1e-15)


def test_alpha_vector_validation_and_builder_guard():
    from jacobi_spectra.errors import InternalConsistencyError

    with pytest.raises(ParameterDomainError):
        AlphaVector(np.array([0.1, 0.2]))  # even length
    with pytest.raises(ParameterDomainError):
        AlphaVector(np.array([0.1, 1.0, 0.2]))  # closed endpoint
    # corrupting a validated vector in place must trip the builder's guard
    al = AlphaVector(np.array([0.1, 0.2, 0.3]))
    al.alpha[0] = 5.0
    with pytest.raises(InternalConsistencyError):
        random_matrix(al)


def test_entry_ranges():
    # brute-force the entry formulas over the closed alpha cube
    diag_sup = max_over_cube(
        lambda a1, a2, a0: np.abs((1 - a1) * a2 - (1 + a1) * a0), 3
    )
    off_sup = max_over_cube(
        lambda a1, a2, a3: np.sqrt(np.maximum((1 - a1) * (1 - a2**2) * (1 + a3), 0.0)), 3
    )
    assert diag_sup == pytest.approx(2.0, abs=1e-12)
    assert off_sup == pytest.approx(2.0, abs=1e-12)
    rng = RngStream(SEED, 2)
    for t in range(50):
        m = random_matrix(sample_alphas(JacobiParams(25, 0.5, 1.5, 1.0), rng.substream(t)))
        assert np.all(np.abs(m.diag) <= 2.0)
        assert np.all(m.off >= 0.0) and np.all(m.off <= 2.0 * np.sqrt(2.0))


def test_off_entries_never_exactly_zero():
    # continuous variates: no off entry hits 0 across 1e5 sampled matrices
    p = JacobiParams(2, 0.0, 0.0, 2.0)
    ps, qs = alpha_shapes(p)
    trials = 10**5
    rng = RngStream(SEED, 3)
    alphas = sample_beta_pm1(
        BetaParams(np.tile(ps, trials), np.tile(qs, trials)), rng
    ).reshape(trials, 3)
    off = (1.0 - alphas[:, 0] ** 2) * 2.0 * (1.0 + alphas[:, 1])
    assert np.all(off > 0.0)


def test_expected_matrix_examples():
    # equal rescaled parameters zero out the diagonal
    t = expected_matrix(JacobiParams(6, 2.0, 2.0, 2.0))
    assert np.all(t.diag == 0.0)
    # n = 2, a_tilde = b_tilde = 1
    t = expected_matrix(JacobiParams(2, 0.0, 0.0, 2.0))
    assert t.diag == pytest.approx([0.0, 0.0])
    assert t.off[0] == pytest.approx(2.0 / np.sqrt(3.0), rel=1e-15)
    # n = 1, a_tilde = 2, b_tilde = 4
    t = expected_matrix(JacobiParams(1, 1.0, 3.0, 2.0))
    assert t.diag[0] == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert t.off.size == 0


def test_expected_matrix_off_strictly_positive():
    for n in (2, 3, 7, 30):
        t = expected_matrix(JacobiParams(n, -0.5, 4.0, 1.5))
        assert np.all(t.off > 0.0)


def test_expectation_consistency_with_reversal():
    # the deterministic matrix holds the entrywise means of the REVERSED
    # random matrix; diagonal means match exactly, off-diagonal means only up
    # to the Jensen gap of the square root
    n = 20
    p = JacobiParams(n, 10.0, 10.0, 2.0)
    d = expected_matrix(p)
    trials = 10**5
    ps, qs = alpha_shapes(p)
    rng = RngStream(SEED, 4)
    alphas = sample_beta_pm1(
        BetaParams(np.tile(ps, trials), np.tile(qs, trials)), rng
    ).reshape(trials, 2 * n - 1)
    diag = np.empty((trials, n))
    off = np.empty((trials, n - 1))
    pad = np.concatenate(
        [np.full((trials, 2), -1.0), alphas, np.full((trials, 1), -1.0)], axis=1
    )
    at = lambda j: pad[:, j + 2]
    for k in range(n):
        diag[:, k] = (1 - at(2 * k - 1)) * at(2 * k) - (1 + at(2 * k - 1)) * at(2 * k - 2)
    for k in range(n - 1):
        off[:, k] = np.sqrt((1 - at(2 * k - 1)) * (1 - at(2 * k) ** 2) * (1 + at(2 * k + 1)))
    mean_d, se_d = diag.mean(axis=0), diag.std(axis=0) / np.sqrt(trials)
    mean_o, se_o = off.mean(axis=0), off.std(axis=0) / np.sqrt(trials)
    assert np.all(np.abs(mean_d[::-1] - d.diag) <= 3.0 * se_d[::-1])
    assert np.all(np.abs(mean_o[::-1] - d.off) <= 0.25 * d.off + 3.0 * se_o[::-1])


def test_swap_weights_negates_spectrum():
    p1 = JacobiParams(10, 2.0, 5.0, 2.0)
    p2 = JacobiParams(10, 5.0, 2.0, 2.0)
    e1 = eig_tridiag(expected_matrix(p1), provenance="deterministic").values
    e2 = eig_tridiag(expected_matrix(p2), provenance="deterministic").values
    assert np.max(np.abs(e1 + e2[::-1])) == 0.0
    # and for the random matrix, in distribution
    r1, r2 = RngStream(SEED, 5), RngStream(SEED, 6)
    s1 = np.concatenate(
        [eig_tridiag(random_matrix(sample_alphas(p1, r1.substream(t)))).values for t in range(1000)]
    )
    s2 = np.concatenate(
        [eig_tridiag(random_matrix(sample_alphas(p2, r2.substream(t)))).values for t in range(1000)]
    )
    assert two_sample_sup_distance(Ecdf(s1), Ecdf(-s2)) < 0.02
