import math

import numpy as np
import pytest

from jacobi_spectra.betarand import (
    BetaParams,
    RngStream,
    beta_concentration_bound,
    beta_mean_pm1,
    sample_beta01,
    sample_beta_pm1,
    sample_gamma,
    sample_normal,
)
from jacobi_spectra.errors import ParameterDomainError

from oracles import inverse_cdf_beta


def test_same_seed_same_stream_reproduces():
    a = RngStream(42, 0)
    b = RngStream(42, 0)
    assert sample_normal(a) == sample_normal(b)
    assert np.array_equal(a.uniforms(100), b.uniforms(100))


def test_distinct_streams_differ():
    a = RngStream(42, 0)
    b = RngStream(42, 1)
    assert not np.array_equal(a.uniforms(100), b.uniforms(100))


def test_substreams_are_independent_of_consumption_order():
    base = RngStream(7, 3)
    first = base.substream(5).uniforms(10)
    base.uniforms(1000)  # consuming the parent must not move the children
    assert np.array_equal(base.substream(5).uniforms(10), first)


def test_uniforms_open_interval():
    u = RngStream(1, 0).uniforms(10**6)
    assert u.min() > 0.0 and u.max() < 1.0


def test_normal_moments():
    z = sample_normal(RngStream(11, 0), size=10**6)
    assert abs(z.mean()) < 0.005
    assert abs(z.var() - 1.0) < 0.01


def test_gamma_moments():
    rng = RngStream(12, 0)
    g1 = sample_gamma(1.0, rng, size=10**6)
    assert abs(g1.mean() - 1.0) < 0.01
    g50 = sample_gamma(50.0, rng, size=10**6)
    assert abs(g50.mean() - 50.0) < 0.5
    assert abs(g50.var() - 50.0) < 2.0


def test_gamma_small_shape_positive():
    g = sample_gamma(0.3, RngStream(13, 0), size=10**6)
    assert np.all(g > 0.0)
    assert abs(g.mean() - 0.3) < 0.01


def test_gamma_huge_shape():
    g = sample_gamma(1e7, RngStream(14, 0), size=10**4)
    # relative std is 1/sqrt(shape) ~ 3e-4
    assert abs(g.mean() / 1e7 - 1.0) < 1e-4


def test_gamma_tiny_shape():
    # near the bottom of the supported shape range most draws underflow the
    # float64 normal range; they must stay strictly positive regardless
    g = sample_gamma(1e-3, RngStream(21, 0), size=10**5)
    assert np.all(g > 0.0)
    assert abs(g.mean() - 1e-3) < 5e-4


def test_gamma_rejects_nonpositive_shape():
    with pytest.raises(ParameterDomainError):
        sample_gamma(0.0, RngStream(0, 0))


def test_beta_params_validation():
    with pytest.raises(ParameterDomainError):
        BetaParams(0.0, 1.0)


def test_beta01_uniform_case():
    z = sample_beta01(BetaParams(1.0, 1.0), RngStream(15, 0), size=10**5)
    # KS against the uniform CDF
    s = np.sort(z)
    i = np.arange(1, s.size + 1)
    ks = np.max(np.maximum(np.abs(s - i / s.size), np.abs(s - (i - 1) / s.size)))
    assert ks < 0.01


def test_beta01_moments():
    z = sample_beta01(BetaParams(50.0, 80.0), RngStream(16, 0), size=10**6)
    assert abs(z.mean() - 50.0 / 130.0) < 0.005
    z = sample_beta01(BetaParams(2.0, 2.0), RngStream(17, 0), size=10**6)
    assert abs(z.var() - 1.0 / 20.0) < 0.005  # p q / ((p+q)^2 (p+q+1))


@pytest.mark.parametrize("p,q", [(0.5, 0.5), (2.0, 5.0), (50.0, 80.0)])
def test_beta01_matches_inverse_cdf_oracle(p, q):
    n = 10**5
    mine = np.sort(sample_beta01(BetaParams(p, q), RngStream(18, int(p * 7 + q)), size=n))
    ref = np.sort(inverse_cdf_beta(p, q, np.random.default_rng(2024).uniform(size=n)))
    grid = np.concatenate([mine, ref])
    ks = np.max(np.abs(
        np.searchsorted(mine, grid, side="right") / n
        - np.searchsorted(ref, grid, side="right") / n
    ))
    assert ks < 0.02


def test_beta_pm1_orientation_and_support():
    rng = RngStream(19, 0)
    a = sample_beta_pm1(BetaParams(5.0, 5.0), rng, size=10**5)
    assert np.all((a > -1.0) & (a < 1.0))
    assert abs(a.mean()) < 0.01
    # mean is (q - p)/(p + q): the (1 - x) weight exponent pairs with p
    a = sample_beta_pm1(BetaParams(1.0, 3.0), rng, size=10**5)
    assert abs(a.mean() - 0.5) < 0.01


def test_beta_mean_pm1_values():
    assert beta_mean_pm1(BetaParams(3.0, 3.0)) == 0.0
    assert beta_mean_pm1(BetaParams(1.0, 3.0)) == 0.5
    assert beta_mean_pm1(BetaParams(2.0, 6.0)) == 0.5


def test_concentration_bound_values():
    # small delta: c -> 0 and the bound approaches its prefactor 4
    assert beta_concentration_bound(BetaParams(1.0, 1.0), 1e-9) == pytest.approx(4.0, abs=1e-6)
    assert beta_concentration_bound(BetaParams(500.0, 500.0), 0.3) == pytest.approx(
        0.1489221938014447, rel=1e-12
    )
    assert beta_concentration_bound(BetaParams(50.0, 80.0), 0.1) == pytest.approx(
        3.758838453739696, rel=1e-12
    )
    with pytest.raises(ParameterDomainError):
        beta_concentration_bound(BetaParams(1.0, 1.0), 0.0)


def test_concentration_exponent_strictly_negative():
    # bound < 4 for every delta > 0 iff the exponent constant is negative
    for delta in (1e-6, 1e-3, 0.1, 1.0, 10.0):
        assert beta_concentration_bound(BetaParams(1.0, 1.0), delta) < 4.0


@pytest.mark.parametrize("p,q", [(5.0, 5.0), (50.0, 80.0), (500.0, 500.0)])
def test_concentration_bound_holds_empirically(p, q):
    n = 10**5
    z = sample_beta01(BetaParams(p, q), RngStream(20, int(p + q)), size=n)
    dev = np.abs(z - p / (p + q))
    for delta in (0.1, 0.2, 0.3):
        freq = float(np.mean(dev > delta))
        se = math.sqrt(freq * (1.0 - freq) / n)
        assert freq <= beta_concentration_bound(BetaParams(p, q), delta) + 3.0 * se
