import numpy as np
import pytest
from scipy import stats

from censored_sizer import Family, SyntheticSpec, generate
from censored_sizer.synthetic import lifetime_quantile


def test_uncensored_generation():
    s = generate(SyntheticSpec(Family("weibull", shape=3.0), n=50, seed=1))
    assert s.n == 50 and s.n_events == 50
    assert np.all(s.times > 0)


def test_same_seed_same_sample():
    spec = SyntheticSpec(Family("bathtub"), n=100, seed=42, censor_rate=0.5)
    a, b = generate(spec), generate(spec)
    np.testing.assert_array_equal(a.times, b.times)
    np.testing.assert_array_equal(a.events, b.events)
    c = generate(SyntheticSpec(Family("bathtub"), n=100, seed=43, censor_rate=0.5))
    assert not np.array_equal(a.times, c.times)


def test_censoring_definition():
    spec = SyntheticSpec(Family("exponential", rate=2.0), n=40, seed=3, censor_rate=1.0)
    rng = np.random.Generator(np.random.PCG64(3))
    u_t = rng.random(40)
    u_c = rng.random(40)
    t = -np.log1p(-u_t) / 2.0
    c = -np.log1p(-u_c) / 1.0
    s = generate(spec)
    np.testing.assert_array_equal(s.times, np.minimum(t, c))
    np.testing.assert_array_equal(s.events, (t <= c).astype(int))


def test_exponential_symmetry_event_fraction():
    s = generate(SyntheticSpec(Family("exponential", rate=1.0), n=100_000, seed=9, censor_rate=1.0))
    assert abs(s.n_events / s.n - 0.5) <= 0.01


@pytest.mark.parametrize(
    "family, dist",
    [
        (Family("exponential", rate=2.0), stats.expon(scale=0.5)),
        (Family("weibull", shape=3.0, scale=1.5), stats.weibull_min(3.0, scale=1.5)),
        (Family("normal", mean=1.0, sd=0.5), stats.truncnorm(-2.0, np.inf, loc=1.0, scale=0.5)),
    ],
)
def test_inverse_cdf_matches_scipy(family, dist):
    u = np.linspace(0.01, 0.99, 25)
    np.testing.assert_allclose(lifetime_quantile(family, u), dist.ppf(u), rtol=1e-10)


def test_generated_distribution_ks():
    s = generate(SyntheticSpec(Family("weibull", shape=2.0, scale=1.0), n=5000, seed=4))
    assert stats.kstest(s.times, stats.weibull_min(2.0).cdf).pvalue > 0.001


def test_bathtub_is_mixture():
    s = generate(SyntheticSpec(Family("bathtub"), n=4000, seed=2))
    # early-failure component puts a visible fraction of mass near zero
    assert 0.1 < np.mean(s.times < 0.1) < 0.3
    assert np.all(s.times > 0)


def test_spec_validation():
    with pytest.raises(ValueError):
        Family("gamma")
    with pytest.raises(ValueError):
        Family("weibull", shape=-1.0)
    with pytest.raises(ValueError):
        SyntheticSpec(n=1)
    with pytest.raises(ValueError):
        SyntheticSpec(censor_rate=0.0)
