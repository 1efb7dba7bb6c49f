import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from riverevt import dist
from riverevt.dist import cdf, empirical, empirical_cdf, empirical_quantile, pdf, quantile, survival

positive = st.floats(0.3, 5.0)
probs = st.floats(1e-9, 1 - 1e-9)


@st.composite
def models(draw):
    fam = draw(st.sampled_from(dist.FAMILIES))
    if fam == dist.EXPONENTIAL:
        return dist.exponential(draw(positive))
    if fam == dist.WEIBULL:
        return dist.weibull(draw(positive), draw(st.floats(0.8, 4.0)))
    if fam == dist.GUMBEL:
        return dist.gumbel(draw(st.floats(-5, 5)), draw(positive))
    return dist.frechet(draw(st.floats(0.8, 4.0)), draw(st.floats(-5, 5)), draw(positive))


def support(model):
    if model.family in (dist.EXPONENTIAL, dist.WEIBULL):
        return 0.0, np.inf
    if model.family == dist.FRECHET:
        return model.loc, np.inf
    return -np.inf, np.inf


class TestConstruction:
    @pytest.mark.parametrize("kwargs", [
        dict(family="weibull", rate=0.0), dict(family="weibull", shape=-1.0),
        dict(family="gumbel", scale=0.0), dict(family="exponential", rate=float("nan")),
    ])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(ValueError):
            dist.DistributionModel(**kwargs)

    def test_alias(self):
        assert dist.DistributionModel("Frechet-Pareto").family == dist.FRECHET
        assert dist.canonical_family("w") == dist.WEIBULL

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            dist.DistributionModel("lognormal")


class TestCdf:
    def test_weibull_reduces_to_exponential(self):
        assert cdf(dist.weibull(1, 1), 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-15)
        assert cdf(dist.weibull(1, 1), 1.0) == pytest.approx(0.632121, abs=1e-6)

    def test_weibull_published_parameters(self):
        x = 3.4
        expected = 1 - math.exp(-1.135 * x ** 1.410)
        assert cdf(dist.weibull(1.135, 1.410), x) == pytest.approx(expected, rel=1e-14)
        # the quoted 0.998295 is rounded from 1 - 1.706e-3
        assert cdf(dist.weibull(1.135, 1.410), x) == pytest.approx(0.998295, abs=2e-6)

    @given(models())
    def test_limits(self, m):
        assert cdf(m, -1e300) == 0.0
        assert cdf(m, 1e300) == 1.0

    def test_non_positive_maps_to_zero(self):
        assert cdf(dist.weibull(2, 2), -1.0) == 0.0
        assert cdf(dist.exponential(2), 0.0) == 0.0

    def test_vectorized(self):
        out = cdf(dist.exponential(1.0), np.array([0.0, 1.0]))
        assert isinstance(out, np.ndarray) and out.shape == (2,)

    @settings(max_examples=50)
    @given(models(), st.lists(st.floats(-20, 20), min_size=2, max_size=20))
    def test_monotone(self, m, xs):
        xs = np.sort(xs)
        assert np.all(np.diff(cdf(m, xs)) >= 0)


class TestPdf:
    def test_weibull_shape_two(self):
        assert pdf(dist.weibull(1, 2), 1.0) == pytest.approx(2 * math.exp(-1), rel=1e-14)
        assert pdf(dist.weibull(1, 2), 1.0) == pytest.approx(0.735759, abs=1e-6)

    @given(positive, st.floats(0, 10))
    def test_weibull_shape_one_is_exponential(self, lam, x):
        assert pdf(dist.weibull(lam, 1), x) == pytest.approx(lam * math.exp(-lam * x), rel=1e-12)

    def test_zero_for_shape_above_one(self):
        assert pdf(dist.weibull(1.3, 1.5), 0.0) == 0.0

    @settings(max_examples=40, deadline=None)
    @given(models())
    def test_integrates_to_one(self, m):
        lo, hi = support(m)
        total = 0.0
        # split at the median so quad sees the bulk on both sides
        med = quantile(m, 0.5)
        for a, b in ((lo, med), (med, hi)):
            total += quad(lambda x: pdf(m, x), a, b, limit=200, epsabs=1e-12, epsrel=1e-12)[0]
        assert total == pytest.approx(1.0, abs=1e-6)

    @settings(max_examples=50)
    @given(models(), st.floats(0.02, 0.98))
    def test_matches_finite_difference(self, m, p):
        x = quantile(m, p)
        # step relative to the distance from the support edge / location
        h = 1e-5 * max(abs(x - m.loc), 1e-4 * m.scale)
        fd = (cdf(m, x + h) - cdf(m, x - h)) / (2 * h)
        assert pdf(m, x) == pytest.approx(fd, rel=1e-6)

    @given(models(), st.floats(-20, 20))
    def test_nonnegative(self, m, x):
        assert pdf(m, x) >= 0


class TestQuantile:
    def test_exponential_median(self):
        assert quantile(dist.exponential(2), 0.5) == pytest.approx(math.log(2) / 2, rel=1e-15)
        assert quantile(dist.exponential(2), 0.5) == pytest.approx(0.346574, abs=1e-6)

    def test_standard_exponential_unit(self):
        assert quantile(dist.exponential(1), 1 - 1 / math.e) == pytest.approx(1.0, rel=1e-14)

    def test_weibull_inverse(self):
        m = dist.weibull(1.135, 1.410)
        p = cdf(m, 3.4)
        assert quantile(m, p) == pytest.approx(3.4, rel=1e-12)
        assert quantile(m, 0.998295) == pytest.approx(3.4, abs=1e-3)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
    def test_outside_open_interval(self, p):
        with pytest.raises(ValueError):
            quantile(dist.exponential(1), p)

    @settings(max_examples=200)
    @given(models(), probs)
    def test_round_trip(self, m, p):
        assert abs(cdf(m, quantile(m, p)) - p) < 1e-12

    @settings(max_examples=50)
    @given(models(), st.lists(probs, min_size=2, max_size=20))
    def test_monotone(self, m, ps):
        assert np.all(np.diff(quantile(m, np.sort(ps))) >= 0)

    @given(positive, probs)
    def test_exponential_scaling(self, lam, p):
        assert quantile(dist.exponential(lam), p) == pytest.approx(
            quantile(dist.exponential(1), p) / lam, rel=1e-14)

    @given(positive, st.floats(0, 30))
    def test_weibull_one_agrees_with_exponential(self, lam, x):
        w, e = dist.weibull(lam, 1.0), dist.exponential(lam)
        assert abs(cdf(w, x) - cdf(e, x)) <= 1e-12
        assert abs(pdf(w, x) - pdf(e, x)) <= 1e-12 * max(1.0, pdf(e, x))
        assert abs(survival(w, x) - survival(e, x)) <= 1e-12 * max(survival(e, x), 1e-300)


def mp_survival(m, x):
    mpmath.mp.dps = 50
    x = mpmath.mpf(x)
    if m.family == dist.WEIBULL:
        return mpmath.exp(-mpmath.mpf(m.rate) * x ** mpmath.mpf(m.shape))
    if m.family == dist.EXPONENTIAL:
        return mpmath.exp(-mpmath.mpf(m.rate) * x)
    if m.family == dist.GUMBEL:
        return 1 - mpmath.exp(-mpmath.exp(-(x - m.loc) / mpmath.mpf(m.scale)))
    z = (x - m.loc) / mpmath.mpf(m.scale)
    return 1 - mpmath.exp(-z ** -mpmath.mpf(m.shape))


class TestSurvival:
    def test_table_value_after_drop(self):
        s = survival(dist.weibull(1.280, 1.494), 5.322)
        assert s == pytest.approx(1.75e-7, rel=0.01)

    def test_support_edge(self):
        assert survival(dist.weibull(1.135, 1.41), 0.0) == 1.0

    def test_deep_tail_does_not_underflow(self):
        m = dist.weibull(1.135, 1.410)
        s = survival(m, 8.4)
        assert s > 0
        assert s == pytest.approx(1.2e-10, rel=0.05)
        # further out 1 - cdf collapses to 0 while survival keeps its digits
        assert 1 - cdf(m, 14.0) == 0.0
        assert survival(m, 14.0) == pytest.approx(float(mp_survival(m, 14.0)), rel=1e-12)

    @pytest.mark.parametrize("model", [dist.weibull(1.135, 1.410), dist.weibull(1.280, 1.494),
                                       dist.exponential(0.7), dist.gumbel(0.5, 1.3),
                                       dist.frechet(2.0, 0.0, 1.0)])
    @pytest.mark.parametrize("target", [1e-3, 1e-8, 1e-12, 1e-16, 1e-19])
    def test_three_digits_down_to_1e_minus_19(self, model, target):
        x = quantile(model, 0.5) if target > 0.5 else None
        # locate x with survival == target from the exact inverse
        mpmath.mp.dps = 50
        if model.family == dist.WEIBULL:
            x = float((-mpmath.log(target) / model.rate) ** (1 / mpmath.mpf(model.shape)))
        elif model.family == dist.EXPONENTIAL:
            x = float(-mpmath.log(target) / model.rate)
        elif model.family == dist.GUMBEL:
            x = float(model.loc - model.scale * mpmath.log(-mpmath.log(1 - mpmath.mpf(target))))
        else:
            x = float(model.loc + model.scale * (-mpmath.log(1 - mpmath.mpf(target))) ** (-1 / mpmath.mpf(model.shape)))
        exact = mp_survival(model, x)
        assert abs(survival(model, x) / float(exact) - 1) < 5e-4

    @given(models(), st.floats(-20, 20))
    def test_complements_cdf(self, m, x):
        assert survival(m, x) + cdf(m, x) == pytest.approx(1.0, abs=1e-15)


class TestEmpirical:
    def test_cdf_basic(self):
        e = empirical([1, 2, 3, 4])
        assert empirical_cdf(e, 2.5) == 0.5
        assert empirical_cdf(e, 0.0) == 0.0
        assert empirical_cdf(e, 4.0) == 1.0
        assert empirical_cdf(e, 99.0) == 1.0

    def test_cdf_ties(self):
        assert empirical_cdf(empirical([1, 1, 2]), 1.0) == pytest.approx(2 / 3)

    def test_quantile_basic(self):
        e = empirical([1, 2, 3, 4])
        assert empirical_quantile(e, 0.5) == 3
        assert empirical_quantile(e, 0.0) == 1

    def test_quantile_single_point(self):
        e = empirical([5.0])
        for p in (0.0, 0.3, 0.999):
            assert empirical_quantile(e, p) == 5.0

    def test_quantile_rejects_one(self):
        with pytest.raises(ValueError):
            empirical_quantile(empirical([1.0]), 1.0)

    def test_sorted_on_construction(self):
        assert list(empirical([3, 1, 2]).sorted_values) == [1, 2, 3]

    @settings(max_examples=200)
    @given(st.lists(st.integers(0, 6), min_size=1, max_size=12), st.floats(0, 1, exclude_max=True))
    def test_duality_by_scan(self, values, p):
        e = empirical(values)
        qv = empirical_quantile(e, p)
        assert empirical_cdf(e, qv) > p
        # least such value among the sample points
        assert all(empirical_cdf(e, v) <= p for v in e.sorted_values if v < qv)
