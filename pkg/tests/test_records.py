"""Record-value densities: joint form, closed/series marginals, sampling."""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from weibull_r import (
    CancellationError,
    DomainError,
    Exponential,
    Lomax,
    ParameterError,
    RandomSource,
    RecordQuery,
    WeibullRDist,
    joint_record_pdf,
    record_marginal_pdf_closed,
    record_marginal_pdf_series,
    sample_records,
)
from helpers import ks_statistic, rel_err

WLD112 = WeibullRDist(2.0, 1.0, Lomax(1.0, 1.0))
EXP1 = WeibullRDist(1.0, 1.0, Exponential(1.0))


class TestRecordQuery:
    def test_validation(self):
        with pytest.raises(ParameterError):
            RecordQuery(0, 2)
        with pytest.raises(ParameterError):
            RecordQuery(3, 3)
        with pytest.raises(ParameterError):
            RecordQuery(1.5, 3)


class TestJoint:
    def test_zero_when_unordered(self):
        q = RecordQuery(1, 2)
        assert joint_record_pdf(WLD112, q, 2.0, 1.0) == 0.0
        assert joint_record_pdf(WLD112, q, 1.0, 1.0) == 0.0

    def test_first_two_records_collapse(self):
        # m=1, n=2: f(x, y) = f(x) f(y) / (1 - F(x))
        q = RecordQuery(1, 2)
        for x, y in [(0.2, 0.5), (0.5, 1.0), (1.0, 1.1), (0.1, 4.0), (2.0, 9.0)]:
            want = WLD112.pdf(x) * WLD112.pdf(y) / WLD112.survival(x)
            assert joint_record_pdf(WLD112, q, x, y) == pytest.approx(want, rel=1e-12)

    def test_normalizes(self):
        q = RecordQuery(1, 2)
        val, _ = integrate.dblquad(
            lambda y, x: joint_record_pdf(EXP1, q, x, y),
            0.0, np.inf, lambda x: x, np.inf,
        )
        assert abs(val - 1.0) <= 1e-4

    def test_out_of_support(self):
        with pytest.raises(DomainError):
            joint_record_pdf(WLD112, RecordQuery(1, 2), -1.0, 2.0)


class TestClosedMarginal:
    def test_m1_is_pdf(self):
        xs = np.linspace(0.05, 8.0, 50)
        np.testing.assert_allclose(
            record_marginal_pdf_closed(WLD112, 1, xs), WLD112.pdf(xs), rtol=1e-14)

    def test_normalizes(self):
        val, _ = integrate.quad(
            lambda x: record_marginal_pdf_closed(WLD112, 3, x), 0.0, np.inf, limit=200)
        assert abs(val - 1.0) <= 1e-8

    def test_gamma_reduction(self):
        # Exponential(1), c=1, gamma=1: W(x) = x, so the m-th record value is
        # Gamma(m, 1); check against the closed gamma density
        m = 4
        for x in (1.0, 3.0, 6.0):
            want = x ** (m - 1) * math.exp(-x) / math.factorial(m - 1)
            got = record_marginal_pdf_closed(EXP1, m, x)
            assert got == pytest.approx(want, rel=1e-12)

    def test_index_validation(self):
        with pytest.raises(ParameterError):
            record_marginal_pdf_closed(WLD112, 0, 1.0)


class TestSeriesMarginal:
    def test_spec_point(self):
        q = RecordQuery(2, 4)
        got = record_marginal_pdf_series(WLD112, q, 1.0)
        want = record_marginal_pdf_closed(WLD112, 2, 1.0)
        assert got == pytest.approx(want, rel=1e-9)

    def test_single_term_collapse(self):
        # n = m+1 has one term: Gamma(1, w) = e^-w
        q = RecordQuery(3, 4)
        xs = np.linspace(0.1, 5.0, 20)
        got = record_marginal_pdf_series(WLD112, q, xs)
        want = record_marginal_pdf_closed(WLD112, 3, xs)
        assert rel_err(got, want, floor=1e-300) <= 1e-12

    @pytest.mark.parametrize("d", [WLD112, EXP1], ids=["wld", "exp"])
    @pytest.mark.parametrize("m,n", [(1, 2), (2, 4), (3, 7), (5, 12)])
    def test_telescopes_to_closed_form(self, d, m, n):
        q = RecordQuery(m, n)
        xs = d.quantile(np.linspace(0.04, 0.96, 20))
        got = record_marginal_pdf_series(d, q, xs)
        want = record_marginal_pdf_closed(d, m, xs)
        assert rel_err(got, want, floor=1e-300) <= 1e-9

    def test_large_index_stress(self):
        q = RecordQuery(5, 12)
        xs = EXP1.quantile(np.linspace(0.05, 0.95, 15))
        try:
            got = record_marginal_pdf_series(EXP1, q, xs)
        except CancellationError:
            return  # never silently wrong
        want = record_marginal_pdf_closed(EXP1, 5, xs)
        assert rel_err(got, want, floor=1e-300) <= 1e-6

    def test_cancellation_guard_trips(self):
        # W(x) = 200 makes the alternating terms ~e^200 times the result
        x = 200.0
        with pytest.raises(CancellationError, match="closed"):
            record_marginal_pdf_series(EXP1, RecordQuery(2, 13), x)


class TestSampling:
    def test_m1_matches_parent(self):
        n = 100_000
        x = sample_records(WLD112, 1, n, RandomSource(21))
        assert ks_statistic(x, WLD112.cdf) <= 1.95 / math.sqrt(n)

    def test_gamma_mean(self):
        n = 50_000
        x = sample_records(EXP1, 3, n, RandomSource(22))
        se = math.sqrt(3.0 / n)
        assert abs(float(np.mean(x)) - 3.0) <= 3.0 * se

    def test_determinism(self):
        a = sample_records(WLD112, 2, 50, RandomSource(4))
        b = sample_records(WLD112, 2, 50, RandomSource(4))
        np.testing.assert_array_equal(a, b)

    def test_empty(self):
        assert sample_records(WLD112, 2, 0, RandomSource(4)).shape == (0,)


def simulate_stream_records(dist, m, n_paths, seed):
    """Run i.i.d. streams and extract the m-th running-maximum record of each.

    Simulated in uniform space (records commute with the quantile map) and
    transformed once at the end.
    """
    rng = np.random.default_rng(seed)
    out = np.empty(n_paths)
    for i in range(n_paths):
        u = rng.random()
        count = 1
        while count < m:
            v = rng.random()
            if v > u:
                u = v
                count += 1
        out[i] = u
    return dist.quantile(out)


class TestStreamSimulation:
    def test_chisquare_against_closed_marginal(self):
        m, n_paths = 2, 10_000
        sample = simulate_stream_records(WLD112, m, n_paths, seed=99)
        edges = np.quantile(sample, np.linspace(0.0, 1.0, 21))
        edges[0], edges[-1] = 0.0, np.inf
        counts, _ = np.histogram(sample, bins=edges)
        # model cdf of the m-th record: P(Gamma(m,1) <= W(x))
        w = np.array([WLD112.cumulative_hazard(min(e, 1e300)) for e in edges])
        cdf = stats.gamma(a=m).cdf(w)
        cdf[0], cdf[-1] = 0.0, 1.0
        probs = np.diff(cdf)
        chi2 = float(np.sum((counts - n_paths * probs) ** 2 / (n_paths * probs)))
        pval = float(stats.chi2(df=len(counts) - 1).sf(chi2))
        assert pval > 0.01
