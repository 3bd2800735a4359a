import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochorder import (
    DensitySpec,
    GeneralizedGamma,
    NumericCDF,
    NumericError,
    ParameterError,
    Relation,
    convolve_weighted,
    crossing_count,
    dkw_epsilon,
    ecdf,
    quadrature_cdf,
    st_compare_empirical,
    st_compare_exact,
)

EXP1 = GeneralizedGamma(1, 1, 1)


class TestNumericCDF:
    def test_validation(self):
        with pytest.raises(ParameterError):
            NumericCDF(np.array([1.0, 1.0]), np.array([0.1, 0.2]))
        with pytest.raises(ParameterError):
            NumericCDF(np.array([1.0, 2.0]), np.array([0.5, 0.1]))

    def test_step_evaluation(self):
        f = ecdf([1.0, 2.0, 3.0])
        assert f.evaluate(2.0) == pytest.approx(2 / 3)
        assert f.evaluate(0.5) == 0.0
        assert f.evaluate(10.0) == 1.0

    def test_linear_evaluation(self):
        f = NumericCDF(np.array([0.0, 1.0]), np.array([0.0, 1.0]))
        assert f.evaluate(0.25) == pytest.approx(0.25)

    def test_csv_export(self):
        f = NumericCDF(np.array([0.0, 1.0]), np.array([0.0, 1.0]))
        buf = io.StringIO()
        f.to_csv(buf)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "x,F"
        assert len(lines) == 3


class TestEcdf:
    def test_single_sample(self):
        f = ecdf([5.0])
        assert f.evaluate(4.999) == 0.0
        assert f.evaluate(5.0) == 1.0

    def test_empty_rejected(self):
        with pytest.raises(ParameterError):
            ecdf([])

    def test_exponential_cdf_value(self):
        n = 100_000
        f = ecdf(EXP1.sample(n, seed=2))
        band = dkw_epsilon(n, 0.001)
        assert abs(f.evaluate(1.0) - (1 - math.exp(-1))) <= band


class TestCompareEmpirical:
    def test_identical_samples_inconclusive(self):
        x = EXP1.sample(5000, seed=1)
        v = st_compare_empirical(x, x)
        assert v.relation is Relation.INCONCLUSIVE
        assert v.max_pos_dev == 0.0 and v.max_neg_dev == 0.0

    def test_shifted_samples_dominate(self):
        x = EXP1.sample(100_000, seed=3)
        v = st_compare_empirical(x + 1.0, x)
        assert v.relation is Relation.A_DOMINATES

    def test_band_formula(self):
        assert dkw_epsilon(100_000, 0.01) == pytest.approx(
            math.sqrt(math.log(200.0) / 200_000.0)
        )
        with pytest.raises(ParameterError):
            dkw_epsilon(100, 2.0)

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=25, deadline=None)
    def test_swap_antisymmetry(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.exponential(1.0, size=400)
        y = rng.exponential(rng.uniform(0.5, 2.0), size=400)
        v = st_compare_empirical(x, y)
        w = st_compare_empirical(y, x)
        swapped = {
            Relation.A_DOMINATES: Relation.B_DOMINATES,
            Relation.B_DOMINATES: Relation.A_DOMINATES,
        }
        assert w.relation is swapped.get(v.relation, v.relation)
        assert w.max_pos_dev == pytest.approx(v.max_neg_dev)


class TestConvolveWeighted:
    def test_single_component_identity(self):
        f = convolve_weighted([EXP1], [1.0])
        xs = np.linspace(0.1, 8.0, 40)
        np.testing.assert_allclose(f.evaluate(xs), 1 - np.exp(-xs), atol=2e-7)

    def test_two_exponentials_gamma(self):
        f = convolve_weighted([EXP1, EXP1], [1.0, 1.0])
        xs = np.linspace(0.2, 12.0, 50)
        gamma2 = 1 - np.exp(-xs) * (1 + xs)
        np.testing.assert_allclose(f.evaluate(xs), gamma2, atol=1e-6)

    def test_hypoexponential_closed_form(self):
        # weights (4, 1) on iid exponential(1): rates 1/4 and 1
        f = convolve_weighted([EXP1, EXP1], [4.0, 1.0])
        xs = np.linspace(0.5, 30.0, 60)
        closed = 1 - (4 / 3) * np.exp(-xs / 4) + (1 / 3) * np.exp(-xs)
        np.testing.assert_allclose(f.evaluate(xs), closed, atol=1e-6)

    def test_zero_weights_dropped(self):
        f = convolve_weighted([EXP1, EXP1], [1.0, 0.0])
        assert f.evaluate(1.0) == pytest.approx(1 - math.exp(-1), abs=1e-6)

    def test_weight_validation(self):
        with pytest.raises(ParameterError):
            convolve_weighted([EXP1], [-1.0])
        with pytest.raises(ParameterError):
            convolve_weighted([EXP1, EXP1], [0.0, 0.0])
        with pytest.raises(ParameterError):
            convolve_weighted([EXP1], [1.0, 2.0])

    def test_mean_sanity(self):
        d = GeneralizedGamma(2, 1.5, 0.7)
        w = np.array([1.5, 0.5])
        f = convolve_weighted([d, d], w)
        # E[sum] from the tabulated CDF by integrating the survival function
        mean = np.trapezoid(1.0 - f.values, f.grid)
        assert mean == pytest.approx(w.sum() * d.mean(), rel=1e-3)

    def test_nonconvergence_raises(self):
        with pytest.raises(NumericError):
            convolve_weighted([EXP1, EXP1], [1.0, 1.0], initial_grid=8,
                              max_levels=1, refine_tol=1e-12)

    def test_densityspec_without_cdf(self):
        spec = DensitySpec(
            pdf=lambda x: math.exp(-x),
            support=(0.0, 40.0),
            label="exponential",
        )
        f = convolve_weighted([spec], [1.0])
        assert f.evaluate(1.0) == pytest.approx(1 - math.exp(-1), abs=1e-5)


class TestCompareExact:
    def test_identical_inconclusive(self):
        f = convolve_weighted([EXP1], [1.0])
        v = st_compare_exact(f, f)
        assert v.relation is Relation.INCONCLUSIVE
        assert v.crossing_count == 0

    def test_rate_ordering(self):
        fa = convolve_weighted([GeneralizedGamma(1, 1, 1)], [1.0])  # mean 1
        fb = convolve_weighted([GeneralizedGamma(1, 1, 2)], [1.0])  # mean 1/2
        v = st_compare_exact(fa, fb)
        assert v.relation is Relation.A_DOMINATES
        assert v.crossing_count == 0

    def test_unique_crossing_instance(self):
        d = GeneralizedGamma(1, 1, 1)
        fa = convolve_weighted([d] * 3, [2.0, 1.0, 1.0])
        fb = convolve_weighted([d] * 3, [1.5, 1.5, 1.0])
        v = st_compare_exact(fa, fb)
        assert v.relation is Relation.CROSSING
        assert v.crossing_count == 1
        assert crossing_count(fa, fb) == 1

    def test_shifted_pair_has_no_crossing(self):
        f = NumericCDF(np.array([0.0, 1.0, 2.0]), np.array([0.0, 0.5, 1.0]))
        g = NumericCDF(np.array([1.0, 2.0, 3.0]), np.array([0.0, 0.5, 1.0]))
        assert crossing_count(g, f) == 0

    def test_oracle_vs_empirical_margin(self):
        """An exact verdict with a wide margin is never contradicted by the
        sample test."""
        fa = convolve_weighted([EXP1, EXP1], [4.0, 1.0])
        fb = convolve_weighted([EXP1, EXP1], [2.0, 2.0])
        exact = st_compare_exact(fa, fb)
        assert exact.relation is Relation.A_DOMINATES
        n = 50_000
        sa = 4 * EXP1.sample(n, 1) + EXP1.sample(n, 2)
        sb = 2 * EXP1.sample(n, 3) + 2 * EXP1.sample(n, 4)
        emp = st_compare_empirical(sa, sb)
        assert emp.relation in (Relation.A_DOMINATES, Relation.INCONCLUSIVE)


class TestQuadratureCDF:
    def test_matches_closed_form(self):
        pts = np.linspace(0.1, 6.0, 30)
        f = quadrature_cdf(EXP1, pts)
        np.testing.assert_allclose(f.values, 1 - np.exp(-pts), atol=1e-8)
