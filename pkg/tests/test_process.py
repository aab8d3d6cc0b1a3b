import numpy as np
import pytest

from conftest import batch_se, g_test_two_sample

from binarcop.copulas import CopulaSpec, InnovationModel, innovation_covariance
from binarcop.distributions import MarginalSpec
from binarcop.process import (
    BinarModel,
    SeriesPair,
    cls_asymptotic_cov_general,
    cls_asymptotic_cov_poisson,
    simulate,
    theoretical_moments,
    thin,
)

P1 = MarginalSpec("poisson", 1.0)
P2 = MarginalSpec("poisson", 2.0)

FGM_MODEL = BinarModel(0.6, 0.4, InnovationModel(P1, P2, CopulaSpec("fgm", -0.5)))


class TestBinarModel:
    def test_alpha_domain(self):
        inn = InnovationModel(P1, P2, CopulaSpec("product"))
        with pytest.raises(ValueError):
            BinarModel(1.0, 0.4, inn)
        with pytest.raises(ValueError):
            BinarModel(0.5, -0.1, inn)
        BinarModel(0.0, 0.0, inn)  # boundary alpha = 0 is a valid i.i.d. model


class TestSeriesPair:
    def test_validation(self):
        with pytest.raises(ValueError):
            SeriesPair(np.array([1, 2, 3]), np.array([1, 2]))
        with pytest.raises(ValueError):
            SeriesPair(np.array([1]), np.array([1]))
        with pytest.raises(ValueError):
            SeriesPair(np.array([1, -2, 3]), np.array([1, 2, 3]))

    def test_coerces_to_int64(self):
        pair = SeriesPair([1, 2, 3], [4, 5, 6])
        assert pair.x1.dtype == np.int64
        assert len(pair) == 3


class TestThin:
    def test_degenerate_cases(self):
        rng = np.random.default_rng(0)
        assert thin(0.5, 0, rng) == 0
        assert thin(0.0, 10, rng) == 0

    def test_range(self):
        rng = np.random.default_rng(1)
        draws = [thin(0.7, 5, rng) for _ in range(1000)]
        assert min(draws) >= 0 and max(draws) <= 5

    def test_binomial_mean_and_variance(self):
        rng = np.random.default_rng(2)
        n_rep, alpha, x = 100_000, 0.6, 10
        draws = np.array([thin(alpha, x, rng) for _ in range(n_rep)])
        se_mean = np.sqrt(x * alpha * (1 - alpha) / n_rep)
        assert abs(draws.mean() - alpha * x) < 3 * se_mean
        assert abs(draws.var(ddof=1) - x * alpha * (1 - alpha)) < 0.1

    def test_composition_in_distribution(self):
        # alpha1 o (alpha2 o X) has the same law as (alpha1*alpha2) o X
        rng = np.random.default_rng(3)
        n_rep, x = 100_000, 12
        a = np.array([thin(0.7, thin(0.8, x, rng), rng) for _ in range(n_rep)])
        b = np.array([thin(0.56, x, rng) for _ in range(n_rep)])
        counts_a = np.bincount(a, minlength=x + 1)
        counts_b = np.bincount(b, minlength=x + 1)
        assert g_test_two_sample(counts_a, counts_b) > 0.001


class TestSimulate:
    def test_shape_and_type(self):
        pair = simulate(FGM_MODEL, 100, seed=0)
        assert len(pair) == 100
        assert (pair.x1 >= 0).all() and (pair.x2 >= 0).all()

    def test_deterministic(self):
        a = simulate(FGM_MODEL, 500, seed=123)
        b = simulate(FGM_MODEL, 500, seed=123)
        np.testing.assert_array_equal(a.x1, b.x1)
        np.testing.assert_array_equal(a.x2, b.x2)

    def test_seed_changes_path(self):
        a = simulate(FGM_MODEL, 500, seed=1)
        b = simulate(FGM_MODEL, 500, seed=2)
        assert (a.x1 != b.x1).any()

    def test_accepts_generator_and_seed_sequence(self):
        a = simulate(FGM_MODEL, 50, seed=np.random.default_rng([7, 3]))
        b = simulate(FGM_MODEL, 50, seed=[7, 3])
        np.testing.assert_array_equal(a.x1, b.x1)

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            simulate(FGM_MODEL, 1)

    def test_zero_alpha_gives_iid_innovations(self):
        model = BinarModel(0.0, 0.0, InnovationModel(P1, P2, CopulaSpec("product")))
        pair = simulate(model, 100_000, seed=9)
        for x, lam in ((pair.x1, 1.0), (pair.x2, 2.0)):
            se = x.std(ddof=1) / np.sqrt(len(x))
            assert abs(x.mean() - lam) < 3 * se
            assert abs(x.var(ddof=1) - lam) < 0.05
        # independence: cross-covariance near zero
        prod = (pair.x1 - pair.x1.mean()) * (pair.x2 - pair.x2.mean())
        assert abs(prod.mean()) < 3 * batch_se(prod)

    def test_stationary_mean_matches_theory(self):
        pair = simulate(FGM_MODEL, 100_000, seed=11)
        mom = theoretical_moments(FGM_MODEL)
        assert abs(pair.x1.mean() - mom.mean1) < 3 * batch_se(pair.x1)
        assert abs(pair.x2.mean() - mom.mean2) < 3 * batch_se(pair.x2)


class TestTheoreticalMoments:
    def test_poisson_marginal_moments(self):
        mom = theoretical_moments(FGM_MODEL)
        assert mom.mean1 == pytest.approx(1.0 / 0.4)
        assert mom.mean2 == pytest.approx(2.0 / 0.6)
        # Poisson innovations make the stationary law equidispersed
        assert mom.var1 == pytest.approx((1.0 + 0.6 * 1.0) / (1 - 0.36))
        assert mom.var2 == pytest.approx((2.0 + 0.4 * 2.0) / (1 - 0.16))

    def test_autocorr_geometric_decay(self):
        mom = theoretical_moments(FGM_MODEL)
        assert mom.autocorr(1, 3) == pytest.approx(0.6**3)
        assert mom.autocorr(2, 2) == pytest.approx(0.16)

    def test_product_copula_uncorrelated(self):
        model = BinarModel(0.6, 0.4, InnovationModel(P1, P2, CopulaSpec("product")))
        mom = theoretical_moments(model)
        assert mom.cross_cov == pytest.approx(0.0, abs=1e-7)

    def test_cross_cov_scaling(self):
        # stationary cross-covariance is gamma / (1 - alpha1*alpha2)
        gamma = innovation_covariance(FGM_MODEL.innovations)
        mom = theoretical_moments(FGM_MODEL)
        assert mom.cross_cov == pytest.approx(gamma / (1 - 0.6 * 0.4), rel=1e-12)
        assert mom.cross_corr == pytest.approx(
            mom.cross_cov / np.sqrt(mom.var1 * mom.var2), rel=1e-12
        )


class TestClsAsymptoticCov:
    def test_poisson_reference_point(self):
        b = cls_asymptotic_cov_poisson(0.6, 1.0)
        np.testing.assert_allclose(b, [[0.736, -1.6], [-1.6, 5.0]], atol=1e-12)

    def test_poisson_iid_limit(self):
        # alpha = 0: slope variance 1, intercept variance lam + lam^2
        b = cls_asymptotic_cov_poisson(0.0, 2.0)
        np.testing.assert_allclose(b, [[1.0, -2.0], [-2.0, 6.0]], atol=1e-12)

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            cls_asymptotic_cov_poisson(1.0, 1.0)
        with pytest.raises(ValueError):
            cls_asymptotic_cov_poisson(0.5, 0.0)

    @pytest.mark.parametrize("alpha,lam", [(0.6, 1.0), (0.3, 2.5), (0.0, 1.0), (0.85, 0.4)])
    def test_general_reduces_to_poisson(self, alpha, lam):
        got = cls_asymptotic_cov_general(alpha, MarginalSpec("poisson", lam))
        want = cls_asymptotic_cov_poisson(alpha, lam)
        np.testing.assert_allclose(got, want, atol=1e-8)

    def test_general_negbin_iid_limit(self):
        # alpha = 0 reduces to OLS on a constant: B = sigma2 * M^{-1}
        m = MarginalSpec("negbin", 1.0, 2.0)
        got = cls_asymptotic_cov_general(0.0, m)
        mom = np.array([[2.0 + 1.0, 1.0], [1.0, 1.0]])  # [[E X^2, E X], [E X, 1]]
        want = 2.0 * np.linalg.inv(mom)
        np.testing.assert_allclose(got, want, atol=1e-10)

    def test_symmetric_positive_definite(self):
        b = cls_asymptotic_cov_general(0.5, MarginalSpec("negbin", 2.0, 9.0))
        np.testing.assert_allclose(b, b.T, atol=1e-12)
        assert np.linalg.eigvalsh(b).min() > 0
