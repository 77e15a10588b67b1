#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "egocr/error.hpp"
#include "egocr/inference.hpp"
#include "egocr/normal.hpp"
#include "oracles.hpp"

using namespace egocr;

namespace {

struct Instance {
  std::vector<std::uint8_t> t;
  std::vector<double> rho;
  std::vector<double> y;
};

Instance random_instance(std::mt19937_64& rng, std::size_t n, double noise) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> e(0.0, 1.0);
  Instance x;
  for (std::size_t i = 0; i < n; ++i) {
    x.t.push_back(static_cast<std::uint8_t>(i < 2 ? i : rng() & 1));
    x.rho.push_back(u(rng));
    x.y.push_back(2.0 + 2.5 * x.t.back() + 5.0 * x.rho.back() + noise * e(rng));
  }
  return x;
}

}  // namespace

TEST(Normal, CdfAtZero) { EXPECT_EQ(normal_cdf(0.0), 0.5); }

TEST(Normal, QuantileKnownValue) { EXPECT_NEAR(normal_quantile(0.975), 1.9599640, 1e-6); }

TEST(Normal, QuantileAgainstSeriesOracle) {
  for (int k = 1; k <= 99; ++k) {
    const double p = k / 100.0;
    EXPECT_NEAR(normal_quantile(p), static_cast<double>(oracle::normal_quantile(p)), 1e-9) << p;
    EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-12);
  }
}

TEST(Normal, QuantileDomain) {
  EXPECT_THROW(normal_quantile(0.0), Error);
  EXPECT_THROW(normal_quantile(1.0), Error);
  EXPECT_THROW(normal_quantile(std::nan("")), Error);
}

TEST(Ols, MatchesNormalEquationOracle) {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    const auto x = random_instance(rng, 20, 1.0);
    const auto fit = fit_ols(x.t, x.rho, x.y);
    const auto o = oracle::normal_equations(x.t, x.rho, x.y);
    EXPECT_NEAR(fit.alpha, static_cast<double>(o.alpha), 1e-8);
    EXPECT_NEAR(fit.beta, static_cast<double>(o.beta), 1e-8);
    EXPECT_NEAR(fit.gamma, static_cast<double>(o.gamma), 1e-8);
  }
}

TEST(Ols, NoiselessRecovery) {
  std::mt19937_64 rng(3);
  const auto x = random_instance(rng, 50, 0.0);
  const auto fit = fit_ols(x.t, x.rho, x.y);
  EXPECT_NEAR(fit.alpha, 2.0, 1e-10);
  EXPECT_NEAR(fit.beta, 2.5, 1e-10);
  EXPECT_NEAR(fit.gamma, 5.0, 1e-10);
  EXPECT_NEAR(fit.sigma2, 0.0, 1e-18);
}

TEST(Ols, CollinearExposure) {
  const std::vector<std::uint8_t> t{0, 1, 0, 1, 1, 0};
  const std::vector<double> rho{0, 1, 0, 1, 1, 0};
  const std::vector<double> y{1, 2, 3, 4, 5, 6};
  try {
    fit_ols(t, rho, y);
    FAIL();
  } catch (const CollinearDesign& e) {
    EXPECT_NE(std::string(e.what()).find("collinear"), std::string::npos);
  }
}

TEST(Ols, SizeErrors) {
  const std::vector<std::uint8_t> t{0, 1, 0};
  const std::vector<double> rho{0.1, 0.5, 0.2};
  const std::vector<double> y{1, 2, 3};
  EXPECT_THROW(fit_ols(t, rho, y), Error);
  const std::vector<double> y2{1, 2};
  EXPECT_THROW(fit_ols(t, rho, y2), Error);
}

TEST(EffectInference, StandardErrors) {
  OlsFit fit;
  fit.sigma2 = 1.0;
  fit.n = 400;
  const auto r = effect_inference(fit, 1.0, 1.0, 400);
  EXPECT_NEAR(r.se_tau, 2.0 * std::sqrt(2.0) / 20.0, 1e-12);
  EXPECT_NEAR(r.se_gamma, 0.1, 1e-12);
  EXPECT_EQ(r.t_tau, 0.0);
  EXPECT_EQ(r.p_tau, 1.0);
  EXPECT_NEAR((r.ci_tau.high - r.ci_tau.low) / 2.0, 1.959964 * r.se_tau, 1e-5);
  EXPECT_FALSE(r.reject_tau());
}

TEST(EffectInference, TestsAndIntervals) {
  OlsFit fit;
  fit.alpha = 2;
  fit.beta = 1;
  fit.gamma = 0.5;
  fit.sigma2 = 4.0;
  fit.n = 100;
  const auto r = effect_inference(fit, 0.5, 0.25, 100, 0.1, 12);
  EXPECT_DOUBLE_EQ(r.tau_hat, 1.5);
  EXPECT_NEAR(r.se_gamma, 2 * 2 * std::sqrt(4.0) / 10, 1e-12);
  EXPECT_NEAR(r.z_crit, 1.6448536269514722, 1e-9);
  EXPECT_NEAR(r.p_gamma, 2 * (1 - normal_cdf(std::fabs(r.t_gamma))), 1e-12);
  EXPECT_LT(r.ci_gamma.low, r.gamma_hat);
  EXPECT_GT(r.ci_gamma.high, r.gamma_hat);
  EXPECT_EQ(r.clusters, 12u);
  EXPECT_THROW(effect_inference(fit, 0.0, 0.0, 100), Error);
}
