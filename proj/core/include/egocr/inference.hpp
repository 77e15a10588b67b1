#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace egocr {

struct OlsFit {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  /// Residual sum of squares over n - 3.
  double sigma2 = 0.0;
  std::size_t n = 0;
};

/// Least squares of y on [1, treatment, rho] through the 3x3 normal equations.
/// Throws CollinearDesign when the Gram matrix's condition number exceeds
/// 1e12, and Error when lengths differ or n <= 3.
OlsFit fit_ols(std::span<const std::uint8_t> treatment, std::span<const double> rho,
               std::span<const double> y);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct EstimationResult {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double gamma_hat = 0.0;
  double tau_hat = 0.0;
  double sigma2_eps_hat = 0.0;
  double se_tau = 0.0;
  double se_gamma = 0.0;
  Interval ci_tau;
  Interval ci_gamma;
  double t_tau = 0.0;
  double t_gamma = 0.0;
  double p_tau = 1.0;
  double p_gamma = 1.0;
  double level = 0.05;
  /// Upper level/2 standard normal quantile.
  double z_crit = 0.0;
  std::size_t n = 0;
  std::size_t clusters = 0;
  double r_bar = 0.0;
  double b = 0.0;

  bool reject_tau() const noexcept { return t_tau > z_crit || t_tau < -z_crit; }
  bool reject_gamma() const noexcept { return t_gamma > z_crit || t_gamma < -z_crit; }
};

/// Asymptotic standard errors
///   se_tau   = 2 sigma sqrt(r_bar^2 / b + 1) / sqrt(n),
///   se_gamma = 2 sigma sqrt(1 / b) / sqrt(n),
/// normal-theory intervals at level 1 - `level`, z statistics and two-sided
/// p-values. Throws Error when b <= 0 ("variance formula undefined").
EstimationResult effect_inference(const OlsFit& fit, double r_bar, double b, std::size_t n,
                                  double level = 0.05, std::size_t clusters = 0);

}  // namespace egocr
