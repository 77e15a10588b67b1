#include "egocr/inference.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "egocr/error.hpp"
#include "egocr/normal.hpp"

namespace egocr {

namespace {

constexpr double kMaxCondition = 1e12;

// estimate / se, with a zero standard error (noiseless fit) mapped to 0 or +-inf.
double ratio(double estimate, double se) {
  if (se > 0.0) return estimate / se;
  if (estimate == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), estimate);
}

}  // namespace

OlsFit fit_ols(std::span<const std::uint8_t> treatment, std::span<const double> rho,
               std::span<const double> y) {
  const std::size_t n = y.size();
  if (treatment.size() != n || rho.size() != n) throw Error("fit_ols: length mismatch");
  if (n <= 3) throw Error("fit_ols: need more than 3 observations");

  Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
  Eigen::Vector3d xty = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d x(1.0, treatment[i] ? 1.0 : 0.0, rho[i]);
    gram.noalias() += x * x.transpose();
    xty.noalias() += x * y[i];
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig;
  eig.computeDirect(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxCondition) throw CollinearDesign();

  const Eigen::LLT<Eigen::Matrix3d> llt(gram);
  if (llt.info() != Eigen::Success) throw CollinearDesign();
  const Eigen::Vector3d coef = llt.solve(xty);

  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - coef(0) - coef(1) * (treatment[i] ? 1.0 : 0.0) - coef(2) * rho[i];
    rss += e * e;
  }
  return {coef(0), coef(1), coef(2), rss / static_cast<double>(n - 3), n};
}

EstimationResult effect_inference(const OlsFit& fit, double r_bar, double b, std::size_t n,
                                  double level, std::size_t clusters) {
  if (!(b > 0.0)) throw Error("variance formula undefined (b = 0)");
  if (!(level > 0.0 && level < 1.0)) throw Error("level must lie in (0, 1)");
  if (n == 0) throw Error("effect_inference: n must be positive");

  EstimationResult r;
  r.alpha_hat = fit.alpha;
  r.beta_hat = fit.beta;
  r.gamma_hat = fit.gamma;
  r.tau_hat = fit.beta + fit.gamma;
  r.sigma2_eps_hat = fit.sigma2;
  r.level = level;
  r.n = n;
  r.clusters = clusters;
  r.r_bar = r_bar;
  r.b = b;

  const double sigma = std::sqrt(fit.sigma2);
  const double root_n = std::sqrt(static_cast<double>(n));
  r.se_tau = 2.0 * sigma * std::sqrt(r_bar * r_bar / b + 1.0) / root_n;
  r.se_gamma = 2.0 * sigma * std::sqrt(1.0 / b) / root_n;

  const double z = normal_quantile(1.0 - level / 2.0);
  r.ci_tau = {r.tau_hat - z * r.se_tau, r.tau_hat + z * r.se_tau};
  r.ci_gamma = {r.gamma_hat - z * r.se_gamma, r.gamma_hat + z * r.se_gamma};

  r.z_crit = z;
  r.t_tau = ratio(r.tau_hat, r.se_tau);
  r.t_gamma = ratio(r.gamma_hat, r.se_gamma);
  r.p_tau = 2.0 * (1.0 - normal_cdf(std::abs(r.t_tau)));
  r.p_gamma = 2.0 * (1.0 - normal_cdf(std::abs(r.t_gamma)));
  return r;
}

}  // namespace egocr
