#include "egocr/outcomes.hpp"

#include <random>
#include <string>

#include "egocr/error.hpp"

namespace egocr {

std::string_view to_string(ErrorModel model) noexcept {
  switch (model) {
    case ErrorModel::IidNormal: return "iid_normal";
    case ErrorModel::Correlated: return "correlated";
    case ErrorModel::Confounded: return "confounded";
  }
  return "unknown";
}

ErrorModel parse_error_model(std::string_view name) {
  if (name == "iid_normal") return ErrorModel::IidNormal;
  if (name == "correlated") return ErrorModel::Correlated;
  if (name == "confounded") return ErrorModel::Confounded;
  throw Error("unknown error model '" + std::string(name) + "'");
}

std::vector<double> simulate_outcomes(const Graph& g, std::span<const std::uint8_t> treatment,
                                      std::span<const double> rho, const OutcomeModel& model,
                                      Rng& rng, std::span<const double> z) {
  const std::size_t n = g.size();
  if (treatment.size() != n || rho.size() != n) throw Error("simulate_outcomes: length mismatch");
  if (model.error == ErrorModel::Confounded && z.size() != n) {
    throw Error("confounded outcome model requires a confounder Z for every unit");
  }

  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> eps(n, 0.0);
  if (model.error == ErrorModel::Correlated) {
    std::vector<double> base(n);
    for (double& e : base) e = noise(rng);
    for (UnitId i = 0; i < n; ++i) {
      double acc = 0.0;
      for (UnitId j : g.neighbors(i)) acc += base[j];
      eps[i] = model.sigma * acc;
    }
  } else if (model.sigma != 0.0) {
    for (double& e : eps) e = model.sigma * noise(rng);
  }

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = model.alpha + model.beta * (treatment[i] ? 1.0 : 0.0) + model.gamma * rho[i] + eps[i];
    if (model.error == ErrorModel::Confounded) y[i] += model.eta * z[i];
  }
  return y;
}

}  // namespace egocr
