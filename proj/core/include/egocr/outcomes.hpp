#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "egocr/graph.hpp"
#include "egocr/rng.hpp"

namespace egocr {

enum class ErrorModel {
  IidNormal,   ///< eps_i ~ N(0, sigma^2) independently
  Correlated,  ///< eps = sigma * A * eps', eps' iid N(0, 1)
  Confounded,  ///< eta * Z_i + N(0, sigma^2)
};

std::string_view to_string(ErrorModel model) noexcept;
ErrorModel parse_error_model(std::string_view name);

/// Y = alpha + beta T + gamma rho (+ eta Z) + eps.
struct OutcomeModel {
  double alpha = 2.0;
  double beta = 2.5;
  double gamma = 5.0;
  double eta = 0.8;
  double sigma = 1.0;
  ErrorModel error = ErrorModel::IidNormal;

  double tau() const noexcept { return beta + gamma; }
};

/// Throws Error on length mismatch or a confounded model without z.
std::vector<double> simulate_outcomes(const Graph& g, std::span<const std::uint8_t> treatment,
                                      std::span<const double> rho, const OutcomeModel& model,
                                      Rng& rng, std::span<const double> z = {});

}  // namespace egocr
