#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "egocr/clustering.hpp"
#include "egocr/graph.hpp"
#include "egocr/rng.hpp"

namespace egocr {

struct TreatmentAssignment {
  std::map<ClusterId, std::uint8_t> cluster_draws;
  std::vector<std::uint8_t> treatment;
  std::size_t n_treated = 0;
  std::size_t n_control = 0;
};

/// One fair coin per cluster, drawn in ascending cluster-id order; every unit
/// inherits its cluster's draw.
TreatmentAssignment assign_clusters(std::span<const ClusterId> cluster_of, Rng& rng);
TreatmentAssignment assign(const EgoClustering& c, Rng& rng);

/// rho_i = (treated neighbours of i) / D_i; 0 for isolated units.
std::vector<double> exposures(const Graph& g, std::span<const std::uint8_t> treatment);

}  // namespace egocr
