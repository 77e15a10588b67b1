#include "egocr/randomization.hpp"

#include "egocr/error.hpp"

namespace egocr {

TreatmentAssignment assign_clusters(std::span<const ClusterId> cluster_of, Rng& rng) {
  TreatmentAssignment out;
  for (ClusterId k : cluster_of) out.cluster_draws.emplace(k, 0);
  // std::map iterates in ascending key order.
  for (auto& [k, bit] : out.cluster_draws) bit = static_cast<std::uint8_t>(rng() >> 63);

  out.treatment.resize(cluster_of.size());
  for (std::size_t i = 0; i < cluster_of.size(); ++i) {
    out.treatment[i] = out.cluster_draws.at(cluster_of[i]);
    out.n_treated += out.treatment[i];
  }
  out.n_control = cluster_of.size() - out.n_treated;
  return out;
}

TreatmentAssignment assign(const EgoClustering& c, Rng& rng) {
  return assign_clusters(c.assignment(), rng);
}

std::vector<double> exposures(const Graph& g, std::span<const std::uint8_t> treatment) {
  if (treatment.size() != g.size()) throw Error("treatment length does not match the graph");
  std::vector<double> rho(g.size(), 0.0);
  for (UnitId i = 0; i < g.size(); ++i) {
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty()) continue;
    std::size_t treated = 0;
    for (UnitId j : nbrs) treated += treatment[j] != 0;
    rho[i] = static_cast<double>(treated) / static_cast<double>(nbrs.size());
  }
  return rho;
}

}  // namespace egocr
