#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egocr/clustering.hpp"
#include "egocr/outcomes.hpp"

namespace egocr {

enum class NetworkModel { ErdosRenyi, BarabasiAlbert, Community };

struct NetworkSpec {
  NetworkModel model = NetworkModel::ErdosRenyi;
  std::size_t n = 0;
  double p = 0.0;                 // ER
  std::size_t m = 0;              // BA
  std::size_t communities = 4;    // community
  double within_cross_ratio = 8.0;
  double target_avg_degree = 11.0;
};

struct SimConfig {
  NetworkSpec network;
  std::vector<DesignKind> designs;
  OutcomeModel outcome;
  std::size_t reps = 1;
  std::uint64_t base_seed = 0;
  double level = 0.05;
  double lambda = 1.0;
};

/// Throws Error on unknown keys, missing required fields or invalid values.
SimConfig parse_sim_config(std::string_view json_text);
std::string to_json(const SimConfig& config);
void validate(const SimConfig& config);

struct EstimandSummary {
  double bias = 0.0;
  double sd = 0.0;
  double rmse = 0.0;
  double rejection_rate = 0.0;
  double coverage = 0.0;
};

struct DesignSummary {
  DesignKind design = DesignKind::EgoCr;
  EstimandSummary tau;
  EstimandSummary gamma;
  double mean_clusters = 0.0;
  double mean_r_bar = 0.0;
  double mean_b = 0.0;
  std::size_t reps_completed = 0;
  std::size_t failures = 0;
};

struct SimReport {
  SimConfig config;
  double true_tau = 0.0;
  double true_gamma = 0.0;
  std::vector<DesignSummary> designs;
};

/// Outcome of one design in one replication.
struct ReplicationRecord {
  bool ok = false;
  double tau_hat = 0.0;
  double gamma_hat = 0.0;
  bool reject_tau = false;
  bool reject_gamma = false;
  bool cover_tau = false;
  bool cover_gamma = false;
  double clusters = 0.0;
  double r_bar = 0.0;
  double b = 0.0;
};

/// Seed of replication r: derive_seed(base_seed, r).
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t r) noexcept;

/// Runs replication r for every configured design, in config order.
std::vector<ReplicationRecord> run_replication(const SimConfig& config, std::size_t r);

/// Aggregates records of one design over replications, in replication order.
DesignSummary summarize(DesignKind design, std::span<const ReplicationRecord> records,
                        double true_tau, double true_gamma);

/// Runs every replication (on `threads` workers, 0 = hardware concurrency)
/// and aggregates. Results do not depend on the number of workers. Throws
/// Error if a design fails in more than 5% of replications.
SimReport run_study(const SimConfig& config, unsigned threads = 0);

}  // namespace egocr
