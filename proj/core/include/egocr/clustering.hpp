#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "egocr/graph.hpp"

namespace egocr {

/// Cluster ids are the unit id of the cluster's ego (or seed, for 3-net).
using ClusterId = UnitId;

enum class DesignKind { EgoCr, CompleteRandomization, ThreeNet, RandomEgo };

std::string_view to_string(DesignKind kind) noexcept;
/// Accepts "ego_cr", "cr", "three_net", "random_ego".
DesignKind parse_design_kind(std::string_view name);

/// Number of unit i's neighbours inside one cluster (a nonzero entry of A*C).
struct ClusterCount {
  ClusterId cluster;
  std::uint32_t count;

  friend bool operator==(const ClusterCount&, const ClusterCount&) = default;
};

struct DesignStats {
  double r_bar = 0.0;
  double b = 0.0;
};

/// lambda * r_bar^2 / b + (1 - lambda) / b, or +infinity when b <= 0.
double objective(double r_bar, double b, double lambda) noexcept;

/// Float-safe strict-improvement test shared by both greedy steps:
/// candidate < current - max(1e-12, 1e-12 * |current|).
bool improves(double candidate, double current) noexcept;

/// Partition of the units into clusters, each identified by a focal unit that
/// belongs to it, with cached interference statistics.
///
/// Caches: the sparse rows of A*C, the loss rate of every unit, their sum and
/// the sum of squared interference shares. r_bar and b are derived from these
/// in O(1). Isolated units have loss 0 and contribute nothing to either term
/// of b, but count in the denominator n.
///
/// Mutation (merge, reassignment) keeps every cache consistent; a clustering
/// is mutated by one writer at a time.
class EgoClustering {
 public:
  EgoClustering() = default;

  /// Every unit its own cluster.
  static EgoClustering singleton(const Graph& g, double lambda = 1.0,
                                 DesignKind kind = DesignKind::EgoCr);

  /// Builds from a unit -> cluster map. Each cluster id must be a member of
  /// its own cluster; for every kind but ThreeNet each non-focal member must
  /// be adjacent to the focal unit. Throws Error otherwise.
  static EgoClustering from_assignment(const Graph& g, std::vector<ClusterId> assignment,
                                       DesignKind kind, double lambda = 1.0);

  std::size_t size() const noexcept { return assignment_.size(); }
  DesignKind kind() const noexcept { return kind_; }

  ClusterId cluster_of(UnitId i) const noexcept { return assignment_[i]; }
  std::span<const ClusterId> assignment() const noexcept { return assignment_; }
  bool is_ego(UnitId i) const noexcept { return assignment_[i] == i; }

  std::size_t cluster_count() const noexcept { return live_; }
  bool is_live(ClusterId k) const noexcept { return k < sizes_.size() && sizes_[k] > 0; }
  std::size_t cluster_size(ClusterId k) const noexcept { return is_live(k) ? sizes_[k] : 0; }
  /// Live cluster ids, ascending.
  std::vector<ClusterId> clusters() const;
  std::vector<UnitId> members(ClusterId k) const;

  std::span<const ClusterCount> neighbor_counts(UnitId i) const noexcept { return counts_[i]; }
  std::uint32_t neighbor_count(UnitId i, ClusterId k) const noexcept;

  double loss(UnitId i) const noexcept { return loss_[i]; }
  std::span<const double> losses() const noexcept { return loss_; }

  double r_bar() const noexcept;
  /// (1/n) sum_i sum_k R_ik^2.
  double q() const noexcept;
  double b() const noexcept;
  DesignStats stats() const noexcept { return {r_bar(), b()}; }
  std::size_t isolated_count() const noexcept { return isolated_; }

  double lambda() const noexcept { return lambda_; }
  void set_lambda(double lambda);
  double objective() const noexcept { return egocr::objective(r_bar(), b(), lambda_); }

  /// Statistics after grouping `alters` into the cluster of `ego`. The ego
  /// and every alter must currently be singleton clusters.
  DesignStats evaluate_merge(const Graph& g, UnitId ego, std::span<const UnitId> alters) const;
  void apply_merge(const Graph& g, UnitId ego, std::span<const UnitId> alters);

  /// Statistics after moving non-focal unit m into cluster `to`, whose focal
  /// unit must be adjacent to m. O(D_m log D).
  DesignStats evaluate_reassignment(const Graph& g, UnitId m, ClusterId to) const;
  void apply_reassignment(const Graph& g, UnitId m, ClusterId to);

  friend bool operator==(const EgoClustering&, const EgoClustering&) = default;

 private:
  void check_merge(const Graph& g, UnitId ego, std::span<const UnitId> alters) const;
  void check_reassignment(const Graph& g, UnitId m, ClusterId to) const;
  static void add_count(std::vector<ClusterCount>& row, ClusterId k, std::int64_t delta);

  std::vector<ClusterId> assignment_;
  std::vector<std::uint32_t> sizes_;
  std::size_t live_ = 0;
  std::vector<std::vector<ClusterCount>> counts_;
  std::vector<double> loss_;
  double loss_sum_ = 0.0;
  double sq_sum_ = 0.0;
  std::size_t isolated_ = 0;
  double lambda_ = 1.0;
  DesignKind kind_ = DesignKind::EgoCr;
};

}  // namespace egocr
