#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "egocr/clustering.hpp"
#include "egocr/graph.hpp"
#include "egocr/rng.hpp"

namespace egocr {

/// Every unit its own ego-cluster (complete randomization).
EgoClustering singleton_clustering(const Graph& g, double lambda = 1.0);

struct StatsSnapshot {
  std::vector<double> loss;
  double r_bar = 0.0;
  double b = 0.0;
};

/// Loss rates, r_bar and b straight from the definitions, ignoring every
/// cache held by `c`. Reference for the incremental updates.
StatsSnapshot recompute_stats(const Graph& g, const EgoClustering& c);

/// Post-move (r_bar, b) when alter m leaves cluster k1 for cluster k2,
/// without mutating c.
DesignStats reassignment_delta(const Graph& g, const EgoClustering& c, UnitId m, ClusterId k1,
                               ClusterId k2);
void apply_reassignment(const Graph& g, EgoClustering& c, UnitId m, ClusterId k2);

/// Accepted objective values in order, starting with the initial objective.
struct DesignTrace {
  std::vector<double> objectives;
  std::size_t egos_selected = 0;
  std::size_t reassignments = 0;
};

/// Greedy ego selection. `locked` units (predetermined egos) are never drawn
/// or claimed. Throws Error on a graph without edges.
EgoClustering select_egos(const Graph& g, EgoClustering c, double lambda, Rng& rng,
                          DesignTrace* trace = nullptr, std::span<const UnitId> locked = {});

/// Greedy alter reassignment; repeats full passes until nothing moves.
EgoClustering reassign_alters(const Graph& g, EgoClustering c, double lambda, Rng& rng,
                              DesignTrace* trace = nullptr);

/// Forms each predetermined ego's cluster from its currently unassigned
/// neighbours, in the given order.
void seed_predetermined_egos(const Graph& g, EgoClustering& c, std::span<const UnitId> egos);

struct DesignOptions {
  double lambda = 1.0;
  std::vector<UnitId> predetermined_egos;
};

/// singleton -> predetermined egos -> ego selection -> alter reassignment,
/// driven by one generator seeded with `seed`.
EgoClustering build_design(const Graph& g, const DesignOptions& options, std::uint64_t seed,
                           DesignTrace* trace = nullptr);
EgoClustering build_design(const Graph& g, double lambda, std::uint64_t seed,
                           DesignTrace* trace = nullptr);

}  // namespace egocr
