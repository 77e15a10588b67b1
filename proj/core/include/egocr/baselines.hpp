#pragma once

#include <cstdint>

#include "egocr/clustering.hpp"
#include "egocr/graph.hpp"

namespace egocr {

/// Each unit its own cluster.
EgoClustering complete_randomization(const Graph& g);

/// Units visited in a seeded random order; every still-unassigned unit
/// becomes an ego and claims all of its unassigned neighbours.
EgoClustering random_ego_clusters(const Graph& g, std::uint64_t seed);

/// Greedy 3-net: seeds pairwise at distance >= 3, drawn in seeded random
/// order; every unit joins its nearest seed (ties to the smaller seed id).
/// Members need not be adjacent to their seed.
EgoClustering three_net(const Graph& g, std::uint64_t seed);

}  // namespace egocr
