#pragma once

#include <cstddef>
#include <vector>

#include "egocr/graph.hpp"
#include "egocr/rng.hpp"

namespace egocr {

/// Erdos-Renyi G(n, p); p must lie in (0, 1).
Graph gen_er(std::size_t n, double p, Rng& rng);

/// Barabasi-Albert preferential attachment from a clique on m + 1 units; each
/// arriving unit links to m distinct units drawn proportionally to degree.
Graph gen_ba(std::size_t n, std::size_t m, Rng& rng);

/// Parameters the community generator derives from its targets.
struct CommunityCalibration {
  std::size_t lattice_degree = 0;  ///< even ring-lattice degree within a community
  double p_within = 0.0;           ///< lattice_degree / (s - 1)
  double p_cross = 0.0;            ///< p_within / ratio
};

CommunityCalibration calibrate_community(std::size_t n, std::size_t communities, double ratio,
                                         double target_avg_degree);

struct CommunityGraph {
  Graph graph;
  std::vector<std::size_t> community;
  /// Community index, centred and scaled to unit variance over units.
  std::vector<double> z;
};

inline constexpr double kRewireProbability = 0.1;

/// `communities` near-equal Watts-Strogatz communities (ring lattice, rewiring
/// probability 0.1) joined by independent cross-community edges, with the
/// within/cross edge-probability ratio fixed at `ratio`.
CommunityGraph gen_community(std::size_t n, std::size_t communities, double ratio,
                             double target_avg_degree, Rng& rng);

}  // namespace egocr
