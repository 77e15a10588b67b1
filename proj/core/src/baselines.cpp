#include "egocr/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "egocr/rng.hpp"

namespace egocr {

namespace {

std::vector<UnitId> shuffled_units(std::size_t n, std::uint64_t seed) {
  std::vector<UnitId> order(n);
  std::iota(order.begin(), order.end(), UnitId{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

constexpr UnitId kUnassigned = std::numeric_limits<UnitId>::max();

}  // namespace

EgoClustering complete_randomization(const Graph& g) {
  return EgoClustering::singleton(g, 1.0, DesignKind::CompleteRandomization);
}

EgoClustering random_ego_clusters(const Graph& g, std::uint64_t seed) {
  std::vector<ClusterId> assignment(g.size(), kUnassigned);
  for (UnitId u : shuffled_units(g.size(), seed)) {
    if (assignment[u] != kUnassigned) continue;
    assignment[u] = u;
    for (UnitId v : g.neighbors(u)) {
      if (assignment[v] == kUnassigned) assignment[v] = u;
    }
  }
  return EgoClustering::from_assignment(g, std::move(assignment), DesignKind::RandomEgo);
}

EgoClustering three_net(const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.size();
  constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

  // Visiting units in uniform random order and keeping every unit not yet
  // within distance 2 of a seed draws each next seed uniformly among the
  // remaining eligible units.
  std::vector<char> covered(n, 0);
  std::vector<UnitId> seeds;
  for (UnitId u : shuffled_units(n, seed)) {
    if (covered[u]) continue;
    seeds.push_back(u);
    covered[u] = 1;
    for (UnitId v : g.neighbors(u)) {
      covered[v] = 1;
      for (UnitId w : g.neighbors(v)) covered[w] = 1;
    }
  }

  // Multi-source BFS, level by level; a unit reached from several frontier
  // units takes the smallest seed label among them.
  std::vector<std::size_t> dist(n, kFar);
  std::vector<ClusterId> label(n, kUnassigned);
  std::vector<UnitId> frontier;
  std::sort(seeds.begin(), seeds.end());
  for (UnitId s : seeds) {
    dist[s] = 0;
    label[s] = s;
    frontier.push_back(s);
  }
  std::vector<UnitId> next;
  for (std::size_t level = 0; !frontier.empty(); ++level) {
    next.clear();
    for (UnitId u : frontier) {
      for (UnitId v : g.neighbors(u)) {
        if (dist[v] == kFar) {
          dist[v] = level + 1;
          label[v] = label[u];
          next.push_back(v);
        } else if (dist[v] == level + 1) {
          label[v] = std::min(label[v], label[u]);
        }
      }
    }
    frontier.swap(next);
  }
  return EgoClustering::from_assignment(g, std::move(label), DesignKind::ThreeNet);
}

}  // namespace egocr
