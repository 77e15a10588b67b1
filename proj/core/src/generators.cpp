#include "egocr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "egocr/error.hpp"

namespace egocr {

namespace {

// Visits the indices of successes in `count` independent Bernoulli(p) trials
// by geometric skipping.
template <typename F>
void bernoulli_hits(std::uint64_t count, double p, Rng& rng, F&& f) {
  if (p <= 0.0 || count == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::geometric_distribution<std::uint64_t> skip(p);
  for (std::uint64_t i = skip(rng); i < count; i += 1 + skip(rng)) f(i);
}

std::uint64_t pair_key(UnitId a, UnitId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

Graph gen_er(std::size_t n, double p, Rng& rng) {
  if (!(p > 0.0 && p < 1.0)) throw Error("gen_er: p must lie in (0, 1)");
  std::vector<Edge> edges;
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - (n > 0)) / 2;
  // Pair index t enumerates (v, w) with w < v in row-major order.
  UnitId v = 1;
  std::uint64_t row_start = 0;
  bernoulli_hits(pairs, p, rng, [&](std::uint64_t t) {
    while (t >= row_start + v) {
      row_start += v;
      ++v;
    }
    edges.emplace_back(static_cast<UnitId>(t - row_start), v);
  });
  return Graph::from_edges(n, edges);
}

Graph gen_ba(std::size_t n, std::size_t m, Rng& rng) {
  if (m < 1 || n <= m) throw Error("gen_ba: requires m >= 1 and n > m");
  std::vector<Edge> edges;
  std::vector<UnitId> ends;  // each unit once per incident edge
  for (UnitId i = 0; i <= m; ++i) {
    for (UnitId j = i + 1; j <= m; ++j) {
      edges.emplace_back(i, j);
      ends.push_back(i);
      ends.push_back(j);
    }
  }
  std::vector<UnitId> targets;
  for (UnitId u = static_cast<UnitId>(m + 1); u < n; ++u) {
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
    while (targets.size() < m) {
      const UnitId t = ends[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (UnitId t : targets) {
      edges.emplace_back(t, u);
      ends.push_back(t);
      ends.push_back(u);
    }
  }
  return Graph::from_edges(n, edges);
}

CommunityCalibration calibrate_community(std::size_t n, std::size_t communities, double ratio,
                                         double target_avg_degree) {
  if (communities < 2) throw Error("gen_community: need at least two communities");
  if (!(ratio > 0.0)) throw Error("gen_community: within_cross_ratio must be positive");
  if (n < 3 * communities) throw Error("gen_community: communities too small");
  if (!(target_avg_degree > 0.0)) throw Error("gen_community: target degree must be positive");

  const double s = static_cast<double>(n) / static_cast<double>(communities);
  const double k_real = target_avg_degree / (1.0 + (static_cast<double>(n) - s) / (ratio * (s - 1.0)));
  const auto smallest = n / communities;
  std::size_t k = 2 * static_cast<std::size_t>(std::llround(k_real / 2.0));
  k = std::max<std::size_t>(k, 2);
  const std::size_t k_max = (smallest - 1) - ((smallest - 1) % 2);
  k = std::min(k, std::max<std::size_t>(k_max, 2));

  CommunityCalibration cal;
  cal.lattice_degree = k;
  cal.p_within = static_cast<double>(k) / (s - 1.0);
  cal.p_cross = std::min(1.0, cal.p_within / ratio);
  return cal;
}

CommunityGraph gen_community(std::size_t n, std::size_t communities, double ratio,
                             double target_avg_degree, Rng& rng) {
  const auto cal = calibrate_community(n, communities, ratio, target_avg_degree);

  CommunityGraph out;
  out.community.resize(n);
  std::vector<std::size_t> start(communities + 1, 0);
  for (std::size_t c = 0; c < communities; ++c) {
    start[c + 1] = start[c] + n / communities + (c < n % communities ? 1 : 0);
    for (std::size_t i = start[c]; i < start[c + 1]; ++i) out.community[i] = c;
  }

  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  for (std::size_t c = 0; c < communities; ++c) {
    const auto base = static_cast<UnitId>(start[c]);
    const auto s = static_cast<UnitId>(start[c + 1] - start[c]);
    const std::size_t half = std::min<std::size_t>(cal.lattice_degree / 2, (s - 1) / 2);

    std::vector<Edge> lattice;
    for (std::size_t j = 1; j <= half; ++j) {
      for (UnitId i = 0; i < s; ++i) {
        const Edge e{base + i, base + static_cast<UnitId>((i + j) % s)};
        lattice.push_back(e);
        present.insert(pair_key(e.first, e.second));
      }
    }
    // Rewire the far endpoint of each lattice edge, Watts-Strogatz style.
    std::uniform_int_distribution<UnitId> member(0, s - 1);
    for (auto& e : lattice) {
      if (coin(rng) >= kRewireProbability) continue;
      const UnitId u = e.first;
      std::size_t degree_u = 0;
      for (UnitId w = 0; w < s; ++w) degree_u += present.count(pair_key(u, base + w)) ? 1 : 0;
      if (degree_u >= static_cast<std::size_t>(s) - 1) continue;
      UnitId w = base + member(rng);
      while (w == u || present.count(pair_key(u, w))) w = base + member(rng);
      present.erase(pair_key(e.first, e.second));
      present.insert(pair_key(u, w));
      e.second = w;
    }
    edges.insert(edges.end(), lattice.begin(), lattice.end());
  }

  for (std::size_t a = 0; a < communities; ++a) {
    for (std::size_t b = a + 1; b < communities; ++b) {
      const std::uint64_t sa = start[a + 1] - start[a];
      const std::uint64_t sb = start[b + 1] - start[b];
      bernoulli_hits(sa * sb, cal.p_cross, rng, [&](std::uint64_t t) {
        edges.emplace_back(static_cast<UnitId>(start[a] + t / sb), static_cast<UnitId>(start[b] + t % sb));
      });
    }
  }
  out.graph = Graph::from_edges(n, edges);

  double mean = 0.0;
  for (std::size_t c : out.community) mean += static_cast<double>(c);
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t c : out.community) var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
  const double sd = std::sqrt(var / static_cast<double>(n));
  out.z.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.z[i] = (static_cast<double>(out.community[i]) - mean) / sd;
  return out;
}

}  // namespace egocr
