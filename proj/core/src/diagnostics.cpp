#include "egocr/diagnostics.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace egocr {

namespace {

// K_i for every unit and the inverse index cluster -> units touching it.
struct Touch {
  std::vector<std::vector<ClusterId>> clusters_of_unit;
  std::vector<std::vector<UnitId>> units_of_cluster;
};

Touch build_touch(const Graph& g, const EgoClustering& c) {
  const std::size_t n = g.size();
  Touch t;
  t.clusters_of_unit.resize(n);
  t.units_of_cluster.resize(n);
  for (UnitId i = 0; i < n; ++i) {
    auto& ks = t.clusters_of_unit[i];
    ks.push_back(c.cluster_of(i));
    for (UnitId j : g.neighbors(i)) ks.push_back(c.cluster_of(j));
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (ClusterId k : ks) t.units_of_cluster[k].push_back(i);
  }
  return t;
}

// Calls f(j) once for every j in N_i, using `mark` (stamped with i + 1).
template <typename F>
void for_each_dependent(const Touch& t, UnitId i, std::vector<std::uint32_t>& mark, F&& f) {
  const std::uint32_t stamp = i + 1;
  for (ClusterId k : t.clusters_of_unit[i]) {
    for (UnitId j : t.units_of_cluster[k]) {
      if (mark[j] == stamp) continue;
      mark[j] = stamp;
      f(j);
    }
  }
}

}  // namespace

DependencyDiagnostics dependency_diagnostics(const Graph& g, const EgoClustering& c) {
  const std::size_t n = g.size();
  DependencyDiagnostics out;
  if (n == 0) return out;

  const Touch t = build_touch(g, c);
  std::vector<std::uint32_t> mark(n, 0);

  // Lambda * v for integer v, counting sizes on the way.
  auto apply = [&](const std::vector<std::uint64_t>& v) {
    std::vector<std::uint64_t> w(n, 0);
    std::fill(mark.begin(), mark.end(), 0);
    for (UnitId i = 0; i < n; ++i) {
      std::uint64_t acc = 0;
      for_each_dependent(t, i, mark, [&](UnitId j) { acc += v[j]; });
      w[i] = acc;
    }
    return w;
  };

  const std::vector<std::uint64_t> ones(n, 1);
  const auto sizes = apply(ones);  // |N_i|
  const auto l3 = apply(apply(sizes));

  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t s3 = 0;
  std::uint64_t s_l3 = 0;
  for (UnitId i = 0; i < n; ++i) {
    const std::uint64_t k = sizes[i];
    s1 += k;
    s2 += k * k;
    s3 += k * k * k;
    s_l3 += l3[i];
    out.max_N = std::max<std::size_t>(out.max_N, k);
  }
  const double dn = static_cast<double>(n);
  out.mean_N = static_cast<double>(s1) / dn;
  out.mean_N2 = static_cast<double>(s2) / dn;
  out.mean_N3 = static_cast<double>(s3) / dn;
  out.mean_L3 = static_cast<double>(s_l3) / dn;
  return out;
}

}  // namespace egocr
