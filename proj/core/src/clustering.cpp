#include "egocr/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "egocr/error.hpp"

namespace egocr {

std::string_view to_string(DesignKind kind) noexcept {
  switch (kind) {
    case DesignKind::EgoCr: return "ego_cr";
    case DesignKind::CompleteRandomization: return "cr";
    case DesignKind::ThreeNet: return "three_net";
    case DesignKind::RandomEgo: return "random_ego";
  }
  return "unknown";
}

DesignKind parse_design_kind(std::string_view name) {
  if (name == "ego_cr") return DesignKind::EgoCr;
  if (name == "cr") return DesignKind::CompleteRandomization;
  if (name == "three_net") return DesignKind::ThreeNet;
  if (name == "random_ego") return DesignKind::RandomEgo;
  throw Error("unknown design '" + std::string(name) + "'");
}

double objective(double r_bar, double b, double lambda) noexcept {
  if (!(b > 0.0)) return std::numeric_limits<double>::infinity();
  return (lambda * r_bar * r_bar + (1.0 - lambda)) / b;
}

bool improves(double candidate, double current) noexcept {
  const double tol = std::max(1e-12, 1e-12 * std::abs(current));
  return candidate < current - tol;
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error("lambda must lie in (0, 1]");
}

// b from its cached ingredients; see the class comment for the isolated-unit term.
double b_from(double q, double r_bar, double iso_frac) noexcept {
  return q - (1.0 - r_bar) * (1.0 - r_bar) + iso_frac * (1.0 - r_bar * r_bar);
}

}  // namespace

EgoClustering EgoClustering::singleton(const Graph& g, double lambda, DesignKind kind) {
  std::vector<ClusterId> assignment(g.size());
  for (UnitId i = 0; i < g.size(); ++i) assignment[i] = i;
  return from_assignment(g, std::move(assignment), kind, lambda);
}

EgoClustering EgoClustering::from_assignment(const Graph& g, std::vector<ClusterId> assignment,
                                             DesignKind kind, double lambda) {
  check_lambda(lambda);
  const std::size_t n = g.size();
  if (assignment.size() != n) throw Error("assignment length does not match the graph");

  EgoClustering c;
  c.kind_ = kind;
  c.lambda_ = lambda;
  c.sizes_.assign(n, 0);
  for (UnitId i = 0; i < n; ++i) {
    const ClusterId k = assignment[i];
    if (k >= n) throw Error("cluster id out of range for unit " + std::to_string(g.external_id(i)));
    ++c.sizes_[k];
  }
  for (UnitId i = 0; i < n; ++i) {
    const ClusterId k = assignment[i];
    if (assignment[k] != k) {
      throw Error("focal unit " + std::to_string(g.external_id(k)) + " is not a member of its cluster");
    }
    if (kind != DesignKind::ThreeNet && k != i && !g.has_edge(i, k)) {
      throw Error("unit " + std::to_string(g.external_id(i)) + " is not adjacent to its ego " +
                  std::to_string(g.external_id(k)));
    }
  }
  c.live_ = static_cast<std::size_t>(std::count_if(c.sizes_.begin(), c.sizes_.end(),
                                                   [](std::uint32_t s) { return s > 0; }));
  c.assignment_ = std::move(assignment);

  c.counts_.assign(n, {});
  c.loss_.assign(n, 0.0);
  std::vector<ClusterId> scratch;
  for (UnitId i = 0; i < n; ++i) {
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty()) {
      ++c.isolated_;
      continue;
    }
    scratch.clear();
    for (UnitId j : nbrs) scratch.push_back(c.assignment_[j]);
    std::sort(scratch.begin(), scratch.end());
    auto& row = c.counts_[i];
    for (std::size_t a = 0; a < scratch.size();) {
      std::size_t z = a;
      while (z < scratch.size() && scratch[z] == scratch[a]) ++z;
      row.push_back({scratch[a], static_cast<std::uint32_t>(z - a)});
      a = z;
    }
    const double d = static_cast<double>(nbrs.size());
    double sq = 0.0;
    for (const auto& e : row) sq += static_cast<double>(e.count) * e.count;
    c.sq_sum_ += sq / (d * d);
    c.loss_[i] = 1.0 - c.neighbor_count(i, c.assignment_[i]) / d;
    c.loss_sum_ += c.loss_[i];
  }
  return c;
}

std::vector<ClusterId> EgoClustering::clusters() const {
  std::vector<ClusterId> out;
  out.reserve(live_);
  for (ClusterId k = 0; k < sizes_.size(); ++k) {
    if (sizes_[k] > 0) out.push_back(k);
  }
  return out;
}

std::vector<UnitId> EgoClustering::members(ClusterId k) const {
  std::vector<UnitId> out;
  for (UnitId i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == k) out.push_back(i);
  }
  return out;
}

std::uint32_t EgoClustering::neighbor_count(UnitId i, ClusterId k) const noexcept {
  const auto& row = counts_[i];
  const auto it = std::lower_bound(row.begin(), row.end(), k,
                                   [](const ClusterCount& e, ClusterId key) { return e.cluster < key; });
  return it != row.end() && it->cluster == k ? it->count : 0;
}

double EgoClustering::r_bar() const noexcept {
  return size() == 0 ? 0.0 : loss_sum_ / static_cast<double>(size());
}

double EgoClustering::q() const noexcept {
  return size() == 0 ? 0.0 : sq_sum_ / static_cast<double>(size());
}

double EgoClustering::b() const noexcept {
  if (size() == 0) return 0.0;
  return b_from(q(), r_bar(), static_cast<double>(isolated_) / static_cast<double>(size()));
}

void EgoClustering::set_lambda(double lambda) {
  check_lambda(lambda);
  lambda_ = lambda;
}

void EgoClustering::add_count(std::vector<ClusterCount>& row, ClusterId k, std::int64_t delta) {
  auto it = std::lower_bound(row.begin(), row.end(), k,
                             [](const ClusterCount& e, ClusterId key) { return e.cluster < key; });
  if (it != row.end() && it->cluster == k) {
    const std::int64_t updated = static_cast<std::int64_t>(it->count) + delta;
    if (updated == 0) {
      row.erase(it);
    } else {
      it->count = static_cast<std::uint32_t>(updated);
    }
  } else {
    row.insert(it, {k, static_cast<std::uint32_t>(delta)});
  }
}

// ---------------------------------------------------------------------------
// Merge of singleton clusters (ego selection).

void EgoClustering::check_merge(const Graph& g, UnitId ego, std::span<const UnitId> alters) const {
  if (ego >= size() || cluster_size(ego) != 1 || assignment_[ego] != ego) {
    throw Error("merge ego must be a singleton cluster");
  }
  for (UnitId a : alters) {
    if (a >= size() || a == ego || assignment_[a] != a || sizes_[a] != 1) {
      throw Error("merge alters must be distinct singleton clusters");
    }
    if (!g.has_edge(ego, a)) throw Error("merge alter is not adjacent to the ego");
  }
  std::vector<UnitId> sorted(alters.begin(), alters.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("merge alters must be distinct singleton clusters");
  }
}

namespace {

// For each unit h adjacent to the merged set M, S_h = |N_h ∩ M|, as sorted
// (h, S_h) runs.
std::vector<std::pair<UnitId, std::uint32_t>> merge_touch(const Graph& g, UnitId ego,
                                                          std::span<const UnitId> alters) {
  std::vector<UnitId> touched(g.neighbors(ego).begin(), g.neighbors(ego).end());
  for (UnitId a : alters) touched.insert(touched.end(), g.neighbors(a).begin(), g.neighbors(a).end());
  std::sort(touched.begin(), touched.end());
  std::vector<std::pair<UnitId, std::uint32_t>> runs;
  for (std::size_t a = 0; a < touched.size();) {
    std::size_t z = a;
    while (z < touched.size() && touched[z] == touched[a]) ++z;
    runs.emplace_back(touched[a], static_cast<std::uint32_t>(z - a));
    a = z;
  }
  return runs;
}

std::vector<UnitId> merged_set(UnitId ego, std::span<const UnitId> alters) {
  std::vector<UnitId> out(alters.begin(), alters.end());
  out.push_back(ego);
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const std::vector<UnitId>& sorted, UnitId h) {
  return std::binary_search(sorted.begin(), sorted.end(), h);
}

}  // namespace

DesignStats EgoClustering::evaluate_merge(const Graph& g, UnitId ego,
                                          std::span<const UnitId> alters) const {
  check_merge(g, ego, alters);
  // Every merged column is a singleton, so unit h's old entries for the merged
  // clusters are all 1 and sum to S_h; they collapse into a single entry S_h.
  const auto merged = merged_set(ego, alters);
  double d_sq = 0.0;
  double d_loss = 0.0;
  for (const auto& [h, s] : merge_touch(g, ego, alters)) {
    const double d = static_cast<double>(g.degree(h));
    d_sq += (static_cast<double>(s) * s - s) / (d * d);
    if (contains(merged, h)) d_loss -= s / d;
  }
  const double n = static_cast<double>(size());
  const double r_bar_new = (loss_sum_ + d_loss) / n;
  const double q_new = (sq_sum_ + d_sq) / n;
  return {r_bar_new, b_from(q_new, r_bar_new, static_cast<double>(isolated_) / n)};
}

void EgoClustering::apply_merge(const Graph& g, UnitId ego, std::span<const UnitId> alters) {
  check_merge(g, ego, alters);
  const auto merged = merged_set(ego, alters);
  for (const auto& [h, s] : merge_touch(g, ego, alters)) {
    const double d = static_cast<double>(g.degree(h));
    auto& row = counts_[h];
    std::erase_if(row, [&](const ClusterCount& e) { return contains(merged, e.cluster); });
    add_count(row, ego, s);
    sq_sum_ += (static_cast<double>(s) * s - s) / (d * d);
    if (contains(merged, h)) {
      loss_sum_ -= s / d;
      loss_[h] -= s / d;
    }
  }
  for (UnitId a : alters) {
    assignment_[a] = ego;
    sizes_[a] = 0;
  }
  sizes_[ego] += static_cast<std::uint32_t>(alters.size());
  live_ -= alters.size();
}

// ---------------------------------------------------------------------------
// Alter reassignment.

void EgoClustering::check_reassignment(const Graph& g, UnitId m, ClusterId to) const {
  if (m >= size() || to >= size()) throw Error("unit or cluster out of range");
  if (assignment_[m] == m) throw Error("egos are never reassigned");
  if (!is_live(to)) throw Error("target cluster is not live");
  if (assignment_[m] == to) throw Error("unit already belongs to the target cluster");
  if (!g.has_edge(m, to)) throw Error("target cluster's ego is not adjacent to the unit");
}

DesignStats EgoClustering::evaluate_reassignment(const Graph& g, UnitId m, ClusterId to) const {
  check_reassignment(g, m, to);
  const ClusterId from = assignment_[m];
  const double n = static_cast<double>(size());
  const double dm = static_cast<double>(g.degree(m));

  double loss_in_from = 0.0;  // sum over h in E_from ∩ N_m of 1/D_h
  double loss_in_to = 0.0;
  double sq_term = 0.0;       // sum over h in N_m of 1/D_h^2 - (R_h,from - R_h,to)/D_h
  for (UnitId h : g.neighbors(m)) {
    const double dh = static_cast<double>(g.degree(h));
    if (assignment_[h] == from) loss_in_from += 1.0 / dh;
    if (assignment_[h] == to) loss_in_to += 1.0 / dh;
    const double r_from = neighbor_count(h, from) / dh;
    const double r_to = neighbor_count(h, to) / dh;
    sq_term += 1.0 / (dh * dh) - (r_from - r_to) / dh;
  }
  const double own_shift =
      (static_cast<double>(neighbor_count(m, from)) - static_cast<double>(neighbor_count(m, to))) / dm;

  const double r_bar_old = r_bar();
  const double r_bar_new = r_bar_old + (loss_in_from - loss_in_to + own_shift) / n;
  const double iso_frac = static_cast<double>(isolated_) / n;
  const double b_new = b() + 2.0 / n * sq_term + (1.0 - r_bar_old) * (1.0 - r_bar_old) -
                       (1.0 - r_bar_new) * (1.0 - r_bar_new) +
                       iso_frac * (r_bar_old * r_bar_old - r_bar_new * r_bar_new);
  return {r_bar_new, b_new};
}

void EgoClustering::apply_reassignment(const Graph& g, UnitId m, ClusterId to) {
  check_reassignment(g, m, to);
  const ClusterId from = assignment_[m];
  for (UnitId h : g.neighbors(m)) {
    const double dh = static_cast<double>(g.degree(h));
    const double c_from = neighbor_count(h, from);
    const double c_to = neighbor_count(h, to);
    sq_sum_ += 2.0 * (1.0 - c_from + c_to) / (dh * dh);
    add_count(counts_[h], from, -1);
    add_count(counts_[h], to, +1);
    if (assignment_[h] == from) {
      loss_[h] += 1.0 / dh;
      loss_sum_ += 1.0 / dh;
    } else if (assignment_[h] == to) {
      loss_[h] -= 1.0 / dh;
      loss_sum_ -= 1.0 / dh;
    }
  }
  const double dm = static_cast<double>(g.degree(m));
  const double new_loss = 1.0 - neighbor_count(m, to) / dm;
  loss_sum_ += new_loss - loss_[m];
  loss_[m] = new_loss;

  assignment_[m] = to;
  --sizes_[from];
  ++sizes_[to];
  if (sizes_[from] == 0) --live_;
}

}  // namespace egocr
