#include "egocr/ego_design.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "egocr/error.hpp"

namespace egocr {

EgoClustering singleton_clustering(const Graph& g, double lambda) {
  return EgoClustering::singleton(g, lambda);
}

StatsSnapshot recompute_stats(const Graph& g, const EgoClustering& c) {
  const std::size_t n = g.size();
  StatsSnapshot out;
  out.loss.assign(n, 0.0);
  if (n == 0) return out;

  // Off-own-cluster squared shares, per unit.
  std::vector<double> cross_sq(n, 0.0);
  for (UnitId i = 0; i < n; ++i) {
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty()) continue;
    std::map<ClusterId, std::size_t> row;
    for (UnitId j : nbrs) ++row[c.cluster_of(j)];
    const double d = static_cast<double>(nbrs.size());
    const auto own = row.find(c.cluster_of(i));
    out.loss[i] = 1.0 - (own == row.end() ? 0.0 : static_cast<double>(own->second) / d);
    for (const auto& [k, count] : row) {
      if (k != c.cluster_of(i)) cross_sq[i] += (count / d) * (count / d);
    }
  }

  double loss_sum = 0.0;
  for (double r : out.loss) loss_sum += r;
  out.r_bar = loss_sum / static_cast<double>(n);

  double first = 0.0;
  double second = 0.0;
  for (UnitId i = 0; i < n; ++i) {
    if (g.degree(i) == 0) continue;
    first += cross_sq[i];
    second += (out.loss[i] - out.r_bar) * (out.loss[i] - out.r_bar);
  }
  out.b = (first + second) / static_cast<double>(n);
  return out;
}

DesignStats reassignment_delta(const Graph& g, const EgoClustering& c, UnitId m, ClusterId k1,
                               ClusterId k2) {
  if (m >= c.size() || c.cluster_of(m) != k1) throw Error("unit is not a member of the source cluster");
  if (k1 == k2) throw Error("source and target cluster coincide");
  return c.evaluate_reassignment(g, m, k2);
}

void apply_reassignment(const Graph& g, EgoClustering& c, UnitId m, ClusterId k2) {
  c.apply_reassignment(g, m, k2);
}

namespace {

// Unordered index set with O(1) insert-free removal.
class IndexPool {
 public:
  explicit IndexPool(std::size_t universe) : pos_(universe, kAbsent) {}

  void insert(UnitId u) {
    pos_[u] = items_.size();
    items_.push_back(u);
  }
  void erase(UnitId u) {
    const std::size_t p = pos_[u];
    if (p == kAbsent) return;
    const UnitId last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[u] = kAbsent;
  }
  bool contains(UnitId u) const { return pos_[u] != kAbsent; }
  const std::vector<UnitId>& items() const { return items_; }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos_;
  std::vector<UnitId> items_;
};

}  // namespace

EgoClustering select_egos(const Graph& g, EgoClustering c, double lambda, Rng& rng,
                          DesignTrace* trace, std::span<const UnitId> locked) {
  if (g.edge_count() == 0) throw Error("no interference structure to optimize");
  c.set_lambda(lambda);

  const std::size_t n = g.size();
  std::vector<char> is_locked(n, 0);
  for (UnitId u : locked) is_locked.at(u) = 1;

  IndexPool candidates(n);
  for (UnitId u = 0; u < n; ++u) {
    if (!is_locked[u] && c.is_ego(u) && c.cluster_size(u) == 1) candidates.insert(u);
  }

  double obj = c.objective();
  if (trace) trace->objectives.push_back(obj);

  std::vector<UnitId> pool;
  std::vector<UnitId> alters;
  for (;;) {
    pool = candidates.items();
    bool selected = false;
    while (!pool.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const std::size_t slot = pick(rng);
      const UnitId ego = pool[slot];

      alters.clear();
      for (UnitId v : g.neighbors(ego)) {
        if (candidates.contains(v)) alters.push_back(v);
      }
      const double candidate_obj =
          alters.empty() ? obj : [&] {
            const auto s = c.evaluate_merge(g, ego, alters);
            return objective(s.r_bar, s.b, lambda);
          }();

      if (improves(candidate_obj, obj)) {
        c.apply_merge(g, ego, alters);
        obj = c.objective();
        candidates.erase(ego);
        for (UnitId a : alters) candidates.erase(a);
        if (trace) {
          trace->objectives.push_back(obj);
          ++trace->egos_selected;
        }
        selected = true;
        break;
      }
      pool[slot] = pool.back();
      pool.pop_back();
    }
    if (!selected) break;
  }
  return c;
}

EgoClustering reassign_alters(const Graph& g, EgoClustering c, double lambda, Rng& rng,
                              DesignTrace* trace) {
  c.set_lambda(lambda);
  std::vector<UnitId> considered;
  for (UnitId m = 0; m < g.size(); ++m) {
    if (c.is_ego(m)) continue;
    std::size_t egos = 0;
    for (UnitId v : g.neighbors(m)) egos += c.is_ego(v);
    if (egos >= 2) considered.push_back(m);
  }
  std::shuffle(considered.begin(), considered.end(), rng);

  double obj = c.objective();
  if (trace && trace->objectives.empty()) trace->objectives.push_back(obj);

  bool moved = true;
  while (moved) {
    moved = false;
    for (UnitId m : considered) {
      for (UnitId j : g.neighbors(m)) {
        if (!c.is_ego(j) || j == c.cluster_of(m)) continue;
        const auto s = c.evaluate_reassignment(g, m, j);
        if (improves(objective(s.r_bar, s.b, lambda), obj)) {
          c.apply_reassignment(g, m, j);
          obj = c.objective();
          moved = true;
          if (trace) {
            trace->objectives.push_back(obj);
            ++trace->reassignments;
          }
        }
      }
    }
  }
  return c;
}

void seed_predetermined_egos(const Graph& g, EgoClustering& c, std::span<const UnitId> egos) {
  std::vector<char> is_fixed(g.size(), 0);
  for (UnitId e : egos) {
    if (e >= g.size()) throw Error("predetermined ego out of range");
    is_fixed[e] = 1;
  }
  std::vector<UnitId> alters;
  for (UnitId e : egos) {
    if (!c.is_ego(e) || c.cluster_size(e) != 1) {
      throw Error("predetermined ego " + std::to_string(g.external_id(e)) + " was already claimed");
    }
    alters.clear();
    for (UnitId v : g.neighbors(e)) {
      if (!is_fixed[v] && c.is_ego(v) && c.cluster_size(v) == 1) alters.push_back(v);
    }
    if (!alters.empty()) c.apply_merge(g, e, alters);
  }
}

EgoClustering build_design(const Graph& g, const DesignOptions& options, std::uint64_t seed,
                           DesignTrace* trace) {
  Rng rng(seed);
  EgoClustering c = singleton_clustering(g, options.lambda);
  seed_predetermined_egos(g, c, options.predetermined_egos);
  c = select_egos(g, std::move(c), options.lambda, rng, trace, options.predetermined_egos);
  return reassign_alters(g, std::move(c), options.lambda, rng, trace);
}

EgoClustering build_design(const Graph& g, double lambda, std::uint64_t seed, DesignTrace* trace) {
  DesignOptions options;
  options.lambda = lambda;
  return build_design(g, options, seed, trace);
}

}  // namespace egocr
