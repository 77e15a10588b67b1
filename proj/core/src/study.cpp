#include "egocr/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <initializer_list>
#include <mutex>
#include <thread>

#include "egocr/baselines.hpp"
#include "egocr/ego_design.hpp"
#include "egocr/error.hpp"
#include "egocr/generators.hpp"
#include "egocr/inference.hpp"
#include "egocr/randomization.hpp"
#include "egocr/rng.hpp"
#include "json.hpp"

namespace egocr {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config parsing.

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!obj.is_object()) throw Error(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T required(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) throw Error("missing '" + std::string(key) + "' in " + std::string(where));
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error("invalid value for '" + std::string(key) + "' in " + std::string(where));
  }
}

template <typename T>
T optional(const json& obj, const char* key, T fallback, std::string_view where) {
  return obj.contains(key) ? required<T>(obj, key, where) : fallback;
}

std::string_view to_string(NetworkModel model) {
  switch (model) {
    case NetworkModel::ErdosRenyi: return "er";
    case NetworkModel::BarabasiAlbert: return "ba";
    case NetworkModel::Community: return "community";
  }
  return "unknown";
}

}  // namespace

void validate(const SimConfig& cfg) {
  const auto& net = cfg.network;
  if (net.n < 4) throw Error("network.n must be at least 4");
  switch (net.model) {
    case NetworkModel::ErdosRenyi:
      if (!(net.p > 0.0 && net.p < 1.0)) throw Error("network.p must lie in (0, 1)");
      break;
    case NetworkModel::BarabasiAlbert:
      if (net.m < 1 || net.n <= net.m) throw Error("network.m must satisfy 1 <= m < n");
      break;
    case NetworkModel::Community:
      if (net.communities < 2) throw Error("network.communities must be at least 2");
      if (!(net.within_cross_ratio > 0.0)) throw Error("network.within_cross_ratio must be positive");
      if (!(net.target_avg_degree > 0.0)) throw Error("network.target_avg_degree must be positive");
      break;
  }
  if (cfg.designs.empty()) throw Error("designs must not be empty");
  if (cfg.reps < 1) throw Error("reps must be at least 1");
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw Error("level must lie in (0, 1)");
  if (!(cfg.lambda > 0.0 && cfg.lambda <= 1.0)) throw Error("lambda must lie in (0, 1]");
  if (!(cfg.outcome.sigma >= 0.0)) throw Error("outcome.sigma must be nonnegative");
  if (cfg.outcome.error == ErrorModel::Confounded && net.model != NetworkModel::Community) {
    throw Error("the confounded error model needs the community network (it supplies Z)");
  }
}

SimConfig parse_sim_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, {"network", "designs", "outcome", "reps", "base_seed", "level", "lambda"}, "config");

  SimConfig cfg;
  const json& net = doc.contains("network") ? doc.at("network") : throw Error("missing 'network' in config");
  reject_unknown(net, {"model", "n", "p", "m", "communities", "within_cross_ratio", "target_avg_degree"},
                 "network");
  const auto model = required<std::string>(net, "model", "network");
  cfg.network.n = required<std::size_t>(net, "n", "network");
  if (model == "er") {
    cfg.network.model = NetworkModel::ErdosRenyi;
    cfg.network.p = required<double>(net, "p", "network");
  } else if (model == "ba") {
    cfg.network.model = NetworkModel::BarabasiAlbert;
    cfg.network.m = required<std::size_t>(net, "m", "network");
  } else if (model == "community") {
    cfg.network.model = NetworkModel::Community;
    cfg.network.communities = optional<std::size_t>(net, "communities", 4, "network");
    cfg.network.within_cross_ratio = optional<double>(net, "within_cross_ratio", 8.0, "network");
    cfg.network.target_avg_degree = optional<double>(net, "target_avg_degree", 11.0, "network");
  } else {
    throw Error("unknown network model '" + model + "'");
  }

  for (const auto& name : required<std::vector<std::string>>(doc, "designs", "config")) {
    cfg.designs.push_back(parse_design_kind(name));
  }

  if (doc.contains("outcome")) {
    const json& out = doc.at("outcome");
    reject_unknown(out, {"alpha", "beta", "gamma", "eta", "sigma", "error_model"}, "outcome");
    OutcomeModel& o = cfg.outcome;
    o.alpha = optional<double>(out, "alpha", o.alpha, "outcome");
    o.beta = optional<double>(out, "beta", o.beta, "outcome");
    o.gamma = optional<double>(out, "gamma", o.gamma, "outcome");
    o.eta = optional<double>(out, "eta", o.eta, "outcome");
    o.sigma = optional<double>(out, "sigma", o.sigma, "outcome");
    o.error = parse_error_model(optional<std::string>(out, "error_model", "iid_normal", "outcome"));
  }

  cfg.reps = required<std::size_t>(doc, "reps", "config");
  cfg.base_seed = required<std::uint64_t>(doc, "base_seed", "config");
  cfg.level = optional<double>(doc, "level", 0.05, "config");
  cfg.lambda = optional<double>(doc, "lambda", 1.0, "config");
  validate(cfg);
  return cfg;
}

std::string to_json(const SimConfig& cfg) {
  json net{{"model", to_string(cfg.network.model)}, {"n", cfg.network.n}};
  switch (cfg.network.model) {
    case NetworkModel::ErdosRenyi: net["p"] = cfg.network.p; break;
    case NetworkModel::BarabasiAlbert: net["m"] = cfg.network.m; break;
    case NetworkModel::Community:
      net["communities"] = cfg.network.communities;
      net["within_cross_ratio"] = cfg.network.within_cross_ratio;
      net["target_avg_degree"] = cfg.network.target_avg_degree;
      break;
  }
  json designs = json::array();
  for (auto d : cfg.designs) designs.push_back(to_string(d));
  const auto& o = cfg.outcome;
  return json{{"network", net},
              {"designs", designs},
              {"outcome",
               {{"alpha", o.alpha}, {"beta", o.beta}, {"gamma", o.gamma}, {"eta", o.eta},
                {"sigma", o.sigma}, {"error_model", to_string(o.error)}}},
              {"reps", cfg.reps},
              {"base_seed", cfg.base_seed},
              {"level", cfg.level},
              {"lambda", cfg.lambda}}
      .dump(2);
}

// ---------------------------------------------------------------------------
// Replications.

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t r) noexcept {
  return derive_seed(base_seed, r);
}

namespace {

// Fixed sub-stream indices so a design's randomness does not depend on which
// other designs are configured.
constexpr std::uint64_t kNetworkStream = 0;
std::uint64_t design_stream(DesignKind d) { return 1 + 2 * static_cast<std::uint64_t>(d); }
std::uint64_t outcome_stream(DesignKind d) { return 2 + 2 * static_cast<std::uint64_t>(d); }

struct Network {
  Graph graph;
  std::vector<double> z;
};

Network make_network(const NetworkSpec& spec, Rng& rng) {
  switch (spec.model) {
    case NetworkModel::ErdosRenyi: return {gen_er(spec.n, spec.p, rng), {}};
    case NetworkModel::BarabasiAlbert: return {gen_ba(spec.n, spec.m, rng), {}};
    case NetworkModel::Community: {
      auto cg = gen_community(spec.n, spec.communities, spec.within_cross_ratio, spec.target_avg_degree, rng);
      return {std::move(cg.graph), std::move(cg.z)};
    }
  }
  throw Error("unknown network model");
}

EgoClustering make_design(const Graph& g, DesignKind kind, double lambda, std::uint64_t seed) {
  switch (kind) {
    case DesignKind::EgoCr: return build_design(g, lambda, seed);
    case DesignKind::CompleteRandomization: return complete_randomization(g);
    case DesignKind::ThreeNet: return three_net(g, seed);
    case DesignKind::RandomEgo: return random_ego_clusters(g, seed);
  }
  throw Error("unknown design");
}

bool covers(const Interval& ci, double truth) { return ci.low <= truth && truth <= ci.high; }

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

EstimandSummary summarize_estimand(const std::vector<double>& est, double truth, std::size_t rejects,
                                   std::size_t covered) {
  EstimandSummary s;
  const double k = static_cast<double>(est.size());
  if (est.empty()) return s;
  CompensatedSum sum;
  for (double x : est) sum.add(x);
  const double mean = sum.value() / k;
  CompensatedSum dev2;
  CompensatedSum err2;
  for (double x : est) {
    dev2.add((x - mean) * (x - mean));
    err2.add((x - truth) * (x - truth));
  }
  s.bias = mean - truth;
  s.sd = est.size() > 1 ? std::sqrt(dev2.value() / (k - 1.0)) : 0.0;
  s.rmse = std::sqrt(err2.value() / k);
  s.rejection_rate = static_cast<double>(rejects) / k;
  s.coverage = static_cast<double>(covered) / k;
  return s;
}

}  // namespace

std::vector<ReplicationRecord> run_replication(const SimConfig& cfg, std::size_t r) {
  const std::uint64_t seed = replication_seed(cfg.base_seed, r);
  Rng net_rng(derive_seed(seed, kNetworkStream));
  const Network net = make_network(cfg.network, net_rng);
  const Graph& g = net.graph;
  const double true_tau = cfg.outcome.tau();
  const double true_gamma = cfg.outcome.gamma;

  std::vector<ReplicationRecord> out;
  out.reserve(cfg.designs.size());
  for (DesignKind kind : cfg.designs) {
    ReplicationRecord rec;
    try {
      const EgoClustering c = make_design(g, kind, cfg.lambda, derive_seed(seed, design_stream(kind)));
      Rng rng(derive_seed(seed, outcome_stream(kind)));
      const auto assignment = assign(c, rng);
      const auto rho = exposures(g, assignment.treatment);
      const auto y = simulate_outcomes(g, assignment.treatment, rho, cfg.outcome, rng, net.z);
      const auto fit = fit_ols(assignment.treatment, rho, y);
      const auto res = effect_inference(fit, c.r_bar(), c.b(), g.size(), cfg.level, c.cluster_count());
      rec.ok = true;
      rec.tau_hat = res.tau_hat;
      rec.gamma_hat = res.gamma_hat;
      rec.reject_tau = res.reject_tau();
      rec.reject_gamma = res.reject_gamma();
      rec.cover_tau = covers(res.ci_tau, true_tau);
      rec.cover_gamma = covers(res.ci_gamma, true_gamma);
      rec.clusters = static_cast<double>(c.cluster_count());
      rec.r_bar = c.r_bar();
      rec.b = c.b();
    } catch (const Error&) {
      rec = ReplicationRecord{};
    }
    out.push_back(rec);
  }
  return out;
}

DesignSummary summarize(DesignKind design, std::span<const ReplicationRecord> records, double true_tau,
                        double true_gamma) {
  DesignSummary s;
  s.design = design;
  std::vector<double> tau_hats;
  std::vector<double> gamma_hats;
  std::size_t rej_tau = 0, rej_gamma = 0, cov_tau = 0, cov_gamma = 0;
  CompensatedSum clusters, r_bar, b;
  for (const auto& rec : records) {
    if (!rec.ok) {
      ++s.failures;
      continue;
    }
    tau_hats.push_back(rec.tau_hat);
    gamma_hats.push_back(rec.gamma_hat);
    rej_tau += rec.reject_tau;
    rej_gamma += rec.reject_gamma;
    cov_tau += rec.cover_tau;
    cov_gamma += rec.cover_gamma;
    clusters.add(rec.clusters);
    r_bar.add(rec.r_bar);
    b.add(rec.b);
  }
  s.reps_completed = tau_hats.size();
  s.tau = summarize_estimand(tau_hats, true_tau, rej_tau, cov_tau);
  s.gamma = summarize_estimand(gamma_hats, true_gamma, rej_gamma, cov_gamma);
  if (s.reps_completed > 0) {
    const double k = static_cast<double>(s.reps_completed);
    s.mean_clusters = clusters.value() / k;
    s.mean_r_bar = r_bar.value() / k;
    s.mean_b = b.value() / k;
  }
  return s;
}

SimReport run_study(const SimConfig& cfg, unsigned threads) {
  validate(cfg);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.reps));

  std::vector<std::vector<ReplicationRecord>> results(cfg.reps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < cfg.reps; r = next++) {
      try {
        results[r] = run_replication(cfg, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SimReport report;
  report.config = cfg;
  report.true_tau = cfg.outcome.tau();
  report.true_gamma = cfg.outcome.gamma;
  std::vector<ReplicationRecord> column(cfg.reps);
  for (std::size_t d = 0; d < cfg.designs.size(); ++d) {
    for (std::size_t r = 0; r < cfg.reps; ++r) column[r] = results[r][d];
    auto summary = summarize(cfg.designs[d], column, report.true_tau, report.true_gamma);
    if (static_cast<double>(summary.failures) > 0.05 * static_cast<double>(cfg.reps)) {
      throw Error("design " + std::string(to_string(cfg.designs[d])) + " failed in " +
                  std::to_string(summary.failures) + " of " + std::to_string(cfg.reps) + " replications");
    }
    report.designs.push_back(summary);
  }
  return report;
}

}  // namespace egocr
