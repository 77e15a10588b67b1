#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "egocr/baselines.hpp"
#include "egocr/diagnostics.hpp"
#include "egocr/ego_design.hpp"
#include "egocr/error.hpp"
#include "egocr/generators.hpp"
#include "egocr/inference.hpp"
#include "egocr/io.hpp"
#include "egocr/outcomes.hpp"
#include "egocr/randomization.hpp"
#include "egocr/report.hpp"
#include "egocr/study.hpp"

namespace fs = std::filesystem;
using namespace egocr;

namespace {

constexpr const char* kFormats = R"(File formats:
  edge list     one "u v" pair of nonnegative integer unit ids per line; '#'
                starts a comment; an optional first line "nodes: N" declares
                units 0..N-1 so isolated units are kept.
  clustering    TSV with header unit, cluster, ego; cluster is the unit id of
                the cluster's ego (3-net: its seed); ego is 1 exactly when
                unit == cluster.
  stats         TSV with header K_n, r_bar, b_n, objective, lambda, seed,
                design and one data row.
  assignment    TSV with header unit, treatment (0 or 1).
  outcomes      TSV with header unit, outcome.
  exposures     TSV with header unit, rho.
  z             TSV with header unit, z (community graphs only).
  estimate      JSON object with estimates, standard errors, intervals,
                z statistics, p-values and the design statistics used.
  diagnose      JSON object mean_N, mean_N2, mean_N3, mean_L3, max_N.
  config        JSON study configuration, see README; unknown keys are
                rejected.)";

Graph read_graph(const std::string& path) {
  std::istringstream in(read_file(path));
  return load_edge_list(in);
}

template <typename Write>
void write_output(const std::string& path, Write write) {
  std::ostringstream out;
  write(out);
  write_file_atomic(path, out.str());
}

EgoClustering load_clustering(const Graph& g, const std::string& path) {
  std::istringstream in(read_file(path));
  auto assignment = read_clustering_tsv(in, g);
  bool adjacent = true;
  for (UnitId i = 0; i < g.size() && adjacent; ++i) {
    adjacent = assignment[i] == i || g.has_edge(i, assignment[i]);
  }
  return EgoClustering::from_assignment(g, std::move(assignment),
                                        adjacent ? DesignKind::EgoCr : DesignKind::ThreeNet);
}

struct GenerateArgs {
  std::string kind;
  std::size_t n = 0;
  double p = 0.0;
  std::size_t m = 0;
  std::size_t communities = 4;
  double ratio = 8.0;
  double avg_degree = 11.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string z_out;
};

void run_generate(const GenerateArgs& a) {
  Rng rng(a.seed);
  if (a.kind == "er") {
    const Graph g = gen_er(a.n, a.p, rng);
    write_output(a.out, [&](std::ostream& o) { write_edge_list(o, g); });
  } else if (a.kind == "ba") {
    const Graph g = gen_ba(a.n, a.m, rng);
    write_output(a.out, [&](std::ostream& o) { write_edge_list(o, g); });
  } else {
    const auto cg = gen_community(a.n, a.communities, a.ratio, a.avg_degree, rng);
    write_output(a.out, [&](std::ostream& o) { write_edge_list(o, cg.graph); });
    const std::string z_path = a.z_out.empty() ? a.out + ".z.tsv" : a.z_out;
    write_output(z_path, [&](std::ostream& o) { write_z_tsv(o, cg.graph, cg.z); });
  }
}

struct DesignArgs {
  std::string edges;
  std::string method = "ego_cr";
  double lambda = 1.0;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string stats;
};

void run_design(const DesignArgs& a) {
  const Graph g = read_graph(a.edges);
  const DesignKind kind = parse_design_kind(a.method);
  if (kind != DesignKind::CompleteRandomization && !a.seed) {
    throw Error("--seed is required for method " + a.method);
  }
  const std::uint64_t seed = a.seed.value_or(0);
  EgoClustering c;
  switch (kind) {
    case DesignKind::EgoCr: c = build_design(g, a.lambda, seed); break;
    case DesignKind::CompleteRandomization: c = complete_randomization(g); break;
    case DesignKind::ThreeNet: c = three_net(g, seed); break;
    case DesignKind::RandomEgo: c = random_ego_clusters(g, seed); break;
  }
  c.set_lambda(a.lambda);
  const DesignRecord record{kind, c.cluster_count(), c.r_bar(), c.b(), c.objective(), a.lambda, seed};
  write_output(a.out, [&](std::ostream& o) { write_clustering_tsv(o, g, c); });
  write_output(a.stats.empty() ? a.out + ".stats.tsv" : a.stats,
               [&](std::ostream& o) { write_design_stats(o, record); });
}

void run_randomize(const std::string& clustering, std::uint64_t seed, const std::string& out) {
  std::istringstream in(read_file(clustering));
  auto rows = read_clustering_rows(in);
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first) {
      throw Error("clustering: unit " + std::to_string(rows[i].first) + " listed twice");
    }
  }
  std::vector<ExternalId> units;
  std::vector<ExternalId> ids;
  for (const auto& [u, k] : rows) {
    units.push_back(u);
    ids.push_back(k);
  }
  std::vector<ExternalId> distinct = ids;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (ExternalId k : distinct) {
    if (!std::binary_search(units.begin(), units.end(), k)) {
      throw Error("clustering: cluster " + std::to_string(k) + " is not a listed unit");
    }
  }
  std::vector<ClusterId> dense(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    dense[i] = static_cast<ClusterId>(std::lower_bound(distinct.begin(), distinct.end(), ids[i]) - distinct.begin());
  }
  Rng rng(seed);
  const auto a = assign_clusters(dense, rng);
  write_output(out, [&](std::ostream& o) { write_assignment_tsv(o, units, a.treatment); });
}

struct OutcomeArgs {
  std::string edges;
  std::string assignment;
  std::string z;
  OutcomeModel model;
  std::string error_model = "iid_normal";
  std::uint64_t seed = 0;
  std::string out;
};

void run_outcomes(OutcomeArgs a) {
  const Graph g = read_graph(a.edges);
  std::istringstream tin(read_file(a.assignment));
  const auto t = read_assignment_tsv(tin, g);
  a.model.error = parse_error_model(a.error_model);
  std::vector<double> z;
  if (!a.z.empty()) {
    std::istringstream zin(read_file(a.z));
    std::string line;
    std::getline(zin, line);
    if (line != "unit\tz") throw Error("z: expected header 'unit\\tz'");
    std::stringstream relabeled;
    relabeled << "unit\toutcome\n" << zin.rdbuf();
    z = read_outcomes_tsv(relabeled, g);
  }
  Rng rng(a.seed);
  const auto y = simulate_outcomes(g, t, exposures(g, t), a.model, rng, z);
  write_output(a.out, [&](std::ostream& o) { write_outcomes_tsv(o, g, y); });
}

struct EstimateArgs {
  std::string edges;
  std::string clustering;
  std::string assignment;
  std::string outcomes;
  double level = 0.05;
  std::string out;
  std::string exposures_out;
};

void run_estimate(const EstimateArgs& a) {
  const Graph g = read_graph(a.edges);
  const auto c = load_clustering(g, a.clustering);
  std::istringstream tin(read_file(a.assignment));
  const auto t = read_assignment_tsv(tin, g);
  std::istringstream yin(read_file(a.outcomes));
  const auto y = read_outcomes_tsv(yin, g);
  const auto rho = exposures(g, t);
  const auto fit = fit_ols(t, rho, y);
  const auto result = effect_inference(fit, c.r_bar(), c.b(), g.size(), a.level, c.cluster_count());
  write_output(a.out, [&](std::ostream& o) { o << to_json_text(result); });
  if (!a.exposures_out.empty()) {
    write_output(a.exposures_out, [&](std::ostream& o) { write_exposures_tsv(o, g, rho); });
  }
  std::cout << format_estimation_table(result);
}

void run_diagnose(const std::string& edges, const std::string& clustering, const std::string& out) {
  const Graph g = read_graph(edges);
  const auto c = load_clustering(g, clustering);
  const auto d = dependency_diagnostics(g, c);
  write_output(out, [&](std::ostream& o) { o << to_json_text(d); });
}

void run_simulate(const std::string& config, const std::string& out_dir, unsigned threads) {
  const SimConfig cfg = parse_sim_config(read_file(config));
  const SimReport report = run_study(cfg, threads);
  fs::create_directories(out_dir);
  const std::string md = emit_report(report, "markdown");
  write_file_atomic(fs::path(out_dir) / "report.csv", emit_report(report, "csv"));
  write_file_atomic(fs::path(out_dir) / "report.md", md);
  std::cout << md;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ego-cluster randomized designs for experiments under network interference"};
  app.footer(kFormats);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a random network");
  g->add_option("--kind", gen.kind, "er, ba or community")->required()->check(CLI::IsMember({"er", "ba", "community"}));
  g->add_option("--n", gen.n, "Number of units")->required();
  g->add_option("--p", gen.p, "Edge probability (er)");
  g->add_option("--m", gen.m, "Edges per arriving unit (ba)");
  g->add_option("--communities", gen.communities, "Number of communities (community)")->capture_default_str();
  g->add_option("--ratio", gen.ratio, "Within/cross edge probability ratio (community)")->capture_default_str();
  g->add_option("--avg-degree", gen.avg_degree, "Target average degree (community)")->capture_default_str();
  g->add_option("--seed", gen.seed, "64-bit seed")->required();
  g->add_option("--out", gen.out, "Edge list output")->required();
  g->add_option("--z-out", gen.z_out, "Z sidecar output (community; default <out>.z.tsv)");

  DesignArgs des;
  std::uint64_t design_seed = 0;
  auto* d = app.add_subcommand("design", "Build a cluster design for a network");
  d->add_option("--edges", des.edges, "Edge list")->required();
  d->add_option("--method", des.method, "ego_cr, cr, three_net or random_ego")
      ->capture_default_str()
      ->check(CLI::IsMember({"ego_cr", "cr", "three_net", "random_ego"}));
  d->add_option("--lambda", des.lambda, "Objective weight in (0, 1]")->capture_default_str();
  auto* seed_opt = d->add_option("--seed", design_seed, "64-bit seed (all methods but cr)");
  d->add_option("--out", des.out, "Clustering output")->required();
  d->add_option("--stats", des.stats, "Design statistics output (default <out>.stats.tsv)");

  std::string rnd_clustering;
  std::string rnd_out;
  std::uint64_t rnd_seed = 0;
  auto* r = app.add_subcommand("randomize", "Draw a cluster-level treatment assignment");
  r->add_option("--clustering", rnd_clustering, "Clustering file")->required();
  r->add_option("--seed", rnd_seed, "64-bit seed")->required();
  r->add_option("--out", rnd_out, "Assignment output")->required();

  OutcomeArgs oa;
  auto* o = app.add_subcommand("outcomes", "Simulate outcomes under the linear interference model");
  o->add_option("--edges", oa.edges, "Edge list")->required();
  o->add_option("--assignment", oa.assignment, "Assignment file")->required();
  o->add_option("--alpha", oa.model.alpha)->capture_default_str();
  o->add_option("--beta", oa.model.beta)->capture_default_str();
  o->add_option("--gamma", oa.model.gamma)->capture_default_str();
  o->add_option("--eta", oa.model.eta, "Confounder weight")->capture_default_str();
  o->add_option("--sigma", oa.model.sigma, "Noise scale")->capture_default_str();
  o->add_option("--error-model", oa.error_model, "iid_normal, correlated or confounded")
      ->capture_default_str()
      ->check(CLI::IsMember({"iid_normal", "correlated", "confounded"}));
  o->add_option("--z", oa.z, "Z sidecar (confounded)");
  o->add_option("--seed", oa.seed, "64-bit seed")->required();
  o->add_option("--out", oa.out, "Outcomes output")->required();

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Estimate global and spillover effects");
  e->add_option("--edges", est.edges, "Edge list")->required();
  e->add_option("--clustering", est.clustering, "Clustering file")->required();
  e->add_option("--assignment", est.assignment, "Assignment file")->required();
  e->add_option("--outcomes", est.outcomes, "Outcomes file")->required();
  e->add_option("--level", est.level, "Test level")->capture_default_str();
  e->add_option("--out", est.out, "JSON output")->required();
  e->add_option("--exposures-out", est.exposures_out, "Optional exposures output");

  std::string dia_edges, dia_clustering, dia_out;
  auto* x = app.add_subcommand("diagnose", "Dependency-graph diagnostics for a design");
  x->add_option("--edges", dia_edges, "Edge list")->required();
  x->add_option("--clustering", dia_clustering, "Clustering file")->required();
  x->add_option("--out", dia_out, "JSON output")->required();

  std::string sim_config, sim_out;
  unsigned sim_threads = 0;
  auto* s = app.add_subcommand("simulate", "Run a simulation study");
  s->add_option("--config", sim_config, "JSON study configuration")->required();
  s->add_option("--out-dir", sim_out, "Directory for report.csv and report.md")->required();
  s->add_option("--threads", sim_threads, "Worker threads (0 = available parallelism)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (g->parsed()) {
      run_generate(gen);
    } else if (d->parsed()) {
      if (seed_opt->count() > 0) des.seed = design_seed;
      run_design(des);
    } else if (r->parsed()) {
      run_randomize(rnd_clustering, rnd_seed, rnd_out);
    } else if (o->parsed()) {
      run_outcomes(oa);
    } else if (e->parsed()) {
      run_estimate(est);
    } else if (x->parsed()) {
      run_diagnose(dia_edges, dia_clustering, dia_out);
    } else if (s->parsed()) {
      run_simulate(sim_config, sim_out, sim_threads);
    }
  } catch (const std::exception& ex) {
    std::string msg = ex.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "egocr: error: " << msg << '\n';
    return 1;
  }
  return 0;
}
