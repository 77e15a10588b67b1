#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "egocr/error.hpp"
#include "egocr/generators.hpp"
#include "egocr/outcomes.hpp"
#include "egocr/randomization.hpp"
#include "egocr/report.hpp"
#include "egocr/study.hpp"
#include "test_util.hpp"

using namespace egocr;

TEST(Generators, ErMeanDegree) {
  double total = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    const Graph g = gen_er(500, 15.0 / 500.0, rng);
    total += 2.0 * static_cast<double>(g.edge_count()) / 500.0;
  }
  EXPECT_NEAR(total / 200.0, 15.0 * 499.0 / 500.0, 1.0);
}

TEST(Generators, ErPreconditionsAndDeterminism) {
  Rng rng(1);
  EXPECT_THROW(gen_er(10, 0.0, rng), Error);
  EXPECT_THROW(gen_er(10, 1.0, rng), Error);
  Rng a(9), b(9);
  EXPECT_EQ(gen_er(300, 0.05, a), gen_er(300, 0.05, b));
}

TEST(Generators, BaEdgeCountAndMinDegree) {
  for (std::size_t m : {1u, 3u, 6u}) {
    Rng rng(m);
    const std::size_t n = 400;
    const Graph g = gen_ba(n, m, rng);
    EXPECT_EQ(g.edge_count(), m * (n - m - 1) + m * (m + 1) / 2);
    for (UnitId i = 0; i < n; ++i) EXPECT_GE(g.degree(i), m);
    Rng again(m);
    EXPECT_EQ(gen_ba(n, m, again), g);
  }
  Rng rng(1);
  EXPECT_THROW(gen_ba(5, 5, rng), Error);
  EXPECT_THROW(gen_ba(5, 0, rng), Error);
}

TEST(Generators, CommunityStructure) {
  double deg = 0;
  double within = 0;
  double cross = 0;
  const std::size_t n = 1000;
  const std::size_t s = 4;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto cg = gen_community(n, s, 8.0, 11.0, rng);
    ASSERT_EQ(cg.graph.size(), n);
    EXPECT_EQ(std::set<double>(cg.z.begin(), cg.z.end()).size(), s);
    deg += 2.0 * static_cast<double>(cg.graph.edge_count()) / n;
    for (const auto& [i, j] : cg.graph.edges()) (cg.community[i] == cg.community[j] ? within : cross) += 1;
  }
  deg /= 100;
  EXPECT_NEAR(deg, 11.0, 11.0 * 0.15);
  const double within_pairs = s * (n / s) * (n / s - 1) / 2.0;
  const double cross_pairs = n * (n - 1) / 2.0 - within_pairs;
  const double ratio = (within / within_pairs) / (cross / cross_pairs);
  EXPECT_NEAR(ratio, 8.0, 8.0 * 0.25);
}

TEST(Generators, CommunityUnevenSizesAndZ) {
  Rng rng(4);
  const auto cg = gen_community(103, 4, 8.0, 6.0, rng);
  std::vector<std::size_t> sizes(4, 0);
  for (auto k : cg.community) ++sizes[k];
  EXPECT_LE(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()), 1u);
  double mean = 0, var = 0;
  for (double z : cg.z) mean += z;
  mean /= 103;
  for (double z : cg.z) var += (z - mean) * (z - mean);
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(var / 103, 1.0, 1e-12);
  EXPECT_THROW(gen_community(100, 1, 8.0, 6.0, rng), Error);
}

TEST(Outcomes, ConstantField) {
  const Graph g = testutil::random_er(50, 0.1, 1);
  OutcomeModel m;
  m.beta = 0;
  m.gamma = 0;
  m.sigma = 0;
  Rng rng(1);
  const std::vector<std::uint8_t> t(50, 1);
  const auto y = simulate_outcomes(g, t, exposures(g, t), m, rng);
  for (double v : y) EXPECT_EQ(v, 2.0);
}

TEST(Outcomes, CorrelatedOnEdgelessGraphIsDeterministic) {
  const Graph g = load_edge_list("nodes: 6\n");
  OutcomeModel m;
  m.error = ErrorModel::Correlated;
  const std::vector<std::uint8_t> t{0, 1, 0, 1, 1, 0};
  const auto rho = exposures(g, t);
  Rng a(1), b(2);
  const auto ya = simulate_outcomes(g, t, rho, m, a);
  EXPECT_EQ(ya, simulate_outcomes(g, t, rho, m, b));
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(ya[i], 2.0 + 2.5 * t[i]);
}

TEST(Outcomes, IidNoiseVariance) {
  const std::size_t n = 100000;
  const Graph g = load_edge_list("nodes: " + std::to_string(n) + "\n");
  OutcomeModel m;
  m.sigma = 1.5;
  std::vector<std::uint8_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i % 2;
  const auto rho = exposures(g, t);
  Rng rng(8);
  const auto y = simulate_outcomes(g, t, rho, m, rng);
  double mean = 0, ss = 0;
  for (std::size_t i = 0; i < n; ++i) mean += y[i] - (2.0 + 2.5 * t[i]);
  mean /= n;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (2.0 + 2.5 * t[i]) - mean;
    ss += e * e;
  }
  EXPECT_NEAR(ss / (n - 1), 2.25, 2.25 * 0.02);
}

TEST(Outcomes, ConfoundedNeedsZ) {
  const Graph g = testutil::path3();
  OutcomeModel m;
  m.error = ErrorModel::Confounded;
  const std::vector<std::uint8_t> t{1, 0, 1};
  Rng rng(1);
  EXPECT_THROW(simulate_outcomes(g, t, exposures(g, t), m, rng), Error);
  m.sigma = 0;
  const std::vector<double> z{-1, 0, 1};
  const auto y = simulate_outcomes(g, t, exposures(g, t), m, rng, z);
  EXPECT_NEAR(y[2], 2 + 2.5 + 0 + 0.8, 1e-12);
}

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.network.model = NetworkModel::ErdosRenyi;
  cfg.network.n = 150;
  cfg.network.p = 0.05;
  cfg.designs = {DesignKind::EgoCr, DesignKind::CompleteRandomization, DesignKind::ThreeNet,
                 DesignKind::RandomEgo};
  cfg.reps = 12;
  cfg.base_seed = 42;
  return cfg;
}

}  // namespace

TEST(Study, ConfigRoundTrip) {
  const auto cfg = small_config();
  const auto back = parse_sim_config(to_json(cfg));
  EXPECT_EQ(to_json(back), to_json(cfg));
}

TEST(Study, ConfigRejectsUnknownKeys) {
  EXPECT_THROW(parse_sim_config(R"({"network":{"model":"er","n":100,"p":0.1},"designs":["cr"],"reps":1,"base_seed":1,"extra":1})"), Error);
  EXPECT_THROW(parse_sim_config(R"({"network":{"model":"er","n":100,"p":0.1,"q":2},"designs":["cr"],"reps":1,"base_seed":1})"), Error);
  EXPECT_THROW(parse_sim_config(R"({"network":{"model":"er","n":100,"p":0.1},"designs":["cr"],"reps":1,"base_seed":1,"outcome":{"delta":1}})"), Error);
  EXPECT_THROW(parse_sim_config(R"({"network":{"model":"er","n":100,"p":1.5},"designs":["cr"],"reps":1,"base_seed":1})"), Error);
  EXPECT_THROW(parse_sim_config(R"({"network":{"model":"er","n":100,"p":0.1},"designs":[],"reps":1,"base_seed":1})"), Error);
  EXPECT_THROW(parse_sim_config(R"({"network":{"model":"er","n":100,"p":0.1},"designs":["cr"],"reps":0,"base_seed":1})"), Error);
  EXPECT_THROW(parse_sim_config(R"({"network":{"model":"ba","n":100,"m":2},"designs":["cr"],"reps":1,"base_seed":1,"outcome":{"error_model":"confounded"}})"), Error);
  EXPECT_THROW(parse_sim_config("not json"), Error);
}

TEST(Study, TrueTauUsedForBias) {
  auto cfg = small_config();
  cfg.designs = {DesignKind::EgoCr};
  const auto rep = run_study(cfg, 1);
  EXPECT_DOUBLE_EQ(rep.true_tau, 7.5);
  EXPECT_DOUBLE_EQ(rep.true_gamma, 5.0);
  const auto records = [&] {
    std::vector<ReplicationRecord> out;
    for (std::size_t r = 0; r < cfg.reps; ++r) out.push_back(run_replication(cfg, r)[0]);
    return out;
  }();
  double mean = 0;
  for (const auto& rec : records) mean += rec.tau_hat;
  mean /= static_cast<double>(records.size());
  EXPECT_NEAR(rep.designs[0].tau.bias, mean - 7.5, 1e-12);
}

TEST(Study, SingleReplicationConvention) {
  auto cfg = small_config();
  cfg.reps = 1;
  const auto rep = run_study(cfg, 1);
  for (const auto& d : rep.designs) {
    EXPECT_EQ(d.tau.sd, 0.0);
    EXPECT_DOUBLE_EQ(d.tau.rmse, std::fabs(d.tau.bias));
    EXPECT_DOUBLE_EQ(d.gamma.rmse, std::fabs(d.gamma.bias));
  }
}

TEST(Study, RmseDecomposition) {
  const auto rep = run_study(small_config(), 1);
  const double reps = static_cast<double>(rep.config.reps);
  for (const auto& d : rep.designs) {
    EXPECT_EQ(d.reps_completed, rep.config.reps);
    for (const auto* e : {&d.tau, &d.gamma}) {
      EXPECT_NEAR(e->rmse * e->rmse, e->bias * e->bias + e->sd * e->sd * (reps - 1) / reps, 1e-9);
      EXPECT_GE(e->rejection_rate, 0.0);
      EXPECT_LE(e->rejection_rate, 1.0);
      EXPECT_GE(e->coverage, 0.0);
      EXPECT_LE(e->coverage, 1.0);
    }
  }
}

TEST(Study, IndependentOfWorkerCount) {
  const auto cfg = small_config();
  const auto one = emit_report(run_study(cfg, 1), "csv");
  EXPECT_EQ(one, emit_report(run_study(cfg, 3), "csv"));
  EXPECT_EQ(one, emit_report(run_study(cfg, 8), "csv"));
}

TEST(Study, DesignStreamsIndependentOfDesignSet) {
  auto both = small_config();
  auto single = small_config();
  single.designs = {DesignKind::RandomEgo};
  for (std::size_t r = 0; r < 3; ++r) {
    const auto a = run_replication(both, r).back();
    const auto b = run_replication(single, r).front();
    EXPECT_EQ(a.tau_hat, b.tau_hat);
  }
}

TEST(Report, CsvParsesBack) {
  const auto rep = run_study(small_config(), 1);
  const auto csv = emit_report(rep, "csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "design,estimand,metric,value");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 4u);
    if (cells[0] == "ego_cr" && cells[1] == "tau" && cells[2] == "bias") {
      EXPECT_EQ(std::stod(cells[3]), rep.designs[0].tau.bias);
    }
    if (cells[0] == "cr" && cells[1] == "gamma" && cells[2] == "rmse") {
      EXPECT_EQ(std::stod(cells[3]), rep.designs[1].gamma.rmse);
    }
  }
  EXPECT_EQ(rows, rep.designs.size() * 15);
}

TEST(Report, MarkdownOneRowPerDesign) {
  const auto rep = run_study(small_config(), 1);
  const auto md = emit_report(rep, "markdown");
  std::size_t rows = 0;
  std::istringstream in(md);
  std::string line;
  while (std::getline(in, line)) rows += line.rfind("| ", 0) == 0;
  EXPECT_EQ(rows, 1 + rep.designs.size());  // header + designs
  EXPECT_THROW(emit_report(rep, "xml"), Error);
  SimReport empty;
  EXPECT_THROW(emit_report(empty, "csv"), Error);
}
