#include "egocr/io.hpp"

#include <algorithm>
#include <charconv>
#include <initializer_list>
#include <limits>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "egocr/error.hpp"
#include "json.hpp"

namespace egocr {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

struct Row {
  std::size_t line;
  std::vector<std::string> cells;
};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    cells.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cells;
}

std::vector<Row> read_table(std::istream& in, std::initializer_list<std::string_view> header,
                            std::string_view what) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  const auto got = split_tabs(line);
  if (line.empty() || got.size() != header.size() || !std::equal(got.begin(), got.end(), header.begin())) {
    std::string expected;
    for (auto h : header) expected += (expected.empty() ? "" : "\\t") + std::string(h);
    throw ParseError(lineno == 0 ? 1 : lineno, std::string(what) + ": expected header '" + expected + "'");
  }
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_tabs(line);
    if (cells.size() != header.size()) {
      throw ParseError(lineno, std::string(what) + ": expected " + std::to_string(header.size()) + " columns");
    }
    rows.push_back({lineno, std::move(cells)});
  }
  return rows;
}

template <typename T>
T parse_number(const std::string& cell, std::size_t line, std::string_view what) {
  T value{};
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string(what) + ": malformed number '" + cell + "'");
  }
  return value;
}

// Maps rows onto the graph's units; every unit must appear exactly once.
template <typename T, typename Parse>
std::vector<T> by_unit(const std::vector<Row>& rows, const Graph& g, std::string_view what, Parse parse) {
  std::vector<T> out(g.size());
  std::vector<char> seen(g.size(), 0);
  for (const auto& row : rows) {
    const auto id = parse_number<ExternalId>(row.cells[0], row.line, what);
    const UnitId i = g.find_external(id);
    if (i == g.size()) {
      throw Error(std::string(what) + ": unit " + std::to_string(id) + " is not in the edge list");
    }
    if (seen[i]) throw Error(std::string(what) + ": unit " + std::to_string(id) + " listed twice");
    seen[i] = 1;
    out[i] = parse(row);
  }
  for (UnitId i = 0; i < g.size(); ++i) {
    if (!seen[i]) {
      throw Error(std::string(what) + ": unit " + std::to_string(g.external_id(i)) + " is missing");
    }
  }
  return out;
}

std::uint8_t parse_bit(const std::string& cell, std::size_t line, std::string_view what) {
  if (cell == "0") return 0;
  if (cell == "1") return 1;
  throw ParseError(line, std::string(what) + ": expected 0 or 1, got '" + cell + "'");
}

}  // namespace

void write_clustering_tsv(std::ostream& out, const Graph& g, const EgoClustering& c) {
  out << "unit\tcluster\tego\n";
  for (UnitId i = 0; i < g.size(); ++i) {
    out << g.external_id(i) << '\t' << g.external_id(c.cluster_of(i)) << '\t' << (c.is_ego(i) ? 1 : 0)
        << '\n';
  }
}

std::vector<std::pair<ExternalId, ExternalId>> read_clustering_rows(std::istream& in) {
  constexpr std::string_view what = "clustering";
  std::vector<std::pair<ExternalId, ExternalId>> out;
  for (const auto& row : read_table(in, {"unit", "cluster", "ego"}, what)) {
    const auto unit = parse_number<ExternalId>(row.cells[0], row.line, what);
    const auto cluster = parse_number<ExternalId>(row.cells[1], row.line, what);
    const auto ego = parse_bit(row.cells[2], row.line, what);
    if ((unit == cluster) != (ego == 1)) {
      throw ParseError(row.line, "clustering: ego flag must be 1 exactly when unit equals cluster");
    }
    out.emplace_back(unit, cluster);
  }
  return out;
}

std::vector<ClusterId> read_clustering_tsv(std::istream& in, const Graph& g) {
  constexpr std::string_view what = "clustering";
  const auto rows = read_clustering_rows(in);
  std::vector<ClusterId> out(g.size());
  std::vector<char> seen(g.size(), 0);
  for (const auto& [unit, cluster] : rows) {
    const UnitId i = g.find_external(unit);
    if (i == g.size()) throw Error("clustering: unit " + std::to_string(unit) + " is not in the edge list");
    const UnitId k = g.find_external(cluster);
    if (k == g.size()) throw Error("clustering: cluster " + std::to_string(cluster) + " is not a unit in the edge list");
    if (seen[i]) throw Error("clustering: unit " + std::to_string(unit) + " listed twice");
    seen[i] = 1;
    out[i] = k;
  }
  for (UnitId i = 0; i < g.size(); ++i) {
    if (!seen[i]) throw Error(std::string(what) + ": unit " + std::to_string(g.external_id(i)) + " is missing");
  }
  return out;
}

void write_design_stats(std::ostream& out, const DesignRecord& r) {
  out << "K_n\tr_bar\tb_n\tobjective\tlambda\tseed\tdesign\n";
  out << r.clusters << '\t' << format_double(r.r_bar) << '\t' << format_double(r.b) << '\t'
      << format_double(r.objective) << '\t' << format_double(r.lambda) << '\t' << r.seed << '\t'
      << to_string(r.design) << '\n';
}

DesignRecord read_design_stats(std::istream& in) {
  constexpr std::string_view what = "design stats";
  const auto rows = read_table(in, {"K_n", "r_bar", "b_n", "objective", "lambda", "seed", "design"}, what);
  if (rows.size() != 1) throw Error("design stats: expected exactly one data row");
  const auto& row = rows.front();
  DesignRecord r;
  r.clusters = parse_number<std::size_t>(row.cells[0], row.line, what);
  r.r_bar = parse_number<double>(row.cells[1], row.line, what);
  r.b = parse_number<double>(row.cells[2], row.line, what);
  r.objective = row.cells[3] == "inf" ? std::numeric_limits<double>::infinity()
                                      : parse_number<double>(row.cells[3], row.line, what);
  r.lambda = parse_number<double>(row.cells[4], row.line, what);
  r.seed = parse_number<std::uint64_t>(row.cells[5], row.line, what);
  r.design = parse_design_kind(row.cells[6]);
  return r;
}

void write_assignment_tsv(std::ostream& out, std::span<const ExternalId> units,
                          std::span<const std::uint8_t> treatment) {
  if (units.size() != treatment.size()) throw Error("assignment: length mismatch");
  out << "unit\ttreatment\n";
  for (std::size_t i = 0; i < units.size(); ++i) out << units[i] << '\t' << (treatment[i] ? 1 : 0) << '\n';
}

std::vector<std::uint8_t> read_assignment_tsv(std::istream& in, const Graph& g) {
  constexpr std::string_view what = "assignment";
  return by_unit<std::uint8_t>(read_table(in, {"unit", "treatment"}, what), g, what,
                               [&](const Row& row) { return parse_bit(row.cells[1], row.line, what); });
}

namespace {
void write_real_column(std::ostream& out, const Graph& g, std::span<const double> values, const char* name) {
  if (values.size() != g.size()) throw Error(std::string(name) + ": length mismatch");
  out << "unit\t" << name << '\n';
  for (UnitId i = 0; i < g.size(); ++i) out << g.external_id(i) << '\t' << format_double(values[i]) << '\n';
}
}  // namespace

void write_exposures_tsv(std::ostream& out, const Graph& g, std::span<const double> rho) {
  write_real_column(out, g, rho, "rho");
}

void write_outcomes_tsv(std::ostream& out, const Graph& g, std::span<const double> y) {
  write_real_column(out, g, y, "outcome");
}

std::vector<double> read_outcomes_tsv(std::istream& in, const Graph& g) {
  constexpr std::string_view what = "outcomes";
  return by_unit<double>(read_table(in, {"unit", "outcome"}, what), g, what,
                         [&](const Row& row) { return parse_number<double>(row.cells[1], row.line, what); });
}

void write_z_tsv(std::ostream& out, const Graph& g, std::span<const double> z) {
  write_real_column(out, g, z, "z");
}

std::string to_json_text(const EstimationResult& r) {
  const nlohmann::ordered_json doc{
      {"alpha_hat", r.alpha_hat},
      {"beta_hat", r.beta_hat},
      {"gamma_hat", r.gamma_hat},
      {"tau_hat", r.tau_hat},
      {"sigma2_eps_hat", r.sigma2_eps_hat},
      {"se_tau", r.se_tau},
      {"se_gamma", r.se_gamma},
      {"ci_tau", {r.ci_tau.low, r.ci_tau.high}},
      {"ci_gamma", {r.ci_gamma.low, r.ci_gamma.high}},
      {"t_tau", r.t_tau},
      {"t_gamma", r.t_gamma},
      {"p_tau", r.p_tau},
      {"p_gamma", r.p_gamma},
      {"level", r.level},
      {"n", r.n},
      {"K_n", r.clusters},
      {"r_bar", r.r_bar},
      {"b_n", r.b},
  };
  return doc.dump(2) + "\n";
}

std::string to_json_text(const DependencyDiagnostics& d) {
  const nlohmann::ordered_json doc{
      {"mean_N", d.mean_N}, {"mean_N2", d.mean_N2}, {"mean_N3", d.mean_N3},
      {"mean_L3", d.mean_L3}, {"max_N", d.max_N},
  };
  return doc.dump(2) + "\n";
}

std::string format_estimation_table(const EstimationResult& r) {
  std::string out;
  char buf[256];
  const int pct = static_cast<int>(100.0 * (1.0 - r.level) + 0.5);
  std::snprintf(buf, sizeof buf, "%-8s %12s %10s %27s %9s %10s\n", "effect", "estimate", "SE",
                (std::to_string(pct) + "% CI").c_str(), "t", "p");
  out += buf;
  auto row = [&](const char* name, double est, double se, const Interval& ci, double t, double p) {
    std::snprintf(buf, sizeof buf, "%-8s %12.6f %10.6f [%12.6f, %12.6f] %9.3f %10.3g\n", name, est, se, ci.low,
                  ci.high, t, p);
    out += buf;
  };
  row("tau", r.tau_hat, r.se_tau, r.ci_tau, r.t_tau, r.p_tau);
  row("gamma", r.gamma_hat, r.se_gamma, r.ci_gamma, r.t_gamma, r.p_gamma);
  return out;
}

}  // namespace egocr
