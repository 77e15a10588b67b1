#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egocr/clustering.hpp"
#include "egocr/diagnostics.hpp"
#include "egocr/graph.hpp"
#include "egocr/inference.hpp"

namespace egocr {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Clustering file: header "unit\tcluster\tego", external ids, ego in {0,1}.
void write_clustering_tsv(std::ostream& out, const Graph& g, const EgoClustering& c);
/// (unit, cluster) rows in external ids, validated for a consistent ego flag.
std::vector<std::pair<ExternalId, ExternalId>> read_clustering_rows(std::istream& in);
/// Internal-index cluster map matching the graph's unit set exactly.
std::vector<ClusterId> read_clustering_tsv(std::istream& in, const Graph& g);

struct DesignRecord {
  DesignKind design = DesignKind::EgoCr;
  std::size_t clusters = 0;
  double r_bar = 0.0;
  double b = 0.0;
  double objective = 0.0;
  double lambda = 1.0;
  std::uint64_t seed = 0;
};
// Stats sidecar: header "K_n\tr_bar\tb_n\tobjective\tlambda\tseed\tdesign" plus one row.
void write_design_stats(std::ostream& out, const DesignRecord& record);
DesignRecord read_design_stats(std::istream& in);

// Per-unit tables keyed by external unit id.
void write_assignment_tsv(std::ostream& out, std::span<const ExternalId> units,
                          std::span<const std::uint8_t> treatment);
std::vector<std::uint8_t> read_assignment_tsv(std::istream& in, const Graph& g);
void write_exposures_tsv(std::ostream& out, const Graph& g, std::span<const double> rho);
void write_outcomes_tsv(std::ostream& out, const Graph& g, std::span<const double> y);
std::vector<double> read_outcomes_tsv(std::istream& in, const Graph& g);
void write_z_tsv(std::ostream& out, const Graph& g, std::span<const double> z);

std::string to_json_text(const EstimationResult& result);
std::string to_json_text(const DependencyDiagnostics& diagnostics);
/// Two-row table: effect, estimate, SE, CI, t, p.
std::string format_estimation_table(const EstimationResult& result);

}  // namespace egocr
