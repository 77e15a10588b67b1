#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace egocr {

using UnitId = std::uint32_t;
using ExternalId = std::uint64_t;
using Edge = std::pair<UnitId, UnitId>;

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Units are dense 0-based indices. Each unit also carries the external id it
/// was read under; external ids are kept in ascending order so that ordering by
/// internal index and ordering by external id coincide.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over units 0..n-1 with external ids equal to the indices.
  /// Duplicate and reversed edges are collapsed; self-loops are rejected.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// As above with an explicit, strictly ascending external id per unit.
  static Graph from_edges(std::vector<ExternalId> external_ids, std::span<const Edge> edges);

  std::size_t size() const noexcept { return external_ids_.size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const UnitId> neighbors(UnitId i) const noexcept {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  std::size_t degree(UnitId i) const noexcept { return offsets_[i + 1] - offsets_[i]; }
  bool has_edge(UnitId i, UnitId j) const noexcept;

  ExternalId external_id(UnitId i) const noexcept { return external_ids_[i]; }
  std::span<const ExternalId> external_ids() const noexcept { return external_ids_; }
  /// Internal index of an external id, or size() when absent.
  UnitId find_external(ExternalId id) const noexcept;
  /// True when external ids are exactly 0..n-1.
  bool has_identity_ids() const noexcept;

  std::size_t isolated_count() const noexcept;

  /// Every edge once as (i, j) with i < j, ascending.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<UnitId> neighbors_;
  std::vector<ExternalId> external_ids_;
};

/// Parses the edge-list text format: lines "u v" of nonnegative integer ids,
/// '#' comments and blank lines ignored, optional "nodes: N" header declaring
/// units 0..N-1 (so that isolated units survive). Throws ParseError.
Graph load_edge_list(std::istream& in);
Graph load_edge_list(std::string_view text);

/// Writes each edge once as "u v" with u < v in external ids. A "nodes: N"
/// header is emitted when the external ids are exactly 0..N-1, so isolated
/// units round-trip.
void write_edge_list(std::ostream& out, const Graph& g);

/// Units at shortest-path distance at most d from i, i included, ascending.
std::vector<UnitId> neighborhood_within(const Graph& g, UnitId i, std::size_t d);

}  // namespace egocr
