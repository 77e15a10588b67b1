#include "egocr/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "egocr/error.hpp"

namespace egocr {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<ExternalId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return from_edges(std::move(ids), edges);
}

Graph Graph::from_edges(std::vector<ExternalId> external_ids, std::span<const Edge> edges) {
  if (!std::is_sorted(external_ids.begin(), external_ids.end()) ||
      std::adjacent_find(external_ids.begin(), external_ids.end()) != external_ids.end()) {
    throw Error("external ids must be strictly ascending");
  }
  const std::size_t n = external_ids.size();
  std::vector<std::vector<UnitId>> rows(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw Error("edge endpoint out of range");
    if (u == v) throw Error("self-loop on unit " + std::to_string(external_ids[u]));
    rows[u].push_back(v);
    rows[v].push_back(u);
  }

  Graph g;
  g.external_ids_ = std::move(external_ids);
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = rows[i];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    g.offsets_[i + 1] = g.offsets_[i] + row.size();
  }
  g.neighbors_.reserve(g.offsets_[n]);
  for (const auto& row : rows) g.neighbors_.insert(g.neighbors_.end(), row.begin(), row.end());
  return g;
}

bool Graph::has_edge(UnitId i, UnitId j) const noexcept {
  const auto row = neighbors(i);
  return std::binary_search(row.begin(), row.end(), j);
}

UnitId Graph::find_external(ExternalId id) const noexcept {
  const auto it = std::lower_bound(external_ids_.begin(), external_ids_.end(), id);
  if (it == external_ids_.end() || *it != id) return static_cast<UnitId>(size());
  return static_cast<UnitId>(it - external_ids_.begin());
}

bool Graph::has_identity_ids() const noexcept {
  return external_ids_.empty() || external_ids_.back() + 1 == external_ids_.size();
}

std::size_t Graph::isolated_count() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) count += degree(static_cast<UnitId>(i)) == 0;
  return count;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (UnitId i = 0; i < size(); ++i) {
    for (UnitId j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_id(std::string_view token, ExternalId& out) {
  if (token.empty()) return false;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Splits on runs of spaces/tabs.
std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto stop = s.find_first_of(" \t", start);
    if (stop == std::string_view::npos) stop = s.size();
    out.push_back(s.substr(start, stop - start));
    pos = stop;
  }
  return out;
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::vector<std::pair<ExternalId, ExternalId>> raw;
  bool declared = false;
  ExternalId declared_n = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;

    if (text.starts_with("nodes:")) {
      if (declared || !raw.empty()) throw ParseError(lineno, "'nodes:' header must precede all edges");
      if (!parse_id(trim(text.substr(6)), declared_n) || declared_n == 0) {
        throw ParseError(lineno, "malformed 'nodes:' header");
      }
      declared = true;
      continue;
    }

    const auto tokens = split_ws(text);
    ExternalId u = 0;
    ExternalId v = 0;
    if (tokens.size() != 2 || !parse_id(tokens[0], u) || !parse_id(tokens[1], v)) {
      throw ParseError(lineno, "malformed edge '" + std::string(text) + "'");
    }
    if (u == v) throw ParseError(lineno, "self-loop on unit " + std::to_string(u));
    if (declared && (u >= declared_n || v >= declared_n)) {
      throw ParseError(lineno, "unit id exceeds declared node count");
    }
    raw.emplace_back(u, v);
  }

  std::vector<ExternalId> ids;
  if (declared) {
    ids.resize(declared_n);
    for (ExternalId i = 0; i < declared_n; ++i) ids[i] = i;
  } else {
    ids.reserve(raw.size() * 2);
    for (const auto& [u, v] : raw) {
      ids.push_back(u);
      ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  auto index_of = [&ids](ExternalId id) {
    return static_cast<UnitId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  for (const auto& [u, v] : raw) edges.emplace_back(index_of(u), index_of(v));
  return Graph::from_edges(std::move(ids), edges);
}

Graph load_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  if (g.size() > 0 && g.has_identity_ids()) out << "nodes: " << g.size() << '\n';
  for (const auto& [u, v] : g.edges()) {
    out << g.external_id(u) << ' ' << g.external_id(v) << '\n';
  }
}

std::vector<UnitId> neighborhood_within(const Graph& g, UnitId i, std::size_t d) {
  if (i >= g.size()) throw Error("unit " + std::to_string(i) + " out of range");
  std::vector<std::size_t> dist(g.size(), static_cast<std::size_t>(-1));
  std::vector<UnitId> visited{i};
  dist[i] = 0;
  for (std::size_t head = 0; head < visited.size(); ++head) {
    const UnitId u = visited[head];
    if (dist[u] == d) continue;
    for (UnitId v : g.neighbors(u)) {
      if (dist[v] == static_cast<std::size_t>(-1)) {
        dist[v] = dist[u] + 1;
        visited.push_back(v);
      }
    }
  }
  std::sort(visited.begin(), visited.end());
  return visited;
}

}  // namespace egocr
