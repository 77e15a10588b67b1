#pragma once

#include <cstddef>

#include "egocr/clustering.hpp"
#include "egocr/graph.hpp"

namespace egocr {

/// Moments of the dependency sets N_i = { j : K_i ∩ K_j non-empty }, where
/// K_i is the set of clusters meeting i's closed neighbourhood.
struct DependencyDiagnostics {
  double mean_N = 0.0;   ///< (1/n) sum_i |N_i|
  double mean_N2 = 0.0;  ///< (1/n) sum_i |N_i|^2
  double mean_N3 = 0.0;  ///< (1/n) sum_i |N_i|^3
  double mean_L3 = 0.0;  ///< (1/n) sum_ij (Lambda^3)_ij
  std::size_t max_N = 0;
};

/// Works from an inverted index cluster -> touching units; Lambda is applied
/// as a sparse operator and never stored.
DependencyDiagnostics dependency_diagnostics(const Graph& g, const EgoClustering& c);

}  // namespace egocr
