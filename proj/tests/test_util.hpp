#pragma once

#include <vector>

#include "egocr/generators.hpp"
#include "egocr/graph.hpp"

namespace testutil {

inline egocr::Graph path3() { return egocr::load_edge_list("0 1\n1 2\n"); }
inline egocr::Graph triangle() { return egocr::load_edge_list("0 1\n1 2\n0 2\n"); }
inline egocr::Graph star3() { return egocr::load_edge_list("0 1\n0 2\n0 3\n"); }

inline egocr::Graph random_er(std::size_t n, double p, std::uint64_t seed) {
  egocr::Rng rng(seed);
  return egocr::gen_er(n, p, rng);
}

}  // namespace testutil
