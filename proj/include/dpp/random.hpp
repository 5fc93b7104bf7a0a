#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

#include "dpp/costmodel.hpp"
#include "dpp/graph.hpp"

namespace dpp {

// splitmix64 step; used to derive independent stream seeds from one seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::pair<VertexId, VertexId> draw_endpoints(std::mt19937_64& rng, int vertex_count) {
  if (vertex_count < 2) throw std::invalid_argument("need two vertices to draw a demand");
  std::uniform_int_distribution<VertexId> pick(0, vertex_count - 1);
  VertexId s = pick(rng);
  VertexId t = pick(rng);
  while (t == s) t = pick(rng);
  return {s, t};
}

// Requested units: 1 + Poisson(gamma - 1), so the mean is gamma and zero
// never occurs.
inline int draw_units(std::mt19937_64& rng, double gamma) {
  if (gamma < 1.0) throw std::invalid_argument("gamma must be >= 1");
  if (gamma == 1.0) return 1;
  std::poisson_distribution<int> poisson(gamma - 1.0);
  return poisson(rng) + 1;
}

inline Demand draw_demand(std::mt19937_64& rng, const Network& net, double gamma) {
  auto [s, t] = draw_endpoints(rng, net.vertex_count());
  return {s, t, draw_units(rng, gamma)};
}

}  // namespace dpp
