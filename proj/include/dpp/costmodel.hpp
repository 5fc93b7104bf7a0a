#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <stdexcept>

#include "dpp/graph.hpp"

namespace dpp {

struct Demand {
  VertexId src{};
  VertexId dst{};
  int units_g{1};  // units at the most spectrally-efficient modulation
};

// M modulation levels; each step up doubles spectral efficiency and halves
// reach, so the shortest reach is r_1 / 2^(M-1).
struct ModulationModel {
  int levels{4};
  double reach_r1_km{};
  double reach_rM_km{};

  static ModulationModel from_r1(double r1_km, int levels = 4) {
    if (levels < 1) throw std::invalid_argument("modulation levels must be >= 1");
    if (!(r1_km > 0.0)) throw std::invalid_argument("reach must be positive");
    return {levels, r1_km, r1_km / std::exp2(levels - 1)};
  }
};

namespace detail {

// Guard against a stray ulp pushing an exact integer over the next ceiling.
inline int ceil_with_slack(double v) {
  return static_cast<int>(std::ceil(v - 1e-9 * std::fabs(v)));
}

}  // namespace detail

// Units required to carry g units over distance d, picking the best
// modulation that still reaches; absent when even the longest reach is beat.
inline std::optional<int> units_needed(int g, double length_km, const ModulationModel& mod) {
  if (g < 1) throw std::invalid_argument("demand units must be >= 1");
  if (length_km < 0.0) throw std::invalid_argument("negative length");
  if (length_km <= mod.reach_rM_km) return g;
  if (length_km > mod.reach_r1_km) return std::nullopt;
  return detail::ceil_with_slack(g * std::log2(2.0 * length_km / mod.reach_rM_km));
}

inline int units_from_bitrate(double bitrate_gbps, double unit_rate_gbps, int levels,
                              int guard_units) {
  if (!(bitrate_gbps > 0.0) || !(unit_rate_gbps > 0.0))
    throw std::invalid_argument("bitrates must be positive");
  if (levels < 1 || guard_units < 0) throw std::invalid_argument("bad modulation parameters");
  return detail::ceil_with_slack(bitrate_gbps / (unit_rate_gbps * levels)) + guard_units;
}

inline std::optional<double> path_cost(double length_km, int g, const ModulationModel& mod) {
  auto u = units_needed(g, length_km, mod);
  if (!u) return std::nullopt;
  return length_km * *u;
}

inline bool decide(int cu_size, double length_km, int g, const ModulationModel& mod) {
  auto u = units_needed(g, length_km, mod);
  return u && *u <= cu_size;
}

inline double pair_cost(double c1, double c2) { return c1 + c2; }

// What a search needs from a routing-and-spectrum cost model: a path cost
// from its length, a feasibility decision for a candidate slot width, and
// the unit count to allocate. Requirements must grow with length: once a
// prefix is rejected, every extension must be rejected too.
template <typename M>
concept SearchModel = requires(const M& m, double len, int k, double c) {
  { m.path_cost(len) } -> std::convertible_to<std::optional<double>>;
  { m.decide(len, k) } -> std::convertible_to<bool>;
  { m.units(len) } -> std::convertible_to<std::optional<int>>;
  { m.pair_cost(c, c) } -> std::convertible_to<double>;
};

// Routing, modulation and spectrum assignment: cost is length times required
// units, a pair costs the sum of its paths.
struct RmsaModel {
  ModulationModel mod;
  int units_g{1};

  std::optional<int> units(double length_km) const { return units_needed(units_g, length_km, mod); }
  std::optional<double> path_cost(double length_km) const {
    return dpp::path_cost(length_km, units_g, mod);
  }
  bool decide(double length_km, int cu_size) const {
    return dpp::decide(cu_size, length_km, units_g, mod);
  }
  double pair_cost(double c1, double c2) const { return c1 + c2; }
};

// The default reach policy: half again the longest of all shortest paths.
inline ModulationModel modulation_for_network(const Network& net, int levels = 4) {
  return ModulationModel::from_r1(1.5 * shortest_path_metrics(net).diameter_len_km, levels);
}

}  // namespace dpp
