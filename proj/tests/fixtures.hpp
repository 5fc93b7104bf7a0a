#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dpp/costmodel.hpp"
#include "dpp/graph.hpp"
#include "dpp/spectrum.hpp"

namespace fixtures {

// Square ring s(0) - a(1) - t(2) - b(3) - s, unit lengths, full spectrum.
// Two disjoint two-edge routes between opposite corners.
inline dpp::Network four_cycle(int omega = 4) {
  dpp::Network net(4, omega);
  net.add_edge(0, 1, 1.0);  // s-a
  net.add_edge(1, 2, 1.0);  // a-t
  net.add_edge(2, 3, 1.0);  // t-b
  net.add_edge(3, 0, 1.0);  // b-s
  return net;
}

// The trap: the shortest path s-a-b-t uses up the middle, leaving no
// disjoint partner, although the pair {s-a-t, s-b-t} exists.
//   s(0), a(1), b(2), t(3)
//   edges: s-a 1, a-b 1, b-t 1, s-b 3, a-t 3
inline dpp::Network trap(int omega = 4) {
  dpp::Network net(4, omega);
  net.add_edge(0, 1, 1.0);  // 0: s-a
  net.add_edge(1, 2, 1.0);  // 1: a-b
  net.add_edge(2, 3, 1.0);  // 2: b-t
  net.add_edge(0, 2, 3.0);  // 3: s-b
  net.add_edge(1, 3, 3.0);  // 4: a-t
  return net;
}

// Reach long enough that every path in the small fixtures needs exactly g
// units: unit count never grows with length.
inline dpp::ModulationModel wide_reach(double r1 = 1000.0) {
  return dpp::ModulationModel::from_r1(r1, 4);
}

inline dpp::RmsaModel rmsa(int g, double r1 = 1000.0) { return {wide_reach(r1), g}; }

inline std::uint64_t mask_from_set(const dpp::SpectrumSet& s) {
  std::uint64_t m = 0;
  for (const auto& r : s.runs())
    for (int u = r.lo; u <= r.hi; ++u) m |= std::uint64_t{1} << u;
  return m;
}

inline dpp::SpectrumSet set_from_mask(std::uint64_t mask, int omega) {
  std::vector<dpp::UnitIndex> units;
  for (int u = 0; u < omega; ++u)
    if (mask & (std::uint64_t{1} << u)) units.push_back(u);
  return dpp::SpectrumSet::from_units(std::move(units));
}

inline dpp::SpectrumSet random_set(std::mt19937_64& rng, int omega) {
  std::uint64_t mask = rng();
  if (omega < 64) mask &= (std::uint64_t{1} << omega) - 1;
  return set_from_mask(mask, omega);
}

inline dpp::ContiguousUnits random_cu(std::mt19937_64& rng, int omega) {
  std::uniform_int_distribution<int> pick(0, omega - 1);
  int a = pick(rng), b = pick(rng);
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace fixtures
