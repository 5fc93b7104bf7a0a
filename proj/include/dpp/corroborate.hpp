#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpp/baselines.hpp"
#include "dpp/graph.hpp"
#include "dpp/graph_io.hpp"
#include "dpp/random.hpp"
#include "dpp/search.hpp"

namespace dpp {

struct CorroborateSpec {
  int searches{1000};
  int min_vertices{6};
  int max_vertices{10};
  std::vector<int> omegas{4, 8};
  std::vector<int> gammas{1, 2, 3};
  std::uint64_t seed{1};
  double density_km2_per_vertex{10000.0};
  int modulation_levels{4};
  BruteForceBudget budget{};
  std::string bundle_dir;  // where mismatch reproduction bundles go; empty disables
};

struct CorroborateOutcome {
  int total{0};
  int matched{0};
  int mismatched{0};
  int budget_exceeded{0};
  int both_found{0};
  int both_absent{0};
  int heuristic_found{0};
  int heuristic_violations{0};  // heuristic succeeded but exact missing or costlier
  int bound_violations{0};      // search-graph size or label-count bound broken
  std::vector<std::string> bundles;
  std::vector<std::string> regen_log;

  bool clean() const { return mismatched == 0 && heuristic_violations == 0; }
};

using ExactSearchFn = std::function<std::optional<ProtectedPair>(
    const Network&, VertexId, VertexId, const RmsaModel&, SearchStats*)>;

namespace detail {

// Random partial load: contiguous blocks carved out of random edges, the
// shape live traffic leaves behind. Kept light enough that topology, not
// spectrum, decides most instances.
inline void preload_spectrum(Network& net, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto carve = [&](int id) {
    const auto& runs = net.available(id).runs();
    if (runs.empty()) return;
    const ContiguousUnits& r = runs[rng() % runs.size()];
    int w = 1 + static_cast<int>(rng() % std::max(1, (net.omega() + 3) / 4));
    w = std::min(w, r.size());
    UnitIndex lo = r.lo + static_cast<UnitIndex>(rng() % (r.size() - w + 1));
    net.allocate(id, {lo, lo + w - 1});
  };
  for (int id = 0; id < net.edge_count(); ++id) {
    if (coin(rng) < 0.5) continue;  // half the edges stay idle
    carve(id);
    if (coin(rng) < 0.33) carve(id);  // occasionally fragment further
  }
}

inline std::string write_bundle(const std::string& dir, int case_index, const Network& net,
                                const Demand& demand, const RmsaModel& model,
                                const std::optional<ProtectedPair>& exact,
                                const BruteForceResult& brute) {
  namespace fs = std::filesystem;
  fs::path base = fs::path(dir) / ("case_" + std::to_string(case_index));
  fs::create_directories(base);
  save_graph(net, (base / "graph.json").string());

  nlohmann::ordered_json j;
  j["case"] = case_index;
  j["demand"] = {{"src", demand.src}, {"dst", demand.dst}, {"units_g", demand.units_g}};
  j["modulation"] = {{"levels", model.mod.levels},
                     {"r1_km", model.mod.reach_r1_km},
                     {"rM_km", model.mod.reach_rM_km}};
  if (exact) {
    j["exact"] = {{"found", true},
                  {"cost", exact->total_cost},
                  {"working_cu", SpectrumSet(exact->working.cu).runs_as_pairs()},
                  {"protecting_cu", SpectrumSet(exact->protecting.cu).runs_as_pairs()}};
  } else {
    j["exact"] = {{"found", false}};
  }
  switch (brute.status) {
    case BruteForceStatus::found:
      j["brute_force"] = {{"status", "found"}, {"cost", brute.pair->total_cost}};
      break;
    case BruteForceStatus::absent:
      j["brute_force"] = {{"status", "absent"}};
      break;
    case BruteForceStatus::budget_exceeded:
      j["brute_force"] = {{"status", "budget_exceeded"}, {"pops", brute.pops}};
      break;
  }
  std::ofstream f(base / "case.json");
  f << j.dump(2) << "\n";
  return base.string();
}

}  // namespace detail

// Random-instance differential run: the exact search against brute-force
// enumeration, with the edge-exclusion heuristic and the complexity bounds
// checked on the side.
inline CorroborateOutcome corroborate(const CorroborateSpec& spec, ExactSearchFn exact_fn = {}) {
  if (spec.searches < 1 || spec.omegas.empty() || spec.gammas.empty() ||
      spec.min_vertices < 2 || spec.max_vertices < spec.min_vertices)
    throw std::invalid_argument("corroboration spec is empty");

  if (!exact_fn)
    exact_fn = [](const Network& net, VertexId s, VertexId t, const RmsaModel& model,
                  SearchStats* stats) { return dpp_search(net, s, t, model, stats); };

  CorroborateOutcome out;
  for (int i = 0; i < spec.searches; ++i) {
    std::mt19937_64 rng(mix_seed(spec.seed, static_cast<std::uint64_t>(i)));
    std::uniform_int_distribution<int> pick_v(spec.min_vertices, spec.max_vertices);
    int v = pick_v(rng);
    int omega = spec.omegas[rng() % spec.omegas.size()];
    int gamma = spec.gammas[rng() % spec.gammas.size()];

    std::uint64_t net_seed = mix_seed(spec.seed, 0x6e657400ULL + i);
    Network net = gabriel_generate(v, spec.density_km2_per_vertex, net_seed, omega);
    while (!is_connected(net)) {
      ++net_seed;
      out.regen_log.push_back("case " + std::to_string(i) + ": regenerated with seed " +
                              std::to_string(net_seed));
      net = gabriel_generate(v, spec.density_km2_per_vertex, net_seed, omega);
    }
    detail::preload_spectrum(net, rng);

    ModulationModel mod = modulation_for_network(net, spec.modulation_levels);
    Demand demand = draw_demand(rng, net, gamma);
    RmsaModel model{mod, demand.units_g};

    SearchStats stats;
    std::optional<ProtectedPair> exact = exact_fn(net, demand.src, demand.dst, model, &stats);
    BruteForceResult brute = brute_force_pair(net, demand.src, demand.dst, model, spec.budget);

    ++out.total;
    std::int64_t vertex_bound = static_cast<std::int64_t>(v) * (v + 1) / 2;
    std::int64_t label_bound = static_cast<std::int64_t>(omega) * (omega + 1) / 2;
    label_bound *= label_bound;
    if (stats.vertices_touched > vertex_bound || stats.max_vertex_labels > label_bound)
      ++out.bound_violations;

    auto heuristic = edge_exclusion_pair(net, demand.src, demand.dst, model);
    if (heuristic) {
      ++out.heuristic_found;
      if (!exact || exact->total_cost > heuristic->total_cost +
                                            1e-9 * std::max(1.0, heuristic->total_cost))
        ++out.heuristic_violations;
    }

    if (brute.status == BruteForceStatus::budget_exceeded) {
      ++out.budget_exceeded;
      continue;
    }
    bool match;
    if (exact && brute.status == BruteForceStatus::found) {
      ++out.both_found;
      match = std::fabs(exact->total_cost - brute.pair->total_cost) <=
              1e-9 * std::max(1.0, brute.pair->total_cost);
    } else if (!exact && brute.status == BruteForceStatus::absent) {
      ++out.both_absent;
      match = true;
    } else {
      match = false;
    }
    if (match) {
      ++out.matched;
    } else {
      ++out.mismatched;
      if (!spec.bundle_dir.empty())
        out.bundles.push_back(
            detail::write_bundle(spec.bundle_dir, i, net, demand, model, exact, brute));
    }
  }
  return out;
}

}  // namespace dpp
