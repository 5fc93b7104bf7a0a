#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "dpp/baselines.hpp"
#include "dpp/costmodel.hpp"
#include "dpp/graph.hpp"
#include "dpp/random.hpp"
#include "dpp/search.hpp"

namespace dpp {

enum class Algo { exact, edge_exclusion };

inline const char* algo_name(Algo a) {
  return a == Algo::exact ? "exact" : "edge-exclusion";
}

// Arrivals per day that aim at offered load a, given the network's edge
// count, unit count, mean holding time, mean demand size and mean hop count.
inline double arrival_rate(double offered_load_a, int edge_count, int omega, double tau_days,
                           double gamma, double alpha) {
  if (offered_load_a < 0.0) throw std::invalid_argument("offered load must be >= 0");
  if (edge_count <= 0 || omega <= 0 || !(tau_days > 0.0) || !(gamma > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("bad traffic parameters");
  return offered_load_a * edge_count * omega / (2.0 * tau_days * gamma * alpha);
}

struct SimConfig {
  Network network;
  double gamma{10.0};  // mean requested units, already resolved to absolute
  double offered_load_a{1.0};
  double tau_days{10.0};
  double horizon_days{150.0};
  double warmup_days{50.0};
  std::uint64_t seed{1};
  Algo algo{Algo::exact};
  int modulation_levels{4};
  std::optional<double> r1_km;  // default: 1.5 x longest shortest path
  bool self_check{false};
  // Test hook, invoked with the loaded network before each search.
  std::function<void(const Network&, const Demand&)> arrival_probe;
};

struct RunStats {
  double mean_utilization{0.0};
  double bbp{0.0};              // blocked requested units / all requested units
  double demand_blocking{0.0};  // blocked demands / all demands
  std::int64_t arrivals{0};
  std::int64_t accepted{0};
  std::int64_t blocked{0};
  std::int64_t searches{0};
  double time_mean_s{0.0};
  double time_max_s{0.0};
  double words_mean{0.0};
  std::int64_t words_max{0};
};

namespace detail {

struct ActiveConnection {
  std::vector<int> working_edges, protecting_edges;
  ContiguousUnits cu_working, cu_protecting;
};

inline void check_conservation(const Network& net, const std::vector<ActiveConnection>& active,
                               int omega) {
  for (int id = 0; id < net.edge_count(); ++id) {
    SpectrumSet acc = net.available(id);
    for (const auto& c : active) {
      for (int e : c.working_edges)
        if (e == id) acc = add(acc, c.cu_working);  // throws on overlap
      for (int e : c.protecting_edges)
        if (e == id) acc = add(acc, c.cu_protecting);
    }
    if (acc != SpectrumSet::whole(omega))
      throw std::logic_error("allocated units do not partition the spectrum");
  }
}

}  // namespace detail

// One simulation run: Poisson arrivals, exponential holding times, the
// configured search on the live network state. Warm-up traffic loads the
// network but is excluded from every reported mean.
inline RunStats run(const SimConfig& config) {
  if (!(config.warmup_days < config.horizon_days))
    throw std::invalid_argument("warmup must end before the horizon");
  if (config.gamma < 1.0) throw std::invalid_argument("gamma must be >= 1");
  if (!is_connected(config.network)) throw std::invalid_argument("network is disconnected");

  Network net = config.network;
  PathMetrics metrics = shortest_path_metrics(net);
  ModulationModel mod = ModulationModel::from_r1(
      config.r1_km.value_or(1.5 * metrics.diameter_len_km), config.modulation_levels);
  double lambda = arrival_rate(config.offered_load_a, net.edge_count(), net.omega(),
                               config.tau_days, config.gamma, metrics.alpha);

  std::mt19937_64 arrivals_rng(mix_seed(config.seed, 1));
  std::mt19937_64 endpoints_rng(mix_seed(config.seed, 2));
  std::mt19937_64 sizes_rng(mix_seed(config.seed, 3));
  std::mt19937_64 holding_rng(mix_seed(config.seed, 4));
  std::exponential_distribution<double> interarrival(lambda > 0.0 ? lambda : 1.0);
  std::exponential_distribution<double> holding(1.0 / config.tau_days);

  struct Teardown {
    double time;
    std::uint64_t seq;
    std::size_t connection;
    bool operator>(const Teardown& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };
  std::priority_queue<Teardown, std::vector<Teardown>, std::greater<>> teardowns;
  std::vector<detail::ActiveConnection> active;
  std::vector<bool> live;  // parallel to active; torn-down slots stay behind

  const double total_units = static_cast<double>(net.edge_count()) * net.omega();
  double clock = 0.0;
  double util_integral = 0.0;
  std::int64_t units_in_use = 0;

  auto advance_to = [&](double t) {
    double from = std::max(clock, config.warmup_days);
    double to = std::min(t, config.horizon_days);
    if (to > from) util_integral += (units_in_use / total_units) * (to - from);
    clock = t;
  };

  auto release_connection = [&](std::size_t idx) {
    const detail::ActiveConnection& c = active[idx];
    for (int e : c.working_edges) net.release(e, c.cu_working);
    for (int e : c.protecting_edges) net.release(e, c.cu_protecting);
    units_in_use -= static_cast<std::int64_t>(c.cu_working.size()) * c.working_edges.size() +
                    static_cast<std::int64_t>(c.cu_protecting.size()) * c.protecting_edges.size();
    live[idx] = false;
  };

  RunStats stats;
  double time_total = 0.0;
  double words_total = 0.0;
  std::int64_t total_requested_units = 0, blocked_requested_units = 0;
  std::uint64_t teardown_seq = 0;

  double next_arrival = lambda > 0.0 ? interarrival(arrivals_rng)
                                     : std::numeric_limits<double>::infinity();
  while (true) {
    bool teardown_next =
        !teardowns.empty() && teardowns.top().time <= next_arrival;  // ties: teardown first
    double event_time = teardown_next ? teardowns.top().time : next_arrival;
    if (event_time > config.horizon_days) break;

    advance_to(event_time);

    if (teardown_next) {
      std::size_t idx = teardowns.top().connection;
      teardowns.pop();
      release_connection(idx);
    } else {
      Demand demand = {0, 0, 0};
      {
        auto [s, t] = draw_endpoints(endpoints_rng, net.vertex_count());
        demand = {s, t, draw_units(sizes_rng, config.gamma)};
      }
      double hold = holding(holding_rng);  // drawn whether or not the demand is carried
      if (config.arrival_probe) config.arrival_probe(net, demand);

      RmsaModel model{mod, demand.units_g};
      std::optional<ProtectedPair> pair;
      std::int64_t words = 0;
      auto t0 = std::chrono::steady_clock::now();
      if (config.algo == Algo::exact) {
        SearchStats search_stats;
        pair = dpp_search(net, demand.src, demand.dst, model, &search_stats);
        words = search_stats.memory_words();
      } else {
        EdgeExclusionStats heur_stats;
        pair = edge_exclusion_pair(net, demand.src, demand.dst, model, &heur_stats);
        words = heur_stats.memory_words();
      }
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      bool post_warmup = event_time > config.warmup_days;
      if (post_warmup) {
        ++stats.arrivals;
        ++stats.searches;
        time_total += elapsed;
        stats.time_max_s = std::max(stats.time_max_s, elapsed);
        words_total += static_cast<double>(words);
        stats.words_max = std::max(stats.words_max, words);
        total_requested_units += demand.units_g;
      }

      if (pair) {
        detail::ActiveConnection conn{pair->working.edges, pair->protecting.edges,
                                      pair->working.cu, pair->protecting.cu};
        for (int e : conn.working_edges) net.allocate(e, conn.cu_working);
        for (int e : conn.protecting_edges) net.allocate(e, conn.cu_protecting);
        units_in_use +=
            static_cast<std::int64_t>(conn.cu_working.size()) * conn.working_edges.size() +
            static_cast<std::int64_t>(conn.cu_protecting.size()) * conn.protecting_edges.size();
        active.push_back(std::move(conn));
        live.push_back(true);
        teardowns.push({event_time + hold, teardown_seq++, active.size() - 1});
        if (post_warmup) ++stats.accepted;
      } else if (post_warmup) {
        ++stats.blocked;
        blocked_requested_units += demand.units_g;
      }
      next_arrival = event_time + interarrival(arrivals_rng);
    }

    if (config.self_check) {
      std::vector<detail::ActiveConnection> still;
      for (std::size_t i = 0; i < active.size(); ++i)
        if (live[i]) still.push_back(active[i]);
      detail::check_conservation(net, still, net.omega());
    }
  }

  advance_to(config.horizon_days);

  // Drain connections still up at the horizon; metrics are already frozen.
  while (!teardowns.empty()) {
    release_connection(teardowns.top().connection);
    teardowns.pop();
  }
  if (config.self_check) {
    for (int id = 0; id < net.edge_count(); ++id)
      if (net.available(id) != SpectrumSet::whole(net.omega()))
        throw std::logic_error("spectrum not fully restored after the last teardown");
  }

  double span = config.horizon_days - config.warmup_days;
  stats.mean_utilization = util_integral / span;
  stats.bbp = total_requested_units > 0
                  ? static_cast<double>(blocked_requested_units) / total_requested_units
                  : 0.0;
  stats.demand_blocking =
      stats.arrivals > 0 ? static_cast<double>(stats.blocked) / stats.arrivals : 0.0;
  if (stats.searches > 0) {
    stats.time_mean_s = time_total / stats.searches;
    stats.words_mean = words_total / stats.searches;
  }
  return stats;
}

}  // namespace dpp
