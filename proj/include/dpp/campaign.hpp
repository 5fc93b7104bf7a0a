#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "dpp/graph.hpp"
#include "dpp/random.hpp"
#include "dpp/sim.hpp"

namespace dpp {

struct CampaignSpec {
  std::vector<int> vertex_counts{25};
  std::vector<int> omegas{160};
  std::vector<double> gammas{10.0};  // percent of omega when gamma_is_percent
  bool gamma_is_percent{false};
  std::vector<double> loads{1.0};
  std::vector<Algo> algos{Algo::exact};
  int samples{1};
  std::uint64_t base_seed{1};
  double tau_days{10.0};
  double horizon_days{150.0};
  double warmup_days{50.0};
  double density_km2_per_vertex{10000.0};
  int modulation_levels{4};
  int jobs{1};
};

struct RunRecord {
  std::uint64_t seed{};
  int vertices{};
  int edges{};
  int omega{};
  double gamma{};
  double load{};
  Algo algo{};
  RunStats stats;
};

struct CampaignResult {
  std::vector<RunRecord> runs;       // grid order, independent of job count
  std::vector<std::string> regen_log;
  std::vector<std::string> errors;   // failed runs, recorded but not fatal
};

namespace detail {

inline std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

inline std::string compact_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace detail

// Runs the whole parameter grid. One network per (size, sample); one
// workload seed per cell and sample shared by every algorithm, so paired
// algorithms see identical demand streams.
inline CampaignResult run_campaign(const CampaignSpec& spec) {
  if (spec.samples < 1 || spec.vertex_counts.empty() || spec.omegas.empty() ||
      spec.gammas.empty() || spec.loads.empty() || spec.algos.empty())
    throw std::invalid_argument("campaign grid is empty");

  CampaignResult result;

  struct Task {
    SimConfig config;
    RunRecord record;
    std::string error;
  };
  std::vector<Task> tasks;

  for (std::size_t iv = 0; iv < spec.vertex_counts.size(); ++iv) {
    int v = spec.vertex_counts[iv];
    for (int sample = 0; sample < spec.samples; ++sample) {
      std::uint64_t net_seed = mix_seed(spec.base_seed, 0x67656eULL + 1000 * iv + sample);
      for (std::size_t io = 0; io < spec.omegas.size(); ++io) {
        int omega = spec.omegas[io];
        Network net = gabriel_generate(v, spec.density_km2_per_vertex, net_seed, omega);
        std::uint64_t used_seed = net_seed;
        while (!is_connected(net)) {
          ++used_seed;
          result.regen_log.push_back("network " + std::to_string(v) + "v sample " +
                                     std::to_string(sample) + ": regenerated with seed " +
                                     std::to_string(used_seed));
          net = gabriel_generate(v, spec.density_km2_per_vertex, used_seed, omega);
        }
        for (std::size_t ig = 0; ig < spec.gammas.size(); ++ig) {
          double gamma = spec.gamma_is_percent
                             ? std::max(1.0, std::round(spec.gammas[ig] / 100.0 * omega))
                             : spec.gammas[ig];
          for (std::size_t il = 0; il < spec.loads.size(); ++il) {
            double load = spec.loads[il];
            std::uint64_t cell = ((iv * 97 + io) * 97 + ig) * 97 + il;
            std::uint64_t sim_seed =
                mix_seed(spec.base_seed, 0x73696dULL + cell * 10007 + sample);
            for (Algo algo : spec.algos) {
              Task task{SimConfig{net, gamma, load, spec.tau_days, spec.horizon_days,
                                  spec.warmup_days, sim_seed, algo, spec.modulation_levels,
                                  std::nullopt, false, {}},
                        RunRecord{sim_seed, v, net.edge_count(), omega, gamma, load, algo, {}},
                        {}};
              tasks.push_back(std::move(task));
            }
          }
        }
      }
    }
  }

  auto execute = [](Task& t) {
    try {
      t.record.stats = run(t.config);
    } catch (const std::exception& e) {
      t.error = std::string("seed ") + std::to_string(t.record.seed) + ": " + e.what();
    }
  };

  int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    for (Task& t : tasks) execute(t);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
        execute(tasks[i]);
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  result.runs.reserve(tasks.size());
  for (Task& t : tasks) {
    if (t.error.empty())
      result.runs.push_back(std::move(t.record));
    else
      result.errors.push_back(std::move(t.error));
  }
  return result;
}

inline std::string runs_csv(const std::vector<RunRecord>& runs, bool stable_timing = false) {
  std::ostringstream out;
  out << "seed,V,E,omega,gamma,a,algorithm,mean_utilization,bbp,searches,"
         "time_mean_s,time_max_s,words_mean,words_max\n";
  for (const RunRecord& r : runs) {
    out << r.seed << ',' << r.vertices << ',' << r.edges << ',' << r.omega << ','
        << detail::compact_number(r.gamma) << ',' << detail::compact_number(r.load) << ','
        << algo_name(r.algo) << ',' << detail::format_double("%.6f", r.stats.mean_utilization)
        << ',' << detail::format_double("%.6f", r.stats.bbp) << ',' << r.stats.searches << ','
        << detail::format_double("%.6f", stable_timing ? 0.0 : r.stats.time_mean_s) << ','
        << detail::format_double("%.6f", stable_timing ? 0.0 : r.stats.time_max_s) << ','
        << detail::format_double("%.2f", r.stats.words_mean) << ',' << r.stats.words_max << '\n';
  }
  return out.str();
}

// Per-population aggregates: a population is one grid cell, i.e. runs that
// differ only in their network sample.
inline std::string summary_csv(const std::vector<RunRecord>& runs, bool stable_timing = false) {
  using Key = std::tuple<int, int, double, double, int>;  // V, omega, gamma, a, algo
  struct Agg {
    int n{0};
    double util_sum{0}, bbp_sum{0}, bbp_sq_sum{0};
    double time_mean_sum{0}, time_max{0};
    double words_mean_sum{0};
    std::int64_t words_max{0};
  };
  std::map<Key, Agg> groups;
  for (const RunRecord& r : runs) {
    Agg& a = groups[{r.vertices, r.omega, r.gamma, r.load, static_cast<int>(r.algo)}];
    ++a.n;
    a.util_sum += r.stats.mean_utilization;
    a.bbp_sum += r.stats.bbp;
    a.bbp_sq_sum += r.stats.bbp * r.stats.bbp;
    a.time_mean_sum += r.stats.time_mean_s;
    a.time_max = std::max(a.time_max, r.stats.time_max_s);
    a.words_mean_sum += r.stats.words_mean;
    a.words_max = std::max(a.words_max, r.stats.words_max);
  }

  std::ostringstream out;
  out << "V,omega,gamma,a,algorithm,runs,util_mean,bbp_mean,bbp_rse,"
         "time_mean_s,time_max_s,words_mean,words_max,bbp_delta_vs_exact\n";
  for (const auto& [key, a] : groups) {
    auto [v, omega, gamma, load, algo] = key;
    double bbp_mean = a.bbp_sum / a.n;
    double var = a.n > 1 ? std::max(0.0, (a.bbp_sq_sum - a.n * bbp_mean * bbp_mean) / (a.n - 1))
                         : 0.0;
    double rse = bbp_mean > 0 ? std::sqrt(var / a.n) / bbp_mean : 0.0;

    std::string delta;
    auto exact_it = groups.find({v, omega, gamma, load, static_cast<int>(Algo::exact)});
    if (exact_it != groups.end())
      delta = detail::format_double("%.6f", bbp_mean - exact_it->second.bbp_sum /
                                                           exact_it->second.n);

    out << v << ',' << omega << ',' << detail::compact_number(gamma) << ','
        << detail::compact_number(load) << ',' << algo_name(static_cast<Algo>(algo)) << ','
        << a.n << ',' << detail::format_double("%.6f", a.util_sum / a.n) << ','
        << detail::format_double("%.6f", bbp_mean) << ',' << detail::format_double("%.6f", rse)
        << ',' << detail::format_double("%.6f", stable_timing ? 0.0 : a.time_mean_sum / a.n)
        << ',' << detail::format_double("%.6f", stable_timing ? 0.0 : a.time_max) << ','
        << detail::format_double("%.2f", a.words_mean_sum / a.n) << ',' << a.words_max << ','
        << delta << '\n';
  }
  return out.str();
}

}  // namespace dpp
