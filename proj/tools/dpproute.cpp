// Command-line front end: graph generation, single protected-pair searches,
// exact-vs-brute-force corroboration campaigns, and simulation campaigns.
//
// Exit codes for `search`: 0 pair found, 1 no pair, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpp/dpp.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitUsage = 2;

struct SearchCli {
  std::string graph_path;
  int source = -1;
  int target = -1;
  int units = 0;
  double bitrate = 0.0;
  double unit_rate_gbps = 2.5;
  int guard_units = 0;
  std::string algo = "exact";
  int levels = 4;
  double r1_km = 0.0;  // 0 = 1.5x the longest shortest path
  std::int64_t budget_pops = 20'000'000;
  double budget_seconds = 60.0;
  bool stable_timing = false;
};

nlohmann::ordered_json path_json(const dpp::RoutedPath& p) {
  nlohmann::ordered_json j;
  j["edges"] = p.edges;
  j["cu"] = dpp::SpectrumSet(p.cu).to_string();
  j["cost"] = p.cost;
  j["length_km"] = p.length_km;
  return j;
}

int cmd_search(const SearchCli& cli) {
  dpp::Network net = dpp::load_graph(cli.graph_path);
  if (cli.source < 0 || cli.source >= net.vertex_count() || cli.target < 0 ||
      cli.target >= net.vertex_count()) {
    std::cerr << "error: vertex ids must be in [0, " << net.vertex_count() - 1 << "]\n";
    return kExitUsage;
  }
  if (cli.source == cli.target) {
    std::cerr << "error: source and target must differ\n";
    return kExitUsage;
  }

  dpp::ModulationModel mod = cli.r1_km > 0.0
                                 ? dpp::ModulationModel::from_r1(cli.r1_km, cli.levels)
                                 : dpp::modulation_for_network(net, cli.levels);
  int g = cli.units;
  if (cli.bitrate > 0.0)
    g = dpp::units_from_bitrate(cli.bitrate, cli.unit_rate_gbps, cli.levels, cli.guard_units);
  if (g < 1) {
    std::cerr << "error: demand needs --units >= 1 or a positive --bitrate\n";
    return kExitUsage;
  }
  dpp::RmsaModel model{mod, g};

  std::optional<dpp::ProtectedPair> pair;
  std::int64_t pops = 0, labels = 0, words = 0;
  auto t0 = std::chrono::steady_clock::now();
  if (cli.algo == "exact") {
    dpp::SearchStats stats;
    pair = dpp::dpp_search(net, cli.source, cli.target, model, &stats);
    pops = stats.pops;
    labels = stats.nodes_peak;
    words = stats.memory_words();
  } else if (cli.algo == "edge-exclusion") {
    dpp::EdgeExclusionStats stats;
    pair = dpp::edge_exclusion_pair(net, cli.source, cli.target, model, &stats);
    pops = stats.first.pops + stats.second.pops;
    labels = stats.first.nodes_peak + stats.second.nodes_peak;
    words = stats.memory_words();
  } else if (cli.algo == "brute-force") {
    dpp::BruteForceBudget budget{cli.budget_pops, cli.budget_seconds};
    dpp::BruteForceResult r = dpp::brute_force_pair(net, cli.source, cli.target, model, budget);
    if (r.status == dpp::BruteForceStatus::budget_exceeded) {
      std::cerr << "error: brute-force budget exceeded after " << r.pops << " pops\n";
      return kExitUsage;
    }
    pair = r.pair;
    pops = r.pops;
  } else {
    std::cerr << "error: unknown algorithm: " << cli.algo << "\n";
    return kExitUsage;
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::ordered_json j;
  j["found"] = pair.has_value();
  if (pair) {
    j["cost"] = pair->total_cost;
    j["working"] = path_json(pair->working);
    j["protecting"] = path_json(pair->protecting);
  }
  j["stats"] = {{"pops", pops},
                {"labels", labels},
                {"words_peak", words},
                {"time_s", cli.stable_timing ? 0.0 : elapsed}};
  std::cout << j.dump(2) << "\n";
  return pair ? kExitFound : kExitNotFound;
}

std::vector<dpp::Algo> parse_algos(const std::vector<std::string>& names) {
  std::vector<dpp::Algo> algos;
  for (const auto& name : names) {
    if (name == "exact")
      algos.push_back(dpp::Algo::exact);
    else if (name == "edge-exclusion")
      algos.push_back(dpp::Algo::edge_exclusion);
    else
      throw CLI::ValidationError("--algo", "unknown algorithm: " + name);
  }
  return algos;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic routing with dedicated path protection in elastic optical networks"};
  app.require_subcommand(1);

  // gengraph
  int gen_n = 25;
  double gen_density = 10000.0;
  std::uint64_t gen_seed = 1;
  int gen_omega = 160;
  std::string gen_out;
  auto* gen = app.add_subcommand("gengraph", "generate a random Gabriel-graph network");
  gen->add_option("--n", gen_n, "vertex count (>= 2)")->envname("DPPROUTE_N");
  gen->add_option("--density", gen_density, "square km of area per vertex")
      ->envname("DPPROUTE_DENSITY");
  gen->add_option("--seed", gen_seed, "generator seed")->envname("DPPROUTE_SEED");
  gen->add_option("--omega", gen_omega, "spectrum units per edge")->envname("DPPROUTE_OMEGA");
  gen->add_option("--out", gen_out, "output graph file")->required()->envname("DPPROUTE_OUT");

  // search
  SearchCli search;
  auto* sc = app.add_subcommand("search", "find a protected path pair in a graph file");
  sc->add_option("--graph", search.graph_path, "graph file")->required()
      ->envname("DPPROUTE_GRAPH");
  sc->add_option("--s", search.source, "source vertex")->required();
  sc->add_option("--t", search.target, "target vertex")->required();
  sc->add_option("--g,--units", search.units, "requested units at the best modulation");
  sc->add_option("--bitrate", search.bitrate, "demand bitrate in Gb/s (alternative to --units)");
  sc->add_option("--unit-rate", search.unit_rate_gbps, "bitrate of one unit in Gb/s");
  sc->add_option("--guard-units", search.guard_units, "guard-band units added to the demand");
  sc->add_option("--algo", search.algo, "exact | edge-exclusion | brute-force")
      ->envname("DPPROUTE_ALGO");
  sc->add_option("--levels", search.levels, "modulation levels");
  sc->add_option("--r1", search.r1_km, "reach of the least efficient modulation, km "
                                       "(default: 1.5x the longest shortest path)");
  sc->add_option("--budget-pops", search.budget_pops, "brute-force pop budget");
  sc->add_option("--budget-seconds", search.budget_seconds, "brute-force time budget");
  sc->add_flag("--stable-timing", search.stable_timing,
               "report zeroed timings for byte-reproducible output");

  // corroborate
  dpp::CorroborateSpec cor;
  std::string cor_out;
  auto* cc = app.add_subcommand("corroborate",
                                "differential-test the exact search against brute force");
  cc->add_option("--searches", cor.searches, "number of random cases")->required();
  cc->add_option("--min-v", cor.min_vertices, "smallest vertex count");
  cc->add_option("--max-v", cor.max_vertices, "largest vertex count");
  cc->add_option("--omega", cor.omegas, "spectrum sizes to draw from");
  cc->add_option("--gamma", cor.gammas, "mean demand sizes to draw from");
  cc->add_option("--seed", cor.seed, "base seed")->envname("DPPROUTE_SEED");
  cc->add_option("--budget-pops", cor.budget.max_pops, "brute-force pop budget per case");
  cc->add_option("--budget-seconds", cor.budget.max_seconds, "brute-force time budget per case");
  cor_out = "corroborate-bundles";
  cc->add_option("--out", cor_out, "directory for mismatch reproduction bundles")
      ->envname("DPPROUTE_OUT");

  // simulate
  dpp::CampaignSpec camp;
  std::vector<std::string> camp_algos{"exact"};
  std::vector<double> camp_gamma_pct;
  std::string camp_out = ".";
  bool camp_stable_timing = false;
  auto* sim = app.add_subcommand("simulate", "run a grid of traffic simulations");
  sim->add_option("--v", camp.vertex_counts, "network sizes");
  sim->add_option("--omega", camp.omegas, "spectrum sizes")->envname("DPPROUTE_OMEGA");
  sim->add_option("--load", camp.loads, "offered loads")->envname("DPPROUTE_LOAD");
  sim->add_option("--gamma", camp.gammas, "mean demand sizes in units")
      ->envname("DPPROUTE_GAMMA");
  sim->add_option("--gamma-pct", camp_gamma_pct, "mean demand sizes as percent of omega")
      ->envname("DPPROUTE_GAMMA_PCT");
  sim->add_option("--algo", camp_algos, "algorithms: exact, edge-exclusion")
      ->envname("DPPROUTE_ALGO");
  sim->add_option("--samples", camp.samples, "runs per grid cell")->envname("DPPROUTE_SAMPLES");
  sim->add_option("--seed", camp.base_seed, "base seed")->envname("DPPROUTE_SEED");
  sim->add_option("--tau", camp.tau_days, "mean holding time, days")->envname("DPPROUTE_TAU");
  sim->add_option("--days", camp.horizon_days, "simulated days")->envname("DPPROUTE_DAYS");
  sim->add_option("--warmup", camp.warmup_days, "warm-up days excluded from metrics")
      ->envname("DPPROUTE_WARMUP");
  sim->add_option("--density", camp.density_km2_per_vertex, "square km per vertex");
  sim->add_option("--levels", camp.modulation_levels, "modulation levels");
  sim->add_option("--jobs", camp.jobs, "parallel workers")->envname("DPPROUTE_JOBS");
  sim->add_option("--out", camp_out, "output directory")->envname("DPPROUTE_OUT");
  sim->add_flag("--stable-timing", camp_stable_timing,
                "zero the timing columns for byte-reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      if (gen_n < 2) {
        std::cerr << "error: --n must be at least 2\n";
        return kExitUsage;
      }
      std::uint64_t seed = gen_seed;
      dpp::Network net = dpp::gabriel_generate(gen_n, gen_density, seed, gen_omega);
      while (!dpp::is_connected(net)) {
        ++seed;
        std::cerr << "note: disconnected instance, regenerating with seed " << seed << "\n";
        net = dpp::gabriel_generate(gen_n, gen_density, seed, gen_omega);
      }
      dpp::save_graph(net, gen_out);
      return 0;
    }

    if (*sc) return cmd_search(search);

    if (*cc) {
      cor.bundle_dir = cor_out;
      dpp::CorroborateOutcome out = dpp::corroborate(cor);
      std::cout << "searches:        " << out.total << "\n"
                << "matched:         " << out.matched << "\n"
                << "mismatched:      " << out.mismatched << "\n"
                << "budget exceeded: " << out.budget_exceeded << "\n"
                << "both found:      " << out.both_found << "\n"
                << "both absent:     " << out.both_absent << "\n"
                << "heuristic found: " << out.heuristic_found << "\n"
                << "heuristic worse than exact or missing: " << out.heuristic_violations << "\n"
                << "bound violations: " << out.bound_violations << "\n";
      for (const auto& b : out.bundles) std::cout << "bundle: " << b << "\n";
      return out.clean() ? 0 : 1;
    }

    if (*sim) {
      if (!camp_gamma_pct.empty() && !sim->get_option("--gamma")->empty()) {
        std::cerr << "error: give either --gamma or --gamma-pct, not both\n";
        return kExitUsage;
      }
      if (!camp_gamma_pct.empty()) {
        camp.gammas = camp_gamma_pct;
        camp.gamma_is_percent = true;
      }
      camp.algos = parse_algos(camp_algos);
      dpp::CampaignResult result = dpp::run_campaign(camp);
      std::filesystem::create_directories(camp_out);
      std::string runs_path = (std::filesystem::path(camp_out) / "runs.csv").string();
      std::string summary_path = (std::filesystem::path(camp_out) / "summary.csv").string();
      write_file(runs_path, dpp::runs_csv(result.runs, camp_stable_timing));
      write_file(summary_path, dpp::summary_csv(result.runs, camp_stable_timing));
      for (const auto& line : result.regen_log) std::cerr << "note: " << line << "\n";
      for (const auto& line : result.errors) std::cerr << "run failed: " << line << "\n";
      std::cout << "wrote " << result.runs.size() << " runs to " << runs_path << "\n"
                << "wrote summary to " << summary_path << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
