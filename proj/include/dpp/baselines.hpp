#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "dpp/costmodel.hpp"
#include "dpp/graph.hpp"
#include "dpp/search.hpp"
#include "dpp/spectrum.hpp"

namespace dpp {

struct SinglePathResult {
  std::vector<int> edges;
  ContiguousUnits maximal_cu;
  double cost{0.0};
  double length_km{0.0};
};

struct SingleSearchStats {
  std::int64_t pops{0};
  std::int64_t relaxations{0};
  std::int64_t queue_peak{0};
  std::int64_t nodes_peak{0};

  std::int64_t memory_words() const { return 15 * nodes_peak + 2 * queue_peak; }
};

namespace detail {

struct SingleNode {
  VertexId vertex{};
  PathTrait trait;
  int taken_edge{-1};
  SingleNode* parent{nullptr};
  NodeState state{NodeState::tentative};
};

}  // namespace detail

// Cheapest spectrum-feasible single path: Dijkstra whose per-vertex state is
// a set of incomparable (cost, slot) traits instead of one distance.
template <SearchModel M>
std::optional<SinglePathResult> generic_dijkstra_single(const Network& net, VertexId source,
                                                        VertexId target, const M& model,
                                                        SingleSearchStats* stats_out = nullptr) {
  net.check_vertex(source);
  net.check_vertex(target);
  if (source == target) throw std::invalid_argument("source and target must differ");

  using detail::NodeState;
  using detail::SingleNode;

  struct Entry {
    double cost;
    UnitIndex lo;
    std::uint64_t seq;
    SingleNode* node;
  };
  struct After {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.cost != b.cost) return a.cost > b.cost;
      if (a.lo != b.lo) return a.lo > b.lo;
      return a.seq > b.seq;
    }
  };

  std::deque<SingleNode> arena;
  struct Sets {
    std::vector<SingleNode*> permanent, tentative;
  };
  std::vector<Sets> sets(static_cast<std::size_t>(net.vertex_count()));
  std::priority_queue<Entry, std::vector<Entry>, After> queue;
  std::uint64_t seq = 0;
  std::int64_t live = 0;
  SingleSearchStats stats;

  auto push = [&](SingleNode* n) {
    queue.push({n->trait.cost, n->trait.cu.lo, seq++, n});
    stats.queue_peak = std::max(stats.queue_peak, static_cast<std::int64_t>(queue.size()));
  };

  SingleNode* root = &arena.emplace_back();
  root->vertex = source;
  root->trait = {0.0, 0.0, SpectrumSet::whole(net.omega()).runs().front()};
  live = 1;
  stats.nodes_peak = 1;
  sets[source].tentative.push_back(root);
  push(root);

  SingleNode* goal = nullptr;
  while (!queue.empty()) {
    Entry top = queue.top();
    queue.pop();
    ++stats.pops;
    SingleNode* node = top.node;
    if (node->state == NodeState::discarded) continue;

    Sets& s = sets[node->vertex];
    std::erase(s.tentative, node);
    s.permanent.push_back(node);
    node->state = NodeState::permanent;

    if (node->vertex == target) {
      goal = node;
      break;
    }

    for (int edge_id : net.incident_edges(node->vertex)) {
      ++stats.relaxations;
      const EdgeRecord& e = net.edge(edge_id);
      VertexId v_new = e.u == node->vertex ? e.v : e.u;
      double new_len = node->trait.length_km + e.length_km;
      std::optional<double> new_cost = model.path_cost(new_len);
      if (!new_cost) continue;

      SpectrumSet reachable = intersect(node->trait.cu, e.available);
      for (const ContiguousUnits& cu : reachable.runs()) {
        if (!model.decide(new_len, cu.size())) continue;
        PathTrait trait{*new_cost, new_len, cu};

        Sets& target_sets = sets[v_new];
        auto dominated = [&](const std::vector<SingleNode*>& group) {
          for (const SingleNode* n : group)
            if (trait_leq(n->trait, trait)) return true;
          return false;
        };
        if (dominated(target_sets.permanent) || dominated(target_sets.tentative)) continue;

        std::erase_if(target_sets.tentative, [&](SingleNode* n) {
          if (!trait_leq(trait, n->trait)) return false;
          n->state = NodeState::discarded;
          --live;
          return true;
        });

        SingleNode* child = &arena.emplace_back();
        child->vertex = v_new;
        child->trait = trait;
        child->taken_edge = edge_id;
        child->parent = node;
        ++live;
        stats.nodes_peak = std::max(stats.nodes_peak, live);
        target_sets.tentative.push_back(child);
        push(child);
      }
    }
  }

  if (stats_out) *stats_out = stats;
  if (goal == nullptr) return std::nullopt;

  SinglePathResult result;
  result.maximal_cu = goal->trait.cu;
  result.cost = goal->trait.cost;
  result.length_km = goal->trait.length_km;
  for (SingleNode* n = goal; n->parent != nullptr; n = n->parent)
    result.edges.push_back(n->taken_edge);
  std::reverse(result.edges.begin(), result.edges.end());
  return result;
}

struct EdgeExclusionStats {
  SingleSearchStats first, second;
  std::int64_t memory_words() const { return first.memory_words() + second.memory_words(); }
};

namespace detail {

template <SearchModel M>
ProtectedPair order_pair(RoutedPath a, RoutedPath b, const M& model) {
  bool a_working =
      a.cost < b.cost || (a.cost == b.cost && a.edges.front() <= b.edges.front());
  ProtectedPair pair;
  pair.working = a_working ? std::move(a) : std::move(b);
  pair.protecting = a_working ? std::move(b) : std::move(a);
  pair.total_cost = model.pair_cost(pair.working.cost, pair.protecting.cost);
  return pair;
}

template <SearchModel M>
RoutedPath routed_from_single(const SinglePathResult& r, const M& model) {
  auto u = model.units(r.length_km);
  if (!u) throw std::logic_error("found path has no feasible unit count");
  return {r.edges, {r.maximal_cu.lo, r.maximal_cu.lo + *u - 1}, r.cost, r.length_km};
}

}  // namespace detail

// Route once, blank out the used edges, route again. Fails on trap
// topologies even when a disjoint pair exists.
template <SearchModel M>
std::optional<ProtectedPair> edge_exclusion_pair(const Network& net, VertexId source,
                                                 VertexId target, const M& model,
                                                 EdgeExclusionStats* stats = nullptr) {
  EdgeExclusionStats local;
  auto first = generic_dijkstra_single(net, source, target, model, &local.first);
  if (stats) *stats = local;
  if (!first) return std::nullopt;

  Network pruned = net;
  for (int edge_id : first->edges) pruned.set_available(edge_id, SpectrumSet{});
  auto second = generic_dijkstra_single(pruned, source, target, model, &local.second);
  if (stats) *stats = local;
  if (!second) return std::nullopt;

  return detail::order_pair(detail::routed_from_single(*first, model),
                            detail::routed_from_single(*second, model), model);
}

struct BruteForceBudget {
  std::int64_t max_pops = 20'000'000;
  double max_seconds = 60.0;
};

enum class BruteForceStatus { found, absent, budget_exceeded };

struct BruteForceResult {
  BruteForceStatus status{BruteForceStatus::absent};
  std::optional<ProtectedPair> pair;
  std::int64_t pops{0};
};

// Exhaustive increasing-cost enumeration of edge-disjoint, loop-free path
// pairs. Only for very small instances; everything else exceeds any budget.
template <SearchModel M>
BruteForceResult brute_force_pair(const Network& net, VertexId source, VertexId target,
                                  const M& model, const BruteForceBudget& budget = {}) {
  net.check_vertex(source);
  net.check_vertex(target);
  if (source == target) throw std::invalid_argument("source and target must differ");
  if (net.vertex_count() > 64) throw std::invalid_argument("brute force limited to 64 vertices");

  struct PartialPath {
    std::vector<int> edges;
    VertexId at;
    std::uint64_t visited;  // vertex bitmask, loop guard for this path alone
    SpectrumSet available;  // intersection over the edges taken
    double length_km{0.0};
    double cost{0.0};
  };
  struct State {
    PartialPath a, b;
  };
  struct Entry {
    double cost;
    UnitIndex lo1, lo2;
    std::uint64_t seq;
    State state;
  };
  struct After {
    bool operator()(const Entry& x, const Entry& y) const {
      if (x.cost != y.cost) return x.cost > y.cost;
      if (x.lo1 != y.lo1) return x.lo1 > y.lo1;
      if (x.lo2 != y.lo2) return x.lo2 > y.lo2;
      return x.seq > y.seq;
    }
  };

  SpectrumSet omega = SpectrumSet::whole(net.omega());
  auto first_lo = [](const SpectrumSet& s) {
    return s.empty() ? 0 : s.runs().front().lo;
  };
  auto fits = [&](const PartialPath& p) {
    if (p.edges.empty()) return true;  // requirements apply once an edge is taken
    int widest = 0;
    for (const auto& r : p.available.runs()) widest = std::max(widest, r.size());
    return model.decide(p.length_km, widest);
  };

  std::priority_queue<Entry, std::vector<Entry>, After> queue;
  std::uint64_t seq = 0;
  PartialPath start{{}, source, std::uint64_t{1} << source, omega, 0.0, 0.0};
  queue.push({0.0, first_lo(omega), first_lo(omega), seq++, State{start, start}});

  auto t0 = std::chrono::steady_clock::now();
  BruteForceResult result;
  while (!queue.empty()) {
    if (result.pops >= budget.max_pops) {
      result.status = BruteForceStatus::budget_exceeded;
      return result;
    }
    if ((result.pops & 0x3ff) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
            budget.max_seconds) {
      result.status = BruteForceStatus::budget_exceeded;
      return result;
    }

    State state = queue.top().state;
    queue.pop();
    ++result.pops;

    bool a_done = !state.a.edges.empty() && state.a.at == target;
    bool b_done = !state.b.edges.empty() && state.b.at == target;
    if (a_done && b_done) {
      auto finish = [&](const PartialPath& p) -> RoutedPath {
        auto u = model.units(p.length_km);
        ContiguousUnits cu{};
        for (const auto& r : p.available.runs())
          if (r.size() >= *u) {
            cu = {r.lo, r.lo + *u - 1};
            break;
          }
        return {p.edges, cu, p.cost, p.length_km};
      };
      result.status = BruteForceStatus::found;
      result.pair = detail::order_pair(finish(state.a), finish(state.b), model);
      return result;
    }

    // Grow the first path until it reaches the target, then the second;
    // one fixed order per pair avoids enumerating interleavings.
    PartialPath& grow = a_done ? state.b : state.a;
    const PartialPath& other = a_done ? state.a : state.b;
    for (int edge_id : net.incident_edges(grow.at)) {
      const EdgeRecord& e = net.edge(edge_id);
      VertexId v_new = e.u == grow.at ? e.v : e.u;
      if (grow.visited & (std::uint64_t{1} << v_new)) continue;
      bool used = false;
      for (int id : grow.edges) used |= id == edge_id;
      for (int id : other.edges) used |= id == edge_id;
      if (used) continue;

      PartialPath next = grow;
      next.edges.push_back(edge_id);
      next.at = v_new;
      next.visited |= std::uint64_t{1} << v_new;
      next.available = intersect(next.available, e.available);
      next.length_km += e.length_km;
      auto c = model.path_cost(next.length_km);
      if (!c) continue;
      next.cost = *c;
      if (!fits(next)) continue;

      State child = state;
      (a_done ? child.b : child.a) = std::move(next);
      double pair_cost = model.pair_cost(child.a.cost, child.b.cost);
      queue.push({pair_cost, first_lo(child.a.available), first_lo(child.b.available), seq++,
                  std::move(child)});
    }
  }
  result.status = BruteForceStatus::absent;
  return result;
}

}  // namespace dpp
