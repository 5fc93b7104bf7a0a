#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "dpp/costmodel.hpp"
#include "dpp/graph.hpp"
#include "dpp/spectrum.hpp"

namespace dpp {

// Summary of one partial path: what it costs and the widest contiguous slot
// it still preserves. The length is bookkeeping for extending the path; the
// partial order looks only at cost and slot.
struct PathTrait {
  double cost{0.0};
  double length_km{0.0};
  ContiguousUnits cu;
};

inline bool trait_leq(const PathTrait& a, const PathTrait& b) {
  return a.cost <= b.cost && a.cu.includes(b.cu);
}

// Pair of traits at a search vertex; the first trait belongs to the path
// ending at the smaller vertex index.
struct SolutionLabel {
  PathTrait first;
  PathTrait second;
};

inline bool label_leq(const SolutionLabel& a, const SolutionLabel& b) {
  return trait_leq(a.first, b.first) && trait_leq(a.second, b.second);
}

// Unordered pair of input-graph vertices, stored with v1 <= v2.
struct SearchVertex {
  VertexId v1{};
  VertexId v2{};
  friend constexpr bool operator==(const SearchVertex&, const SearchVertex&) = default;
};

struct RoutedPath {
  std::vector<int> edges;
  ContiguousUnits cu;   // allocated units
  double cost{0.0};
  double length_km{0.0};
};

struct ProtectedPair {
  RoutedPath working;     // the cheaper path
  RoutedPath protecting;  // the other one
  double total_cost{0.0};
};

struct SearchStats {
  std::int64_t pops{0};           // queue extractions, stale entries included
  std::int64_t relaxations{0};    // arcs relaxed from permanent solutions
  std::int64_t tentative_created{0};
  std::int64_t permanent_count{0};
  std::int64_t queue_peak{0};
  std::int64_t nodes_peak{0};     // peak live (permanent + tentative) tree nodes
  std::int64_t tentative_peak{0};  // peak live tentative nodes
  int vertices_touched{0};        // distinct search vertices that ever held a label
  std::int64_t max_vertex_labels{0};  // peak |P_x| + |T_x| over all x

  // 15 words per live label plus 2 per queue slot.
  std::int64_t memory_words() const { return 15 * nodes_peak + 2 * queue_peak; }
};

struct SearchOptions {
  bool self_check = false;  // verify ordering/domination invariants while running
};

namespace detail {

enum class NodeState : std::uint8_t { tentative, permanent, discarded };

struct SearchTreeNode {
  SearchVertex x;
  SolutionLabel label;
  int taken_edge{-1};                 // -1 at the root
  std::int8_t extended_side{-1};      // which label side the edge extended
  std::int8_t parent_extended_side{-1};  // which side of the parent it grew from
  SearchTreeNode* parent{nullptr};
  NodeState state{NodeState::tentative};
};

// Walks parent links and splits the taken edges into the two paths, keeping
// track of how label sides were swapped along the way. Edge order is from
// the source outward; slot i of the returned array matches label side i of
// the node passed in.
inline std::array<std::vector<int>, 2> trace_edge_paths(const SearchTreeNode* node) {
  std::array<std::vector<int>, 2> paths;
  std::array<int, 2> slot_to_path{0, 1};
  for (const SearchTreeNode* n = node; n->parent != nullptr; n = n->parent) {
    paths[slot_to_path[n->extended_side]].push_back(n->taken_edge);
    std::array<int, 2> up;
    up[n->parent_extended_side] = slot_to_path[n->extended_side];
    up[1 - n->parent_extended_side] = slot_to_path[1 - n->extended_side];
    slot_to_path = up;
  }
  for (auto& p : paths) std::reverse(p.begin(), p.end());
  return paths;
}

inline bool edge_used_by_ancestors(const SearchTreeNode* node, int edge_id) {
  for (const SearchTreeNode* n = node; n != nullptr; n = n->parent)
    if (n->taken_edge == edge_id) return true;
  return false;
}

template <SearchModel M>
class PairSearch {
 public:
  PairSearch(const Network& net, const M& model, const SearchOptions& opts)
      : net_(net), model_(model), opts_(opts), sets_(vertex_pair_count(net.vertex_count())) {}

  std::optional<ProtectedPair> run(VertexId source, VertexId target) {
    net_.check_vertex(source);
    net_.check_vertex(target);
    if (source == target) throw std::invalid_argument("source and target must differ");

    const SearchVertex x_target{target, target};
    SearchTreeNode* root = &arena_.emplace_back();
    root->x = {source, source};
    SpectrumSet omega = SpectrumSet::whole(net_.omega());
    ContiguousUnits whole = omega.runs().front();
    root->label = {{0.0, 0.0, whole}, {0.0, 0.0, whole}};
    live_nodes_ = 1;
    tentative_count_ = 1;
    stats_.nodes_peak = 1;
    stats_.tentative_peak = 1;
    vertex_sets(root->x).tentative.push_back(root);
    touch(root->x);
    push_queue(0.0, root);

    SearchTreeNode* goal = nullptr;
    while (!queue_.empty()) {
      QueueEntry top = queue_.top();
      queue_.pop();
      ++stats_.pops;
      SearchTreeNode* node = top.node;
      if (node->state == NodeState::discarded) continue;

      VertexSets& sets = vertex_sets(node->x);
      if (opts_.self_check) check_extraction(sets, node, top.cost);
      std::erase(sets.tentative, node);
      sets.permanent.push_back(node);
      node->state = NodeState::permanent;
      --tentative_count_;
      ++stats_.permanent_count;

      if (node->x == x_target) {
        goal = node;
        break;
      }

      const SolutionLabel& l = node->label;
      for (int edge_id : net_.incident_edges(node->x.v1))
        relax(edge_id, node->x.v1, node->x.v2, l.second, l.first, node, 0);
      for (int edge_id : net_.incident_edges(node->x.v2))
        relax(edge_id, node->x.v2, node->x.v1, l.first, l.second, node, 1);
    }

    if (goal == nullptr) return std::nullopt;
    return assemble(goal);
  }

  const SearchStats& stats() const { return stats_; }

 private:
  struct QueueEntry {
    double cost;
    UnitIndex lo1, lo2;
    std::uint64_t seq;
    SearchTreeNode* node;
  };
  struct QueueAfter {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
      if (a.cost != b.cost) return a.cost > b.cost;
      if (a.lo1 != b.lo1) return a.lo1 > b.lo1;
      if (a.lo2 != b.lo2) return a.lo2 > b.lo2;
      return a.seq > b.seq;
    }
  };

  struct VertexSets {
    std::vector<SearchTreeNode*> permanent;
    std::vector<SearchTreeNode*> tentative;
    bool touched{false};
  };

  static std::size_t vertex_pair_count(int n) {
    return static_cast<std::size_t>(n) * (n + 1) / 2;
  }

  VertexSets& vertex_sets(SearchVertex x) {
    // Triangular index over pairs with x.v1 <= x.v2.
    int n = net_.vertex_count();
    std::size_t idx = static_cast<std::size_t>(x.v1) * n -
                      static_cast<std::size_t>(x.v1) * (x.v1 - 1) / 2 + (x.v2 - x.v1);
    return sets_[idx];
  }

  void touch(SearchVertex x) {
    VertexSets& s = vertex_sets(x);
    if (!s.touched) {
      s.touched = true;
      ++stats_.vertices_touched;
    }
    auto labels = static_cast<std::int64_t>(s.permanent.size() + s.tentative.size());
    stats_.max_vertex_labels = std::max(stats_.max_vertex_labels, labels);
  }

  void push_queue(double cost, SearchTreeNode* node) {
    queue_.push({cost, node->label.first.cu.lo, node->label.second.cu.lo, seq_++, node});
    stats_.queue_peak = std::max(stats_.queue_peak, static_cast<std::int64_t>(queue_.size()));
  }

  // One search-graph edge: append edge_id to the path ending at v_from,
  // keeping the other path (at v_keep, trait p_keep) untouched.
  void relax(int edge_id, VertexId v_from, VertexId v_keep, const PathTrait& p_keep,
             const PathTrait& p_ext, SearchTreeNode* parent, std::int8_t parent_side) {
    ++stats_.relaxations;
    const EdgeRecord& e = net_.edge(edge_id);
    VertexId v_new = e.u == v_from ? e.v : e.u;
    double new_len = p_ext.length_km + e.length_km;
    std::optional<double> new_cost = model_.path_cost(new_len);
    if (!new_cost) return;

    SpectrumSet reachable = intersect(p_ext.cu, e.available);
    for (const ContiguousUnits& cu : reachable.runs()) {
      if (!model_.decide(new_len, cu.size())) continue;

      PathTrait p_new{*new_cost, new_len, cu};
      SearchVertex x{v_keep, v_new};
      SolutionLabel label{p_keep, p_new};
      bool swapped = false;
      if (v_new < v_keep) {
        std::swap(x.v1, x.v2);
        std::swap(label.first, label.second);
        swapped = true;
      } else if (v_keep == v_new && !trait_leq(p_keep, p_new)) {
        std::swap(label.first, label.second);
        swapped = true;
      }

      VertexSets& sets = vertex_sets(x);
      if (dominated_by_any(sets.permanent, label)) continue;
      if (dominated_by_any(sets.tentative, label)) continue;
      if (edge_used_by_ancestors(parent, edge_id)) continue;

      discard_dominated(sets.tentative, label);

      SearchTreeNode* node = &arena_.emplace_back();
      node->x = x;
      node->label = label;
      node->taken_edge = edge_id;
      node->extended_side = swapped ? 0 : 1;
      node->parent_extended_side = parent_side;
      node->parent = parent;
      ++live_nodes_;
      stats_.nodes_peak = std::max(stats_.nodes_peak, live_nodes_);
      ++stats_.tentative_created;
      ++tentative_count_;
      stats_.tentative_peak = std::max(stats_.tentative_peak, tentative_count_);

      sets.tentative.push_back(node);
      touch(x);
      push_queue(model_.pair_cost(label.first.cost, label.second.cost), node);
      if (opts_.self_check) check_sets(sets);
    }
  }

  static bool dominated_by_any(const std::vector<SearchTreeNode*>& set,
                               const SolutionLabel& label) {
    for (const SearchTreeNode* n : set)
      if (label_leq(n->label, label)) return true;
    return false;
  }

  void discard_dominated(std::vector<SearchTreeNode*>& tentative, const SolutionLabel& label) {
    std::erase_if(tentative, [&](SearchTreeNode* n) {
      if (!label_leq(label, n->label)) return false;
      n->state = NodeState::discarded;
      --live_nodes_;
      --tentative_count_;
      return true;
    });
  }

  std::optional<ProtectedPair> assemble(const SearchTreeNode* goal) {
    auto edge_paths = trace_edge_paths(goal);
    std::array<RoutedPath, 2> sides;
    const PathTrait* traits[2] = {&goal->label.first, &goal->label.second};
    for (int i = 0; i < 2; ++i) {
      RoutedPath& p = sides[i];
      p.edges = std::move(edge_paths[i]);
      p.cost = traits[i]->cost;
      p.length_km = traits[i]->length_km;
      auto u = model_.units(p.length_km);
      if (!u) throw std::logic_error("goal label has an infeasible path");
      // Lowest slice of the required width inside the preserved slot.
      p.cu = {traits[i]->cu.lo, traits[i]->cu.lo + *u - 1};
    }
    bool first_is_working =
        sides[0].cost < sides[1].cost ||
        (sides[0].cost == sides[1].cost && sides[0].edges.front() <= sides[1].edges.front());
    ProtectedPair pair;
    pair.working = std::move(sides[first_is_working ? 0 : 1]);
    pair.protecting = std::move(sides[first_is_working ? 1 : 0]);
    pair.total_cost = model_.pair_cost(pair.working.cost, pair.protecting.cost);
    return pair;
  }

  void check_extraction(const VertexSets& sets, const SearchTreeNode* node, double cost) const {
    for (const SearchTreeNode* p : sets.permanent) {
      if (label_leq(p->label, node->label) || label_leq(node->label, p->label))
        throw std::logic_error("extracted label comparable with a permanent label");
      if (model_.pair_cost(p->label.first.cost, p->label.second.cost) > cost)
        throw std::logic_error("extraction cost below an earlier permanent label");
    }
    for (const SearchTreeNode* t : sets.tentative) {
      if (t == node) continue;
      if (model_.pair_cost(t->label.first.cost, t->label.second.cost) < cost)
        throw std::logic_error("extracted label is not the cheapest waiting label");
    }
  }

  void check_sets(const VertexSets& sets) const {
    for (std::size_t i = 0; i < sets.tentative.size(); ++i) {
      for (std::size_t j = 0; j < sets.tentative.size(); ++j)
        if (i != j && label_leq(sets.tentative[i]->label, sets.tentative[j]->label))
          throw std::logic_error("tentative set holds comparable labels");
      for (const SearchTreeNode* p : sets.permanent)
        if (label_leq(p->label, sets.tentative[i]->label))
          throw std::logic_error("tentative label dominated by a permanent label");
    }
  }

  const Network& net_;
  const M& model_;
  SearchOptions opts_;
  std::deque<SearchTreeNode> arena_;
  std::vector<VertexSets> sets_;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueAfter> queue_;
  std::uint64_t seq_{0};
  std::int64_t live_nodes_{0};
  std::int64_t tentative_count_{0};
  SearchStats stats_;
};

}  // namespace detail

// Cheapest pair of edge-disjoint, spectrum-feasible paths from source to
// target, or nothing when no such pair exists. The working path is the
// cheaper of the two.
template <SearchModel M>
std::optional<ProtectedPair> dpp_search(const Network& net, VertexId source, VertexId target,
                                        const M& model, SearchStats* stats = nullptr,
                                        const SearchOptions& opts = {}) {
  detail::PairSearch<M> search(net, model, opts);
  auto result = search.run(source, target);
  if (stats) *stats = search.stats();
  return result;
}

}  // namespace dpp
