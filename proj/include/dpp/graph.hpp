#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "dpp/spectrum.hpp"

namespace dpp {

using VertexId = int;

struct Point {
  double x_km{0.0};
  double y_km{0.0};
};

// One undirected edge; both directed arcs share this record and its spectrum.
struct EdgeRecord {
  int id{};
  VertexId u{};
  VertexId v{};
  double length_km{};
  SpectrumSet available;
};

struct Arc {
  int edge_id{};
  VertexId target{};
  double length_km{};
};

// Undirected multigraph exposed as directed arcs. Parallel edges are allowed
// and distinguished by id; self-loops are rejected.
class Network {
 public:
  Network(int vertex_count, int omega)
      : omega_(omega), incident_(static_cast<std::size_t>(vertex_count)) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    if (omega <= 0) throw std::invalid_argument("omega must be positive");
  }

  int add_edge(VertexId u, VertexId v, double length_km) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (!(length_km > 0.0)) throw std::invalid_argument("edge length must be positive");
    int id = static_cast<int>(edges_.size());
    edges_.push_back({id, u, v, length_km, SpectrumSet::whole(omega_)});
    incident_[u].push_back(id);
    incident_[v].push_back(id);
    return id;
  }

  int vertex_count() const { return static_cast<int>(incident_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int omega() const { return omega_; }

  const EdgeRecord& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }

  const std::vector<int>& incident_edges(VertexId v) const {
    check_vertex(v);
    return incident_[v];
  }

  VertexId arc_target(int edge_id, VertexId from) const {
    const EdgeRecord& e = edge(edge_id);
    return e.u == from ? e.v : e.u;
  }

  std::vector<Arc> out_arcs(VertexId v) const {
    std::vector<Arc> arcs;
    for (int id : incident_edges(v)) {
      const EdgeRecord& e = edges_[id];
      arcs.push_back({id, e.u == v ? e.v : e.u, e.length_km});
    }
    return arcs;
  }

  const SpectrumSet& available(int edge_id) const { return edge(edge_id).available; }

  void set_available(int edge_id, SpectrumSet s) {
    edges_.at(static_cast<std::size_t>(edge_id)).available = std::move(s);
  }

  void allocate(int edge_id, ContiguousUnits cu) {
    EdgeRecord& e = edges_.at(static_cast<std::size_t>(edge_id));
    e.available = subtract(e.available, cu);
  }

  void release(int edge_id, ContiguousUnits cu) {
    EdgeRecord& e = edges_.at(static_cast<std::size_t>(edge_id));
    e.available = add(e.available, cu);
  }

  bool has_coordinates() const { return !coords_.empty(); }
  const std::vector<Point>& coordinates() const { return coords_; }
  void set_coordinates(std::vector<Point> coords) {
    if (static_cast<int>(coords.size()) != vertex_count())
      throw std::invalid_argument("coordinate count mismatch");
    coords_ = std::move(coords);
  }

  void check_vertex(VertexId v) const {
    if (v < 0 || v >= vertex_count()) throw std::invalid_argument("vertex id out of range");
  }

 private:
  int omega_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<Point> coords_;
};

inline bool is_connected(const Network& net) {
  int n = net.vertex_count();
  if (n <= 1) return true;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (int id : net.incident_edges(v)) {
      VertexId w = net.arc_target(id, v);
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == n;
}

struct PathMetrics {
  double alpha{};            // mean hop count over shortest paths of all vertex pairs
  double diameter_len_km{};  // longest shortest-path length
};

namespace detail {

// Length-shortest distances from one source over the multigraph.
inline std::vector<double> dijkstra_lengths(const Network& net, VertexId source) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(net.vertex_count()), inf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  dist[source] = 0.0;
  q.push({0.0, source});
  while (!q.empty()) {
    auto [d, v] = q.top();
    q.pop();
    if (d > dist[v]) continue;
    for (int id : net.incident_edges(v)) {
      const EdgeRecord& e = net.edge(id);
      VertexId w = e.u == v ? e.v : e.u;
      double nd = d + e.length_km;
      if (nd < dist[w]) {
        dist[w] = nd;
        q.push({nd, w});
      }
    }
  }
  return dist;
}

}  // namespace detail

// Alpha averages the hop count of one shortest path per unordered pair; among
// equal-length paths the lexicographically smallest vertex sequence is used.
inline PathMetrics shortest_path_metrics(const Network& net) {
  int n = net.vertex_count();
  if (n < 2) throw std::invalid_argument("metrics need at least two vertices");
  if (!is_connected(net)) throw std::invalid_argument("network is disconnected");

  std::vector<std::vector<double>> dist;
  dist.reserve(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) dist.push_back(detail::dijkstra_lengths(net, v));

  // Min length per vertex pair, for walking shortest paths hop by hop.
  std::vector<std::vector<double>> wmin(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n),
                                                            std::numeric_limits<double>::infinity()));
  for (int id = 0; id < net.edge_count(); ++id) {
    const EdgeRecord& e = net.edge(id);
    wmin[e.u][e.v] = std::min(wmin[e.u][e.v], e.length_km);
    wmin[e.v][e.u] = wmin[e.u][e.v];
  }

  long long hops_total = 0;
  double diameter = 0.0;
  for (VertexId s = 0; s < n; ++s) {
    for (VertexId t = s + 1; t < n; ++t) {
      diameter = std::max(diameter, dist[s][t]);
      VertexId cur = s;
      int hops = 0;
      while (cur != t) {
        VertexId next = -1;
        for (VertexId w = 0; w < n; ++w) {
          if (w == cur || std::isinf(wmin[cur][w])) continue;
          double via = wmin[cur][w] + dist[w][t];
          if (std::abs(via - dist[cur][t]) <= 1e-9 * std::max(1.0, dist[cur][t])) {
            next = w;
            break;  // vertices scanned in increasing order
          }
        }
        if (next < 0) throw std::logic_error("shortest-path walk lost the trail");
        cur = next;
        ++hops;
      }
      hops_total += hops;
    }
  }
  double pairs = 0.5 * n * (n - 1);
  return {static_cast<double>(hops_total) / pairs, diameter};
}

// Gabriel graph: an edge joins u,v iff no third point lies strictly inside
// the circle whose diameter is uv. Points exactly on the circle do not
// block. Implemented with the angle form of the test.
inline Network gabriel_from_points(std::vector<Point> pts, int omega) {
  int n = static_cast<int>(pts.size());
  if (n < 2) throw std::invalid_argument("a Gabriel graph needs at least two points");
  Network net(n, omega);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      bool blocked = false;
      for (VertexId w = 0; w < n && !blocked; ++w) {
        if (w == u || w == v) continue;
        // w strictly inside the diametral circle iff angle uwv is obtuse.
        double ax = pts[u].x_km - pts[w].x_km, ay = pts[u].y_km - pts[w].y_km;
        double bx = pts[v].x_km - pts[w].x_km, by = pts[v].y_km - pts[w].y_km;
        blocked = ax * bx + ay * by < 0.0;
      }
      if (!blocked)
        net.add_edge(u, v, std::hypot(pts[u].x_km - pts[v].x_km, pts[u].y_km - pts[v].y_km));
    }
  }
  net.set_coordinates(std::move(pts));
  return net;
}

// Uniform points in a square sized so that each vertex owns the given area.
inline Network gabriel_generate(int n, double density_km2_per_vertex, std::uint64_t seed,
                                int omega) {
  if (n < 2) throw std::invalid_argument("gabriel_generate needs n >= 2");
  if (!(density_km2_per_vertex > 0.0)) throw std::invalid_argument("density must be positive");

  double side = std::sqrt(static_cast<double>(n) * density_km2_per_vertex);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.x_km = coord(rng);
    p.y_km = coord(rng);
  }
  return gabriel_from_points(std::move(pts), omega);
}

}  // namespace dpp
