#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dpp/graph.hpp"
#include "dpp/graph_io.hpp"
#include "fixtures.hpp"

using dpp::Network;
using dpp::Point;
using dpp::VertexId;

namespace {

// Independent empty-circle check: w blocks uv iff it is strictly closer to
// the midpoint of uv than half the uv distance.
bool gabriel_edge_expected(const std::vector<Point>& pts, VertexId u, VertexId v) {
  double mx = 0.5 * (pts[u].x_km + pts[v].x_km);
  double my = 0.5 * (pts[u].y_km + pts[v].y_km);
  double r2 = 0.25 * (std::pow(pts[u].x_km - pts[v].x_km, 2) +
                      std::pow(pts[u].y_km - pts[v].y_km, 2));
  for (std::size_t w = 0; w < pts.size(); ++w) {
    if (static_cast<VertexId>(w) == u || static_cast<VertexId>(w) == v) continue;
    double d2 = std::pow(pts[w].x_km - mx, 2) + std::pow(pts[w].y_km - my, 2);
    if (d2 < r2) return false;
  }
  return true;
}

bool has_edge(const Network& net, VertexId u, VertexId v) {
  for (int id : net.incident_edges(u))
    if (net.arc_target(id, u) == v) return true;
  return false;
}

// All-pairs lengths the slow way, for checking the metrics.
std::vector<std::vector<double>> floyd_warshall(const Network& net) {
  int n = net.vertex_count();
  std::vector<std::vector<double>> d(n, std::vector<double>(n,
                                        std::numeric_limits<double>::infinity()));
  for (int v = 0; v < n; ++v) d[v][v] = 0.0;
  for (int id = 0; id < net.edge_count(); ++id) {
    const auto& e = net.edge(id);
    d[e.u][e.v] = std::min(d[e.u][e.v], e.length_km);
    d[e.v][e.u] = d[e.u][e.v];
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace

TEST_CASE("out_arcs") {
  Network tri(3, 4);
  tri.add_edge(0, 1, 1.0);
  tri.add_edge(1, 2, 1.0);
  tri.add_edge(0, 2, 1.0);
  auto arcs = tri.out_arcs(0);
  REQUIRE(arcs.size() == 2);
  CHECK(arcs[0].target == 1);
  CHECK(arcs[1].target == 2);

  Network multi(3, 4);
  int e1 = multi.add_edge(0, 1, 1.0);
  int e2 = multi.add_edge(0, 1, 2.0);
  auto parallel = multi.out_arcs(0);
  REQUIRE(parallel.size() == 2);
  CHECK(parallel[0].edge_id == e1);
  CHECK(parallel[1].edge_id == e2);
  CHECK(parallel[1].length_km == 2.0);
  CHECK(multi.out_arcs(2).empty());

  CHECK_THROWS_AS(tri.out_arcs(7), std::invalid_argument);
}

TEST_CASE("construction rules") {
  Network net(3, 8);
  CHECK_THROWS_AS(net.add_edge(1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(net.add_edge(0, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(net.add_edge(0, 1, 0.0), std::invalid_argument);
}

TEST_CASE("spectrum is shared between both directions of an edge") {
  Network net(2, 8);
  int e = net.add_edge(0, 1, 1.0);
  net.allocate(e, {0, 3});
  CHECK(net.out_arcs(0)[0].edge_id == e);
  CHECK(net.available(e) == dpp::SpectrumSet::parse("4-7"));
  // the arc seen from the other side reports the same depleted set
  CHECK(net.available(net.out_arcs(1)[0].edge_id) == dpp::SpectrumSet::parse("4-7"));
  net.release(e, {0, 3});
  CHECK(net.available(e) == dpp::SpectrumSet::whole(8));
  CHECK_THROWS_AS(net.release(e, dpp::ContiguousUnits{0, 0}), std::logic_error);
}

TEST_CASE("gabriel graph of two points is a single edge") {
  auto net = dpp::gabriel_from_points({{0.0, 0.0}, {3.0, 4.0}}, 4);
  REQUIRE(net.edge_count() == 1);
  CHECK(net.edge(0).length_km == Catch::Approx(5.0));
  CHECK(net.available(0) == dpp::SpectrumSet::whole(4));
}

TEST_CASE("collinear midpoint blocks the long edge") {
  auto net = dpp::gabriel_from_points({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}, 4);
  CHECK(has_edge(net, 0, 1));
  CHECK(has_edge(net, 1, 2));
  CHECK_FALSE(has_edge(net, 0, 2));
  CHECK(net.edge_count() == 2);
}

TEST_CASE("generated gabriel graphs satisfy the empty-circle rule") {
  for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
    Network net = dpp::gabriel_generate(25, 10000.0, seed, 8);
    const auto& pts = net.coordinates();
    CHECK(dpp::is_connected(net));
    for (VertexId u = 0; u < net.vertex_count(); ++u)
      for (VertexId v = u + 1; v < net.vertex_count(); ++v)
        CHECK(has_edge(net, u, v) == gabriel_edge_expected(pts, u, v));
    for (int id = 0; id < net.edge_count(); ++id) {
      const auto& e = net.edge(id);
      double dist = std::hypot(pts[e.u].x_km - pts[e.v].x_km, pts[e.u].y_km - pts[e.v].y_km);
      CHECK(e.length_km == Catch::Approx(dist));
    }
  }
}

TEST_CASE("gabriel generation is deterministic per seed") {
  Network a = dpp::gabriel_generate(12, 10000.0, 3, 8);
  Network b = dpp::gabriel_generate(12, 10000.0, 3, 8);
  CHECK(dpp::graph_to_json(a) == dpp::graph_to_json(b));
  Network c = dpp::gabriel_generate(12, 10000.0, 4, 8);
  CHECK(dpp::graph_to_json(a) != dpp::graph_to_json(c));
}

TEST_CASE("shortest path metrics on a path graph") {
  Network net(3, 4);
  net.add_edge(0, 1, 1.0);
  net.add_edge(1, 2, 1.0);
  auto m = dpp::shortest_path_metrics(net);
  CHECK(m.alpha == Catch::Approx(4.0 / 3.0));
  CHECK(m.diameter_len_km == Catch::Approx(2.0));

  Network single(2, 4);
  single.add_edge(0, 1, 7.5);
  auto ms = dpp::shortest_path_metrics(single);
  CHECK(ms.alpha == Catch::Approx(1.0));
  CHECK(ms.diameter_len_km == Catch::Approx(7.5));
}

TEST_CASE("metrics reject a disconnected network") {
  Network net(4, 4);
  net.add_edge(0, 1, 1.0);
  net.add_edge(2, 3, 1.0);
  CHECK_THROWS_AS(dpp::shortest_path_metrics(net), std::invalid_argument);
}

TEST_CASE("metrics agree with all-pairs recomputation") {
  std::mt19937_64 seeds(123);
  for (int i = 0; i < 10; ++i) {
    Network net = dpp::gabriel_generate(10, 10000.0, seeds(), 8);
    REQUIRE(dpp::is_connected(net));
    auto m = dpp::shortest_path_metrics(net);
    auto d = floyd_warshall(net);

    double diameter = 0.0;
    long long hops_total = 0;
    int n = net.vertex_count();
    for (int s = 0; s < n; ++s) {
      for (int t = s + 1; t < n; ++t) {
        diameter = std::max(diameter, d[s][t]);
        // lexicographically smallest shortest path, walked greedily
        int cur = s, hops = 0;
        while (cur != t) {
          for (int w = 0; w < n; ++w) {
            if (w == cur) continue;
            double best = std::numeric_limits<double>::infinity();
            for (int id : net.incident_edges(cur))
              if (net.arc_target(id, cur) == w)
                best = std::min(best, net.edge(id).length_km);
            if (std::isinf(best)) continue;
            if (std::abs(best + d[w][t] - d[cur][t]) <= 1e-9 * std::max(1.0, d[cur][t])) {
              cur = w;
              ++hops;
              break;
            }
          }
        }
        hops_total += hops;
      }
    }
    CHECK(m.diameter_len_km == Catch::Approx(diameter));
    CHECK(m.alpha == Catch::Approx(hops_total / (0.5 * n * (n - 1))));
  }
}

TEST_CASE("graph file round trip is byte-stable") {
  Network net = dpp::gabriel_generate(9, 10000.0, 21, 16);
  net.allocate(0, {2, 5});
  std::string text = dpp::graph_to_json(net);
  Network loaded = dpp::graph_from_json(text);
  CHECK(dpp::graph_to_json(loaded) == text);

  CHECK(loaded.vertex_count() == net.vertex_count());
  CHECK(loaded.edge_count() == net.edge_count());
  CHECK(loaded.omega() == net.omega());
  CHECK(loaded.available(0) == net.available(0));
}
