#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dpp/graph.hpp"

namespace dpp {

namespace detail {

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

// Canonical graph file: fixed key order, 6-decimal coordinates and lengths,
// one vertex/edge object per line. Emitting the same network twice yields
// identical bytes.
inline std::string graph_to_json(const Network& net) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"omega\": " << net.omega() << ",\n";
  out << "  \"vertices\": [\n";
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    Point p = net.has_coordinates() ? net.coordinates()[v] : Point{};
    out << "    {\"id\": " << v << ", \"x_km\": " << detail::fixed6(p.x_km)
        << ", \"y_km\": " << detail::fixed6(p.y_km) << "}"
        << (v + 1 < net.vertex_count() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"edges\": [\n";
  for (int id = 0; id < net.edge_count(); ++id) {
    const EdgeRecord& e = net.edge(id);
    out << "    {\"id\": " << e.id << ", \"u\": " << e.u << ", \"v\": " << e.v
        << ", \"length_km\": " << detail::fixed6(e.length_km) << ", \"available\": \""
        << e.available.to_string() << "\"}" << (id + 1 < net.edge_count() ? "," : "") << "\n";
  }
  out << "  ]\n";
  out << "}\n";
  return out.str();
}

inline Network graph_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int omega = j.at("omega").get<int>();
  const auto& vertices = j.at("vertices");
  Network net(static_cast<int>(vertices.size()), omega);

  std::vector<Point> coords(vertices.size());
  for (const auto& v : vertices) {
    int id = v.at("id").get<int>();
    if (id < 0 || id >= net.vertex_count()) throw std::invalid_argument("vertex id out of range");
    coords[id] = {v.at("x_km").get<double>(), v.at("y_km").get<double>()};
  }
  net.set_coordinates(std::move(coords));

  for (const auto& e : j.at("edges")) {
    int id = net.add_edge(e.at("u").get<int>(), e.at("v").get<int>(),
                          e.at("length_km").get<double>());
    if (id != e.at("id").get<int>())
      throw std::invalid_argument("edge ids must be dense and in order");
    net.set_available(id, SpectrumSet::parse(e.at("available").get<std::string>()));
  }
  return net;
}

inline void save_graph(const Network& net, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << graph_to_json(net);
  if (!f) throw std::runtime_error("write failed: " + path);
}

inline Network load_graph(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return graph_from_json(buf.str());
}

}  // namespace dpp
