#include "outspine/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace outspine {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

int signed_edge(HalfEdge h) { return (h & 1) ? -(edge_of(h) + 1) : edge_of(h) + 1; }

HalfEdge half_edge_from_signed(int id, const Graph& g) {
  const int e = (id < 0 ? -id : id) - 1;
  if (id == 0 || e >= g.num_edges()) throw Error("edge id " + std::to_string(id) + " out of range");
  return id > 0 ? forward(e) : reverse(forward(e));
}

namespace {

// nlohmann's type errors carry no context; rethrow as Error.
template <class F>
auto guarded(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(std::string(what) + ": " + e.what());
  }
}

Json path_json(const Path& p) {
  Json out = Json::array();
  for (HalfEdge h : p) out.push_back(signed_edge(h));
  return out;
}

}  // namespace

Json to_json(const Graph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) j["vertices"].push_back(v);
  j["basepoint"] = g.basepoint() ? Json(*g.basepoint()) : Json(nullptr);
  j["edges"] = Json::array();
  for (int e = 0; e < g.num_edges(); ++e) {
    j["edges"].push_back({{"id", e + 1}, {"from", g.origin(forward(e))}, {"to", g.terminus(forward(e))}});
  }
  return j;
}

namespace {

Graph graph_from_json_with_ids(const Json& j, std::map<long long, int>& index) {
  if (!j.is_object()) throw Error("graph JSON must be an object");
  Graph g;
  for (const auto& v : j.at("vertices")) {
    long long id = v.get<long long>();
    if (!index.emplace(id, g.num_vertices()).second) {
      throw Error("duplicate vertex id " + std::to_string(id));
    }
    g.add_vertex();
  }
  auto vertex = [&](const Json& v) {
    auto it = index.find(v.get<long long>());
    if (it == index.end()) throw Error("unknown vertex id " + v.dump());
    return it->second;
  };
  const Json& edges = j.at("edges");
  std::vector<std::pair<int, int>> ends(edges.size(), {-1, -1});
  for (const auto& e : edges) {
    int id = e.at("id").get<int>();
    if (id < 1 || id > static_cast<int>(edges.size())) {
      throw Error("edge ids must be 1.." + std::to_string(edges.size()));
    }
    if (ends[id - 1].first >= 0) throw Error("duplicate edge id " + std::to_string(id));
    ends[id - 1] = {vertex(e.at("from")), vertex(e.at("to"))};
  }
  for (auto [a, b] : ends) g.add_edge(a, b);
  if (j.contains("basepoint") && !j["basepoint"].is_null()) g.set_basepoint(vertex(j["basepoint"]));
  return g;
}

}  // namespace

Graph graph_from_json(const Json& j) {
  return guarded("invalid graph JSON", [&] {
    std::map<long long, int> index;
    return graph_from_json_with_ids(j, index);
  });
}

Json to_json(const MarkedGraph& m, Mode mode) {
  Json j = to_json(m.graph);
  j["mode"] = mode_name(mode);
  j["hub"] = m.hub;
  j["marking"] = Json::array();
  for (const Path& p : m.marking) j["marking"].push_back(path_json(p));
  return j;
}

SpineVertex marked_graph_from_json(const Json& j) {
  return guarded("invalid marked graph JSON", [&] {
    std::map<long long, int> index;
    MarkedGraph m;
    m.graph = graph_from_json_with_ids(j, index);
    Mode mode = m.graph.basepoint() ? Mode::L : Mode::K;
    if (j.contains("mode")) {
      const std::string s = j["mode"].get<std::string>();
      if (s == "K") {
        mode = Mode::K;
      } else if (s == "L") {
        mode = Mode::L;
      } else {
        throw Error("mode must be \"K\" or \"L\"");
      }
    }
    if (j.contains("hub")) {
      auto it = index.find(j["hub"].get<long long>());
      if (it == index.end()) throw Error("unknown hub vertex");
      m.hub = it->second;
    } else if (m.graph.basepoint()) {
      m.hub = *m.graph.basepoint();
    }
    for (const auto& p : j.at("marking")) {
      Path path;
      for (const auto& id : p) path.push_back(half_edge_from_signed(id.get<int>(), m.graph));
      m.marking.push_back(std::move(path));
    }
    if (mode == Mode::L && !m.graph.basepoint()) m.graph.set_basepoint(m.hub);
    if (mode == Mode::K) m.graph.set_basepoint(std::nullopt);
    if (auto err = validation_error(m, mode)) throw Error("invalid marking: " + *err);
    return SpineVertex{m, mode};
  });
}

Json to_json(const SimplicialLoop& loop) {
  Json j;
  j["closed"] = loop.closed;
  j["length"] = loop.length();
  j["vertices"] = Json::array();
  for (std::size_t i = 0; i < loop.vertices.size(); ++i) {
    Json v = to_json(loop.vertices[i].rep, loop.vertices[i].mode);
    v["label"] = loop.labels[i];
    j["vertices"].push_back(std::move(v));
  }
  return j;
}

Json to_json(const TwoComplex& x) {
  Json j;
  j["vertices"] = Json::array();
  for (int v = 0; v < x.num_vertices(); ++v) j["vertices"].push_back(v);
  j["triangles"] = Json::array();
  for (const auto& t : x.triangles()) j["triangles"].push_back({t[0], t[1], t[2]});
  // Only edges not already implied by a triangle.
  j["extra_edges"] = Json::array();
  for (const auto& e : x.edges()) {
    bool covered = false;
    for (const auto& t : x.triangles()) {
      int hits = (t[0] == e[0] || t[1] == e[0] || t[2] == e[0]) +
                 (t[0] == e[1] || t[1] == e[1] || t[2] == e[1]);
      covered = covered || hits == 2;
    }
    if (!covered) j["extra_edges"].push_back({e[0], e[1]});
  }
  return j;
}

TwoComplex complex_from_json(const Json& j) {
  return guarded("invalid complex JSON", [&] {
    std::map<long long, int> index;
    for (const auto& v : j.at("vertices")) {
      if (!index.emplace(v.get<long long>(), static_cast<int>(index.size())).second) {
        throw Error("duplicate vertex id " + v.dump());
      }
    }
    auto vertex = [&](const Json& v) {
      auto it = index.find(v.get<long long>());
      if (it == index.end()) throw Error("unknown vertex id " + v.dump());
      return it->second;
    };
    std::vector<std::array<int, 3>> tris;
    for (const auto& t : j.at("triangles")) {
      if (t.size() != 3) throw Error("a triangle needs three vertices");
      tris.push_back({vertex(t[0]), vertex(t[1]), vertex(t[2])});
    }
    std::vector<std::array<int, 2>> extra;
    if (j.contains("extra_edges")) {
      for (const auto& e : j["extra_edges"]) {
        if (e.size() != 2) throw Error("an edge needs two vertices");
        extra.push_back({vertex(e[0]), vertex(e[1])});
      }
    }
    return TwoComplex::make(static_cast<int>(index.size()), tris, extra);
  });
}

std::string to_dot(const Graph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    out << "  v" << v;
    if (g.basepoint() == v) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    out << "  v" << g.origin(forward(e)) << " -> v" << g.terminus(forward(e)) << " [label=\"e"
        << e + 1 << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const SimplicialLoop& loop, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  const std::size_t k = loop.vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Graph& g = loop.vertices[i].rep.graph;
    out << "  n" << i << " [label=\"" << i << ": " << loop.labels[i] << "\\nV=" << g.num_vertices()
        << " E=" << g.num_edges() << "\"";
    if (loop.labels[i] == "rose") out << ", shape=box";
    out << "];\n";
  }
  for (std::size_t i = 0; i + 1 < k; ++i) out << "  n" << i << " -- n" << i + 1 << ";\n";
  if (loop.closed && k > 1) out << "  n" << k - 1 << " -- n0;\n";
  out << "}\n";
  return out.str();
}

}  // namespace outspine
