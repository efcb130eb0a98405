#include "outspine/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>

namespace outspine {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

Graph::Graph(int vertices) : stars_(vertices) {}

int Graph::add_vertex() {
  stars_.emplace_back();
  return num_vertices() - 1;
}

int Graph::add_edge(int from, int to) {
  if (from < 0 || to < 0 || from >= num_vertices() || to >= num_vertices()) {
    throw Error("edge endpoint out of range");
  }
  const int e = num_edges();
  origin_.push_back(from);
  origin_.push_back(to);
  stars_[from].push_back(2 * e);
  stars_[to].push_back(2 * e + 1);
  return e;
}

void Graph::set_basepoint(std::optional<int> v) {
  if (v && (*v < 0 || *v >= num_vertices())) throw Error("basepoint out of range");
  basepoint_ = v;
}

bool Graph::connected() const {
  if (num_vertices() == 0) return false;
  std::vector<bool> seen(num_vertices(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (HalfEdge h : stars_[v]) {
      int w = terminus(h);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == num_vertices();
}

int Graph::rank() const {
  if (!connected()) throw Error("rank of a disconnected graph");
  return num_edges() - num_vertices() + 1;
}

Graph rose(int petals) {
  Graph g(1);
  for (int k = 0; k < petals; ++k) g.add_edge(0, 0);
  g.set_basepoint(0);
  return g;
}

Path reduce_path(std::span<const HalfEdge> path) {
  Path out;
  out.reserve(path.size());
  for (HalfEdge h : path) {
    if (!out.empty() && out.back() == reverse(h)) {
      out.pop_back();
    } else {
      out.push_back(h);
    }
  }
  return out;
}

Path inverse_path(std::span<const HalfEdge> path) {
  Path out(path.rbegin(), path.rend());
  for (HalfEdge& h : out) h = reverse(h);
  return out;
}

Path concat(std::span<const HalfEdge> a, std::span<const HalfEdge> b) {
  Path out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return reduce_path(out);
}

bool is_path(const Graph& g, std::span<const HalfEdge> path, int from, int to) {
  int at = from;
  for (HalfEdge h : path) {
    if (h < 0 || h >= g.num_half_edges() || g.origin(h) != at) return false;
    at = g.terminus(h);
  }
  return at == to;
}

std::vector<bool> spanning_tree(const Graph& g, int root) {
  std::vector<bool> tree(g.num_edges(), false);
  std::vector<bool> seen(g.num_vertices(), false);
  std::deque<int> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (HalfEdge h : g.star(v)) {
      int w = g.terminus(h);
      if (!seen[w]) {
        seen[w] = true;
        tree[edge_of(h)] = true;
        queue.push_back(w);
      }
    }
  }
  return tree;
}

bool is_spanning_tree(const Graph& g, const std::vector<bool>& tree) {
  if (static_cast<int>(tree.size()) != g.num_edges()) return false;
  UnionFind uf(g.num_vertices());
  int used = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!tree[e]) continue;
    if (!uf.unite(g.origin(2 * e), g.terminus(2 * e))) return false;
    ++used;
  }
  return used == g.num_vertices() - 1;
}

Path tree_path(const Graph& g, const std::vector<bool>& tree, int from, int to) {
  std::vector<HalfEdge> via(g.num_vertices(), -1);
  std::vector<bool> seen(g.num_vertices(), false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (HalfEdge h : g.star(v)) {
      if (!tree[edge_of(h)]) continue;
      int w = g.terminus(h);
      if (!seen[w]) {
        seen[w] = true;
        via[w] = h;
        queue.push_back(w);
      }
    }
  }
  if (!seen[to]) throw Error("tree does not connect the requested vertices");
  Path p;
  for (int v = to; v != from; v = g.origin(via[v])) p.push_back(via[v]);
  std::reverse(p.begin(), p.end());
  return p;
}

bool is_forest(const Graph& g, const Forest& f) {
  UnionFind uf(g.num_vertices());
  for (int e : f.edges) {
    if (e < 0 || e >= g.num_edges()) return false;
    if (!uf.unite(g.origin(2 * e), g.terminus(2 * e))) return false;
  }
  return std::adjacent_find(f.edges.begin(), f.edges.end()) == f.edges.end();
}

Path CollapseMap::map_path(std::span<const HalfEdge> path) const {
  Path out;
  for (HalfEdge h : path) {
    if (half_edge_map[h]) out.push_back(*half_edge_map[h]);
  }
  return reduce_path(out);
}

CollapseMap collapse_forest(const Graph& g, const Forest& f) {
  UnionFind uf(g.num_vertices());
  std::vector<bool> in_forest(g.num_edges(), false);
  for (int e : f.edges) {
    if (e < 0 || e >= g.num_edges()) throw Error("forest edge out of range");
    if (in_forest[e]) throw Error("forest lists an edge twice");
    if (!uf.unite(g.origin(2 * e), g.terminus(2 * e))) {
      throw Error("collapse_forest: edge set contains a cycle");
    }
    in_forest[e] = true;
  }

  CollapseMap cm;
  cm.vertex_map.assign(g.num_vertices(), -1);
  std::vector<int> root_image(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    int r = uf.find(v);
    if (root_image[r] < 0) root_image[r] = cm.target.add_vertex();
    cm.vertex_map[v] = root_image[r];
  }
  cm.half_edge_map.assign(g.num_half_edges(), std::nullopt);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (in_forest[e]) continue;
    int ne = cm.target.add_edge(cm.vertex_map[g.origin(2 * e)],
                                cm.vertex_map[g.terminus(2 * e)]);
    cm.half_edge_map[2 * e] = 2 * ne;
    cm.half_edge_map[2 * e + 1] = 2 * ne + 1;
  }
  if (g.basepoint()) cm.target.set_basepoint(cm.vertex_map[*g.basepoint()]);
  return cm;
}

std::vector<Forest> enumerate_forests(const Graph& g) {
  std::vector<int> candidates;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!g.is_loop(e)) candidates.push_back(e);
  }
  if (candidates.size() > 24) throw Error("enumerate_forests: graph too large");
  std::vector<Forest> out;
  const std::uint32_t limit = 1u << candidates.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    UnionFind uf(g.num_vertices());
    Forest f;
    bool ok = true;
    for (std::size_t i = 0; i < candidates.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      int e = candidates[i];
      ok = uf.unite(g.origin(2 * e), g.terminus(2 * e));
      f.edges.push_back(e);
    }
    if (ok) out.push_back(std::move(f));
  }
  return out;
}

Path Suppression::map_path(std::span<const HalfEdge> path) const {
  Path out;
  for (HalfEdge h : path) {
    auto [nh, idx] = chain_of[h];
    if (idx == 0) out.push_back(nh);
  }
  return reduce_path(out);
}

Suppression suppress_valence2(const Graph& g, std::optional<int> protect) {
  std::vector<bool> keep(g.num_vertices());
  bool any = false;
  for (int v = 0; v < g.num_vertices(); ++v) {
    keep[v] = g.valence(v) != 2 || (protect && *protect == v);
    any = any || keep[v];
  }
  if (!any) throw Error("suppress_valence2: graph is a circle with no protected vertex");

  Suppression s;
  s.vertex_map.assign(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (keep[v]) s.vertex_map[v] = s.graph.add_vertex();
  }
  s.chain_of.assign(g.num_half_edges(), {-1, -1});
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!keep[v]) continue;
    for (HalfEdge h : g.star(v)) {
      if (s.chain_of[h].first >= 0) continue;
      Path chain{h};
      HalfEdge cur = h;
      while (!keep[g.terminus(cur)]) {
        const auto& st = g.star(g.terminus(cur));
        cur = st[0] == reverse(cur) ? st[1] : st[0];
        chain.push_back(cur);
      }
      int ne = s.graph.add_edge(s.vertex_map[v], s.vertex_map[g.terminus(cur)]);
      const int len = static_cast<int>(chain.size());
      for (int i = 0; i < len; ++i) {
        s.chain_of[chain[i]] = {2 * ne, i};
        s.chain_of[reverse(chain[i])] = {2 * ne + 1, len - 1 - i};
      }
      s.provenance.push_back(std::move(chain));
    }
  }
  if (g.basepoint() && keep[*g.basepoint()]) {
    s.graph.set_basepoint(s.vertex_map[*g.basepoint()]);
  }
  return s;
}

Path Isomorphism::map_path(std::span<const HalfEdge> path) const {
  Path out;
  out.reserve(path.size());
  for (HalfEdge h : path) out.push_back(half_edge[h]);
  return out;
}

namespace {

struct IsoSearch {
  const Graph& a;
  const Graph& b;
  const std::function<bool(const Isomorphism&)>& visit;
  std::vector<int> order;  // edges of a, each touching earlier ones when possible
  std::vector<int> loops_a, loops_b;
  Isomorphism iso;
  std::vector<int> vinv;
  std::vector<bool> used;  // half-edges of b

  bool compatible(int va, int vb) const {
    return a.valence(va) == b.valence(vb) && loops_a[va] == loops_b[vb];
  }

  // Binds va -> vb; returns false on conflict, sets `bound` when new.
  bool bind(int va, int vb, bool& bound) {
    bound = false;
    if (iso.vertex[va] >= 0) return iso.vertex[va] == vb;
    if (vinv[vb] >= 0 || !compatible(va, vb)) return false;
    iso.vertex[va] = vb;
    vinv[vb] = va;
    bound = true;
    return true;
  }
  void unbind(int va) {
    vinv[iso.vertex[va]] = -1;
    iso.vertex[va] = -1;
  }

  bool run(std::size_t depth) {
    if (depth == order.size()) return visit(iso);
    const int e = order[depth];
    const HalfEdge h = forward(e);
    const int oa = a.origin(h);
    const int ta = a.terminus(h);
    std::vector<HalfEdge> candidates;
    if (iso.vertex[oa] >= 0) {
      candidates = b.star(iso.vertex[oa]);
    } else if (iso.vertex[ta] >= 0) {
      for (HalfEdge x : b.star(iso.vertex[ta])) candidates.push_back(reverse(x));
    } else {
      for (HalfEdge x = 0; x < b.num_half_edges(); ++x) candidates.push_back(x);
    }
    for (HalfEdge hb : candidates) {
      if (used[hb] || used[reverse(hb)]) continue;
      if (a.is_loop(e) != b.is_loop(edge_of(hb))) continue;
      bool bo = false, bt = false;
      if (!bind(oa, b.origin(hb), bo)) continue;
      if (!bind(ta, b.terminus(hb), bt)) {
        if (bo) unbind(oa);
        continue;
      }
      used[hb] = used[reverse(hb)] = true;
      iso.half_edge[h] = hb;
      iso.half_edge[reverse(h)] = reverse(hb);
      bool stop = run(depth + 1);
      used[hb] = used[reverse(hb)] = false;
      if (bt) unbind(ta);
      if (bo) unbind(oa);
      if (stop) return true;
    }
    return false;
  }
};

std::vector<int> loop_counts(const Graph& g) {
  std::vector<int> c(g.num_vertices(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e)) ++c[g.origin(2 * e)];
  }
  return c;
}

}  // namespace

bool for_each_isomorphism(const Graph& g1, const Graph& g2, bool respect_basepoint,
                          const std::function<bool(const Isomorphism&)>& visit) {
  if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges()) {
    return false;
  }
  if (respect_basepoint && g1.basepoint().has_value() != g2.basepoint().has_value()) {
    return false;
  }
  IsoSearch s{g1, g2, visit, {}, loop_counts(g1), loop_counts(g2), {}, {}, {}};
  {
    auto key = [](const Graph& g, const std::vector<int>& loops) {
      std::vector<std::pair<int, int>> k;
      for (int v = 0; v < g.num_vertices(); ++v) k.emplace_back(g.valence(v), loops[v]);
      std::sort(k.begin(), k.end());
      return k;
    };
    if (key(g1, s.loops_a) != key(g2, s.loops_b)) return false;
  }
  s.iso.vertex.assign(g1.num_vertices(), -1);
  s.iso.half_edge.assign(g1.num_half_edges(), -1);
  s.vinv.assign(g2.num_vertices(), -1);
  s.used.assign(g2.num_half_edges(), false);

  int start = 0;
  if (respect_basepoint && g1.basepoint()) {
    bool bound = false;
    if (!s.bind(*g1.basepoint(), *g2.basepoint(), bound)) return false;
    start = *g1.basepoint();
  }
  // Edge order: breadth-first from the start vertex so that every edge after
  // the first touches an already-mapped vertex.
  std::vector<bool> seen_v(g1.num_vertices(), false), seen_e(g1.num_edges(), false);
  std::deque<int> queue{start};
  seen_v[start] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (HalfEdge h : g1.star(v)) {
      if (!seen_e[edge_of(h)]) {
        seen_e[edge_of(h)] = true;
        s.order.push_back(edge_of(h));
      }
      int w = g1.terminus(h);
      if (!seen_v[w]) {
        seen_v[w] = true;
        queue.push_back(w);
      }
    }
  }
  if (static_cast<int>(s.order.size()) != g1.num_edges()) {
    throw Error("isomorphism search needs a connected graph");
  }
  if (g1.num_edges() == 0) {
    // Single points.
    if (g1.num_vertices() != 1) return false;
    s.iso.vertex[0] = 0;
    return visit(s.iso);
  }
  return s.run(0);
}

std::vector<Isomorphism> isomorphisms(const Graph& g1, const Graph& g2,
                                      bool respect_basepoint) {
  std::vector<Isomorphism> out;
  for_each_isomorphism(g1, g2, respect_basepoint, [&](const Isomorphism& iso) {
    out.push_back(iso);
    return false;
  });
  return out;
}

}  // namespace outspine
