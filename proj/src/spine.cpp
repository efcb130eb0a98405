#include "outspine/spine.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "outspine/folding.hpp"

namespace outspine {

namespace {

Word path_word(const std::vector<int>& generator_of_edge, const Path& path) {
  std::vector<Letter> letters;
  for (HalfEdge h : path) {
    int k = generator_of_edge[edge_of(h)];
    if (k > 0) letters.push_back(Letter{(h & 1) ? -k : k});
  }
  return Word::reduce(letters);
}

std::vector<int> generators_off_tree(const Graph& g, const std::vector<bool>& tree) {
  std::vector<int> gen_of(g.num_edges(), 0);
  int next = 1;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!tree[e]) gen_of[e] = next++;
  }
  return gen_of;
}

// Path spelling a word on the rose, whose petal k-1 carries a_k.
Path rose_path(const Word& w) {
  Path p;
  p.reserve(w.size());
  for (Letter x : w.letters()) p.push_back(letter_label(x));
  return p;
}

}  // namespace

bool satisfies_valence_policy(const Graph& g, Mode mode, int hub) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    int needed = (mode == Mode::L && v == hub) ? 2 : 3;
    if (g.valence(v) < needed) return false;
  }
  return true;
}

std::optional<std::string> validation_error(const MarkedGraph& m, Mode mode) {
  const Graph& g = m.graph;
  if (m.marking.empty()) return "marking is empty";
  if (!g.connected()) return "graph is disconnected";
  if (g.rank() != m.rank()) {
    return "graph rank " + std::to_string(g.rank()) + " differs from marking rank " +
           std::to_string(m.rank());
  }
  if (m.hub < 0 || m.hub >= g.num_vertices()) return "hub out of range";
  if (mode == Mode::L && g.basepoint() != m.hub) return "basepoint must equal the hub in mode L";
  if (mode == Mode::K && g.basepoint()) return "mode K graphs carry no basepoint";
  for (std::size_t k = 0; k < m.marking.size(); ++k) {
    const Path& p = m.marking[k];
    if (!is_path(g, p, m.hub, m.hub)) {
      return "marking path " + std::to_string(k + 1) + " is not closed at the hub";
    }
    if (reduce_path(p) != p) return "marking path " + std::to_string(k + 1) + " is not reduced";
  }
  if (!satisfies_valence_policy(g, mode, m.hub)) return "valence policy violated";
  if (!is_automorphism(induced_automorphism(m))) return "marking is not a homotopy equivalence";
  return std::nullopt;
}

void validate(const MarkedGraph& m, Mode mode) {
  if (auto err = validation_error(m, mode)) throw Error("invalid marked graph: " + *err);
}

Endomorphism induced_automorphism(const MarkedGraph& m, const std::vector<bool>& tree) {
  if (!is_spanning_tree(m.graph, tree)) throw Error("induced_automorphism: not a spanning tree");
  const auto gen_of = generators_off_tree(m.graph, tree);
  const int n = m.graph.num_edges() - m.graph.num_vertices() + 1;
  if (n != m.rank()) throw Error("induced_automorphism: rank mismatch");
  std::vector<Word> images;
  for (const Path& p : m.marking) images.push_back(path_word(gen_of, p));
  return Endomorphism(n, std::move(images));
}

Endomorphism induced_automorphism(const MarkedGraph& m) {
  return induced_automorphism(m, spanning_tree(m.graph, m.hub));
}

bool equivalent(const MarkedGraph& a, const MarkedGraph& b, Mode mode) {
  if (a.rank() != b.rank()) return false;
  if (a.graph.num_vertices() != b.graph.num_vertices() ||
      a.graph.num_edges() != b.graph.num_edges()) {
    return false;
  }
  const std::size_t n = a.marking.size();
  if (mode == Mode::L) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a.marking[k].size() != b.marking[k].size()) return false;
    }
    return for_each_isomorphism(a.graph, b.graph, true, [&](const Isomorphism& iso) {
      if (iso.vertex[a.hub] != b.hub) return false;
      for (std::size_t k = 0; k < n; ++k) {
        const Path& pa = a.marking[k];
        const Path& pb = b.marking[k];
        for (std::size_t i = 0; i < pa.size(); ++i) {
          if (iso.half_edge[pa[i]] != pb[i]) return false;
        }
      }
      return true;
    });
  }

  const auto tree = spanning_tree(b.graph, b.hub);
  const auto gen_of = generators_off_tree(b.graph, tree);
  std::vector<Word> target;
  for (const Path& p : b.marking) target.push_back(path_word(gen_of, p));
  return for_each_isomorphism(a.graph, b.graph, false, [&](const Isomorphism& iso) {
    // Reading non-tree edges of a path from iso(hub) yields its class in
    // pi_1(b, b.hub) after conjugating by the tree path.
    std::vector<Word> moved;
    moved.reserve(n);
    for (const Path& p : a.marking) moved.push_back(path_word(gen_of, iso.map_path(p)));
    return conjugator(moved, target).has_value();
  });
}

MarkedGraph act(const MarkedGraph& m, const Endomorphism& f) {
  if (f.rank() != m.rank()) throw Error("act: rank mismatch");
  MarkedGraph out;
  out.graph = m.graph;
  out.hub = m.hub;
  for (const Word& w : f.images()) {
    Path p;
    for (Letter a : w.letters()) {
      const Path& piece = m.marking[a.generator() - 1];
      if (a.sign() > 0) {
        p.insert(p.end(), piece.begin(), piece.end());
      } else {
        p.insert(p.end(), piece.rbegin(), piece.rend());
        for (auto it = p.end() - static_cast<std::ptrdiff_t>(piece.size()); it != p.end(); ++it) {
          *it = reverse(*it);
        }
      }
    }
    out.marking.push_back(reduce_path(p));
  }
  return out;
}

MarkedGraph move_hub(const MarkedGraph& m, const Path& path) {
  if (!is_path(m.graph, path, m.hub, path.empty() ? m.hub : m.graph.terminus(path.back()))) {
    throw Error("move_hub: path does not start at the hub");
  }
  MarkedGraph out = m;
  if (path.empty()) return out;
  out.hub = m.graph.terminus(path.back());
  const Path back = inverse_path(path);
  for (Path& p : out.marking) p = reduce_path(concat(concat(back, p), path));
  return out;
}

MarkedGraph suppress_valence2(const MarkedGraph& m, Mode mode) {
  MarkedGraph src = m;
  const Graph& g = m.graph;
  if (mode == Mode::K && g.valence(m.hub) == 2) {
    // Walk to the nearest vertex that survives.
    Path walk;
    HalfEdge cur = g.star(m.hub)[0];
    walk.push_back(cur);
    while (g.valence(g.terminus(cur)) == 2 && g.terminus(cur) != m.hub) {
      const auto& st = g.star(g.terminus(cur));
      cur = st[0] == reverse(cur) ? st[1] : st[0];
      walk.push_back(cur);
    }
    if (g.valence(g.terminus(cur)) != 2) src = move_hub(m, walk);
  }
  bool circle = true;
  for (int v = 0; v < src.graph.num_vertices(); ++v) {
    if (src.graph.valence(v) != 2) circle = false;
  }
  std::optional<int> protect;
  if (mode == Mode::L || circle) protect = src.hub;
  const Suppression s = outspine::suppress_valence2(src.graph, protect);
  MarkedGraph out;
  out.graph = s.graph;
  out.hub = s.vertex_map[src.hub];
  if (mode == Mode::L) out.graph.set_basepoint(out.hub);
  for (const Path& p : src.marking) out.marking.push_back(s.map_path(p));
  return out;
}

MarkedGraph collapse(const MarkedGraph& m, const Forest& f, Mode mode) {
  const CollapseMap cm = collapse_forest(m.graph, f);
  MarkedGraph out;
  out.graph = cm.target;
  out.hub = cm.vertex_map[m.hub];
  for (const Path& p : m.marking) out.marking.push_back(cm.map_path(p));
  if (!satisfies_valence_policy(out.graph, mode, out.hub)) {
    throw Error("collapse leaves the spine: valence policy violated");
  }
  return out;
}

bool adjacent(const MarkedGraph& a, const MarkedGraph& b, Mode mode) {
  if (a.rank() != b.rank()) return false;
  const MarkedGraph* big = &a;
  const MarkedGraph* small = &b;
  if (a.graph.num_vertices() < b.graph.num_vertices()) std::swap(big, small);
  const int drop = big->graph.num_vertices() - small->graph.num_vertices();
  if (drop == 0) return false;
  for (const Forest& f : enumerate_forests(big->graph)) {
    if (static_cast<int>(f.edges.size()) != drop) continue;
    const MarkedGraph c = collapse(*big, f, mode);
    if (equivalent(c, *small, mode)) return true;
  }
  return false;
}

bool adjacent(const SpineVertex& a, const SpineVertex& b) {
  if (a.mode != b.mode) throw Error("adjacent: vertices from different spines");
  return adjacent(a.rep, b.rep, a.mode);
}

SpineVertex rose_vertex(const Endomorphism& f, Mode mode) {
  if (!is_automorphism(f)) throw Error("rose_vertex: not an automorphism");
  SpineVertex v;
  v.mode = mode;
  v.rep.graph = rose(f.rank());
  if (mode == Mode::K) v.rep.graph.set_basepoint(std::nullopt);
  v.rep.hub = 0;
  for (const Word& w : f.images()) v.rep.marking.push_back(rose_path(w));
  return v;
}

NielsenGraph nielsen_graph(const Endomorphism& prefix, const Transvection& t, int n,
                           Mode mode) {
  t.validate(n);
  if (prefix.rank() != n) throw Error("nielsen_graph: prefix rank mismatch");
  Graph g(2);
  std::vector<Path> base(n);
  for (int k = 1; k <= n; ++k) {
    if (k == t.target || k == t.multiplier) continue;
    base[k - 1] = {forward(g.add_edge(0, 0))};
  }
  NielsenGraph ng;
  ng.e0 = g.add_edge(0, 1);
  ng.e1 = g.add_edge(0, 1);
  ng.e2 = g.add_edge(0, 1);
  const HalfEdge x = forward(ng.e0), y = forward(ng.e1), z = forward(ng.e2);
  Path& pj = base[t.multiplier - 1];
  Path& pi = base[t.target - 1];
  // Collapsing e0 leaves a_j and a_i on single petals; collapsing e1 leaves
  // a_j on the petal x^±1 and a_i spelling the transvected image.
  if (t.side == Side::right) {
    pj = t.exponent > 0 ? Path{y, reverse(x)} : Path{x, reverse(y)};
    pi = {z, reverse(x)};
  } else {
    pj = t.exponent > 0 ? Path{x, reverse(y)} : Path{y, reverse(x)};
    pi = {x, reverse(z)};
  }
  if (mode == Mode::L) g.set_basepoint(0);

  MarkedGraph& m = ng.vertex.rep;
  ng.vertex.mode = mode;
  m.graph = std::move(g);
  m.hub = 0;
  m.marking = std::move(base);
  m = act(m, prefix);
  return ng;
}

SimplicialLoop build_loop(std::span<const Transvection> ts, int n, Mode mode) {
  SimplicialLoop loop;
  Endomorphism prefix = Endomorphism::identity(n);
  loop.vertices.push_back(rose_vertex(prefix, mode));
  loop.labels.push_back("rose");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    loop.vertices.push_back(nielsen_graph(prefix, ts[i], n, mode).vertex);
    loop.labels.push_back("nielsen:" + ts[i].str());
    prefix = compose(transvection_endo(ts[i], n), prefix);
    SpineVertex r = rose_vertex(prefix, mode);
    if (i + 1 == ts.size() && r == loop.vertices.front()) {
      loop.closed = true;
    } else {
      loop.vertices.push_back(std::move(r));
      loop.labels.push_back("rose");
    }
  }
  if (ts.empty()) loop.closed = true;
  return loop;
}

bool consecutive_adjacent(const SimplicialLoop& loop) {
  const std::size_t count = loop.vertices.size();
  const std::size_t steps = loop.closed ? count : count - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto& a = loop.vertices[i];
    const auto& b = loop.vertices[(i + 1) % count];
    if (!adjacent(a, b)) return false;
  }
  return true;
}

std::vector<MarkedGraph> blow_ups(const MarkedGraph& m, Mode mode) {
  std::vector<MarkedGraph> out;
  const Graph& g = m.graph;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& st = g.star(v);
    const int val = static_cast<int>(st.size());
    if (val > 20) throw Error("blow_ups: valence too large");
    const int min_stay = (mode == Mode::L && v == m.hub) ? 1 : 2;
    for (std::uint32_t mask = 1; mask + 1 < (1u << val); ++mask) {
      const int moved = std::popcount(mask);
      if (moved < 2 || val - moved < min_stay) continue;
      std::vector<bool> to_new(g.num_half_edges(), false);
      for (int i = 0; i < val; ++i) {
        if (mask & (1u << i)) to_new[st[i]] = true;
      }
      Graph ng(g.num_vertices() + 1);
      const int fresh = g.num_vertices();
      auto where = [&](HalfEdge h) { return to_new[h] ? fresh : g.origin(h); };
      for (int e = 0; e < g.num_edges(); ++e) ng.add_edge(where(forward(e)), where(forward(e) + 1));
      const HalfEdge bridge = forward(ng.add_edge(v, fresh));
      if (mode == Mode::L) ng.set_basepoint(m.hub);

      MarkedGraph b;
      b.graph = std::move(ng);
      b.hub = m.hub;
      for (const Path& p : m.marking) {
        Path np;
        bool at_new = false;  // which side of the split the path currently sits on
        for (HalfEdge h : p) {
          if (g.origin(h) == v && to_new[h] != at_new) {
            np.push_back(to_new[h] ? bridge : reverse(bridge));
          }
          np.push_back(h);
          at_new = g.terminus(h) == v && to_new[reverse(h)];
        }
        if (at_new) np.push_back(reverse(bridge));
        b.marking.push_back(reduce_path(np));
      }
      if (!satisfies_valence_policy(b.graph, mode, b.hub)) continue;
      out.push_back(std::move(b));
    }
  }
  return out;
}

}  // namespace outspine
