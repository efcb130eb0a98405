#include "outspine/filling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

#include "outspine/freegroup.hpp"

namespace outspine {

// --- TwoComplex ---------------------------------------------------------------

TwoComplex TwoComplex::make(int vertices, const std::vector<std::array<int, 3>>& triangles,
                            const std::vector<std::array<int, 2>>& extra_edges) {
  if (vertices < 1 || vertices > 64) throw Error("TwoComplex supports 1..64 vertices");
  TwoComplex x;
  x.n_ = vertices;
  x.adj_.assign(vertices, 0);
  x.tri_.assign(static_cast<std::size_t>(vertices) * vertices, 0);
  auto check = [&](int v) {
    if (v < 0 || v >= vertices) throw Error("TwoComplex: vertex out of range");
  };
  auto add_edge = [&](int u, int v) {
    if (u == v) throw Error("TwoComplex: edge with repeated vertex");
    x.adj_[u] |= std::uint64_t{1} << v;
    x.adj_[v] |= std::uint64_t{1} << u;
  };
  std::set<std::array<int, 3>> tris;
  for (auto t : triangles) {
    for (int v : t) check(v);
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) throw Error("TwoComplex: triangle with repeated vertex");
    tris.insert(t);
  }
  for (const auto& t : tris) {
    add_edge(t[0], t[1]);
    add_edge(t[1], t[2]);
    add_edge(t[0], t[2]);
    const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perm) {
      x.tri_[static_cast<std::size_t>(t[p[0]]) * vertices + t[p[1]]] |= std::uint64_t{1} << t[p[2]];
    }
  }
  for (const auto& e : extra_edges) {
    check(e[0]);
    check(e[1]);
    add_edge(e[0], e[1]);
  }
  x.triangles_.assign(tris.begin(), tris.end());
  for (int u = 0; u < vertices; ++u) {
    for (int v = u + 1; v < vertices; ++v) {
      if (x.has_edge(u, v)) x.edges_.push_back({u, v});
    }
  }
  return x;
}

bool TwoComplex::has_triangle(int a, int b, int c) const {
  if (a == b || b == c || a == c) return false;
  return (tri_[static_cast<std::size_t>(a) * n_ + b] >> c) & 1;
}

bool TwoComplex::spans_simplex(int a, int b, int c) const {
  if (a == b) return b == c || has_edge(a, c);
  if (b == c || a == c) return has_edge(a, b);
  return has_triangle(a, b, c);
}

bool TwoComplex::connected() const {
  if (n_ == 0) return false;
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    for (int v = 0; v < n_; ++v) {
      if ((frontier >> v) & 1) next |= adj_[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return std::popcount(seen) == n_;
}

// --- loops ------------------------------------------------------------------

bool is_loop(const TwoComplex& x, const ComplexLoop& l) {
  if (l.empty()) return false;
  for (int v : l) {
    if (v < 0 || v >= x.num_vertices()) return false;
  }
  for (std::size_t i = 0; i < l.size(); ++i) {
    int u = l[i], v = l[(i + 1) % l.size()];
    if (u != v && !x.has_edge(u, v)) return false;
  }
  return true;
}

int loop_length(const ComplexLoop& l) {
  int steps = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] != l[(i + 1) % l.size()]) ++steps;
  }
  return steps;
}

bool is_constant(const ComplexLoop& l) {
  return std::all_of(l.begin(), l.end(), [&](int v) { return v == l.front(); });
}

ComplexLoop reduce_loop(const ComplexLoop& l) {
  if (l.empty()) return l;
  std::vector<int> walk;
  for (std::size_t i = 0; i <= l.size(); ++i) {
    const int v = l[i % l.size()];
    if (!walk.empty() && walk.back() == v) continue;
    if (walk.size() >= 2 && walk[walk.size() - 2] == v) {
      walk.pop_back();
      continue;
    }
    walk.push_back(v);
  }
  // walk is closed; strip backtracks through its start.
  while (walk.size() >= 3 && walk[1] == walk[walk.size() - 2]) {
    walk.erase(walk.begin());
    walk.pop_back();
  }
  if (walk.size() > 1) walk.pop_back();
  return walk;
}

bool is_reduced(const ComplexLoop& l) { return reduce_loop(l) == l; }

// --- homology ---------------------------------------------------------------

namespace {

int edge_index(const TwoComplex& x, int u, int v) {
  if (u > v) std::swap(u, v);
  const auto& edges = x.edges();
  auto it = std::lower_bound(edges.begin(), edges.end(), std::array<int, 2>{u, v});
  return static_cast<int>(it - edges.begin());
}

// Rank of a dense matrix over Q by elimination with partial pivoting.
int rational_rank(std::vector<std::vector<double>> m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int best = rank;
    for (int r = rank + 1; r < rows; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[best][c])) best = r;
    }
    if (std::abs(m[best][c]) < 1e-9) continue;
    std::swap(m[best], m[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || std::abs(m[r][c]) < 1e-12) continue;
      double f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

HomologyBound homology_bound(const TwoComplex& x, const ComplexLoop& l) {
  const int E = static_cast<int>(x.edges().size());
  const int T = static_cast<int>(x.triangles().size());
  std::vector<int> chain(E, 0);
  for (std::size_t i = 0; i < l.size(); ++i) {
    int u = l[i], v = l[(i + 1) % l.size()];
    if (u == v) continue;
    chain[edge_index(x, u, v)] += u < v ? 1 : -1;
  }
  HomologyBound out;
  if (std::all_of(chain.begin(), chain.end(), [](int c) { return c == 0; })) {
    out.bounds = true;
    return out;
  }

  // Over Q: the chain lies in the column span of the boundary matrix.
  std::vector<std::vector<double>> m(E, std::vector<double>(T + 1, 0.0));
  for (int t = 0; t < T; ++t) {
    const auto& tri = x.triangles()[t];
    m[edge_index(x, tri[0], tri[1])][t] += 1;
    m[edge_index(x, tri[1], tri[2])][t] += 1;
    m[edge_index(x, tri[0], tri[2])][t] -= 1;
  }
  const int r0 = rational_rank(m);
  for (int e = 0; e < E; ++e) m[e][T] = chain[e];
  if (rational_rank(m) != r0) return out;

  // Over Z/2: reduced row echelon form of [boundary | chain].
  std::vector<std::vector<std::uint8_t>> z(E, std::vector<std::uint8_t>(T + 1, 0));
  for (int t = 0; t < T; ++t) {
    const auto& tri = x.triangles()[t];
    z[edge_index(x, tri[0], tri[1])][t] = 1;
    z[edge_index(x, tri[1], tri[2])][t] = 1;
    z[edge_index(x, tri[0], tri[2])][t] = 1;
  }
  for (int e = 0; e < E; ++e) z[e][T] = static_cast<std::uint8_t>(chain[e] & 1);
  std::vector<int> pivot_col;
  int row = 0;
  for (int c = 0; c < T && row < E; ++c) {
    int r = row;
    while (r < E && !z[r][c]) ++r;
    if (r == E) continue;
    std::swap(z[r], z[row]);
    for (int k = 0; k < E; ++k) {
      if (k != row && z[k][c]) {
        for (int j = c; j <= T; ++j) z[k][j] ^= z[row][j];
      }
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (int r = row; r < E; ++r) {
    if (z[r][T]) return out;  // not a mod-2 boundary
  }
  out.bounds = true;

  std::vector<bool> is_pivot(T, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < T; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  if (free_cols.size() > 16) return out;  // no bound claimed
  int best = T + 1;
  for (std::uint32_t mask = 0; mask < (1u << free_cols.size()); ++mask) {
    std::vector<std::uint8_t> sol(T, 0);
    for (std::size_t i = 0; i < free_cols.size(); ++i) sol[free_cols[i]] = (mask >> i) & 1;
    for (int r = 0; r < row; ++r) {
      std::uint8_t v = z[r][T];
      for (int c : free_cols) v ^= z[r][c] & sol[c];
      sol[pivot_col[r]] = v;
    }
    best = std::min(best, static_cast<int>(std::count(sol.begin(), sol.end(), 1)));
  }
  out.min_triangles = best;
  return out;
}

// --- disc search ------------------------------------------------------------

namespace {

// A partially built disc: triangles placed inward from the boundary, and
// the cycle of domain vertices (the hole) that is still to be filled.
class DiscBuilder {
 public:
  DiscBuilder(const TwoComplex& x, const ComplexLoop& l) : x_(x), k_(static_cast<int>(l.size())) {
    if (k_ > 60) throw Error("filling search supports loops of length <= 60");
    image_ = l;
    adj_.assign(k_, 0);
    for (int i = 0; i < k_; ++i) {
      hole_.push_back(i);
      link(i, (i + 1) % k_);
    }
  }

  struct Move {
    enum Kind { close, ear, spike } kind;
    int pos;
    int target = -1;
  };

  int hole_size() const { return static_cast<int>(hole_.size()); }
  int placed() const { return static_cast<int>(triangles_.size()); }

  bool can_close() const {
    return hole_.size() == 3 && x_.spans_simplex(img(0), img(1), img(2));
  }

  void ears(std::vector<Move>& out) const {
    const int s = hole_size();
    if (s < 4) return;
    for (int j = 0; j < s; ++j) {
      int p = hole_[(j + s - 1) % s], q = hole_[j], r = hole_[(j + 1) % s];
      if (linked(p, r)) continue;
      if (x_.spans_simplex(image_[p], image_[q], image_[r])) out.push_back({Move::ear, j});
    }
  }

  void spikes(std::vector<Move>& out) const {
    const int s = hole_size();
    if (static_cast<int>(image_.size()) >= 64) return;
    for (int j = 0; j < s; ++j) {
      int a = img(j), b = img((j + 1) % s);
      for (int y = 0; y < x_.num_vertices(); ++y) {
        if (x_.spans_simplex(a, b, y)) out.push_back({Move::spike, j, y});
      }
    }
  }

  void apply(const Move& m) {
    const int s = hole_size();
    if (m.kind == Move::close) {
      triangles_.push_back({hole_[0], hole_[1], hole_[2]});
    } else if (m.kind == Move::ear) {
      int p = hole_[(m.pos + s - 1) % s], q = hole_[m.pos], r = hole_[(m.pos + 1) % s];
      link(p, r);
      triangles_.push_back({p, q, r});
      hole_.erase(hole_.begin() + m.pos);
    } else {
      int p = hole_[m.pos], q = hole_[(m.pos + 1) % s];
      int v = static_cast<int>(image_.size());
      image_.push_back(m.target);
      adj_.push_back(0);
      link(p, v);
      link(q, v);
      triangles_.push_back({p, q, v});
      hole_.insert(hole_.begin() + m.pos + 1, v);
    }
  }

  void undo(const Move& m) {
    const auto tri = triangles_.back();
    triangles_.pop_back();
    if (m.kind == Move::ear) {
      unlink(tri[0], tri[2]);
      hole_.insert(hole_.begin() + m.pos, tri[1]);
    } else if (m.kind == Move::spike) {
      unlink(tri[0], tri[2]);
      unlink(tri[1], tri[2]);
      hole_.erase(hole_.begin() + m.pos + 1);
      image_.pop_back();
      adj_.pop_back();
    }
  }

  /// The hole's images and chords, minimized over rotations.
  std::string key() const {
    const int s = hole_size();
    std::string best;
    std::string cur;
    for (int r = 0; r < s; ++r) {
      cur.clear();
      for (int t = 0; t < s; ++t) cur.push_back(static_cast<char>(img((r + t) % s)));
      cur.push_back('|');
      for (int a = 0; a < s; ++a) {
        for (int b = a + 2; b < s; ++b) {
          if (a == 0 && b == s - 1) continue;
          cur.push_back(linked(hole_[(r + a) % s], hole_[(r + b) % s]) ? '1' : '0');
        }
      }
      if (r == 0 || cur < best) best = cur;
    }
    return best;
  }

  DiscFilling filling() const {
    DiscFilling d;
    d.num_vertices = static_cast<int>(image_.size());
    d.boundary_length = k_;
    d.triangles = triangles_;
    d.image = image_;
    return d;
  }

 private:
  int img(int pos) const { return image_[hole_[pos]]; }
  bool linked(int u, int v) const { return (adj_[u] >> v) & 1; }
  void link(int u, int v) {
    adj_[u] |= std::uint64_t{1} << v;
    adj_[v] |= std::uint64_t{1} << u;
  }
  void unlink(int u, int v) {
    adj_[u] &= ~(std::uint64_t{1} << v);
    adj_[v] &= ~(std::uint64_t{1} << u);
  }

  const TwoComplex& x_;
  int k_;
  std::vector<int> image_;
  std::vector<std::uint64_t> adj_;
  std::vector<int> hole_;
  std::vector<std::array<int, 3>> triangles_;
};

class ExactSearch {
 public:
  explicit ExactSearch(DiscBuilder& b) : b_(b) {}

  // Completes the disc using at most `spikes` interior vertices.
  bool run(int spikes) {
    if (b_.can_close()) {
      b_.apply({DiscBuilder::Move::close, 0});
      return true;
    }
    if (failed_.size() <= static_cast<std::size_t>(spikes)) failed_.resize(spikes + 1);
    const std::string key = b_.key();
    if (failed_[spikes].count(key)) return false;
    std::vector<DiscBuilder::Move> moves;
    b_.ears(moves);
    const std::size_t ear_count = moves.size();
    if (spikes > 0) b_.spikes(moves);
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const int left = i < ear_count ? spikes : spikes - 1;
      b_.apply(moves[i]);
      if (run(left)) return true;
      b_.undo(moves[i]);
    }
    failed_[spikes].insert(key);
    return false;
  }

 private:
  DiscBuilder& b_;
  std::vector<std::unordered_set<std::string>> failed_;
};

DiscFilling constant_filling(const ComplexLoop& l) {
  DiscFilling d;
  d.num_vertices = static_cast<int>(l.size());
  d.boundary_length = d.num_vertices;
  d.image = l;
  return d;
}

}  // namespace

std::optional<DiscFilling> find_filling(const TwoComplex& x, const ComplexLoop& l0, int budget) {
  if (budget < 0 || budget > kAreaHardCap) {
    throw Error("area budget must lie in 0.." + std::to_string(kAreaHardCap));
  }
  if (!is_loop(x, l0)) throw Error("find_filling: not a loop in the complex");
  const ComplexLoop l = reduce_loop(l0);
  if (l.size() == 1) return constant_filling(l);
  const int k = static_cast<int>(l.size());
  if (k < 3 || k - 2 > budget) return std::nullopt;
  const HomologyBound hb = homology_bound(x, l);
  if (!hb.bounds) return std::nullopt;
  // A disc with k boundary and i interior vertices has k - 2 + 2i triangles.
  int spikes = std::max(0, (hb.min_triangles - (k - 2) + 1) / 2);
  DiscBuilder builder(x, l);
  ExactSearch search(builder);
  for (; k - 2 + 2 * spikes <= budget; ++spikes) {
    if (search.run(spikes)) return builder.filling();
  }
  return std::nullopt;
}

std::optional<int> area_exact(const TwoComplex& x, const ComplexLoop& l, int budget) {
  auto d = find_filling(x, l, budget);
  if (!d) return std::nullopt;
  return d->area();
}

std::optional<DiscFilling> greedy_filling(const TwoComplex& x, const ComplexLoop& l0,
                                          int step_cap) {
  if (!is_loop(x, l0)) throw Error("greedy_filling: not a loop in the complex");
  const ComplexLoop l = reduce_loop(l0);
  if (l.size() == 1) return constant_filling(l);
  if (l.size() < 3 || !homology_bound(x, l).bounds) return std::nullopt;

  // Frontier entries replay their move list from the boundary.
  struct Node {
    int hole;
    int placed;
    std::vector<DiscBuilder::Move> moves;
  };
  auto worse = [](const Node& a, const Node& b) {
    return std::tie(a.hole, a.placed) > std::tie(b.hole, b.placed);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> frontier(worse);
  std::unordered_set<std::string> seen;
  frontier.push(Node{static_cast<int>(l.size()), 0, {}});
  int steps = 0;
  while (!frontier.empty() && steps < step_cap) {
    Node node = frontier.top();
    frontier.pop();
    ++steps;
    DiscBuilder b(x, l);
    for (const auto& m : node.moves) b.apply(m);
    if (b.can_close()) {
      b.apply({DiscBuilder::Move::close, 0});
      return b.filling();
    }
    std::vector<DiscBuilder::Move> moves;
    b.ears(moves);
    b.spikes(moves);
    for (const auto& m : moves) {
      b.apply(m);
      if (seen.insert(b.key()).second) {
        Node child{b.hole_size(), b.placed(), node.moves};
        child.moves.push_back(m);
        frontier.push(std::move(child));
      }
      b.undo(m);
    }
  }
  return std::nullopt;
}

std::optional<int> area_upper(const TwoComplex& x, const ComplexLoop& l, int step_cap) {
  auto d = greedy_filling(x, l, step_cap);
  if (!d) return std::nullopt;
  return d->area();
}

// --- validation -------------------------------------------------------------

std::optional<std::string> filling_error(const TwoComplex& x, const ComplexLoop& l,
                                         const DiscFilling& d) {
  if (!is_loop(x, l)) return "boundary is not a loop in the complex";
  const int k = static_cast<int>(l.size());
  if (d.boundary_length != k) return "boundary length differs from the loop";
  if (static_cast<int>(d.image.size()) != d.num_vertices || d.num_vertices < k) {
    return "vertex map has the wrong size";
  }
  for (int i = 0; i < k; ++i) {
    if (d.image[i] != l[i]) return "boundary does not map onto the loop";
  }
  for (int v : d.image) {
    if (v < 0 || v >= x.num_vertices()) return "vertex map leaves the complex";
  }
  if (d.triangles.empty()) {
    if (is_constant(l) && d.num_vertices == k) return std::nullopt;
    return "empty disc for a non-constant loop";
  }
  if (k < 3) return "boundary circle needs at least 3 vertices";

  std::set<std::array<int, 3>> seen;
  std::map<std::pair<int, int>, int> edge_count;
  std::vector<std::vector<std::pair<int, int>>> link(d.num_vertices);
  for (auto t : d.triangles) {
    for (int v : t) {
      if (v < 0 || v >= d.num_vertices) return "triangle vertex out of range";
    }
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) return "degenerate domain triangle";
    if (!seen.insert(t).second) return "repeated domain triangle";
    if (!x.spans_simplex(d.image[t[0]], d.image[t[1]], d.image[t[2]])) {
      return "a triangle does not map to a simplex";
    }
    ++edge_count[{t[0], t[1]}];
    ++edge_count[{t[1], t[2]}];
    ++edge_count[{t[0], t[2]}];
    link[t[0]].push_back({t[1], t[2]});
    link[t[1]].push_back({t[0], t[2]});
    link[t[2]].push_back({t[0], t[1]});
  }
  std::set<std::pair<int, int>> boundary;
  for (const auto& [e, c] : edge_count) {
    if (c > 2) return "edge in more than two triangles";
    if (c == 1) boundary.insert(e);
  }
  std::set<std::pair<int, int>> expected;
  for (int i = 0; i < k; ++i) {
    int a = i, b = (i + 1) % k;
    expected.insert({std::min(a, b), std::max(a, b)});
  }
  if (boundary != expected) return "disc boundary is not the loop's circle";
  const int V = d.num_vertices, E = static_cast<int>(edge_count.size()),
            F = static_cast<int>(d.triangles.size());
  if (V - E + F != 1) return "Euler characteristic is not 1";
  for (int v = 0; v < V; ++v) {
    // The link must be a single path (boundary vertex) or cycle (interior).
    const auto& edges = link[v];
    if (edges.empty()) return "unused domain vertex";
    std::map<int, int> degree;
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (const auto& [a, b] : edges) {
      ++degree[a];
      ++degree[b];
      if (!parent.count(a)) parent[a] = a;
      if (!parent.count(b)) parent[b] = b;
      parent[find(a)] = find(b);
    }
    std::set<int> roots;
    int ends = 0;
    for (const auto& [u, deg] : degree) {
      if (deg > 2) return "vertex link branches";
      if (deg == 1) ++ends;
      roots.insert(find(u));
    }
    if (roots.size() != 1) return "vertex link is disconnected";
    if ((v < k) != (ends == 2)) return "vertex link has the wrong shape";
  }
  return std::nullopt;
}

// --- maps -------------------------------------------------------------------

bool is_simplicial(const SimplicialMap& f, const TwoComplex& from, const TwoComplex& to) {
  if (static_cast<int>(f.vertex.size()) != from.num_vertices()) return false;
  for (int v : f.vertex) {
    if (v < 0 || v >= to.num_vertices()) return false;
  }
  for (const auto& e : from.edges()) {
    int a = f.vertex[e[0]], b = f.vertex[e[1]];
    if (a != b && !to.has_edge(a, b)) return false;
  }
  for (const auto& t : from.triangles()) {
    if (!to.spans_simplex(f.vertex[t[0]], f.vertex[t[1]], f.vertex[t[2]])) return false;
  }
  return true;
}

ComplexLoop push_loop(const SimplicialMap& f, const ComplexLoop& l) {
  ComplexLoop out;
  out.reserve(l.size());
  for (int v : l) out.push_back(f.vertex.at(v));
  return out;
}

DiscFilling pushforward(const SimplicialMap& f, const DiscFilling& d) {
  DiscFilling out = d;
  for (int& v : out.image) v = f.vertex.at(v);
  return out;
}

// --- enumeration ------------------------------------------------------------

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int tri_code(int a, int b, int c) { return (1 << a) | (1 << b) | (1 << c); }

std::vector<std::vector<int>> automorphisms(const TwoComplex& x) {
  const int n = x.num_vertices();
  if (n > 8) return {[&] {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    return id;
  }()};
  std::vector<std::vector<int>> out;
  for (const auto& p : all_permutations(n)) {
    bool ok = true;
    for (const auto& e : x.edges()) ok = ok && x.has_edge(p[e[0]], p[e[1]]);
    for (const auto& t : x.triangles()) ok = ok && x.has_triangle(p[t[0]], p[t[1]], p[t[2]]);
    if (ok) out.push_back(p);
  }
  return out;
}

void for_each_map(const TwoComplex& from, const TwoComplex& to,
                  const std::function<void(const std::vector<int>&)>& visit) {
  const int n = from.num_vertices();
  // Edges and triangles become checkable once their largest vertex is set.
  std::vector<std::vector<int>> back_edges(n);
  std::vector<std::vector<std::array<int, 3>>> closing(n);
  for (const auto& e : from.edges()) back_edges[e[1]].push_back(e[0]);
  for (const auto& t : from.triangles()) closing[t[2]].push_back(t);
  std::vector<int> f(n, -1);
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      visit(f);
      return;
    }
    for (int y = 0; y < to.num_vertices(); ++y) {
      f[v] = y;
      bool ok = true;
      for (int u : back_edges[v]) {
        if (f[u] != y && !to.has_edge(f[u], y)) {
          ok = false;
          break;
        }
      }
      for (const auto& t : closing[v]) {
        if (!ok) break;
        ok = to.spans_simplex(f[t[0]], f[t[1]], y);
      }
      if (ok) rec(v + 1);
    }
    f[v] = -1;
  };
  rec(0);
}

}  // namespace

std::vector<TwoComplex> enumerate_complexes(int max_vertices, int max_triangles) {
  if (max_vertices > 8) throw Error("enumerate_complexes supports at most 8 vertices");
  std::vector<TwoComplex> out;
  for (int n = 3; n <= max_vertices; ++n) {
    std::vector<std::array<int, 3>> all;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int c = b + 1; c < n; ++c) all.push_back({a, b, c});
      }
    }
    const auto perms = all_permutations(n);
    std::set<std::vector<int>> classes;
    std::vector<int> chosen;
    std::function<void(int)> rec = [&](int start) {
      if (!chosen.empty()) {
        int used = 0;
        for (int i : chosen) used |= tri_code(all[i][0], all[i][1], all[i][2]);
        if (used == (1 << n) - 1) {
          // Connected through shared vertices.
          int reach = tri_code(all[chosen[0]][0], all[chosen[0]][1], all[chosen[0]][2]);
          for (bool grew = true; grew;) {
            grew = false;
            for (int i : chosen) {
              int c = tri_code(all[i][0], all[i][1], all[i][2]);
              if ((c & reach) && (c | reach) != reach) {
                reach |= c;
                grew = true;
              }
            }
          }
          if (reach == used) {
            std::vector<int> best;
            for (const auto& p : perms) {
              std::vector<int> codes;
              for (int i : chosen) codes.push_back(tri_code(p[all[i][0]], p[all[i][1]], p[all[i][2]]));
              std::sort(codes.begin(), codes.end());
              if (best.empty() || codes < best) best = std::move(codes);
            }
            classes.insert(best);
          }
        }
      }
      if (static_cast<int>(chosen.size()) == max_triangles) return;
      for (int i = start; i < static_cast<int>(all.size()); ++i) {
        chosen.push_back(i);
        rec(i + 1);
        chosen.pop_back();
      }
    };
    rec(0);
    for (const auto& codes : classes) {
      std::vector<std::array<int, 3>> tris;
      for (int c : codes) {
        std::array<int, 3> t{};
        int j = 0;
        for (int v = 0; v < n; ++v) {
          if ((c >> v) & 1) t[j++] = v;
        }
        tris.push_back(t);
      }
      out.push_back(TwoComplex::make(n, tris));
    }
  }
  return out;
}

std::vector<ComplexLoop> enumerate_loops(const TwoComplex& x, int max_length) {
  const auto autos = automorphisms(x);
  std::set<ComplexLoop> classes;
  ComplexLoop walk;
  auto canonical = [&](const ComplexLoop& l) {
    ComplexLoop best;
    const int L = static_cast<int>(l.size());
    ComplexLoop cand(L);
    for (const auto& p : autos) {
      for (int dir : {1, -1}) {
        for (int r = 0; r < L; ++r) {
          for (int t = 0; t < L; ++t) cand[t] = p[l[((r + dir * t) % L + L) % L]];
          if (best.empty() || cand < best) best = cand;
        }
      }
    }
    return best;
  };
  std::function<void()> rec = [&]() {
    const int L = static_cast<int>(walk.size());
    if (L >= 3 && x.has_edge(walk.back(), walk.front()) && walk[1] != walk[L - 1] &&
        walk[0] != walk[L - 2]) {
      classes.insert(canonical(walk));
    }
    if (L == max_length) return;
    for (int y = 0; y < x.num_vertices(); ++y) {
      if (!x.has_edge(walk.back(), y) || (L >= 2 && walk[L - 2] == y)) continue;
      walk.push_back(y);
      rec();
      walk.pop_back();
    }
  };
  for (int v = 0; v < x.num_vertices(); ++v) {
    walk = {v};
    rec();
  }
  return {classes.begin(), classes.end()};
}

std::vector<SimplicialMap> enumerate_maps(const TwoComplex& from, const TwoComplex& to) {
  std::vector<SimplicialMap> out;
  for_each_map(from, to, [&](const std::vector<int>& f) { out.push_back(SimplicialMap{f}); });
  return out;
}

// --- harness ----------------------------------------------------------------

namespace {

// Areas of every loop of length <= max_length in one complex, indexed by the
// raw vertex sequence and filled lazily; rotations and reversals share one
// computation.
class AreaTable {
 public:
  AreaTable(const TwoComplex& x, const HarnessLimits& limits, MonotonicityReport& report)
      : x_(x), limits_(limits), report_(report) {
    base_ = limits.max_vertices;
    std::size_t total = 0;
    offset_.assign(limits.max_loop_length + 1, 0);
    std::size_t size = 1;
    for (int L = 1; L <= limits.max_loop_length; ++L) {
      size *= base_;
      offset_[L] = total;
      total += size;
    }
    table_.assign(total, kUnknown);
  }

  int area(const ComplexLoop& raw) {
    std::int8_t& raw_slot = table_[index(raw)];
    if (raw_slot != kUnknown) return raw_slot;
    const ComplexLoop l = reduce_loop(raw);
    raw_slot = l.size() == 1 ? 0 : reduced_area(l);
    return raw_slot;
  }

  static constexpr std::int8_t kUnknown = -2;
  static constexpr std::int8_t kUndefined = -1;

 private:
  int reduced_area(const ComplexLoop& l) {
    std::int8_t& slot = table_[index(l)];
    if (slot != kUnknown) return slot;
    auto d = find_filling(x_, l, limits_.budget);
    const std::int8_t value = d ? static_cast<std::int8_t>(d->area()) : kUndefined;
    ++report_.target_areas;
    if (d) {
      if (filling_error(x_, l, *d)) ++report_.invalid_fillings;
      auto up = area_upper(x_, l, limits_.upper_step_cap);
      if (up) {
        ++report_.upper_checked;
        if (*up < d->area()) ++report_.upper_violations;
      }
    }
    const int L = static_cast<int>(l.size());
    ComplexLoop v(L);
    for (int dir : {1, -1}) {
      for (int r = 0; r < L; ++r) {
        for (int t = 0; t < L; ++t) v[t] = l[((r + dir * t) % L + L) % L];
        table_[index(v)] = value;
      }
    }
    return value;
  }

  std::size_t index(const ComplexLoop& l) const {
    std::size_t i = 0;
    for (int v : l) i = i * base_ + v;
    return offset_[l.size()] + i;
  }

  const TwoComplex& x_;
  const HarnessLimits& limits_;
  MonotonicityReport& report_;
  int base_ = 6;
  std::vector<std::size_t> offset_;
  std::vector<std::int8_t> table_;
};

}  // namespace

MonotonicityReport monotonicity_harness(const HarnessLimits& limits) {
  MonotonicityReport report;
  const auto complexes = enumerate_complexes(limits.max_vertices, limits.max_triangles);
  report.complexes = static_cast<int>(complexes.size());
  std::vector<AreaTable> tables;
  tables.reserve(complexes.size());
  for (const auto& x : complexes) tables.emplace_back(x, limits, report);

  for (std::size_t a = 0; a < complexes.size(); ++a) {
    const TwoComplex& source = complexes[a];
    // Loops are taken up to automorphisms of the source: precomposing the
    // maps below with an automorphism reaches every other loop in the class.
    const auto loops = enumerate_loops(source, limits.max_loop_length);
    report.loops += static_cast<long long>(loops.size());
    std::vector<ComplexLoop> fillable;
    std::vector<int> areas;
    std::vector<DiscFilling> fillings;
    for (const auto& l : loops) {
      int area = tables[a].area(l);
      if (area < 0) continue;
      fillable.push_back(l);
      areas.push_back(area);
      fillings.push_back(*find_filling(source, l, limits.budget));
    }
    report.fillable_loops += static_cast<long long>(fillable.size());

    for (std::size_t b = 0; b < complexes.size(); ++b) {
      const TwoComplex& target = complexes[b];
      AreaTable& table = tables[b];
      ComplexLoop image;
      bool first = true;
      for_each_map(source, target, [&](const std::vector<int>& f) {
        ++report.maps;
        for (std::size_t i = 0; i < fillable.size(); ++i) {
          const ComplexLoop& l = fillable[i];
          image.resize(l.size());
          for (std::size_t t = 0; t < l.size(); ++t) image[t] = f[l[t]];
          const int target_area = table.area(image);
          ++report.comparisons;
          if (target_area < 0 || target_area > areas[i]) {
            ++report.violation_count;
            if (report.violations.size() < 20) {
              report.violations.push_back({static_cast<int>(a), static_cast<int>(b), f, l, areas[i],
                                           target_area});
            }
          }
          if (first) {
            // The pushed-forward disc fills the image loop with the same area.
            DiscFilling pushed = pushforward(SimplicialMap{f}, fillings[i]);
            ++report.pushforward_checked;
            if (filling_error(target, image, pushed) || pushed.area() != areas[i]) {
              ++report.violation_count;
              report.violations.push_back({static_cast<int>(a), static_cast<int>(b), f, l,
                                           areas[i], pushed.area()});
            }
          }
        }
        first = false;
      });
    }
  }
  return report;
}

}  // namespace outspine
