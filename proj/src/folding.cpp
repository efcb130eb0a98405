#include "outspine/folding.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <utility>

namespace outspine {

bool LabeledGraph::labels_respect_reversal() const {
  if (static_cast<int>(label.size()) != graph.num_half_edges()) return false;
  for (HalfEdge h = 0; h < graph.num_half_edges(); ++h) {
    if (label[reverse(h)] != reverse(label[h])) return false;
  }
  return true;
}

bool LabeledGraph::is_immersion() const {
  for (int v = 0; v < graph.num_vertices(); ++v) {
    std::vector<HalfEdge> seen;
    for (HalfEdge h : graph.star(v)) seen.push_back(label[h]);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

Word LabeledGraph::read_word(const Path& path) const {
  std::vector<Letter> letters;
  for (HalfEdge h : path) letters.push_back(label_letter(label[h]));
  return Word::reduce(letters);
}

Wedge wedge_of_loops(const std::vector<std::vector<HalfEdge>>& label_sequences) {
  if (label_sequences.empty()) throw Error("wedge_of_loops needs at least one loop");
  Wedge w;
  Graph& g = w.graph.graph;
  g.add_vertex();
  g.set_basepoint(0);
  for (const auto& seq : label_sequences) {
    if (seq.empty()) throw Error("wedge_of_loops: trivial loop");
    Path loop;
    int at = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      int next = i + 1 == seq.size() ? 0 : g.add_vertex();
      int e = g.add_edge(at, next);
      w.graph.label.push_back(seq[i]);
      w.graph.label.push_back(reverse(seq[i]));
      loop.push_back(forward(e));
      at = next;
    }
    w.loops.push_back(std::move(loop));
  }
  return w;
}

Wedge wedge_of_words(const std::vector<Word>& words) {
  std::vector<std::vector<HalfEdge>> seqs;
  for (const Word& word : words) {
    std::vector<HalfEdge> seq;
    for (Letter x : word.letters()) seq.push_back(letter_label(x));
    seqs.push_back(std::move(seq));
  }
  return wedge_of_loops(seqs);
}

Path Folding::map_path(const Path& path) const {
  Path out;
  out.reserve(path.size());
  for (HalfEdge h : path) out.push_back(half_edge_map[h]);
  return reduce_path(out);
}

namespace {

class Folder {
 public:
  Folder(const LabeledGraph& g, std::optional<std::uint64_t> seed)
      : g_(g), vparent_(g.graph.num_vertices()), hparent_(g.graph.num_half_edges()),
        table_(g.graph.num_vertices()) {
    std::iota(vparent_.begin(), vparent_.end(), 0);
    std::iota(hparent_.begin(), hparent_.end(), 0);
    if (seed) rng_.emplace(*seed);
  }

  Folding run() {
    for (int v = 0; v < g_.graph.num_vertices(); ++v) {
      for (HalfEdge h : g_.graph.star(v)) insert(v, h);
    }
    while (!pending_.empty()) {
      std::pair<HalfEdge, HalfEdge> p;
      if (rng_) {
        std::size_t i = (*rng_)() % pending_.size();
        std::swap(pending_[i], pending_.front());
      }
      p = pending_.front();
      pending_.pop_front();
      identify(p.first, p.second);
    }
    return finish();
  }

 private:
  int vfind(int v) {
    while (vparent_[v] != v) v = vparent_[v] = vparent_[vparent_[v]];
    return v;
  }
  HalfEdge hfind(HalfEdge h) {
    while (hparent_[h] != h) h = hparent_[h] = hparent_[hparent_[h]];
    return h;
  }

  void insert(int vrep, HalfEdge h) {
    const HalfEdge r = hfind(h);
    for (HalfEdge x : table_[vrep]) {
      const HalfEdge rx = hfind(x);
      if (rx == r) return;
      if (g_.label[rx] == g_.label[r]) {
        pending_.emplace_back(rx, r);
        return;
      }
    }
    table_[vrep].push_back(r);
  }

  void identify(HalfEdge x, HalfEdge y) {
    HalfEdge a = hfind(x);
    HalfEdge b = hfind(y);
    if (a == b) return;
    if (edge_of(b) < edge_of(a)) std::swap(a, b);
    const int ta = vfind(g_.graph.terminus(a));
    const int tb = vfind(g_.graph.terminus(b));
    hparent_[b] = a;
    hparent_[reverse(b)] = reverse(a);
    if (ta == tb) return;
    const int root = std::min(ta, tb);
    const int other = std::max(ta, tb);
    vparent_[other] = root;
    std::vector<HalfEdge> moved = std::move(table_[other]);
    table_[other].clear();
    for (HalfEdge h : moved) insert(root, h);
  }

  Folding finish() {
    Folding out;
    const Graph& src = g_.graph;
    out.vertex_map.assign(src.num_vertices(), -1);
    std::vector<int> new_vertex(src.num_vertices(), -1);
    for (int v = 0; v < src.num_vertices(); ++v) {
      int r = vfind(v);
      if (new_vertex[r] < 0) new_vertex[r] = out.graph.graph.add_vertex();
      out.vertex_map[v] = new_vertex[r];
    }
    std::vector<int> new_edge(src.num_edges(), -1);
    for (int e = 0; e < src.num_edges(); ++e) {
      if (hfind(forward(e)) != forward(e)) continue;
      new_edge[e] = out.graph.graph.add_edge(out.vertex_map[src.origin(forward(e))],
                                             out.vertex_map[src.terminus(forward(e))]);
      out.graph.label.push_back(g_.label[forward(e)]);
      out.graph.label.push_back(g_.label[forward(e) + 1]);
    }
    out.half_edge_map.assign(src.num_half_edges(), -1);
    for (HalfEdge h = 0; h < src.num_half_edges(); ++h) {
      HalfEdge r = hfind(h);
      out.half_edge_map[h] = 2 * new_edge[edge_of(r)] + (r & 1);
    }
    if (src.basepoint()) out.graph.graph.set_basepoint(out.vertex_map[*src.basepoint()]);
    return out;
  }

  const LabeledGraph& g_;
  std::vector<int> vparent_;
  std::vector<HalfEdge> hparent_;
  std::vector<std::vector<HalfEdge>> table_;
  std::deque<std::pair<HalfEdge, HalfEdge>> pending_;
  std::optional<std::mt19937_64> rng_;
};

}  // namespace

Folding fold(const LabeledGraph& g, std::optional<std::uint64_t> shuffle_seed) {
  if (!g.labels_respect_reversal()) throw Error("fold: labels do not respect reversal");
  return Folder(g, shuffle_seed).run();
}

Path CoreGraph::map_path(const Path& path) const {
  Path out;
  for (HalfEdge h : path) {
    if (half_edge_map[h]) out.push_back(*half_edge_map[h]);
  }
  return reduce_path(out);
}

CoreGraph core(const LabeledGraph& lg, bool keep_basepoint) {
  const Graph& g = lg.graph;
  if (!g.connected()) throw Error("core: graph must be connected");
  const std::optional<int> base = g.basepoint();
  if (g.rank() == 0 && !(keep_basepoint && base)) {
    throw Error("core: rank 0 graph has no unbased core");
  }

  std::vector<int> valence(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) valence[v] = g.valence(v);
  std::vector<bool> edge_alive(g.num_edges(), true);
  std::vector<bool> vertex_alive(g.num_vertices(), true);
  std::vector<int> parent(g.num_vertices(), -1);
  std::vector<int> removal_order;

  auto spared = [&](int v) { return keep_basepoint && base && *base == v; };
  std::deque<int> queue;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (valence[v] == 1 && !spared(v)) queue.push_back(v);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (!vertex_alive[v] || valence[v] != 1) continue;
    HalfEdge h = -1;
    for (HalfEdge x : g.star(v)) {
      if (edge_alive[edge_of(x)]) h = x;
    }
    edge_alive[edge_of(h)] = false;
    vertex_alive[v] = false;
    removal_order.push_back(v);
    int w = g.terminus(h);
    parent[v] = w;
    --valence[v];
    if (--valence[w] == 1 && !spared(w)) queue.push_back(w);
  }

  CoreGraph out;
  out.based = keep_basepoint;
  out.vertex_map.assign(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (vertex_alive[v]) out.vertex_map[v] = out.graph.graph.add_vertex();
  }
  out.retraction = out.vertex_map;
  for (auto it = removal_order.rbegin(); it != removal_order.rend(); ++it) {
    out.retraction[*it] = out.retraction[parent[*it]];
  }
  out.half_edge_map.assign(g.num_half_edges(), std::nullopt);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!edge_alive[e]) continue;
    int ne = out.graph.graph.add_edge(out.vertex_map[g.origin(forward(e))],
                                      out.vertex_map[g.terminus(forward(e))]);
    out.graph.label.push_back(lg.label[forward(e)]);
    out.graph.label.push_back(lg.label[forward(e) + 1]);
    out.half_edge_map[forward(e)] = forward(ne);
    out.half_edge_map[forward(e) + 1] = forward(ne) + 1;
  }
  if (keep_basepoint && base) out.graph.graph.set_basepoint(out.vertex_map[*base]);
  return out;
}

bool is_automorphism(const Endomorphism& f) {
  for (const Word& w : f.images()) {
    if (w.empty()) return false;
  }
  const Wedge wedge = wedge_of_words(f.images());
  const Folding folded = fold(wedge.graph);
  const CoreGraph c = core(folded.graph, true);
  const Graph& g = c.graph.graph;
  if (g.num_vertices() != 1 || g.num_edges() != f.rank()) return false;
  std::vector<bool> seen(f.rank(), false);
  for (int e = 0; e < g.num_edges(); ++e) {
    int k = label_letter(c.graph.label[forward(e)]).generator() - 1;
    if (seen[k]) return false;
    seen[k] = true;
  }
  return true;
}

}  // namespace outspine
