#include "outspine/natural_maps.hpp"

#include "outspine/folding.hpp"

namespace outspine {

void BasisEmbedding::validate() const {
  if (m < 1 || m >= n) {
    throw Error("basis embedding needs 1 <= m < n (got m=" + std::to_string(m) +
                ", n=" + std::to_string(n) + ")");
  }
}

SpineVertex forget(const SpineVertex& v) {
  if (v.mode != Mode::L) throw Error("forget expects a vertex of L_n");
  MarkedGraph m = v.rep;
  m.graph.set_basepoint(std::nullopt);
  return SpineVertex{suppress_valence2(m, Mode::K), Mode::K};
}

SpineVertex augment(const SpineVertex& v, const BasisEmbedding& emb) {
  emb.validate();
  if (v.mode != Mode::L) throw Error("augment expects a vertex of L_m");
  if (v.rank() != emb.m) throw Error("augment: vertex rank differs from m");
  SpineVertex out = v;
  for (int k = emb.m; k < emb.n; ++k) {
    int e = out.rep.graph.add_edge(out.rep.hub, out.rep.hub);
    out.rep.marking.push_back(Path{forward(e)});
  }
  return out;
}

Restriction restrict_traced(const SpineVertex& v, const BasisEmbedding& emb) {
  emb.validate();
  if (v.mode != Mode::K) throw Error("restrict expects a vertex of K_n");
  if (v.rank() != emb.n) throw Error("restrict: vertex rank differs from n");
  const MarkedGraph& src = v.rep;

  std::vector<std::vector<HalfEdge>> loops(src.marking.begin(), src.marking.begin() + emb.m);
  const Wedge wedge = wedge_of_loops(loops);
  const Folding folded = fold(wedge.graph);
  const CoreGraph c = core(folded.graph, false);

  MarkedGraph cored;
  cored.graph = c.graph.graph;
  cored.hub = c.retraction[*folded.graph.graph.basepoint()];
  for (const Path& loop : wedge.loops) cored.marking.push_back(c.map_path(folded.map_path(loop)));

  Restriction r;
  r.vertex = SpineVertex{suppress_valence2(cored, Mode::K), Mode::K};
  r.trace.wedge_edges = wedge.graph.graph.num_edges();
  r.trace.folded_vertices = folded.graph.graph.num_vertices();
  r.trace.folded_edges = folded.graph.graph.num_edges();
  r.trace.core_vertices = cored.graph.num_vertices();
  r.trace.core_edges = cored.graph.num_edges();
  r.trace.suppressed_vertices = cored.graph.num_vertices() - r.vertex.rep.graph.num_vertices();
  return r;
}

SpineVertex restrict(const SpineVertex& v, const BasisEmbedding& emb) {
  return restrict_traced(v, emb).vertex;
}

bool check_square(const SpineVertex& v, const BasisEmbedding& emb) {
  const SpineVertex direct = forget(v);
  const SpineVertex around = restrict(forget(augment(v, emb)), emb);
  return equivalent(direct.rep, around.rep, Mode::K);
}

bool check_rho_simplicial(const SpineVertex& a, const SpineVertex& b, const BasisEmbedding& emb) {
  const SpineVertex ra = restrict(a, emb);
  const SpineVertex rb = restrict(b, emb);
  return equivalent(ra.rep, rb.rep, Mode::K) || adjacent(ra, rb);
}

}  // namespace outspine
