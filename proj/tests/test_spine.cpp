#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "outspine/folding.hpp"
#include "outspine/spine.hpp"

using namespace outspine;

namespace {

Transvection random_transvection(std::mt19937_64& rng, int rank) {
  Transvection t;
  t.side = rng() % 2 ? Side::left : Side::right;
  t.target = 1 + static_cast<int>(rng() % rank);
  do {
    t.multiplier = 1 + static_cast<int>(rng() % rank);
  } while (t.multiplier == t.target);
  t.exponent = rng() % 2 ? 1 : -1;
  return t;
}

Endomorphism random_automorphism(std::mt19937_64& rng, int rank, int max_len) {
  Endomorphism f = Endomorphism::identity(rank);
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) f = compose(transvection_endo(random_transvection(rng, rank), rank), f);
  return f;
}

MarkedGraph random_marked(std::mt19937_64& rng, int rank, Mode mode) {
  MarkedGraph m = rose_vertex(random_automorphism(rng, rank, 6), mode).rep;
  int blowups = static_cast<int>(rng() % 3);
  for (int i = 0; i < blowups; ++i) {
    auto options = blow_ups(m, mode);
    if (options.empty()) break;
    m = options[rng() % options.size()];
  }
  return m;
}

// Copy of m with shuffled vertex ids, edge ids and edge orientations.
MarkedGraph relabel(const MarkedGraph& m, std::mt19937_64& rng, Mode mode) {
  const Graph& g = m.graph;
  std::vector<int> vperm(g.num_vertices()), eorder(g.num_edges());
  std::iota(vperm.begin(), vperm.end(), 0);
  std::iota(eorder.begin(), eorder.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(eorder.begin(), eorder.end(), rng);
  Graph out(g.num_vertices());
  std::vector<HalfEdge> hmap(g.num_half_edges());
  for (int e : eorder) {
    bool flip = rng() % 2;
    HalfEdge h = forward(e) + (flip ? 1 : 0);
    int ne = out.add_edge(vperm[g.origin(h)], vperm[g.terminus(h)]);
    hmap[h] = forward(ne);
    hmap[reverse(h)] = forward(ne) + 1;
  }
  MarkedGraph r;
  r.graph = out;
  r.hub = vperm[m.hub];
  if (mode == Mode::L) r.graph.set_basepoint(r.hub);
  for (const Path& p : m.marking) {
    Path q;
    for (HalfEdge h : p) q.push_back(hmap[h]);
    r.marking.push_back(q);
  }
  return r;
}

Endomorphism conj_by(const Endomorphism& f, const Word& c) {
  std::vector<Word> images;
  for (const Word& w : f.images()) images.push_back(c * w * c.inverse());
  return Endomorphism(f.rank(), images);
}

std::vector<Transvection> all_transvections(int n) {
  std::vector<Transvection> out;
  for (Side s : {Side::left, Side::right}) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        for (int e : {1, -1}) out.push_back(Transvection{s, i, j, e});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("induced_automorphism") {
  SpineVertex id = rose_vertex(Endomorphism::identity(3), Mode::L);
  std::vector<bool> empty_tree(3, false);
  CHECK(induced_automorphism(id.rep, empty_tree) == Endomorphism::identity(3));
  const Endomorphism T = automorphism_T();
  CHECK(induced_automorphism(rose_vertex(T, Mode::L).rep) == T);
  CHECK_THROWS_AS(induced_automorphism(id.rep, std::vector<bool>{true, false, false}), Error);

  // Theta blow-up of the identity rose in rank 2.
  MarkedGraph rose2 = rose_vertex(Endomorphism::identity(2), Mode::K).rep;
  auto thetas = blow_ups(rose2, Mode::K);
  REQUIRE_FALSE(thetas.empty());
  for (const MarkedGraph& theta : thetas) {
    CHECK(theta.graph.num_vertices() == 2);
    const int bridge = theta.graph.num_edges() - 1;
    std::vector<bool> tree(theta.graph.num_edges(), false);
    tree[bridge] = true;
    CHECK(is_inner(induced_automorphism(theta, tree)));
    for (int e = 0; e < theta.graph.num_edges(); ++e) {
      if (theta.graph.is_loop(e)) continue;
      std::vector<bool> t(theta.graph.num_edges(), false);
      t[e] = true;
      CHECK(is_automorphism(induced_automorphism(theta, t)));
    }
  }
}

TEST_CASE("changing the spanning tree changes the basis by a fixed automorphism") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    MarkedGraph m = random_marked(rng, 3, Mode::K);
    const Graph& g = m.graph;
    auto t1 = spanning_tree(g, m.hub);
    // A second tree from a different root and a shuffled edge preference.
    auto t2 = spanning_tree(g, static_cast<int>(rng() % g.num_vertices()));
    Endomorphism f1 = induced_automorphism(m, t1), f2 = induced_automorphism(m, t2);
    // theta(b_j) = the T2-word of the T1-loop through the j-th non-tree edge.
    MarkedGraph basis = m;
    basis.marking.clear();
    for (int e = 0; e < g.num_edges(); ++e) {
      if (t1[e]) continue;
      Path loop = tree_path(g, t1, m.hub, g.origin(forward(e)));
      loop.push_back(forward(e));
      Path back = tree_path(g, t1, g.terminus(forward(e)), m.hub);
      loop.insert(loop.end(), back.begin(), back.end());
      basis.marking.push_back(reduce_path(loop));
    }
    Endomorphism theta = induced_automorphism(basis, t2);
    CHECK(compose(theta, f1) == f2);
  }
}

TEST_CASE("equivalent") {
  const Endomorphism T = automorphism_T();
  for (Mode mode : {Mode::K, Mode::L}) {
    SpineVertex r = rose_vertex(T, mode);
    CHECK(equivalent(r.rep, r.rep, mode));
    // A signed permutation of the petals is realized by a graph isomorphism.
    Endomorphism perm = Endomorphism::parse(3, {"a2", "A3", "a1"});
    SpineVertex p = rose_vertex(compose(perm, T), mode);
    CHECK(equivalent(r.rep, p.rep, mode));
    // Relabeling the petals gives the same marked graph.
    MarkedGraph petals = r.rep;
    for (Path& path : petals.marking) {
      for (HalfEdge& h : path) {
        int e = edge_of(h);
        int ne = (e + 1) % 3;
        h = forward(ne) + ((h & 1) ^ (e == 0 ? 1 : 0));
      }
    }
    CHECK(equivalent(r.rep, petals, mode));
    CHECK_FALSE(equivalent(rose_vertex(Endomorphism::identity(3), mode).rep, r.rep, mode));
  }
  // Inner automorphisms only matter in mode L.
  SpineVertex inner_k = rose_vertex(conj_by(T, Word::parse("a2A1")), Mode::K);
  SpineVertex inner_l = rose_vertex(conj_by(T, Word::parse("a2A1")), Mode::L);
  CHECK(equivalent(inner_k.rep, rose_vertex(T, Mode::K).rep, Mode::K));
  CHECK_FALSE(equivalent(inner_l.rep, rose_vertex(T, Mode::L).rep, Mode::L));
}

TEST_CASE("identity rose is not equivalent to any T-marked rose up to signed permutation") {
  // Exhausting all 48 signed permutations of the petals, in both modes.
  const Endomorphism T = automorphism_T();
  const Endomorphism id = Endomorphism::identity(3);
  std::vector<int> perm{1, 2, 3};
  int checked = 0;
  do {
    for (int signs = 0; signs < 8; ++signs) {
      std::vector<Word> images;
      for (int k = 0; k < 3; ++k) images.push_back(Word::letter(gen(perm[k], signs & (1 << k) ? -1 : 1)));
      Endomorphism sp(3, images);
      CHECK(equivalent(rose_vertex(sp, Mode::L).rep, rose_vertex(id, Mode::L).rep, Mode::L));
      CHECK_FALSE(equivalent(rose_vertex(compose(T, sp), Mode::K).rep,
                             rose_vertex(id, Mode::K).rep, Mode::K));
      ++checked;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(checked == 48);
}

TEST_CASE("equivalent is an equivalence relation on random samples") {
  std::mt19937_64 rng(17);
  for (Mode mode : {Mode::K, Mode::L}) {
    for (int trial = 0; trial < 25; ++trial) {
      MarkedGraph a = random_marked(rng, 3, mode);
      validate(a, mode);
      MarkedGraph b = relabel(a, rng, mode);
      MarkedGraph c = relabel(b, rng, mode);
      if (mode == Mode::K) {
        // Moving the hub is invisible in mode K.
        const auto& st = c.graph.star(c.hub);
        c = move_hub(c, Path{st[rng() % st.size()]});
      }
      validate(b, mode);
      validate(c, mode);
      CHECK(equivalent(a, a, mode));
      CHECK(equivalent(a, b, mode));
      CHECK(equivalent(b, a, mode));
      CHECK(equivalent(b, c, mode));
      CHECK(equivalent(a, c, mode));
      MarkedGraph d = random_marked(rng, 3, mode);
      CHECK(equivalent(a, d, mode) == equivalent(d, a, mode));
    }
  }
}

TEST_CASE("Nielsen graph shape and collapses") {
  for (const Transvection& t : all_transvections(3)) {
    NielsenGraph ng = nielsen_graph(Endomorphism::identity(3), t, 3);
    const Graph& g = ng.vertex.rep.graph;
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_edges() == 4);
    CHECK(g.valence(0) == 5);
    CHECK(g.valence(1) == 3);
    CHECK(g.rank() == 3);
    validate(ng.vertex.rep, Mode::L);
    MarkedGraph c0 = collapse(ng.vertex.rep, Forest{{ng.e0}}, Mode::L);
    MarkedGraph c1 = collapse(ng.vertex.rep, Forest{{ng.e1}}, Mode::L);
    CHECK(equivalent(c0, rose_vertex(Endomorphism::identity(3), Mode::L).rep, Mode::L));
    CHECK(equivalent(c1, rose_vertex(transvection_endo(t, 3), Mode::L).rep, Mode::L));
  }
  CHECK(nielsen_graph(Endomorphism::identity(4), Transvection{Side::left, 1, 4, 1}, 4)
            .vertex.rep.graph.valence(0) == 7);
}

TEST_CASE("collapse") {
  NielsenGraph ng = nielsen_graph(Endomorphism::identity(3), Transvection{Side::right, 1, 2, 1}, 3);
  MarkedGraph same = collapse(ng.vertex.rep, Forest{}, Mode::L);
  CHECK(equivalent(same, ng.vertex.rep, Mode::L));
  // Blow up a rose and collapse the new edge back.
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    MarkedGraph m = random_marked(rng, 3, Mode::L);
    for (const MarkedGraph& b : blow_ups(m, Mode::L)) {
      validate(b, Mode::L);
      MarkedGraph back = collapse(b, Forest{{b.graph.num_edges() - 1}}, Mode::L);
      CHECK(back.graph == m.graph);
      CHECK(back.marking == m.marking);
    }
  }
  // Collapsing a separating edge at a trivalent non-basepoint vertex would be
  // fine; collapsing to a vertex of too small valence is not.
  Graph small(2);
  small.add_edge(0, 0);
  small.add_edge(0, 1);
  small.add_edge(1, 1);
  small.set_basepoint(0);
  MarkedGraph barbell{small, 0, {Path{0}, Path{2, 4, 3}}};
  validate(barbell, Mode::L);
  CHECK_NOTHROW(collapse(barbell, Forest{{1}}, Mode::L));
}

TEST_CASE("adjacent") {
  const Endomorphism id = Endomorphism::identity(3);
  const Transvection t{Side::right, 1, 2, 1};
  SpineVertex I = rose_vertex(id, Mode::L);
  SpineVertex tI = rose_vertex(transvection_endo(t, 3), Mode::L);
  SpineVertex N = nielsen_graph(id, t, 3).vertex;
  CHECK(adjacent(N, I));
  CHECK(adjacent(I, N));
  CHECK(adjacent(N, tI));
  CHECK_FALSE(adjacent(I, tI));
  CHECK_FALSE(adjacent(I, I));
  CHECK_FALSE(adjacent(N, N));
}

TEST_CASE("every Nielsen graph joins its two roses") {
  std::mt19937_64 rng(9);
  for (int n : {2, 3, 4}) {
    for (const Transvection& t : all_transvections(n)) {
      Endomorphism sigma = random_automorphism(rng, n, 5);
      NielsenGraph ng = nielsen_graph(sigma, t, n);
      validate(ng.vertex.rep, Mode::L);
      SpineVertex before = rose_vertex(sigma, Mode::L);
      SpineVertex after = rose_vertex(compose(transvection_endo(t, n), sigma), Mode::L);
      CHECK(adjacent(ng.vertex, before));
      CHECK(adjacent(ng.vertex, after));
      CHECK(equivalent(collapse(ng.vertex.rep, Forest{{ng.e0}}, Mode::L), before.rep, Mode::L));
      CHECK(equivalent(collapse(ng.vertex.rep, Forest{{ng.e1}}, Mode::L), after.rep, Mode::L));
    }
  }
}

TEST_CASE("rose_vertex") {
  SpineVertex r = rose_vertex(automorphism_T(), Mode::L);
  CHECK(r.rep.marking[0] == Path{0, 0, 2});
  CHECK(r.rep.marking[1] == Path{0, 2});
  CHECK(r.rep.marking[2] == Path{4});
  CHECK_THROWS_AS(rose_vertex(Endomorphism::parse(2, {"a1a1", "a2"}), Mode::L), Error);
  CHECK_FALSE(rose_vertex(Endomorphism::identity(2), Mode::K).rep.graph.basepoint());
}

TEST_CASE("build_loop") {
  std::vector<Transvection> pair{{Side::right, 1, 2, 1}, {Side::right, 1, 2, -1}};
  SimplicialLoop small = build_loop(pair, 2);
  CHECK(small.closed);
  CHECK(small.length() == 4);
  CHECK(consecutive_adjacent(small));

  for (int i : {1, 2}) {
    SimplicialLoop loop = build_loop(expand_w(i), 3);
    CHECK(loop.closed);
    CHECK(loop.length() == static_cast<std::size_t>(16 * i + 8));
    CHECK(consecutive_adjacent(loop));
    for (const SpineVertex& v : loop.vertices) CHECK_FALSE(validation_error(v.rep, Mode::L));
  }
  CHECK(build_loop(expand_w(4), 3).length() == 72);

  std::vector<Transvection> open{{Side::left, 2, 1, 1}};
  SimplicialLoop path = build_loop(open, 3);
  CHECK_FALSE(path.closed);
  CHECK(path.vertices.size() == 3);
  CHECK(consecutive_adjacent(path));
}

TEST_CASE("the loop also closes when the word is read backwards") {
  auto ts = expand_w(2);
  std::reverse(ts.begin(), ts.end());
  CHECK(compose_all(ts, 3) == Endomorphism::identity(3));
  SimplicialLoop loop = build_loop(ts, 3);
  CHECK(loop.closed);
  CHECK(loop.length() == 40);
}

TEST_CASE("validation rejects broken markings") {
  MarkedGraph m = rose_vertex(Endomorphism::identity(2), Mode::L).rep;
  MarkedGraph bad = m;
  bad.marking[1] = Path{0};
  CHECK(validation_error(bad, Mode::L));
  bad = m;
  bad.marking[0] = Path{0, 1, 0};
  CHECK(validation_error(bad, Mode::L));
  bad = m;
  bad.graph.set_basepoint(std::nullopt);
  CHECK(validation_error(bad, Mode::L));
  CHECK_FALSE(validation_error(bad, Mode::K));
}
