#pragma once

// Vertices of the spines K_n (unbased) and L_n (based) as marked graphs,
// adjacency by forest collapse, and loops through roses and Nielsen graphs.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "outspine/freegroup.hpp"
#include "outspine/graph.hpp"

namespace outspine {

enum class Mode { K, L };

inline const char* mode_name(Mode m) { return m == Mode::K ? "K" : "L"; }

/// A graph with one closed edge-path per basis generator. In mode L the hub
/// is the basepoint; in mode K it only anchors the paths.
struct MarkedGraph {
  Graph graph;
  int hub = 0;
  std::vector<Path> marking;  // marking[k-1] represents a_k

  int rank() const { return static_cast<int>(marking.size()); }
};

/// Checks every MarkedGraph invariant for the given mode; returns the first
/// violation, or nothing when valid.
std::optional<std::string> validation_error(const MarkedGraph& m, Mode mode);
void validate(const MarkedGraph& m, Mode mode);

/// K: every vertex has valence >= 3. L: the basepoint needs >= 2.
bool satisfies_valence_policy(const Graph& g, Mode mode, int hub);

/// Non-tree edges, in increasing id order, become b_1..b_n; each marking path
/// is read as a word in them.
Endomorphism induced_automorphism(const MarkedGraph& m, const std::vector<bool>& tree);
Endomorphism induced_automorphism(const MarkedGraph& m);

/// Same marked-graph class: some isomorphism (basepoint-preserving in mode L)
/// carries one marking to the other, exactly in mode L and up to a common
/// conjugation in mode K.
bool equivalent(const MarkedGraph& a, const MarkedGraph& b, Mode mode);

/// Re-marks m through f: a_k is sent to the marking path spelling f(a_k),
/// reduced. rose_vertex(g) acted on by f is rose_vertex(g∘f).
MarkedGraph act(const MarkedGraph& m, const Endomorphism& f);

/// Moves the hub along `path` (from the current hub), conjugating the marking.
MarkedGraph move_hub(const MarkedGraph& m, const Path& path);

/// Erases valence-2 vertices, moving the hub off an erased vertex in mode K
/// and protecting it in mode L.
MarkedGraph suppress_valence2(const MarkedGraph& m, Mode mode);

/// Forest collapse of the graph, marking paths pushed through. Throws when
/// the result breaks the valence policy.
MarkedGraph collapse(const MarkedGraph& m, const Forest& f, Mode mode);

struct SpineVertex {
  MarkedGraph rep;
  Mode mode = Mode::L;

  int rank() const { return rep.rank(); }
  friend bool operator==(const SpineVertex& a, const SpineVertex& b) {
    return a.mode == b.mode && equivalent(a.rep, b.rep, a.mode);
  }
};

/// True iff a nonempty forest collapse of one is equivalent to the other.
bool adjacent(const SpineVertex& a, const SpineVertex& b);
bool adjacent(const MarkedGraph& a, const MarkedGraph& b, Mode mode);

/// The rose whose generator a_k is marked by the path spelling f(a_k).
SpineVertex rose_vertex(const Endomorphism& f, Mode mode);

/// (n-2) loops at the base vertex and three parallel edges e0, e1, e2 to a
/// trivalent vertex. Collapsing e0 gives rose_vertex(prefix) and collapsing
/// e1 gives rose_vertex(τ∘prefix).
struct NielsenGraph {
  SpineVertex vertex;
  int e0 = 0;
  int e1 = 0;
  int e2 = 0;
};

NielsenGraph nielsen_graph(const Endomorphism& prefix, const Transvection& t, int n,
                           Mode mode = Mode::L);

/// Alternating rose / Nielsen-graph sequence. `closed` is false when the
/// transvections do not return to the identity; the final rose is then
/// included as an open path endpoint.
struct SimplicialLoop {
  std::vector<SpineVertex> vertices;
  std::vector<std::string> labels;  // "rose" or "nielsen:<transvection>"
  bool closed = false;

  std::size_t length() const { return closed ? vertices.size() : vertices.size() - 1; }
};

/// Walks I, τ1·I, τ2τ1·I, ... joining consecutive roses through the Nielsen
/// graph of each transvection.
SimplicialLoop build_loop(std::span<const Transvection> ts, int n, Mode mode = Mode::L);

/// Every consecutive pair (cyclically, when closed) passes `adjacent`.
bool consecutive_adjacent(const SimplicialLoop& loop);

/// Single-edge expansions: split a vertex into two joined by a new last edge,
/// respecting the valence policy. Collapsing the new edge recovers m.
std::vector<MarkedGraph> blow_ups(const MarkedGraph& m, Mode mode);

}  // namespace outspine
