#pragma once

// Finite graphs stored as half-edges. Edge e owns half-edges 2e (forward)
// and 2e+1 (reverse); reversal is h ^ 1. Loops and parallel edges are
// first-class.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "outspine/freegroup.hpp"

namespace outspine {

using HalfEdge = int;
using Path = std::vector<HalfEdge>;

constexpr HalfEdge reverse(HalfEdge h) { return h ^ 1; }
constexpr int edge_of(HalfEdge h) { return h >> 1; }
constexpr HalfEdge forward(int e) { return 2 * e; }

class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertices);

  int add_vertex();
  /// Adds an edge oriented from -> to and returns its id.
  int add_edge(int from, int to);

  int num_vertices() const { return static_cast<int>(stars_.size()); }
  int num_edges() const { return static_cast<int>(origin_.size() / 2); }
  int num_half_edges() const { return static_cast<int>(origin_.size()); }

  int origin(HalfEdge h) const { return origin_[h]; }
  int terminus(HalfEdge h) const { return origin_[reverse(h)]; }
  bool is_loop(int e) const { return origin_[2 * e] == origin_[2 * e + 1]; }

  /// Half-edges whose origin is v, in increasing id order.
  const std::vector<HalfEdge>& star(int v) const { return stars_[v]; }
  int valence(int v) const { return static_cast<int>(stars_[v].size()); }

  std::optional<int> basepoint() const { return basepoint_; }
  void set_basepoint(std::optional<int> v);

  bool connected() const;
  /// E - V + 1; throws on disconnected input.
  int rank() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<int> origin_;
  std::vector<std::vector<HalfEdge>> stars_;
  std::optional<int> basepoint_;
};

Graph rose(int petals);

// --- edge paths -----------------------------------------------------------

/// Cancels adjacent h, reverse(h) pairs.
Path reduce_path(std::span<const HalfEdge> path);
Path inverse_path(std::span<const HalfEdge> path);
Path concat(std::span<const HalfEdge> a, std::span<const HalfEdge> b);
/// True if consecutive half-edges meet and the path runs from `from` to `to`.
/// The empty path is valid exactly when from == to.
bool is_path(const Graph& g, std::span<const HalfEdge> path, int from, int to);

/// BFS spanning tree from root, as a per-edge membership mask.
std::vector<bool> spanning_tree(const Graph& g, int root = 0);
bool is_spanning_tree(const Graph& g, const std::vector<bool>& tree);
/// Unique reduced path inside the tree.
Path tree_path(const Graph& g, const std::vector<bool>& tree, int from, int to);

// --- forests and collapses -------------------------------------------------

struct Forest {
  std::vector<int> edges;  // sorted edge ids
  friend bool operator==(const Forest&, const Forest&) = default;
};

bool is_forest(const Graph& g, const Forest& f);

struct CollapseMap {
  Graph target;
  std::vector<int> vertex_map;
  /// Image of each source half-edge; empty for collapsed half-edges, which
  /// land on vertex_map[origin].
  std::vector<std::optional<HalfEdge>> half_edge_map;

  Path map_path(std::span<const HalfEdge> path) const;
};

/// Identifies each component of the forest to a point. Surviving edges keep
/// their relative order and orientation.
CollapseMap collapse_forest(const Graph& g, const Forest& f);

/// All nonempty forests, each once, ordered by edge bitmask.
std::vector<Forest> enumerate_forests(const Graph& g);

// --- valence-two suppression ------------------------------------------------

struct Suppression {
  Graph graph;
  std::vector<int> vertex_map;  // -1 for erased vertices
  /// For each new edge, the old forward path it replaces.
  std::vector<Path> provenance;
  /// For each old half-edge: the new half-edge whose chain contains it and
  /// the position inside that chain.
  std::vector<std::pair<HalfEdge, int>> chain_of;

  /// Rewrites a reduced path whose endpoints survive.
  Path map_path(std::span<const HalfEdge> path) const;
};

/// Erases every valence-2 vertex other than `protect`. A graph that is a
/// topological circle needs a protected vertex.
Suppression suppress_valence2(const Graph& g, std::optional<int> protect = std::nullopt);

// --- isomorphisms ------------------------------------------------------------

struct Isomorphism {
  std::vector<int> vertex;
  std::vector<HalfEdge> half_edge;

  Path map_path(std::span<const HalfEdge> path) const;
};

/// Visits every isomorphism g1 -> g2; stops early when visit returns true.
/// Returns true if stopped early.
bool for_each_isomorphism(const Graph& g1, const Graph& g2, bool respect_basepoint,
                          const std::function<bool(const Isomorphism&)>& visit);

std::vector<Isomorphism> isomorphisms(const Graph& g1, const Graph& g2,
                                      bool respect_basepoint);

}  // namespace outspine
