#pragma once

// Filling area of loops in small simplicial 2-complexes: exact search over
// triangulated discs, a greedy upper bound, pushforward along simplicial
// maps, and the exhaustive monotonicity harness built on them.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace outspine {

class TwoComplex {
 public:
  TwoComplex() = default;
  /// Triangles and extra edges over vertices 0..vertices-1; edges of the
  /// triangles are added automatically. Throws on repeated vertices.
  static TwoComplex make(int vertices, const std::vector<std::array<int, 3>>& triangles,
                         const std::vector<std::array<int, 2>>& extra_edges = {});

  int num_vertices() const { return n_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }

  bool has_edge(int u, int v) const { return u != v && ((adj_[u] >> v) & 1); }
  bool has_triangle(int a, int b, int c) const;
  /// {a,b,c} with repeats removed is a vertex, an edge or a triangle.
  bool spans_simplex(int a, int b, int c) const;
  std::uint64_t neighbours(int v) const { return adj_[v]; }
  bool connected() const;

  friend bool operator==(const TwoComplex&, const TwoComplex&) = default;

 private:
  int n_ = 0;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::uint64_t> tri_;  // tri_[a * n + b] has bit c for each triangle {a,b,c}
};

/// Cyclic vertex sequence; consecutive entries are equal or joined by an edge.
using ComplexLoop = std::vector<int>;

bool is_loop(const TwoComplex& x, const ComplexLoop& l);
/// Number of steps between distinct vertices.
int loop_length(const ComplexLoop& l);
bool is_constant(const ComplexLoop& l);
/// Cyclic reduction: stutters and backtracks removed, cyclically. A loop
/// that reduces away entirely becomes its last surviving vertex.
ComplexLoop reduce_loop(const ComplexLoop& l);
bool is_reduced(const ComplexLoop& l);

/// A triangulated disc whose boundary vertices are 0..k-1 in cyclic order,
/// with a vertex map into a complex. A constant loop is filled by the empty
/// disc.
struct DiscFilling {
  int num_vertices = 0;
  int boundary_length = 0;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> image;

  int area() const { return static_cast<int>(triangles.size()); }
};

/// Checks that d is a simplicial disc with boundary 0..k-1, mapped
/// simplicially into x with boundary l. Returns the first problem found.
std::optional<std::string> filling_error(const TwoComplex& x, const ComplexLoop& l,
                                         const DiscFilling& d);

constexpr int kAreaHardCap = 10;

/// Area is measured on the cyclic reduction: the returned disc's boundary
/// maps onto reduce_loop(l), and a loop reducing to a point has area 0.

/// Least-area filling with at most `budget` triangles, or nothing. Searches
/// shellings of the disc from the boundary inward, deepening on the number
/// of interior vertices. Throws when budget exceeds kAreaHardCap.
std::optional<DiscFilling> find_filling(const TwoComplex& x, const ComplexLoop& l, int budget);
std::optional<int> area_exact(const TwoComplex& x, const ComplexLoop& l, int budget);

/// Greedy best-first search with the same moves, shortest hole first. Any
/// disc it finds is a filling, so the result bounds area_exact from above.
/// Gives up after `step_cap` expanded states.
std::optional<DiscFilling> greedy_filling(const TwoComplex& x, const ComplexLoop& l,
                                          int step_cap);
std::optional<int> area_upper(const TwoComplex& x, const ComplexLoop& l, int step_cap);

/// True when the loop's 1-chain is a boundary over Q and over Z/2; the
/// second value is the least size of a Z/2 2-chain it bounds.
struct HomologyBound {
  bool bounds = false;
  int min_triangles = 0;
};
HomologyBound homology_bound(const TwoComplex& x, const ComplexLoop& l);

struct SimplicialMap {
  std::vector<int> vertex;
};

bool is_simplicial(const SimplicialMap& f, const TwoComplex& from, const TwoComplex& to);
ComplexLoop push_loop(const SimplicialMap& f, const ComplexLoop& l);
DiscFilling pushforward(const SimplicialMap& f, const DiscFilling& d);

// --- enumeration ------------------------------------------------------------

/// Connected complexes in which every vertex and edge lies in a triangle,
/// one per isomorphism class, with 3..max_vertices vertices and
/// 1..max_triangles triangles.
std::vector<TwoComplex> enumerate_complexes(int max_vertices, int max_triangles);

/// Cyclically reduced edge loops of length 3..max_length, one per class under
/// rotation, reversal and automorphisms of x.
std::vector<ComplexLoop> enumerate_loops(const TwoComplex& x, int max_length);

/// All vertex maps from -> to sending every simplex to a simplex.
std::vector<SimplicialMap> enumerate_maps(const TwoComplex& from, const TwoComplex& to);

struct MonotonicityViolation {
  int source = 0;
  int target = 0;
  std::vector<int> map;
  ComplexLoop loop;
  int source_area = 0;
  int target_area = 0;
};

struct MonotonicityReport {
  int complexes = 0;
  long long loops = 0;            // (complex, loop) pairs enumerated
  long long fillable_loops = 0;   // with area defined within budget
  long long maps = 0;             // simplicial maps over all ordered pairs
  long long comparisons = 0;      // (map, fillable loop) pairs checked
  long long target_areas = 0;     // distinct (target, image loop) areas computed
  long long upper_checked = 0;    // instances where area_upper also ran
  long long upper_violations = 0;
  long long invalid_fillings = 0;  // search results failing filling_error
  long long pushforward_checked = 0;
  long long violation_count = 0;
  std::vector<MonotonicityViolation> violations;  // the first few
};

struct HarnessLimits {
  int max_vertices = 6;
  int max_triangles = 6;
  int max_loop_length = 6;
  int budget = 8;
  int upper_step_cap = 20000;
};

MonotonicityReport monotonicity_harness(const HarnessLimits& limits);

}  // namespace outspine
