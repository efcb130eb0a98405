#pragma once

// Maps between spines: forgetting the basepoint (L_n -> K_n), attaching
// extra petals (L_m -> L_n) and restricting to the first m generators
// (K_n -> K_m).

#include "outspine/spine.hpp"

namespace outspine {

/// F_m as the span of the first m basis elements of F_n.
struct BasisEmbedding {
  int m = 2;
  int n = 3;

  void validate() const;
};

/// Drops the basepoint; an old basepoint of valence 2 is suppressed.
SpineVertex forget(const SpineVertex& v);

/// Attaches n-m petals at the basepoint, marked a_{m+1}, ..., a_n.
SpineVertex augment(const SpineVertex& v, const BasisEmbedding& emb);

/// Sizes of the intermediate graphs built by restrict.
struct RestrictionTrace {
  int wedge_edges = 0;
  int folded_vertices = 0;
  int folded_edges = 0;
  int core_vertices = 0;
  int core_edges = 0;
  int suppressed_vertices = 0;
};

struct Restriction {
  SpineVertex vertex;
  RestrictionTrace trace;
};

/// Folds the wedge of the first m marking paths (labeled by half-edges of
/// the graph), takes the unbased core and suppresses valence 2. The new
/// marking is the image of each wedge loop.
Restriction restrict_traced(const SpineVertex& v, const BasisEmbedding& emb);
SpineVertex restrict(const SpineVertex& v, const BasisEmbedding& emb);

/// forget(v) == restrict(forget(augment(v))) in K_m.
bool check_square(const SpineVertex& v, const BasisEmbedding& emb);

/// The restrictions of two adjacent K_n vertices are equal or adjacent.
bool check_rho_simplicial(const SpineVertex& a, const SpineVertex& b, const BasisEmbedding& emb);

}  // namespace outspine
