#pragma once

// Stallings folding. Labels are half-edges of a fixed target graph, so the
// same code folds graphs labeled by basis letters (target = rose R_n) and
// graphs labeled over an arbitrary marked graph.

#include <cstdint>
#include <optional>
#include <vector>

#include "outspine/freegroup.hpp"
#include "outspine/graph.hpp"

namespace outspine {

/// Label of a basis letter as a half-edge of the rose: a_k -> 2(k-1),
/// a_k^-1 -> 2(k-1)+1.
constexpr HalfEdge letter_label(Letter x) {
  return 2 * (x.generator() - 1) + (x.sign() < 0 ? 1 : 0);
}
constexpr Letter label_letter(HalfEdge h) {
  return Letter{(h & 1) ? -(edge_of(h) + 1) : edge_of(h) + 1};
}

struct LabeledGraph {
  Graph graph;
  std::vector<HalfEdge> label;  // per half-edge; label[h ^ 1] == label[h] ^ 1

  bool labels_respect_reversal() const;
  /// No vertex has two distinct outgoing half-edges with the same label.
  bool is_immersion() const;
  /// Reads the labels along a path as a word (basis-labeled graphs only).
  Word read_word(const Path& path) const;
};

/// One based loop per label sequence, subdivided into one edge per label.
struct Wedge {
  LabeledGraph graph;
  std::vector<Path> loops;  // forward half-edges of each loop, from the basepoint
};

Wedge wedge_of_loops(const std::vector<std::vector<HalfEdge>>& label_sequences);
Wedge wedge_of_words(const std::vector<Word>& words);

struct Folding {
  LabeledGraph graph;
  std::vector<int> vertex_map;
  std::vector<HalfEdge> half_edge_map;

  Path map_path(const Path& path) const;
};

/// Folds until the immersion condition holds. `shuffle_seed` randomizes the
/// order in which fold candidates are processed; the result is the same up
/// to label-preserving isomorphism.
Folding fold(const LabeledGraph& g, std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct CoreGraph {
  LabeledGraph graph;
  bool based = false;
  std::vector<int> vertex_map;    // -1 for stripped vertices
  std::vector<int> retraction;    // image of every old vertex in the core
  std::vector<std::optional<HalfEdge>> half_edge_map;

  /// Drops stripped half-edges; a path from v becomes a path from
  /// retraction[v].
  Path map_path(const Path& path) const;
};

/// Repeatedly deletes valence-1 vertices, sparing the basepoint when
/// keep_basepoint is set. Throws on rank 0 without a kept basepoint.
CoreGraph core(const LabeledGraph& g, bool keep_basepoint);

/// True iff the images generate F_n: the folded wedge of the images, cored
/// at the basepoint, is the rose R_n with every basis label once.
bool is_automorphism(const Endomorphism& f);

}  // namespace outspine
