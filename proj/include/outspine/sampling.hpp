#pragma once

// Seeded random spine vertices: transvection products on the identity rose,
// followed by a few blow-ups.

#include <cstdint>
#include <random>
#include <utility>

#include "outspine/spine.hpp"

namespace outspine {

using Rng = std::mt19937_64;

Transvection random_transvection(Rng& rng, int rank);

/// Product of at most max_length random elementary transvections.
Endomorphism random_automorphism(Rng& rng, int rank, int max_length = 8);

/// rose_vertex(random_automorphism) followed by at most max_blowups random
/// single-edge expansions.
SpineVertex random_vertex(Rng& rng, int rank, Mode mode, int max_length = 8,
                          int max_blowups = 2);

/// A random vertex and a one- or two-edge expansion of it; the expansion
/// comes first.
std::pair<SpineVertex, SpineVertex> random_adjacent_pair(Rng& rng, int rank, Mode mode);

}  // namespace outspine
