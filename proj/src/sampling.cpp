#include "outspine/sampling.hpp"

namespace outspine {

namespace {

int uniform(Rng& rng, int count) { return static_cast<int>(rng() % static_cast<std::uint64_t>(count)); }

bool blow_up_once(Rng& rng, MarkedGraph& m, Mode mode) {
  auto options = blow_ups(m, mode);
  if (options.empty()) return false;
  m = std::move(options[uniform(rng, static_cast<int>(options.size()))]);
  return true;
}

}  // namespace

Transvection random_transvection(Rng& rng, int rank) {
  if (rank < 2) throw Error("random_transvection needs rank >= 2");
  Transvection t;
  t.side = uniform(rng, 2) ? Side::right : Side::left;
  t.target = 1 + uniform(rng, rank);
  t.multiplier = 1 + uniform(rng, rank - 1);
  if (t.multiplier >= t.target) ++t.multiplier;
  t.exponent = uniform(rng, 2) ? -1 : 1;
  return t;
}

Endomorphism random_automorphism(Rng& rng, int rank, int max_length) {
  Endomorphism f = Endomorphism::identity(rank);
  const int length = uniform(rng, max_length + 1);
  for (int i = 0; i < length; ++i) {
    f = compose(transvection_endo(random_transvection(rng, rank), rank), f);
  }
  return f;
}

SpineVertex random_vertex(Rng& rng, int rank, Mode mode, int max_length, int max_blowups) {
  SpineVertex v = rose_vertex(random_automorphism(rng, rank, max_length), mode);
  const int blowups = uniform(rng, max_blowups + 1);
  for (int i = 0; i < blowups; ++i) {
    if (!blow_up_once(rng, v.rep, mode)) break;
  }
  return v;
}

std::pair<SpineVertex, SpineVertex> random_adjacent_pair(Rng& rng, int rank, Mode mode) {
  SpineVertex small = random_vertex(rng, rank, mode, 8, 1);
  SpineVertex big = small;
  const int steps = 1 + uniform(rng, 2);
  for (int i = 0; i < steps; ++i) {
    if (!blow_up_once(rng, big.rep, mode) && i == 0) {
      throw Error("random_adjacent_pair: vertex admits no expansion");
    }
  }
  return {std::move(big), std::move(small)};
}

}  // namespace outspine
