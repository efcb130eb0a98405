#include "outspine/verify.hpp"

#include <chrono>
#include <cmath>

#include "outspine/natural_maps.hpp"
#include "outspine/sampling.hpp"

namespace outspine {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json vertex_json(const SpineVertex& v) { return to_json(v.rep, v.mode); }

}  // namespace

Json to_json(const VerificationReport& r, bool include_timing) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["suite"] = r.suite;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["params"] = r.params;
  j["summary"] = r.summary;
  j["pass"] = r.pass();
  j["failures"] = r.failures;
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

VerificationReport verify_square(int samples, std::uint64_t seed, int m, int n) {
  const auto t0 = Clock::now();
  BasisEmbedding emb{m, n};
  emb.validate();
  VerificationReport r;
  r.suite = "square";
  r.samples = samples;
  r.seed = seed;
  r.params = {{"m", m}, {"n", n}};
  Rng rng(seed);
  int roses = 0;
  for (int s = 0; s < samples; ++s) {
    SpineVertex v = random_vertex(rng, m, Mode::L);
    if (v.rep.graph.num_vertices() == 1) ++roses;
    try {
      if (!check_square(v, emb)) r.failures.push_back({{"sample", s}, {"vertex", vertex_json(v)}});
    } catch (const Error& e) {
      r.failures.push_back({{"sample", s}, {"vertex", vertex_json(v)}, {"error", e.what()}});
    }
  }
  r.summary = {{"roses", roses}, {"non_roses", samples - roses}};
  r.wall_seconds = seconds_since(t0);
  return r;
}

VerificationReport verify_rho(int samples, std::uint64_t seed, int m, int n) {
  const auto t0 = Clock::now();
  BasisEmbedding emb{m, n};
  emb.validate();
  VerificationReport r;
  r.suite = "rho";
  r.samples = samples;
  r.seed = seed;
  r.params = {{"m", m}, {"n", n}};
  Rng rng(seed);
  int equal_images = 0;
  for (int s = 0; s < samples; ++s) {
    auto [a, b] = random_adjacent_pair(rng, n, Mode::K);
    try {
      if (!adjacent(a, b)) {
        r.failures.push_back({{"sample", s}, {"error", "sampled pair is not adjacent"}});
      } else if (!check_rho_simplicial(a, b, emb)) {
        r.failures.push_back({{"sample", s}, {"a", vertex_json(a)}, {"b", vertex_json(b)}});
      } else if (restrict(a, emb) == restrict(b, emb)) {
        ++equal_images;
      }
    } catch (const Error& e) {
      r.failures.push_back(
          {{"sample", s}, {"a", vertex_json(a)}, {"b", vertex_json(b)}, {"error", e.what()}});
    }
  }
  r.summary = {{"equal_images", equal_images}, {"adjacent_images", samples - equal_images -
                                                                        static_cast<int>(r.failures.size())}};
  r.wall_seconds = seconds_since(t0);
  return r;
}

VerificationReport verify_area(const HarnessLimits& limits) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.suite = "area";
  r.params = {{"max_vertices", limits.max_vertices},
              {"max_triangles", limits.max_triangles},
              {"max_loop_length", limits.max_loop_length},
              {"budget", limits.budget},
              {"upper_step_cap", limits.upper_step_cap}};
  const MonotonicityReport m = monotonicity_harness(limits);
  r.samples = static_cast<int>(std::min<long long>(m.comparisons, 2147483647LL));
  r.summary = {{"complexes", m.complexes},
               {"loops", m.loops},
               {"fillable_loops", m.fillable_loops},
               {"maps", m.maps},
               {"comparisons", m.comparisons},
               {"target_areas", m.target_areas},
               {"upper_checked", m.upper_checked},
               {"upper_violations", m.upper_violations},
               {"invalid_fillings", m.invalid_fillings},
               {"pushforward_checked", m.pushforward_checked},
               {"violation_count", m.violation_count}};
  for (const auto& v : m.violations) {
    r.failures.push_back({{"source", v.source},
                          {"target", v.target},
                          {"map", v.map},
                          {"loop", v.loop},
                          {"source_area", v.source_area},
                          {"target_area", v.target_area}});
  }
  if (m.violation_count > static_cast<long long>(m.violations.size())) {
    r.failures.push_back({{"more_violations", m.violation_count - static_cast<long long>(m.violations.size())}});
  }
  if (m.upper_violations) r.failures.push_back({{"upper_violations", m.upper_violations}});
  if (m.invalid_fillings) r.failures.push_back({{"invalid_fillings", m.invalid_fillings}});
  r.wall_seconds = seconds_since(t0);
  return r;
}

double power_iteration(const std::vector<std::vector<double>>& m, int iterations) {
  const std::size_t n = m.size();
  // x is kept at max-norm 1, so the norm of m x estimates the eigenvalue.
  std::vector<double> x(n, 1.0);
  double lambda = 0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) y[i] += m[i][j] * x[j];
    }
    lambda = 0;
    for (double v : y) lambda = std::max(lambda, std::abs(v));
    if (lambda == 0) return 0;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / lambda;
  }
  return lambda;
}

GrowthSeries t_growth(int max_i, int materialize) {
  const Endomorphism T = automorphism_T();
  const int n = T.rank();
  // step[k][j]: exponent sum of a_{j+1} in T(a_{k+1}).
  std::vector<std::vector<std::int64_t>> step(n, std::vector<std::int64_t>(n, 0));
  for (int k = 0; k < n; ++k) {
    for (Letter x : T.image(k + 1).letters()) step[k][x.generator() - 1] += x.sign();
  }
  GrowthSeries g;
  g.materialized = std::min(max_i, materialize);
  std::vector<std::vector<std::int64_t>> counts(n, std::vector<std::int64_t>(n, 0));
  for (int k = 0; k < n; ++k) counts[k][k] = 1;
  std::vector<Word> words;
  for (int k = 1; k <= n; ++k) words.push_back(Word::letter(gen(k)));
  for (int i = 0; i <= max_i; ++i) {
    std::vector<std::int64_t> len(n, 0);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) len[k] += counts[k][j];
    }
    if (i <= g.materialized) {
      for (int k = 0; k < n; ++k) {
        for (Letter x : words[k].letters()) g.positive = g.positive && x.sign() > 0;
        g.counts_match_words = g.counts_match_words && static_cast<std::int64_t>(words[k].size()) == len[k];
      }
      if (i < g.materialized) {
        for (Word& w : words) w = apply(T, w);
      }
    }
    g.length.push_back(len);
    // T^{i+1}(a_k) = T^i(T(a_k)): substitute the counts of T^i into T(a_k).
    std::vector<std::vector<std::int64_t>> next(n, std::vector<std::int64_t>(n, 0));
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        for (int j = 0; j < n; ++j) next[k][j] += step[k][l] * counts[l][j];
      }
    }
    counts = std::move(next);
  }
  return g;
}

VerificationReport verify_growth(int max_i) {
  const auto t0 = Clock::now();
  if (max_i < 2) throw Error("growth needs i >= 2");
  VerificationReport r;
  r.suite = "growth";
  r.samples = max_i;
  r.params = {{"i", max_i}};
  const GrowthSeries g = t_growth(max_i);
  if (!g.positive) r.failures.push_back({{"error", "a materialized power of T is not positive"}});
  if (!g.counts_match_words) r.failures.push_back({{"error", "letter counts disagree with the words"}});
  Json p = Json::array(), q = Json::array();
  for (int i = 0; i <= max_i; ++i) {
    p.push_back(g.length[i][0]);
    q.push_back(g.length[i][1]);
    if (i < max_i) {
      const auto& cur = g.length[i];
      const auto& nxt = g.length[i + 1];
      if (nxt[0] != 2 * cur[0] + cur[1] || nxt[1] != cur[0] + cur[1]) {
        r.failures.push_back({{"i", i}, {"error", "recurrence fails"}});
      }
    }
  }
  const double eigen = power_iteration({{2, 1}, {1, 1}});
  const double ratio = static_cast<double>(g.length[max_i][0]) / static_cast<double>(g.length[max_i - 1][0]);
  const double rel = std::abs(ratio - eigen) / eigen;
  if (rel > 0.01) r.failures.push_back({{"error", "ratio outside 1% of the eigenvalue"}, {"ratio", ratio}});
  r.summary = {{"p", p},           {"q", q},
               {"ratio", ratio},   {"eigenvalue", eigen},
               {"relative_error", rel}, {"materialized_up_to", g.materialized}};
  r.wall_seconds = seconds_since(t0);
  return r;
}

}  // namespace outspine
