#pragma once

// Seeded verification suites shared by the command-line tool and the
// acceptance run. Reports are deterministic given their inputs; wall time is
// kept apart so it can be left out of serialized output.

#include <cstdint>
#include <string>
#include <vector>

#include "outspine/filling.hpp"
#include "outspine/io.hpp"

namespace outspine {

constexpr int kReportSchemaVersion = 1;

struct VerificationReport {
  std::string suite;
  int samples = 0;
  std::uint64_t seed = 0;
  Json params = Json::object();
  Json summary = Json::object();
  std::vector<Json> failures;
  double wall_seconds = 0;

  bool pass() const { return failures.empty(); }
};

Json to_json(const VerificationReport& r, bool include_timing);

/// Random L_m vertices through forget / augment / restrict.
VerificationReport verify_square(int samples, std::uint64_t seed, int m, int n);
/// Random adjacent K_n pairs restricted to K_m.
VerificationReport verify_rho(int samples, std::uint64_t seed, int m, int n);
/// The exhaustive area monotonicity harness.
VerificationReport verify_area(const HarnessLimits& limits);
/// Lengths of T^i(a_1), T^i(a_2) against p' = 2p + q, q' = p + q.
VerificationReport verify_growth(int max_i);

/// |T^i(a_k)| for i = 0..max_i and k = 1..3. Words are built literally up to
/// `materialize`; past that, letter counts come from the abelianized action,
/// which is exact because every image stays a positive word.
struct GrowthSeries {
  std::vector<std::vector<std::int64_t>> length;  // length[i][k-1]
  int materialized = 0;
  bool positive = true;              // every materialized word is positive
  bool counts_match_words = true;    // abelianized counts agree with the words
};
GrowthSeries t_growth(int max_i, int materialize = 14);

/// Leading eigenvalue of a nonnegative square matrix by power iteration.
double power_iteration(const std::vector<std::vector<double>>& m, int iterations = 200);

}  // namespace outspine
