// Command-line front end: word, loop, verify, restrict.
// Exit codes: 0 pass, 1 failed check, 2 usage or IO error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "CLI11.hpp"
#include "outspine/natural_maps.hpp"
#include "outspine/verify.hpp"

using namespace outspine;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
  if (!out) throw UsageError("write failed: " + out_path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Mode parse_mode(const std::string& s) { return s == "K" ? Mode::K : Mode::L; }

int cmd_word(int i, const std::string& out) {
  const auto ts = expand_w(i);
  const bool closes = compose_all(ts, 3) == Endomorphism::identity(3);
  const bool length_ok = static_cast<int>(ts.size()) == 8 * i + 4;
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = "word";
  j["i"] = i;
  j["length"] = ts.size();
  j["expected_length"] = 8 * i + 4;
  j["closes"] = closes;
  j["pass"] = closes && length_ok;
  j["transvections"] = Json::array();
  for (const auto& t : ts) j["transvections"].push_back(t.str());
  emit(dump(j), out);
  return closes && length_ok ? kPass : kFail;
}

int cmd_loop(int i, const std::string& format, const std::string& mode_str, const std::string& out) {
  const Mode mode = parse_mode(mode_str);
  const auto ts = expand_w(i);
  const SimplicialLoop loop = build_loop(ts, 3, mode);
  const bool length_ok = loop.closed && static_cast<int>(loop.length()) == 16 * i + 8;
  const bool adj = consecutive_adjacent(loop);
  const bool pass = loop.closed && length_ok && adj;
  if (format == "dot") {
    emit(to_dot(loop, "loop_" + std::to_string(i)), out);
  } else {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = "loop";
    j["i"] = i;
    j["mode"] = mode_name(mode);
    j["expected_length"] = 16 * i + 8;
    j["consecutive_adjacent"] = adj;
    j["pass"] = pass;
    j["loop"] = to_json(loop);
    emit(dump(j), out);
  }
  if (!pass) {
    std::cerr << "loop check failed: closed=" << loop.closed << " length=" << loop.length()
              << " adjacent=" << adj << "\n";
  }
  return pass ? kPass : kFail;
}

struct VerifyArgs {
  std::string suite;
  int samples = 100;
  std::uint64_t seed = 1;
  int m = 2;
  int n = 3;
  int budget = 8;
  int i = 20;
  int max_vertices = 6;
  int max_triangles = 6;
  int max_length = 6;
  bool timing = false;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  VerificationReport r;
  if (a.suite == "square" || a.suite == "rho") {
    if (!(2 <= a.m && a.m < a.n && a.n <= 5)) throw UsageError("need 2 <= m < n <= 5");
    if (a.samples < 0) throw UsageError("samples must be nonnegative");
    r = a.suite == "square" ? verify_square(a.samples, a.seed, a.m, a.n)
                            : verify_rho(a.samples, a.seed, a.m, a.n);
  } else if (a.suite == "area") {
    if (a.budget < 0 || a.budget > kAreaHardCap) {
      throw UsageError("budget must lie in 0.." + std::to_string(kAreaHardCap));
    }
    if (a.max_vertices < 3 || a.max_vertices > 8) throw UsageError("max-vertices must lie in 3..8");
    HarnessLimits limits;
    limits.max_vertices = a.max_vertices;
    limits.max_triangles = a.max_triangles;
    limits.max_loop_length = a.max_length;
    limits.budget = a.budget;
    r = verify_area(limits);
  } else {
    if (a.i < 2) throw UsageError("growth needs --i >= 2");
    if (a.i > 40) throw UsageError("growth supports --i <= 40");
    r = verify_growth(a.i);
  }
  emit(dump(to_json(r, a.timing)), a.out);
  return r.pass() ? kPass : kFail;
}

int cmd_restrict(const std::string& input, int m, const std::string& out) {
  Json in;
  if (input == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    in = parse_json(text);
  } else {
    in = read_json_file(input);
  }
  const SpineVertex v = marked_graph_from_json(in);
  if (v.mode != Mode::K) throw Error("restrict expects a K-mode marked graph (no basepoint)");
  const BasisEmbedding emb{m, v.rank()};
  emb.validate();
  const Restriction r = restrict_traced(v, emb);
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = "restrict";
  j["m"] = m;
  j["n"] = v.rank();
  j["result"] = to_json(r.vertex.rep, r.vertex.mode);
  j["trace"] = {{"wedge_edges", r.trace.wedge_edges},
                {"folded_vertices", r.trace.folded_vertices},
                {"folded_edges", r.trace.folded_edges},
                {"core_vertices", r.trace.core_vertices},
                {"core_edges", r.trace.core_edges},
                {"suppressed_vertices", r.trace.suppressed_vertices}};
  emit(dump(j), out);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marked graphs, spine loops and filling-area checks"};
  app.require_subcommand(1);

  int word_i = 0;
  std::string word_out;
  auto* word = app.add_subcommand("word", "Expand w_i into transvections");
  word->add_option("--i", word_i, "Index i >= 1")->required()->check(CLI::PositiveNumber);
  word->add_option("--out", word_out, "Output file");

  int loop_i = 0;
  std::string loop_emit = "json", loop_mode = "L", loop_out;
  auto* loop = app.add_subcommand("loop", "Build the spine loop of w_i");
  loop->add_option("--i", loop_i, "Index i >= 1")->required()->check(CLI::PositiveNumber);
  loop->add_option("--emit", loop_emit, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  loop->add_option("--mode", loop_mode, "K or L")->check(CLI::IsMember({"K", "L"}));
  loop->add_option("--out", loop_out, "Output file");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", va.suite, "square, rho, area or growth")
      ->required()
      ->check(CLI::IsMember({"square", "rho", "area", "growth"}));
  verify->add_option("--samples", va.samples, "Random samples (square, rho)");
  verify->add_option("--seed", va.seed, "RNG seed");
  verify->add_option("--m", va.m, "Rank of the smaller free group");
  verify->add_option("--n", va.n, "Rank of the larger free group");
  verify->add_option("--budget", va.budget, "Triangle budget (area)");
  verify->add_option("--i", va.i, "Largest power (growth)");
  verify->add_option("--max-vertices", va.max_vertices, "Complex size bound (area)");
  verify->add_option("--max-triangles", va.max_triangles, "Complex size bound (area)");
  verify->add_option("--max-length", va.max_length, "Loop length bound (area)");
  verify->add_flag("--timing", va.timing, "Include wall time in the report");
  verify->add_option("--out", va.out, "Output file");

  std::string input;
  int restrict_m = 2;
  std::string restrict_out;
  auto* restrict_cmd = app.add_subcommand("restrict", "Restrict a K_n vertex to K_m");
  restrict_cmd->add_option("--input", input, "Marked graph JSON file, or - for stdin")->required();
  restrict_cmd->add_option("--m", restrict_m, "Target rank")->required();
  restrict_cmd->add_option("--out", restrict_out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*word) return cmd_word(word_i, word_out);
    if (*loop) return cmd_loop(loop_i, loop_emit, loop_mode, loop_out);
    if (*verify) return cmd_verify(va);
    return cmd_restrict(input, restrict_m, restrict_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
