#include "outspine/freegroup.hpp"

#include <algorithm>
#include <cctype>

namespace outspine {

namespace {

// Appends x to a reduced buffer, cancelling against the tail.
void push_reduced(std::vector<Letter>& out, Letter x) {
  if (!out.empty() && out.back() == x.inverse()) {
    out.pop_back();
  } else {
    out.push_back(x);
  }
}

}  // namespace

Word Word::reduce(std::span<const Letter> letters) {
  Word w;
  w.letters_.reserve(letters.size());
  for (Letter x : letters) {
    if (x.value == 0) throw Error("letter index must be nonzero");
    push_reduced(w.letters_, x);
  }
  return w;
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> raw;
  std::size_t i = 0;
  if (text == "1" || text == "e") return Word{};
  while (i < text.size()) {
    char c = text[i];
    if (c != 'a' && c != 'A') {
      throw Error("malformed word '" + std::string(text) + "' at offset " +
                  std::to_string(i));
    }
    std::size_t j = i + 1;
    int k = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      k = k * 10 + (text[j] - '0');
      ++j;
    }
    if (j == i + 1 || k == 0) {
      throw Error("malformed word '" + std::string(text) + "' at offset " +
                  std::to_string(i));
    }
    raw.push_back(Letter{c == 'a' ? k : -k});
    i = j;
  }
  return reduce(raw);
}

std::string Word::str() const {
  std::string s;
  for (Letter x : letters_) {
    s += x.sign() > 0 ? 'a' : 'A';
    s += std::to_string(x.generator());
  }
  return s;
}

int Word::max_generator() const {
  int m = 0;
  for (Letter x : letters_) m = std::max(m, x.generator());
  return m;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(it->inverse());
  }
  return w;
}

Word Word::power(int exponent) const {
  const Word base = exponent < 0 ? inverse() : *this;
  Word w;
  for (int i = 0; i < std::abs(exponent); ++i) w = w * base;
  return w;
}

std::pair<Word, Word> Word::cyclic_decomposition() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == letters_[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  Word p, r;
  p.letters_.assign(letters_.begin(), letters_.begin() + lo);
  r.letters_.assign(letters_.begin() + lo, letters_.begin() + hi);
  return {p, r};
}

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  w.letters_.reserve(a.size() + b.size());
  for (Letter x : b.letters_) push_reduced(w.letters_, x);
  return w;
}

Endomorphism::Endomorphism(int rank, std::vector<Word> images)
    : rank_(rank), images_(std::move(images)) {
  if (rank_ < 1) throw Error("rank must be positive");
  if (static_cast<int>(images_.size()) != rank_) {
    throw Error("endomorphism of rank " + std::to_string(rank_) + " needs " +
                std::to_string(rank_) + " images, got " +
                std::to_string(images_.size()));
  }
  inverse_images_.reserve(images_.size());
  for (const Word& w : images_) {
    if (w.max_generator() > rank_) {
      throw Error("image " + w.str() + " exceeds rank " + std::to_string(rank_));
    }
    inverse_images_.push_back(w.inverse());
  }
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> images;
  for (int k = 1; k <= rank; ++k) images.push_back(Word::letter(gen(k)));
  return Endomorphism(rank, std::move(images));
}

Endomorphism Endomorphism::parse(int rank, const std::vector<std::string>& images) {
  std::vector<Word> words;
  for (const auto& s : images) words.push_back(Word::parse(s));
  return Endomorphism(rank, std::move(words));
}

std::vector<std::string> Endomorphism::str() const {
  std::vector<std::string> out;
  for (const Word& w : images_) out.push_back(w.str());
  return out;
}

Word Endomorphism::apply(const Word& w) const {
  if (w.max_generator() > rank_) {
    throw Error("word " + w.str() + " exceeds endomorphism rank " +
                std::to_string(rank_));
  }
  std::vector<Letter> out;
  for (Letter x : w.letters()) {
    const Word& img = x.sign() > 0 ? images_[x.generator() - 1]
                                   : inverse_images_[x.generator() - 1];
    for (Letter y : img.letters()) push_reduced(out, y);
  }
  return Word::reduce(out);
}

Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  if (f.rank() != g.rank()) {
    throw Error("rank mismatch in compose: " + std::to_string(f.rank()) +
                " vs " + std::to_string(g.rank()));
  }
  std::vector<Word> images;
  images.reserve(g.rank());
  for (const Word& w : g.images()) images.push_back(f.apply(w));
  return Endomorphism(f.rank(), std::move(images));
}

void Transvection::validate(int rank) const {
  if (target == multiplier) throw Error("transvection needs distinct indices");
  if (target < 1 || multiplier < 1 || target > rank || multiplier > rank) {
    throw Error("transvection " + str() + " outside rank " + std::to_string(rank));
  }
  if (exponent != 1 && exponent != -1) throw Error("transvection exponent must be ±1");
}

std::string Transvection::str() const {
  std::string s = side == Side::left ? "L" : "R";
  s += std::to_string(target);
  s += std::to_string(multiplier);
  if (exponent < 0) s += "^-1";
  return s;
}

Transvection Transvection::parse(std::string_view text) {
  // Only single-digit indices, matching str() for ranks below 10.
  Transvection t;
  if (text.size() < 3 || (text[0] != 'L' && text[0] != 'R') ||
      !std::isdigit(static_cast<unsigned char>(text[1])) ||
      !std::isdigit(static_cast<unsigned char>(text[2]))) {
    throw Error("malformed transvection '" + std::string(text) + "'");
  }
  t.side = text[0] == 'L' ? Side::left : Side::right;
  t.target = text[1] - '0';
  t.multiplier = text[2] - '0';
  auto rest = text.substr(3);
  if (rest.empty()) {
    t.exponent = 1;
  } else if (rest == "^-1") {
    t.exponent = -1;
  } else {
    throw Error("malformed transvection '" + std::string(text) + "'");
  }
  return t;
}

Endomorphism transvection_endo(const Transvection& t, int rank) {
  t.validate(rank);
  std::vector<Word> images;
  for (int k = 1; k <= rank; ++k) images.push_back(Word::letter(gen(k)));
  const Letter ai = gen(t.target);
  const Letter aj = gen(t.multiplier, t.exponent);
  images[t.target - 1] =
      t.side == Side::left ? Word::reduce({aj, ai}) : Word::reduce({ai, aj});
  return Endomorphism(rank, std::move(images));
}

Endomorphism compose_all(std::span<const Transvection> ts, int rank) {
  Endomorphism acc = Endomorphism::identity(rank);
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    acc = compose(transvection_endo(*it, rank), acc);
  }
  return acc;
}

Endomorphism automorphism_T() {
  return Endomorphism::parse(3, {"a1a1a2", "a1a2", "a3"});
}
Endomorphism automorphism_A() {
  return Endomorphism::parse(3, {"a1", "a2", "a1a3"});
}
Endomorphism automorphism_B() {
  return Endomorphism::parse(3, {"a1", "a2", "a3a2"});
}

std::vector<Transvection> expand_w(int i) {
  if (i < 1) throw Error("expand_w needs i >= 1");
  const Transvection l21{Side::left, 2, 1, 1};
  const Transvection r12{Side::right, 1, 2, 1};
  const Transvection a{Side::left, 3, 1, 1};
  const Transvection b{Side::right, 3, 2, 1};

  std::vector<Transvection> seq;
  seq.reserve(8 * i + 4);
  auto t_pow = [&](int sign) {
    for (int k = 0; k < i; ++k) {
      if (sign > 0) {
        seq.push_back(l21);
        seq.push_back(r12);
      } else {
        seq.push_back(r12.inverse());
        seq.push_back(l21.inverse());
      }
    }
  };
  t_pow(+1);
  seq.push_back(a);
  t_pow(-1);
  seq.push_back(b);
  t_pow(+1);
  seq.push_back(a.inverse());
  t_pow(-1);
  seq.push_back(b.inverse());
  return seq;
}

std::optional<Word> conjugator(std::span<const Word> u, std::span<const Word> v) {
  if (u.size() != v.size()) return std::nullopt;
  std::size_t anchor = v.size();
  std::size_t total = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    total += u[k].size() + v[k].size();
    if (anchor == v.size() && !v[k].empty()) anchor = k;
  }
  auto works = [&](const Word& c) {
    const Word ci = c.inverse();
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (u[k].size() % 2 != v[k].size() % 2) return false;
      if (c * v[k] * ci != u[k]) return false;
    }
    return true;
  };
  if (anchor == v.size()) {
    return works(Word{}) ? std::optional<Word>(Word{}) : std::nullopt;
  }

  auto [p, r] = v[anchor].cyclic_decomposition();
  auto [q, s] = u[anchor].cyclic_decomposition();
  if (r.size() != s.size()) return std::nullopt;
  const auto& rl = r.letters();
  const auto& sl = s.letters();
  const std::size_t len = rl.size();

  std::optional<std::size_t> shift;
  for (std::size_t i = 0; i < len && !shift; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < len && match; ++j) match = rl[(i + j) % len] == sl[j];
    if (match) shift = i;
  }
  if (!shift) return std::nullopt;

  // r = r1 r2 and s = r2 r1 = r1^-1 r r1.
  const Word r1 = Word::reduce(std::span<const Letter>(rl.data(), *shift));
  std::size_t period = len;
  for (std::size_t d = 1; d < len; ++d) {
    if (len % d != 0) continue;
    bool periodic = true;
    for (std::size_t j = d; j < len && periodic; ++j) periodic = rl[j] == rl[j - d];
    if (periodic) {
      period = d;
      break;
    }
  }
  const Word root = Word::reduce(std::span<const Letter>(rl.data(), period));
  const Word head = q * r1.inverse();
  const Word tail = p.inverse();

  // The centralizer coordinate is bounded by the total input length whenever
  // the tuple is not contained in a cyclic subgroup.
  const int bound = static_cast<int>(2 * total + 4);
  const Word root_inv = root.inverse();
  Word up = head;
  Word down = head;
  if (Word c = head * tail; works(c)) return c;
  for (int j = 1; j <= bound; ++j) {
    up = up * root;
    down = down * root_inv;
    if (Word c = up * tail; works(c)) return c;
    if (Word c = down * tail; works(c)) return c;
  }
  return std::nullopt;
}

std::optional<Word> is_inner(const Endomorphism& f) {
  const Endomorphism id = Endomorphism::identity(f.rank());
  return conjugator(f.images(), id.images());
}

}  // namespace outspine
