#pragma once

// Words in a free group F_n over the ordered basis a_1..a_n, endomorphisms
// given by generator images, and elementary transvections.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace outspine {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A basis letter a_k (value k) or its inverse (value -k); k >= 1.
struct Letter {
  int value = 1;

  constexpr int generator() const { return value < 0 ? -value : value; }
  constexpr int sign() const { return value < 0 ? -1 : 1; }
  constexpr Letter inverse() const { return Letter{-value}; }

  friend constexpr auto operator<=>(Letter, Letter) = default;
};

constexpr Letter gen(int k, int sign = 1) { return Letter{sign * k}; }

/// A freely reduced word. Every constructor path goes through reduction.
class Word {
 public:
  Word() = default;

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> letters);
  static Word reduce(std::initializer_list<Letter> letters) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()));
  }
  static Word letter(Letter x) { return reduce({x}); }

  /// Parses "a1a1A2" (capital = inverse). Throws Error on malformed input.
  static Word parse(std::string_view text);
  std::string str() const;

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  int max_generator() const;

  Word inverse() const;
  Word power(int exponent) const;

  /// Conjugate-free core: returns (p, r) with *this = p r p^-1, r cyclically
  /// reduced.
  std::pair<Word, Word> cyclic_decomposition() const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

inline Word reduce(std::span<const Letter> letters) {
  return Word::reduce(letters);
}

/// Endomorphism of F_n recorded by the images of a_1..a_n.
class Endomorphism {
 public:
  Endomorphism(int rank, std::vector<Word> images);

  static Endomorphism identity(int rank);
  static Endomorphism parse(int rank, const std::vector<std::string>& images);

  int rank() const { return rank_; }
  /// Image of a_k, 1-based.
  const Word& image(int k) const { return images_.at(k - 1); }
  const std::vector<Word>& images() const { return images_; }
  std::vector<std::string> str() const;

  /// Substitutes images letter by letter and reduces.
  Word apply(const Word& w) const;

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  int rank_;
  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
};

inline Word apply(const Endomorphism& f, const Word& w) { return f.apply(w); }

/// f∘g: g is applied first.
Endomorphism compose(const Endomorphism& f, const Endomorphism& g);

enum class Side { left, right };

/// λ_ij^e (left) sends a_i to a_j^e a_i; ρ_ij^e (right) sends a_i to a_i a_j^e.
struct Transvection {
  Side side = Side::left;
  int target = 1;
  int multiplier = 2;
  int exponent = 1;

  Transvection inverse() const {
    return Transvection{side, target, multiplier, -exponent};
  }
  void validate(int rank) const;
  /// "L21", "R12^-1".
  std::string str() const;
  static Transvection parse(std::string_view text);

  friend bool operator==(const Transvection&, const Transvection&) = default;
};

Endomorphism transvection_endo(const Transvection& t, int rank);

/// t[0]∘t[1]∘...∘t[k-1], i.e. the last transvection acts first.
Endomorphism compose_all(std::span<const Transvection> ts, int rank);

/// The rank-3 automorphisms T = λ21∘ρ12, A = λ31, B = ρ32.
Endomorphism automorphism_T();
Endomorphism automorphism_A();
Endomorphism automorphism_B();

/// Transvection expansion of w_i = T^i A T^-i B T^i A^-1 T^-i B^-1, with
/// T = λ21∘ρ12 and T^-1 = ρ12^-1∘λ21^-1. Length 8i+4.
std::vector<Transvection> expand_w(int i);

/// Finds c with u[k] = c v[k] c^-1 for every k, if one exists.
std::optional<Word> conjugator(std::span<const Word> u, std::span<const Word> v);

/// Conjugator c with f(a_k) = c a_k c^-1 for all k, when f is inner.
std::optional<Word> is_inner(const Endomorphism& f);

}  // namespace outspine
