#include "doctest.h"

#include <cmath>
#include <random>

#include "outspine/freegroup.hpp"

using namespace outspine;

namespace {

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::vector<Letter> raw;
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    int k = 1 + static_cast<int>(rng() % rank);
    raw.push_back(gen(k, rng() % 2 ? 1 : -1));
  }
  return Word::reduce(raw);
}

Endomorphism random_endo(std::mt19937_64& rng, int rank) {
  std::vector<Word> images;
  for (int k = 0; k < rank; ++k) images.push_back(random_word(rng, rank, 4));
  return Endomorphism(rank, images);
}

Transvection random_transvection(std::mt19937_64& rng, int rank) {
  Transvection t;
  t.side = rng() % 2 ? Side::left : Side::right;
  t.target = 1 + static_cast<int>(rng() % rank);
  do {
    t.multiplier = 1 + static_cast<int>(rng() % rank);
  } while (t.multiplier == t.target);
  t.exponent = rng() % 2 ? 1 : -1;
  return t;
}

Endomorphism rho(int i, int j, int e = 1) {
  return transvection_endo(Transvection{Side::right, i, j, e}, 3);
}
Endomorphism lambda(int i, int j, int e = 1) {
  return transvection_endo(Transvection{Side::left, i, j, e}, 3);
}

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(Word::reduce({gen(1), gen(1, -1)}).empty());
  CHECK(Word::reduce({gen(1), gen(2), gen(2, -1), gen(3)}) == Word::parse("a1a3"));
  CHECK(Word::reduce({gen(1), gen(1), gen(2)}).size() == 3);
  CHECK(Word::reduce({gen(1), gen(2), gen(3), gen(3, -1), gen(2, -1), gen(1, -1)}).empty());
}

TEST_CASE("word parsing and printing round-trip") {
  CHECK(Word::parse("A3a1").str() == "A3a1");
  CHECK(Word::parse("a1A1").empty());
  CHECK(Word::parse("1").empty());
  CHECK(Word::parse("a12A2").letters().front() == gen(12));
  CHECK_THROWS_AS(Word::parse("b1"), Error);
  CHECK_THROWS_AS(Word::parse("a0"), Error);
}

TEST_CASE("reduce is idempotent and apply is a homomorphism") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Letter> raw;
    for (int i = 0; i < 12; ++i) raw.push_back(gen(1 + rng() % 3, rng() % 2 ? 1 : -1));
    Word once = Word::reduce(raw);
    CHECK(Word::reduce(once.letters()) == once);

    Endomorphism f = random_endo(rng, 3);
    Word u = random_word(rng, 3, 6), v = random_word(rng, 3, 6);
    CHECK(apply(f, u * v) == apply(f, u) * apply(f, v));
  }
}

TEST_CASE("the displayed automorphisms") {
  const Endomorphism T = automorphism_T();
  CHECK(apply(T, Word::parse("a1")) == Word::parse("a1a1a2"));
  CHECK(apply(automorphism_A(), Word::parse("a3")) == Word::parse("a1a3"));
  CHECK(apply(automorphism_B(), Word::parse("a3")) == Word::parse("a3a2"));
  Word w = Word::parse("a2A3a1");
  CHECK(apply(Endomorphism::identity(3), w) == w);
  CHECK_THROWS_AS(apply(Endomorphism::identity(2), Word::parse("a3")), Error);
}

TEST_CASE("composition applies the right factor first") {
  CHECK(compose(lambda(2, 1), rho(1, 2)) == Endomorphism::parse(3, {"a1a1a2", "a1a2", "a3"}));
  const Endomorphism T = automorphism_T();
  CHECK(compose(T, Endomorphism::identity(3)) == T);
  const Endomorphism AB = compose(automorphism_A(), automorphism_B());
  CHECK(AB == compose(automorphism_B(), automorphism_A()));
  CHECK(AB == Endomorphism::parse(3, {"a1", "a2", "a1a3a2"}));
  CHECK_THROWS_AS(compose(T, Endomorphism::identity(2)), Error);
}

TEST_CASE("composition is associative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Endomorphism f = random_endo(rng, 3), g = random_endo(rng, 3), h = random_endo(rng, 3);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
  }
}

TEST_CASE("transvections and their inverses") {
  CHECK(lambda(3, 1) == automorphism_A());
  CHECK(rho(3, 2) == automorphism_B());
  CHECK(compose(rho(1, 2), rho(1, 2, -1)) == Endomorphism::identity(3));
  CHECK_THROWS_AS(Transvection({Side::left, 2, 2, 1}).validate(3), Error);
  CHECK_THROWS_AS(Transvection({Side::left, 4, 2, 1}).validate(3), Error);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Transvection t = random_transvection(rng, 4);
    CHECK(compose(transvection_endo(t, 4), transvection_endo(t.inverse(), 4)) ==
          Endomorphism::identity(4));
    CHECK(Transvection::parse(t.str()) == t);
  }
}

TEST_CASE("expand_w length and closure") {
  CHECK(expand_w(1).size() == 12);
  CHECK(expand_w(5).size() == 44);
  for (int i = 1; i <= 6; ++i) {
    auto ts = expand_w(i);
    CHECK(ts.size() == static_cast<std::size_t>(8 * i + 4));
    CHECK(compose_all(ts, 3) == Endomorphism::identity(3));
  }
  CHECK_THROWS_AS(expand_w(0), Error);
}

TEST_CASE("expand_w(3) matches a direct evaluation of the commutator") {
  // Independent evaluation: build T^3 and its inverse from images, not transvections.
  const Endomorphism T = automorphism_T();
  const Endomorphism Tinv = Endomorphism::parse(3, {"a1A2", "a2A1a2", "a3"});
  CHECK(compose(T, Tinv) == Endomorphism::identity(3));
  Endomorphism T3 = compose(T, compose(T, T));
  Endomorphism T3inv = compose(Tinv, compose(Tinv, Tinv));
  Endomorphism Ainv = lambda(3, 1, -1), Binv = rho(3, 2, -1);
  Endomorphism w = T3;
  for (const Endomorphism& f : {automorphism_A(), T3inv, automorphism_B(), T3, Ainv, T3inv, Binv}) {
    w = compose(w, f);
  }
  CHECK(w == Endomorphism::identity(3));
  CHECK(compose_all(expand_w(3), 3) == w);
}

TEST_CASE("is_inner finds conjugators") {
  const Endomorphism conj = Endomorphism::parse(3, {"a1", "a1a2A1", "a1a3A1"});
  auto c = is_inner(conj);
  REQUIRE(c);
  CHECK(*c == Word::parse("a1"));
  auto e = is_inner(Endomorphism::identity(3));
  REQUIRE(e);
  CHECK(e->empty());
  CHECK_FALSE(is_inner(automorphism_T()));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Word cw = random_word(rng, 3, 8);
    std::vector<Word> images;
    for (int k = 1; k <= 3; ++k) images.push_back(cw * Word::letter(gen(k)) * cw.inverse());
    auto found = is_inner(Endomorphism(3, images));
    REQUIRE(found);
    CHECK(*found == cw);
  }
}

TEST_CASE("conjugator handles proper powers and rejects mismatches") {
  std::vector<Word> u = {Word::parse("a2a1a1A2"), Word::parse("a2a3A2")};
  std::vector<Word> v = {Word::parse("a1a1"), Word::parse("a3")};
  auto c = conjugator(u, v);
  REQUIRE(c);
  CHECK(*c == Word::parse("a2"));
  std::vector<Word> bad = {Word::parse("a1a1"), Word::parse("a2")};
  CHECK_FALSE(conjugator(u, bad));
}

TEST_CASE("letter counts of T^i follow the linear recurrence") {
  const Endomorphism T = automorphism_T();
  Word a1 = Word::parse("a1"), a2 = Word::parse("a2");
  std::vector<double> p{1}, q{1};
  for (int i = 0; i < 12; ++i) {
    a1 = apply(T, a1);
    a2 = apply(T, a2);
    CHECK(a1.size() == static_cast<std::size_t>(2 * p.back() + q.back()));
    CHECK(a2.size() == static_cast<std::size_t>(p.back() + q.back()));
    double np = 2 * p.back() + q.back(), nq = p.back() + q.back();
    p.push_back(np);
    q.push_back(nq);
  }
  // Leading eigenvalue of ((2,1),(1,1)) by power iteration.
  double x = 1, y = 0, lambda_est = 0;
  for (int it = 0; it < 100; ++it) {
    double nx = 2 * x + y, ny = x + y;
    lambda_est = nx / x;
    x = nx / nx;
    y = ny / nx;
  }
  CHECK(p.back() / p[p.size() - 2] == doctest::Approx(lambda_est).epsilon(1e-6));
  CHECK(lambda_est == doctest::Approx(2.618034).epsilon(1e-6));
}
