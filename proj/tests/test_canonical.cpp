#include <doctest.h>

#include <random>

#include "grasspan/canonical.hpp"

using namespace canonical;
using freealg::Mode;
using freealg::MultiDegree;
using freealg::Poly;
using freealg::Var;
using freealg::Word;

namespace {

Poly word(uint32_t p, std::vector<Var> letters) {
  return Poly::monomial(p, Mode::unitary, Word(std::move(letters)));
}

SSTerm term(std::vector<std::pair<Var, uint32_t>> beg, std::vector<std::pair<Var, uint32_t>> end) {
  SSTerm t;
  t.beg = std::move(beg);
  t.end = std::move(end);
  t.validate();
  return t;
}

MultiDegree deg(std::initializer_list<std::pair<Var, uint32_t>> counts) {
  MultiDegree d;
  for (auto& [v, c] : counts) d.bump(v, c);
  return d;
}

Poly random_poly(uint32_t p, std::mt19937_64& rng, int maxvar = 3, int maxlen = 4) {
  Poly f(p, Mode::unitary);
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    int len = static_cast<int>(rng() % (maxlen + 1));
    std::vector<Var> letters;
    for (int i = 0; i < len; ++i) letters.push_back(1 + static_cast<Var>(rng() % maxvar));
    f.add_term(Word(letters), 1 + static_cast<uint32_t>(rng() % (p - 1)));
  }
  return f;
}

}  // namespace

TEST_CASE("straighten one transposition") {
  uint32_t p = 3;
  SSForm nf = straighten_t3(word(p, {2, 1}));
  CHECK(nf.term_count() == 2);
  CHECK(nf.coeff(term({{1, 1}, {2, 1}}, {})) == 1);
  CHECK(nf.coeff(term({}, {{1, 0}, {2, 0}})) == p - 1);  // -[x1,x2]
}

TEST_CASE("straighten with a power: x2 x1^2") {
  // x2 x1^2 = x1^2 x2 - 2 [x1,x2] x1 modulo the triple-commutator ideal
  for (uint32_t p : {3u, 5u}) {
    SSForm nf = straighten_t3(word(p, {2, 1, 1}));
    CHECK(nf.term_count() == 2);
    CHECK(nf.coeff(term({{1, 2}, {2, 1}}, {})) == 1);
    CHECK(nf.coeff(term({}, {{1, 1}, {2, 0}})) == p - 2);
  }
}

TEST_CASE("product of overlapping brackets vanishes") {
  uint32_t p = 3;
  Poly b12 = freealg::commutator(Poly::variable(p, Mode::unitary, 1),
                                 Poly::variable(p, Mode::unitary, 2));
  Poly b13 = freealg::commutator(Poly::variable(p, Mode::unitary, 1),
                                 Poly::variable(p, Mode::unitary, 3));
  CHECK(straighten_t3(b12 * b13).is_zero());
  CHECK(straighten_t3(b12 * b12).is_zero());
}

TEST_CASE("bracket product sorts with the permutation sign") {
  uint32_t p = 3;
  auto br = [&](Var a, Var b) {
    return freealg::commutator(Poly::variable(p, Mode::unitary, a),
                               Poly::variable(p, Mode::unitary, b));
  };
  // [x1,x3][x2,x4] has interleaved indices: sorting (1,3,2,4) -> (1,2,3,4)
  // is one transposition
  SSForm nf = straighten_t3(br(1, 3) * br(2, 4));
  CHECK(nf.coeff(term({}, {{1, 0}, {2, 0}, {3, 0}, {4, 0}})) == p - 1);
  // already sorted pairs keep coefficient +1
  SSForm sorted = straighten_t3(br(1, 2) * br(3, 4));
  CHECK(sorted.coeff(term({}, {{1, 0}, {2, 0}, {3, 0}, {4, 0}})) == 1);
}

TEST_CASE("unit passes through") {
  uint32_t p = 3;
  SSForm nf = straighten_t3(Poly::unit(p));
  CHECK(nf.term_count() == 1);
  CHECK(nf.coeff(term({}, {})) == 1);
  CHECK(nf.embed(Mode::unitary) == Poly::unit(p));
}

TEST_CASE("reduce_tg0 drops exactly the out-of-bounds terms") {
  uint32_t p = 3;
  // x1^3 is in the p-th power ideal
  CHECK(straighten_tg0(word(p, {1, 1, 1})).is_zero());
  CHECK(reduce_tg0(straighten_t3(word(p, {1, 1, 1}))).is_zero());
  // the kappa product survives: end degrees equal p exactly
  Poly x1 = Poly::variable(p, Mode::unitary, 1);
  Poly x2 = Poly::variable(p, Mode::unitary, 2);
  Poly w1 = freealg::commutator(x1, x2) * x1 * x1 * x2 * x2;
  SSForm nf = straighten_tg0(w1);
  CHECK(nf.term_count() == 1);
  CHECK(nf.coeff(term({}, {{1, 2}, {2, 2}})) == 1);
  // beginning power at p dies
  CHECK(straighten_tg0(word(p, {1, 1, 1, 2, 2, 2})).is_zero());
}

TEST_CASE("straighten_tg0 equals reduce_tg0 after straighten_t3") {
  std::mt19937_64 rng(2024);
  for (uint32_t p : {3u, 5u}) {
    for (int i = 0; i < 200; ++i) {
      Poly f = random_poly(p, rng);
      CHECK(straighten_tg0(f) == reduce_tg0(straighten_t3(f)));
    }
  }
}

TEST_CASE("idempotence and linearity") {
  std::mt19937_64 rng(99);
  uint32_t p = 3;
  for (int i = 0; i < 200; ++i) {
    Poly f = random_poly(p, rng);
    Poly g = random_poly(p, rng);
    SSForm nf = straighten_t3(f);
    CHECK(straighten_t3(nf.embed(Mode::unitary)) == nf);
    // linearity
    SSForm sum = straighten_t3(f + g);
    SSForm ng = straighten_t3(g);
    SSForm expect(p);
    for (auto& [t, c] : nf.terms()) expect.add_term(t, c);
    for (auto& [t, c] : ng.terms()) expect.add_term(t, c);
    CHECK(sum == expect);
  }
}

TEST_CASE("degree preservation") {
  std::mt19937_64 rng(77);
  uint32_t p = 3;
  for (int i = 0; i < 100; ++i) {
    std::vector<Var> letters;
    int len = 1 + static_cast<int>(rng() % 5);
    for (int j = 0; j < len; ++j) letters.push_back(1 + static_cast<Var>(rng() % 3));
    Word w(letters);
    MultiDegree d = freealg::multidegree(w);
    SSForm nf = straighten_t3(Poly::monomial(p, Mode::unitary, w));
    for (auto& [t, c] : nf.terms()) CHECK(t.multidegree() == d);
  }
}

TEST_CASE("enumerate_ss and enumerate_bss") {
  uint32_t p = 3;
  auto d11 = deg({{1, 1}, {2, 1}});
  auto ss = enumerate_ss(d11);
  REQUIRE(ss.size() == 2);
  CHECK(ss[0] == term({{1, 1}, {2, 1}}, {}));
  CHECK(ss[1] == term({}, {{1, 0}, {2, 0}}));
  CHECK(enumerate_bss(d11, p).size() == 2);

  auto d33 = deg({{1, 3}, {2, 3}});
  auto bss33 = enumerate_bss(d33, p);
  REQUIRE(bss33.size() == 1);
  CHECK(bss33[0] == term({}, {{1, 2}, {2, 2}}));  // the kappa shape
  CHECK(enumerate_ss(d33).size() == 2);           // x1^3 x2^3 also present without bounds

  auto d111 = deg({{1, 1}, {2, 1}, {3, 1}});
  auto b = enumerate_bss(d111, p);
  REQUIRE(b.size() == 4);
  CHECK(b[0] == term({{1, 1}, {2, 1}, {3, 1}}, {}));
  CHECK(b[1] == term({{3, 1}}, {{1, 0}, {2, 0}}));
  CHECK(b[2] == term({{2, 1}}, {{1, 0}, {3, 0}}));
  CHECK(b[3] == term({{1, 1}}, {{2, 0}, {3, 0}}));
}

TEST_CASE("spss predicate") {
  uint32_t p = 3;
  CHECK(!is_spss(term({}, {{1, 2}, {2, 2}}), p));  // both end degrees are p
  CHECK(is_spss(term({}, {{1, 0}, {2, 0}}), p));   // degree 1 < p
  CHECK(!is_spss(term({{1, 1}, {2, 1}}, {}), p));  // empty end
  CHECK_THROWS_AS(is_spss(term({{1, 3}}, {}), p), std::invalid_argument);  // not in BSS
}

TEST_CASE("nf_vector") {
  uint32_t p = 3;
  Poly x1 = Poly::variable(p, Mode::unitary, 1);
  Poly x2 = Poly::variable(p, Mode::unitary, 2);
  Poly w1 = freealg::commutator(x1, x2) * x1 * x1 * x2 * x2;
  auto d33 = deg({{1, 3}, {2, 3}});
  auto v = nf_vector(w1, d33, Modulus::TG0);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == 1);

  auto d3 = deg({{1, 3}});
  auto vz = nf_vector(x1 * x1 * x1, d3, Modulus::TG0);
  CHECK(vz.empty());  // no BSS terms at x^p

  auto d11 = deg({{1, 1}, {2, 1}});
  auto vt = nf_vector(word(p, {2, 1}), d11, Modulus::T3);
  REQUIRE(vt.size() == 2);
  CHECK(vt[0] == 1);      // x1 x2
  CHECK(vt[1] == p - 1);  // -[x1,x2]

  CHECK_THROWS_AS(nf_vector(x1 + x1 * x2, d11, Modulus::T3), std::invalid_argument);
}

TEST_CASE("embedding BSS terms straightens back to themselves") {
  uint32_t p = 3;
  for (auto& d : {deg({{1, 2}, {2, 2}}), deg({{1, 3}, {2, 2}}), deg({{1, 1}, {2, 2}, {3, 1}})}) {
    for (auto& t : enumerate_ss(d)) {
      SSForm nf = straighten_t3(t.embed(p, Mode::unitary));
      CHECK(nf.term_count() == 1);
      CHECK(nf.coeff(t) == 1);
    }
  }
}
