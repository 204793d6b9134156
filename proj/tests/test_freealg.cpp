#include <doctest.h>

#include <random>

#include "grasspan/poly.hpp"

using namespace freealg;

namespace {

Poly x(uint32_t p, Var v, Mode m = Mode::unitary) { return Poly::variable(p, m, v); }

// small random polynomials for the property tests
Poly random_poly(uint32_t p, std::mt19937_64& rng, Mode mode = Mode::unitary) {
  Poly f(p, mode);
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    int len = (mode == Mode::unitary ? 0 : 1) + static_cast<int>(rng() % 3);
    std::vector<Var> letters;
    for (int i = 0; i < len; ++i) letters.push_back(1 + static_cast<Var>(rng() % 3));
    f.add_term(Word(letters), 1 + static_cast<uint32_t>(rng() % (p - 1)));
  }
  return f;
}

}  // namespace

TEST_CASE("field arithmetic") {
  Field f3(3);
  CHECK(f3.inv(2) == 2);  // 2*2 = 4 = 1
  CHECK(f3.binomial(2, 1) == 2);
  // additivity coefficient at p=3, i=1: (i+1)^{-1} C(p-1, i) = 2*2 = 1
  CHECK(f3.mul(f3.inv(2), f3.binomial(2, 1)) == 1);
  CHECK_THROWS_AS(f3.inv(0), std::domain_error);
  CHECK_THROWS_AS(Field(4), std::invalid_argument);
  CHECK_THROWS_AS(Field(2), std::invalid_argument);
  Field f5(5);
  CHECK(f5.binomial(4, 2) == 1);  // 6 mod 5
  CHECK(f5.binomial(10, 5) == f5.mul(f5.binomial(2, 1), f5.binomial(0, 0)));  // Lucas

  Scalar s{2, 3};
  CHECK(mod_inverse(s).value == 2);
  CHECK(binomial_mod_p(2, 1, 3).value == 2);
}

TEST_CASE("poly_add basics") {
  uint32_t p = 3;
  CHECK((x(p, 1) + poly_neg(x(p, 1))).is_zero());
  Poly m = Poly::monomial(p, Mode::unitary, Word({1, 2}));
  Poly two = m + m;
  CHECK(two.coeff(Word({1, 2})) == 2);
  Poly s = x(p, 1) + x(p, 2);
  CHECK(s.term_count() == 2);
  CHECK_THROWS_AS(poly_add(x(3, 1), x(5, 1)), std::invalid_argument);
  CHECK_THROWS_AS(poly_add(x(3, 1), x(3, 1, Mode::nonunitary)), std::invalid_argument);
}

TEST_CASE("poly_mul basics") {
  uint32_t p = 3;
  CHECK(x(p, 1) * x(p, 2) == Poly::monomial(p, Mode::unitary, Word({1, 2})));
  Poly lhs = (x(p, 1) + x(p, 2)) * x(p, 1);
  Poly expect = Poly::monomial(p, Mode::unitary, Word({1, 1})) +
                Poly::monomial(p, Mode::unitary, Word({2, 1}));
  CHECK(lhs == expect);
  Poly f = x(p, 1) + Poly::constant(p, 2);
  CHECK(Poly::unit(p) * f == f);
}

TEST_CASE("commutator basics") {
  uint32_t p = 5;
  Poly c = commutator(x(p, 1), x(p, 2));
  CHECK(c.coeff(Word({1, 2})) == 1);
  CHECK(c.coeff(Word({2, 1})) == p - 1);
  CHECK(commutator(x(p, 1), x(p, 1)).is_zero());
  CHECK(commutator(x(p, 1) + x(p, 2), x(p, 2)) == commutator(x(p, 1), x(p, 2)));
  // antisymmetry
  CHECK(commutator(x(p, 2), x(p, 1)) == poly_neg(c));
}

TEST_CASE("substitute") {
  uint32_t p = 3;
  std::map<Var, Poly> sub;
  sub.emplace(1, x(p, 1) + x(p, 2));
  Poly sq = x(p, 1) * x(p, 1);
  Poly img = substitute(sq, sub);
  Poly expect = Poly::monomial(p, Mode::unitary, Word({1, 1})) +
                Poly::monomial(p, Mode::unitary, Word({1, 2})) +
                Poly::monomial(p, Mode::unitary, Word({2, 1})) +
                Poly::monomial(p, Mode::unitary, Word({2, 2}));
  CHECK(img == expect);

  std::map<Var, Poly> collapse;
  collapse.emplace(1, x(p, 2));
  CHECK(substitute(commutator(x(p, 1), x(p, 2)), collapse).is_zero());

  std::map<Var, Poly> tozero;
  tozero.emplace(1, Poly::zero(p, Mode::unitary));
  CHECK(substitute(x(p, 1), tozero).is_zero());

  // nonunitary mode demands explicit images
  Poly f = x(p, 1, Mode::nonunitary);
  CHECK_THROWS_AS(substitute(f, std::map<Var, Poly>{}), std::invalid_argument);
}

TEST_CASE("multidegree") {
  CHECK(multidegree(Word({1, 2, 1})).counts() ==
        std::map<Var, uint32_t>{{1, 2}, {2, 1}});
  uint32_t p = 3;
  Poly inhom = x(p, 1) + x(p, 1) * x(p, 1);
  CHECK(!is_multihomogeneous(inhom).has_value());
  Poly hom = Poly::monomial(p, Mode::unitary, Word({1, 2})) +
             Poly::monomial(p, Mode::unitary, Word({2, 1}));
  auto d = is_multihomogeneous(hom);
  REQUIRE(d.has_value());
  CHECK((*d)[1] == 1);
  CHECK((*d)[2] == 1);

  // additive under concatenation
  Word a({1, 2}), b({2, 3});
  CHECK(multidegree(a.concat(b)) == multidegree(a).plus(multidegree(b)));
}

TEST_CASE("mode rules") {
  uint32_t p = 3;
  CHECK_THROWS_AS(Poly::monomial(p, Mode::nonunitary, Word()), std::invalid_argument);
  Poly f = x(p, 1, Mode::nonunitary);
  Poly uf = f.as_unitary();
  CHECK(uf.mode() == Mode::unitary);
  CHECK(uf.as_nonunitary() == f);
  CHECK_THROWS_AS(Poly::unit(p).as_nonunitary(), std::invalid_argument);
}

TEST_CASE("ring axioms on random inputs") {
  std::mt19937_64 rng(20240811);
  uint32_t p = 3;
  for (int i = 0; i < 1000; ++i) {
    Poly f = random_poly(p, rng), g = random_poly(p, rng), h = random_poly(p, rng);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f + g) * h == f * h + g * h);
    CHECK(commutator(f, g) == poly_neg(commutator(g, f)));
  }
}

TEST_CASE("substitute is a homomorphism") {
  std::mt19937_64 rng(7);
  uint32_t p = 5;
  for (int i = 0; i < 200; ++i) {
    Poly f = random_poly(p, rng), g = random_poly(p, rng);
    std::map<Var, Poly> sub;
    for (Var v = 1; v <= 3; ++v) sub.emplace(v, random_poly(p, rng));
    CHECK(substitute(f * g, sub) == substitute(f, sub) * substitute(g, sub));
    CHECK(substitute(f + g, sub) == substitute(f, sub) + substitute(g, sub));
  }
}
