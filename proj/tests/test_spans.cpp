#include <doctest.h>

#include "grasspan/io.hpp"
#include "grasspan/spans.hpp"

using namespace spans;
using freealg::Mode;
using freealg::MultiDegree;
using freealg::Poly;
using freealg::Var;
using freealg::Word;

namespace {

MultiDegree deg(std::initializer_list<std::pair<Var, uint32_t>> counts) {
  MultiDegree d;
  for (auto& [v, c] : counts) d.bump(v, c);
  return d;
}

Poly parse(const std::string& s, uint32_t p = 3) {
  return io::parse_poly(s, p, Mode::unitary);
}

// certificate check: the stated combination must reproduce the target in
// the coordinates the query ran in
bool certificate_reconstructs(const Poly& f, const MemberResult& res, uint32_t p) {
  Poly sum(p, Mode::unitary);
  for (auto& comp : res.components)
    for (auto& [c, descr] : comp.combination)
      sum = sum + freealg::poly_scale(io::parse_poly(descr, p, Mode::unitary), c);
  Poly diff = f.as_unitary() - sum;
  switch (res.coords) {
    case Coords::free_words:
      return diff.is_zero();
    case Coords::ss:
      return canonical::straighten_t3(diff).is_zero();
    case Coords::bss:
      return canonical::straighten_tg0(diff).is_zero();
  }
  return false;
}

}  // namespace

TEST_CASE("component_words") {
  auto w11 = component_words(deg({{1, 1}, {2, 1}}));
  REQUIRE(w11.size() == 2);
  CHECK(w11[0] == Word({1, 2}));
  CHECK(w11[1] == Word({2, 1}));
  CHECK(component_words(deg({{1, 2}, {2, 1}})).size() == 3);
  CHECK(component_words(deg({{1, 3}, {2, 3}})).size() == 20);

  Budget tiny;
  tiny.max_words = 10;
  CHECK_THROWS_AS(component_words(deg({{1, 3}, {2, 3}}), tiny), BudgetError);
}

TEST_CASE("rank and solve over F_p") {
  uint32_t p = 3;
  std::vector<std::vector<uint32_t>> id3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(rank_f_p(p, id3) == 3);
  std::vector<std::vector<uint32_t>> dep = {{1, 2}, {2, 4 % 3}};
  CHECK(rank_f_p(p, dep) == 1);

  std::vector<std::vector<uint32_t>> cols = {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}};
  std::vector<uint32_t> target = {1, 1, 2};  // col0 + col1
  auto sol = solve_in_span(p, cols, target);
  REQUIRE(sol.has_value());
  // verify the combination reproduces the target
  std::vector<uint32_t> acc(3, 0);
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < 3; ++i) acc[i] = (acc[i] + (*sol)[j] * cols[j][i]) % p;
  CHECK(acc == target);

  CHECK(!solve_in_span(p, {{1, 0, 0}}, {0, 1, 0}).has_value());
}

TEST_CASE("space spec parsing") {
  uint32_t p = 3;
  SpaceSpec s = SpaceSpec::parse("S2+TG0", p);
  REQUIRE(s.summands.size() == 2);
  CHECK(s.summands[0].kind == Summand::Kind::s2);
  CHECK(s.summands[1].kind == Summand::Kind::tg0);
  CHECK(s.to_string() == "S2+TG0");

  SpaceSpec w = SpaceSpec::parse("s2 + w2 + tg0", p);
  CHECK(w.summands[1].kind == Summand::Kind::w_family);
  CHECK(w.summands[1].bound == 2);

  SpaceSpec ti = SpaceSpec::parse("TIdeal(x1^3)+T3", p);
  CHECK(ti.summands[0].kind == Summand::Kind::t_ideal);
  CHECK(!ti.summands[0].gen->is_zero());

  CHECK(SpaceSpec::parse("X0PW2", p).summands[0].bound == 2);
  CHECK_THROWS_AS(SpaceSpec::parse("S2+banana", p), std::invalid_argument);
}

TEST_CASE("t3 span rank at the multilinear degree") {
  uint32_t p = 3;
  auto rep = instance_span(SpaceSpec::parse("T3", p), deg({{1, 1}, {2, 1}, {3, 1}}), p,
                           Coords::free_words);
  CHECK(rep.dim == 6);
  CHECK(rep.rank == 2);  // six words minus four spanning-set elements
  CHECK(rep.exact);
}

TEST_CASE("s2 span rank at the bilinear degree") {
  uint32_t p = 3;
  auto rep = instance_span(SpaceSpec::parse("TSpace([x1,x2])", p), deg({{1, 1}, {2, 1}}), p,
                           Coords::free_words);
  CHECK(rep.rank == 1);
  CHECK(rep.exact);  // the generator is multilinear
}

TEST_CASE("member: bracket-power element of S2 + T3 with certificate") {
  uint32_t p = 3;
  Poly f = parse("[x1,x2]*x1");
  auto res = member(f, SpaceSpec::parse("S2+T3", p));
  CHECK(res.member);
  CHECK(res.exact);
  CHECK(res.coords == Coords::ss);
  CHECK(certificate_reconstructs(f, res, p));
}

TEST_CASE("member: generator instance of T3") {
  uint32_t p = 3;
  Poly f = parse("[[x1,x2],x3]");
  auto res = member(f, SpaceSpec::parse("T3", p));
  CHECK(res.member);
  CHECK(res.exact);
  CHECK(certificate_reconstructs(f, res, p));
}

TEST_CASE("member: the flagship non-membership") {
  uint32_t p = 3;
  Poly w1 = parse("[x1,x2]*x1^2*x2^2");
  auto res = member(w1, SpaceSpec::parse("S2+TG0", p));
  CHECK(!res.member);
  CHECK(res.exact);
  CHECK(res.coords == Coords::bss);
  REQUIRE(res.components.size() == 1);
  CHECK(res.components[0].dim == 1);
  CHECK(res.components[0].rank == 0);  // every S2 instance reduces to zero here
  CHECK(!res.components[0].residual.empty());
}

TEST_CASE("member: x1^p lies in TG0") {
  uint32_t p = 3;
  auto res = member(parse("x1^3"), SpaceSpec::parse("TG0", p));
  CHECK(res.member);
  CHECK(res.exact);

  // in free-word coordinates the same query runs against the instance span
  auto res2 = member(parse("x1^3"), SpaceSpec::parse("TG0", p), Budget(), Coords::free_words);
  CHECK(res2.member);
  CHECK(certificate_reconstructs(parse("x1^3"), res2, p));
}

TEST_CASE("member decomposes inhomogeneous input") {
  uint32_t p = 3;
  Poly f = parse("[x1,x2] + [[x1,x2],x3]");
  auto res = member(f, SpaceSpec::parse("S2+T3", p));
  CHECK(res.member);
  CHECK(res.components.size() == 2);
  CHECK(certificate_reconstructs(f, res, p));
}

TEST_CASE("member: zero polynomial is everywhere") {
  uint32_t p = 3;
  auto res = member(Poly::zero(p, Mode::unitary), SpaceSpec::parse("S2", p));
  CHECK(res.member);
  CHECK(res.components.empty());
}

TEST_CASE("heuristic flags") {
  uint32_t p = 3;
  auto res = member(parse("x1^3"), SpaceSpec::parse("TIdeal(x1^3)", p));
  CHECK(res.member);
  CHECK(!res.exact);  // non-multilinear generator without absorbing coordinates

  auto w1q = member(parse("[x1,x2]*x1^2*x2^2"), SpaceSpec::parse("W1+S2+TG0", p));
  CHECK(w1q.member);
  CHECK(w1q.exact);  // the W family is reducible when S2 and TG0 ride along
}

TEST_CASE("monotonicity: more sum terms never shrink a heuristic span") {
  uint32_t p = 3;
  auto d = deg({{1, 2}, {2, 1}});
  size_t prev = 0;
  for (uint32_t k = 1; k <= 3; ++k) {
    Budget b;
    b.sum_terms = k;
    auto rep = instance_span(SpaceSpec::parse("TG0", p), d, p, Coords::free_words, b);
    CHECK(rep.rank >= prev);
    prev = rep.rank;
  }
}

TEST_CASE("coords validation") {
  uint32_t p = 3;
  CHECK_THROWS_AS(member(parse("x1"), SpaceSpec::parse("S2", p), Budget(), Coords::bss),
                  std::invalid_argument);
  CHECK_THROWS_AS(member(parse("x1"), SpaceSpec::parse("S2", p), Budget(), Coords::ss),
                  std::invalid_argument);
}

TEST_CASE("budget refusal surfaces as BudgetError") {
  uint32_t p = 3;
  Budget b;
  b.max_instances = 5;
  CHECK_THROWS_AS(member(parse("[x1,x2]*x1^2*x2^2"), SpaceSpec::parse("S2+TG0", p), b),
                  BudgetError);
}
