#ifndef GRASSPAN_SPANS_HPP
#define GRASSPAN_SPANS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grasspan/canonical.hpp"
#include "grasspan/poly.hpp"

namespace spans {

using freealg::MultiDegree;
using freealg::Poly;
using freealg::Var;
using freealg::Word;

// Raised when a component or instance enumeration exceeds the configured
// size; callers see a refusal, never a silent truncation.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct Budget {
  size_t max_words = 500000;
  size_t max_instances = 200000;
  uint32_t sum_terms = 3;  // monomials per substitution image in heuristic spans
};

// One summand of a T-space/T-ideal sum.
struct Summand {
  enum class Kind { t3, s2, tg0, w_family, x0p_w_family, t_ideal, t_space };
  Kind kind;
  uint32_t bound = 0;        // family index bound for w_family / x0p_w_family
  std::optional<Poly> gen;   // generator for t_ideal / t_space
  std::string to_string() const;
};

struct SpaceSpec {
  std::vector<Summand> summands;

  bool has(Summand::Kind k) const {
    for (auto& s : summands)
      if (s.kind == k) return true;
    return false;
  }

  // Grammar: '+'-separated tokens T3 | S2 | TG0 | W<m> | X0PW<m> |
  // TIdeal(expr) | TSpace(expr). Case-insensitive keywords.
  static SpaceSpec parse(const std::string& text, uint32_t p);
  std::string to_string() const;
};

// All words of exactly multidegree d, ordered lexicographically (equal
// length makes that the canonical term order).
std::vector<Word> component_words(const MultiDegree& d, const Budget& b = Budget());

// --- exact linear algebra over F_p ---------------------------------------

// Incremental column-space accumulator with certificate tracking. Columns
// are added one at a time; pivots are kept fully reduced so membership of
// a target and the witnessing combination drop out of one reduction pass.
class FpSpan {
 public:
  FpSpan(uint32_t p, size_t dim);

  // Returns true when the column enlarged the span. `tag` identifies the
  // column in certificates.
  bool add(const std::vector<uint32_t>& col, size_t tag);

  size_t rank() const { return rows_.size(); }
  size_t dim() const { return dim_; }

  // Combination of tagged columns reproducing `target`, if it lies in the
  // span.
  std::optional<std::vector<std::pair<size_t, uint32_t>>> solve(
      const std::vector<uint32_t>& target) const;

  std::vector<uint32_t> reduce(const std::vector<uint32_t>& target) const;

 private:
  freealg::Field field_;
  size_t dim_;
  std::vector<std::vector<uint32_t>> rows_;      // reduced, leading entry 1
  std::vector<size_t> lead_;                     // leading position per row
  std::vector<std::map<size_t, uint32_t>> combos_;  // row = sum of tagged columns
};

// Exact rank of a column matrix over F_p.
size_t rank_f_p(uint32_t p, const std::vector<std::vector<uint32_t>>& columns);

// Coefficients expressing target in the column span, if any.
std::optional<std::vector<uint32_t>> solve_in_span(uint32_t p,
                                                   const std::vector<std::vector<uint32_t>>& columns,
                                                   const std::vector<uint32_t>& target);

// --- instance enumeration / membership -----------------------------------

enum class Coords { free_words, ss, bss };

struct Instance {
  Poly poly;
  std::string descr;  // parseable expression reproducing the polynomial
};

// Streams the multidegree-d instances of one summand, in a deterministic
// order, honouring coordinate absorption (T3 contributes nothing in ss/bss
// coordinates, TG0 nothing in bss). `exact` reports whether the emitted
// family provably spans the summand's multidegree-d contribution.
void enumerate_instances(const Summand& s, const SpaceSpec& spec, const MultiDegree& d,
                         uint32_t p, Coords coords, const Budget& b, size_t& counter,
                         bool& exact, const std::function<void(Instance&&)>& sink);

struct SpanReport {
  size_t dim = 0;
  size_t rank = 0;
  size_t n_instances = 0;
  bool exact = true;
  Coords coords = Coords::free_words;
};

SpanReport instance_span(const SpaceSpec& spec, const MultiDegree& d, uint32_t p,
                         Coords coords, const Budget& b = Budget(), FpSpan* out = nullptr);

struct ComponentResult {
  MultiDegree d;
  size_t dim = 0;
  size_t rank = 0;
  size_t n_instances = 0;
  bool member = false;
  std::vector<std::pair<uint32_t, std::string>> combination;  // coeff, descriptor
  std::vector<std::pair<size_t, uint32_t>> residual;          // coordinate, value
};

struct MemberResult {
  bool member = false;
  bool exact = false;
  Coords coords = Coords::free_words;
  size_t rank = 0;  // summed over components
  std::vector<ComponentResult> components;
};

// Decides componentwise whether f lies in the spec's space. Coordinates
// default to the strongest absorption available: BSS when TG0 is a
// summand, SS when T3 is, free words otherwise.
MemberResult member(const Poly& f, const SpaceSpec& spec, const Budget& b = Budget(),
                    std::optional<Coords> coords_override = std::nullopt);

std::string coords_name(Coords c);

}  // namespace spans

#endif
