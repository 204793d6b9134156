#ifndef GRASSPAN_PAPERLAB_HPP
#define GRASSPAN_PAPERLAB_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "grasspan/canonical.hpp"
#include "grasspan/grassmann.hpp"
#include "grasspan/poly.hpp"
#include "grasspan/spans.hpp"

namespace paperlab {

using freealg::Mode;
using freealg::Poly;
using freealg::Var;

// kappa(u, v) = [u, v] u^(p-1) v^(p-1).
Poly kappa(const Poly& u, const Poly& v);

// w_m = prod_{r=1..m} kappa(x_{2r-1}, x_{2r}) in nonunitary mode; w_0 = 1
// (unitary).
Poly w(uint32_t p, uint32_t m);

// Same product over an explicit variable tuple (x_{vars[0]}, x_{vars[1]}, ...).
Poly w_on(uint32_t p, const std::vector<Var>& vars);

// All w_j(x_{f(1)}, ..., x_{f(2j)}) with 1 <= j <= m and f strictly
// increasing into {1..max_var}; j ascending, then f lexicographic.
std::vector<Poly> enumerate_W(uint32_t p, uint32_t m, uint32_t max_var);

enum class PhiVariant { as_printed, bracketed };

// The doubled-word family phi'_m. as_printed is the plain word product
// prod x_{2i-1}^(p-1) x_{2i} x_{2i-1} x_{2i}^(p-1); bracketed replaces the
// middle two letters by their commutator. Both variants are produced and
// compared by the section-3 suite.
Poly phi_prime(uint32_t p, uint32_t m, PhiVariant variant);

// --- scripted verification -------------------------------------------------

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct LemmaReport {
  std::string id;
  uint32_t p = 0;
  nlohmann::ordered_json params;  // everything needed to re-derive the verdicts
  std::vector<Check> checks;
  double duration_ms = 0;  // text output only; excluded from JSON for determinism

  bool pass() const {
    if (checks.empty()) return false;
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct SuiteOptions {
  uint64_t seed = 1;
  int trials = 1000;
  int rank = 10;
  uint32_t chain_m = 1;
  int rewriter_degree = 4;  // acceptance raises this to the full desk scale
  int rewriter_vars = 3;
  spans::Budget budget;
};

LemmaReport verify_lemma_2_4(uint32_t p);
LemmaReport verify_lemma_2_5(uint32_t p);
LemmaReport verify_cor_2_1(uint32_t p, uint32_t m, const spans::Budget& b);
LemmaReport verify_cor_2_2(uint32_t p, uint32_t m, const spans::Budget& b);
LemmaReport verify_chain_strictness(uint32_t p, uint32_t m, const spans::Budget& b);
LemmaReport verify_section_3(uint32_t p, const SuiteOptions& opt);
LemmaReport verify_identities(uint32_t p, const SuiteOptions& opt);
LemmaReport verify_rewriter(uint32_t p, const SuiteOptions& opt);

std::vector<std::string> suite_ids();
LemmaReport run_suite(const std::string& id, uint32_t p, const SuiteOptions& opt);

}  // namespace paperlab

#endif
