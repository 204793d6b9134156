#ifndef GRASSPAN_CANONICAL_HPP
#define GRASSPAN_CANONICAL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasspan/poly.hpp"

namespace canonical {

using freealg::Mode;
using freealg::MultiDegree;
using freealg::Poly;
using freealg::Var;
using freealg::Word;

// A structured spanning-set term: an ordered product of variable powers
// (the beginning) followed by commutator pairs with attached powers (the
// end). End variables are strictly increasing across the whole end and are
// paired consecutively: (j1,j2)(j3,j4)... with j1 < j2 < ... Beginning and
// end variable sets are disjoint; beginning exponents are >= 1, end
// exponents (the power attached after the pair's bracket) are >= 0.
// The term with empty beginning and end is the unit.
struct SSTerm {
  std::vector<std::pair<Var, uint32_t>> beg;
  std::vector<std::pair<Var, uint32_t>> end;

  size_t lbeg() const { return beg.size(); }
  size_t lend() const { return end.size() / 2; }
  bool is_unit() const { return beg.empty() && end.empty(); }

  bool operator<(const SSTerm& o) const {
    if (beg != o.beg) return beg < o.beg;
    return end < o.end;
  }
  bool operator==(const SSTerm& o) const { return beg == o.beg && end == o.end; }

  MultiDegree multidegree() const {
    MultiDegree d;
    for (auto& [v, e] : beg) d.bump(v, e);
    for (auto& [v, e] : end) d.bump(v, e + 1);  // one occurrence inside the bracket
    return d;
  }

  uint32_t degree_of(Var v) const {
    for (auto& [u, e] : beg)
      if (u == v) return e;
    for (auto& [u, e] : end)
      if (u == v) return e + 1;
    return 0;
  }

  bool in_bss(uint32_t p) const {
    for (auto& [v, e] : beg)
      if (e >= p) return false;
    for (auto& [v, e] : end)
      if (e + 1 > p) return false;
    return true;
  }

  void validate() const {
    for (size_t i = 0; i < beg.size(); ++i) {
      if (beg[i].second < 1) throw std::logic_error("SSTerm: beginning exponent < 1");
      if (i && beg[i - 1].first >= beg[i].first)
        throw std::logic_error("SSTerm: beginning variables not strictly increasing");
    }
    if (end.size() % 2) throw std::logic_error("SSTerm: odd end length");
    for (size_t i = 0; i < end.size(); ++i)
      if (i && end[i - 1].first >= end[i].first)
        throw std::logic_error("SSTerm: end variables not strictly increasing");
    for (auto& [v, e] : beg)
      for (auto& [u, e2] : end)
        if (u == v) throw std::logic_error("SSTerm: beginning and end share a variable");
  }

  // The term as an element of the free algebra.
  Poly embed(uint32_t p, Mode mode) const {
    if (is_unit()) {
      if (mode != Mode::unitary)
        throw std::invalid_argument("unit SSTerm has no nonunitary embedding");
      return Poly::unit(p);
    }
    std::vector<Var> letters;
    for (auto& [v, e] : beg) letters.insert(letters.end(), e, v);
    Poly out = letters.empty() ? Poly::unit(p) : Poly::monomial(p, Mode::unitary, Word(letters));
    for (size_t i = 0; i + 1 < end.size(); i += 2) {
      Var a = end[i].first, b = end[i + 1].first;
      Poly br = freealg::commutator(Poly::variable(p, Mode::unitary, a),
                                    Poly::variable(p, Mode::unitary, b));
      out = out * br;
      std::vector<Var> pw;
      pw.insert(pw.end(), end[i].second, a);
      pw.insert(pw.end(), end[i + 1].second, b);
      if (!pw.empty()) out = out * Poly::monomial(p, Mode::unitary, Word(pw));
    }
    return mode == Mode::unitary ? out : out.as_nonunitary();
  }

  std::string to_string() const;
};

// The SPSS predicate: some end variable has total degree < p. Only defined
// on BSS terms.
inline bool is_spss(const SSTerm& t, uint32_t p) {
  if (!t.in_bss(p)) throw std::invalid_argument("is_spss: term outside BSS");
  for (auto& [v, e] : t.end)
    if (e + 1 < p) return true;
  return false;
}

// A linear combination of SS terms; canonical (no zero coefficients).
class SSForm {
 public:
  explicit SSForm(uint32_t p) : field_(p) {}

  uint32_t p() const { return field_.p(); }
  const std::map<SSTerm, uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  uint32_t coeff(const SSTerm& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const SSTerm& t, uint32_t c) {
    c %= field_.p();
    if (!c) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
      terms_[t] = c;
    } else {
      it->second = field_.add(it->second, c);
      if (!it->second) terms_.erase(it);
    }
  }

  Poly embed(Mode mode) const {
    Poly out(p(), mode);
    for (auto& [t, c] : terms_) out = out + freealg::poly_scale(t.embed(p(), mode), c);
    return out;
  }

  bool operator==(const SSForm& o) const { return p() == o.p() && terms_ == o.terms_; }
  bool operator!=(const SSForm& o) const { return !(*this == o); }

 private:
  freealg::Field field_;
  std::map<SSTerm, uint32_t> terms_;
};

// f rewritten as a combination of SS terms: f - embed(result) lies in the
// T-ideal of the triple commutator. Deterministic; multidegree preserved
// termwise.
SSForm straighten_t3(const Poly& f);

// Same but additionally reduced modulo the identities of the nonunitary
// Grassmann algebra: output is supported on BSS and f - embed(result) lies
// in that T-ideal. Equal to reduce_tg0(straighten_t3(f)).
SSForm straighten_tg0(const Poly& f);

// Drop every term violating the BSS degree bounds; each dropped term
// contains a consecutive p-th power, hence lies in the p-th-power T-ideal.
SSForm reduce_tg0(const SSForm& F);

// All SS terms of exactly multidegree d, deterministically ordered (end
// size ascending, then lexicographic choice of end variables).
std::vector<SSTerm> enumerate_ss(const MultiDegree& d);
// The subset satisfying the BSS degree bounds for this p.
std::vector<SSTerm> enumerate_bss(const MultiDegree& d, uint32_t p);

enum class Modulus { T3, TG0 };

// Coordinates of f in the enumerate_ss / enumerate_bss order for its
// multidegree. f must be multihomogeneous of multidegree d.
std::vector<uint32_t> nf_vector(const Poly& f, const MultiDegree& d, Modulus m);

}  // namespace canonical

#endif
