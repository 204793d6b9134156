#ifndef GRASSPAN_POLY_HPP
#define GRASSPAN_POLY_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "grasspan/fp.hpp"
#include "grasspan/word.hpp"

namespace freealg {

enum class Mode { unitary, nonunitary };

// An element of the free associative algebra over F_p: a finite map from
// words to nonzero residues, canonical (no zero coefficients, no duplicate
// words). Nonunitary polynomials never carry an empty-word term. Values are
// immutable after construction; every operation returns a fresh value.
class Poly {
 public:
  Poly(uint32_t p, Mode mode) : field_(p), mode_(mode) {}

  static Poly zero(uint32_t p, Mode mode) { return Poly(p, mode); }

  static Poly unit(uint32_t p) {
    Poly f(p, Mode::unitary);
    f.terms_[Word()] = 1;
    return f;
  }

  static Poly constant(uint32_t p, long long c) {
    Poly f(p, Mode::unitary);
    uint32_t r = f.field_.reduce(c);
    if (r) f.terms_[Word()] = r;
    return f;
  }

  static Poly variable(uint32_t p, Mode mode, Var v) {
    Poly f(p, mode);
    f.terms_[Word({v})] = 1;
    return f;
  }

  static Poly monomial(uint32_t p, Mode mode, const Word& w, long long c = 1) {
    Poly f(p, mode);
    f.add_term(w, f.field_.reduce(c));
    return f;
  }

  uint32_t p() const { return field_.p(); }
  const Field& field() const { return field_; }
  Mode mode() const { return mode_; }
  const std::map<Word, uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  uint32_t coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
  }

  // In-place canonical accumulation (private to construction helpers and
  // the arithmetic below; public because module code builds polys termwise).
  void add_term(const Word& w, uint32_t c) {
    c %= field_.p();
    if (c == 0) return;
    if (w.empty() && mode_ == Mode::nonunitary)
      throw std::invalid_argument("empty-word term in nonunitary polynomial");
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_[w] = c;
    } else {
      it->second = field_.add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly as_unitary() const {
    if (mode_ == Mode::unitary) return *this;
    Poly f(p(), Mode::unitary);
    f.terms_ = terms_;
    return f;
  }

  // Fails on a constant term: those have no nonunitary reading.
  Poly as_nonunitary() const {
    if (mode_ == Mode::nonunitary) return *this;
    if (coeff(Word()) != 0)
      throw std::invalid_argument("polynomial has a constant term; no nonunitary reading");
    Poly f(p(), Mode::nonunitary);
    f.terms_ = terms_;
    return f;
  }

  bool operator==(const Poly& o) const {
    return p() == o.p() && mode_ == o.mode_ && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::set<Var> support_vars() const {
    std::set<Var> s;
    for (auto& [w, c] : terms_)
      for (Var v : w.letters()) s.insert(v);
    return s;
  }

 private:
  Field field_;
  Mode mode_;
  std::map<Word, uint32_t> terms_;
};

inline void require_compatible(const Poly& f, const Poly& g) {
  if (f.p() != g.p()) throw std::invalid_argument("polynomials over different fields");
  if (f.mode() != g.mode()) throw std::invalid_argument("polynomial mode mismatch");
}

inline Poly poly_add(const Poly& f, const Poly& g) {
  require_compatible(f, g);
  Poly out(f.p(), f.mode());
  for (auto& [w, c] : f.terms()) out.add_term(w, c);
  for (auto& [w, c] : g.terms()) out.add_term(w, c);
  return out;
}

inline Poly poly_scale(const Poly& f, long long a) {
  Poly out(f.p(), f.mode());
  uint32_t s = f.field().reduce(a);
  for (auto& [w, c] : f.terms()) out.add_term(w, f.field().mul(c, s));
  return out;
}

inline Poly poly_neg(const Poly& f) { return poly_scale(f, -1); }

inline Poly poly_sub(const Poly& f, const Poly& g) { return poly_add(f, poly_neg(g)); }

inline Poly poly_mul(const Poly& f, const Poly& g) {
  require_compatible(f, g);
  Poly out(f.p(), f.mode());
  for (auto& [wf, cf] : f.terms())
    for (auto& [wg, cg] : g.terms())
      out.add_term(wf.concat(wg), f.field().mul(cf, cg));
  return out;
}

inline Poly poly_pow(const Poly& f, uint32_t e) {
  if (e == 0) {
    if (f.mode() != Mode::unitary)
      throw std::invalid_argument("zeroth power needs unitary mode");
    return Poly::unit(f.p());
  }
  Poly r = f;
  for (uint32_t i = 1; i < e; ++i) r = poly_mul(r, f);
  return r;
}

inline Poly operator+(const Poly& f, const Poly& g) { return poly_add(f, g); }
inline Poly operator-(const Poly& f, const Poly& g) { return poly_sub(f, g); }
inline Poly operator*(const Poly& f, const Poly& g) { return poly_mul(f, g); }
inline Poly operator-(const Poly& f) { return poly_neg(f); }

// [f, g] = fg - gf.
inline Poly commutator(const Poly& f, const Poly& g) {
  return poly_sub(poly_mul(f, g), poly_mul(g, f));
}

// Image of f under the algebra endomorphism determined by `assignment`.
// Unitary mode: unassigned variables map to themselves. Nonunitary mode:
// every variable occurring in f needs an explicit (nonunitary) image.
inline Poly substitute(const Poly& f, const std::map<Var, Poly>& assignment) {
  for (auto& [v, img] : assignment) {
    if (img.p() != f.p()) throw std::invalid_argument("substitution image over different field");
    if (f.mode() == Mode::nonunitary && img.mode() != Mode::nonunitary)
      throw std::invalid_argument("nonunitary substitution needs nonunitary images");
  }
  Poly out(f.p(), f.mode());
  for (auto& [w, c] : f.terms()) {
    Poly term = w.empty() ? Poly::unit(f.p()) : Poly(f.p(), f.mode());
    bool first = true;
    for (Var v : w.letters()) {
      Poly img(f.p(), f.mode());
      auto it = assignment.find(v);
      if (it != assignment.end()) {
        img = f.mode() == Mode::unitary ? it->second.as_unitary() : it->second;
      } else if (f.mode() == Mode::unitary) {
        img = Poly::variable(f.p(), f.mode(), v);
      } else {
        throw std::invalid_argument("nonunitary substitution missing image for x" + std::to_string(v));
      }
      term = first ? img : poly_mul(term, img);
      first = false;
    }
    out = poly_add(out, poly_scale(term, c));
  }
  return out;
}

// Common multidegree of all terms, absent if terms disagree.
inline std::optional<MultiDegree> is_multihomogeneous(const Poly& f) {
  std::optional<MultiDegree> d;
  for (auto& [w, c] : f.terms()) {
    MultiDegree dw = multidegree(w);
    if (!d) {
      d = dw;
    } else if (*d != dw) {
      return std::nullopt;
    }
  }
  if (!d) d = MultiDegree();  // zero polynomial: empty multidegree
  return d;
}

// Split into multihomogeneous components, keyed by multidegree.
inline std::map<MultiDegree, Poly> components(const Poly& f) {
  std::map<MultiDegree, Poly> out;
  for (auto& [w, c] : f.terms()) {
    MultiDegree d = multidegree(w);
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, Poly(f.p(), f.mode())).first;
    it->second.add_term(w, c);
  }
  return out;
}

}  // namespace freealg

#endif
