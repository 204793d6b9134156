#ifndef GRASSPAN_GRASSMANN_HPP
#define GRASSPAN_GRASSMANN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grasspan/poly.hpp"

namespace grassmann {

using freealg::Field;
using freealg::Mode;
using freealg::Var;

// Generator subsets are bitsets over {1..rank}; bit i-1 stands for e_i.
using Subset = uint64_t;
constexpr int kMaxRank = 64;

// e_S * e_T: zero on overlap, otherwise the union with the sign of the
// permutation that sorts the concatenated index sequence. The inversion
// count is the number of pairs s in S, t in T with s > t; counted with
// popcounts over prefix masks.
struct BladeProduct {
  bool zero;
  int sign;  // +1 or -1 (meaningless when zero)
  Subset bits;
};

inline BladeProduct basis_mul(Subset a, Subset b) {
  if (a & b) return {true, 1, 0};
  int inversions = 0;
  Subset t = b;
  while (t) {
    int bit = __builtin_ctzll(t);
    t &= t - 1;
    // elements of a strictly above this element of b
    Subset above = (bit == 63) ? 0 : (a >> (bit + 1));
    inversions += __builtin_popcountll(above);
  }
  return {false, (inversions & 1) ? -1 : 1, a | b};
}

// Element of the rank-n Grassmann algebra over F_p. Unitary elements may
// carry an empty-subset (scalar) term; nonunitary ones never do.
class GElem {
 public:
  GElem(uint32_t p, int rank, Mode mode) : field_(p), rank_(rank), mode_(mode) {
    if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("rank out of range [1,64]");
  }

  static GElem zero(uint32_t p, int rank, Mode mode) { return GElem(p, rank, mode); }

  static GElem unit(uint32_t p, int rank) {
    GElem g(p, rank, Mode::unitary);
    g.coeffs_[0] = 1;
    return g;
  }

  static GElem generator(uint32_t p, int rank, int i, Mode mode = Mode::nonunitary) {
    if (i < 1 || i > rank) throw std::invalid_argument("generator index out of range");
    GElem g(p, rank, mode);
    g.coeffs_[Subset(1) << (i - 1)] = 1;
    return g;
  }

  static GElem blade(uint32_t p, int rank, Subset s, long long c, Mode mode) {
    GElem g(p, rank, mode);
    g.add_term(s, g.field_.reduce(c));
    return g;
  }

  uint32_t p() const { return field_.p(); }
  const Field& field() const { return field_; }
  int rank() const { return rank_; }
  Mode mode() const { return mode_; }
  const std::map<Subset, uint32_t>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  void add_term(Subset s, uint32_t c) {
    c %= field_.p();
    if (c == 0) return;
    if (s == 0 && mode_ == Mode::nonunitary)
      throw std::invalid_argument("scalar term in nonunitary Grassmann element");
    auto it = coeffs_.find(s);
    if (it == coeffs_.end()) {
      coeffs_[s] = c;
    } else {
      it->second = field_.add(it->second, c);
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  GElem as_unitary() const {
    GElem g(p(), rank_, Mode::unitary);
    g.coeffs_ = coeffs_;
    return g;
  }

  bool operator==(const GElem& o) const {
    return p() == o.p() && rank_ == o.rank_ && mode_ == o.mode_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const GElem& o) const { return !(*this == o); }

 private:
  Field field_;
  int rank_;
  Mode mode_;
  std::map<Subset, uint32_t> coeffs_;
};

inline void require_compatible(const GElem& a, const GElem& b) {
  if (a.p() != b.p()) throw std::invalid_argument("Grassmann elements over different fields");
  if (a.rank() != b.rank()) throw std::invalid_argument("Grassmann rank mismatch");
  if (a.mode() != b.mode()) throw std::invalid_argument("Grassmann mode mismatch");
}

inline GElem g_add(const GElem& a, const GElem& b) {
  require_compatible(a, b);
  GElem out(a.p(), a.rank(), a.mode());
  for (auto& [s, c] : a.coeffs()) out.add_term(s, c);
  for (auto& [s, c] : b.coeffs()) out.add_term(s, c);
  return out;
}

inline GElem g_scale(const GElem& a, long long k) {
  GElem out(a.p(), a.rank(), a.mode());
  uint32_t s = a.field().reduce(k);
  for (auto& [t, c] : a.coeffs()) out.add_term(t, a.field().mul(c, s));
  return out;
}

inline GElem g_neg(const GElem& a) { return g_scale(a, -1); }
inline GElem g_sub(const GElem& a, const GElem& b) { return g_add(a, g_neg(b)); }

inline GElem g_mul(const GElem& a, const GElem& b) {
  require_compatible(a, b);
  GElem out(a.p(), a.rank(), a.mode());
  for (auto& [s, cs] : a.coeffs())
    for (auto& [t, ct] : b.coeffs()) {
      BladeProduct pr = basis_mul(s, t);
      if (pr.zero) continue;
      uint32_t c = a.field().mul(cs, ct);
      out.add_term(pr.bits, pr.sign > 0 ? c : a.field().neg(c));
    }
  return out;
}

inline GElem operator+(const GElem& a, const GElem& b) { return g_add(a, b); }
inline GElem operator-(const GElem& a, const GElem& b) { return g_sub(a, b); }
inline GElem operator*(const GElem& a, const GElem& b) { return g_mul(a, b); }

inline GElem g_pow(const GElem& a, uint32_t e) {
  if (e == 0) {
    if (a.mode() != Mode::unitary) throw std::invalid_argument("zeroth power needs unitary mode");
    return GElem::unit(a.p(), a.rank());
  }
  GElem r = a;
  for (uint32_t i = 1; i < e; ++i) r = g_mul(r, a);
  return r;
}

// Homomorphic image of f under x_v -> assignment[v]. Every variable of f
// must be assigned; nonunitary f requires nonunitary images.
inline GElem evaluate(const freealg::Poly& f, const std::map<Var, GElem>& assignment) {
  int rank = -1;
  for (auto& [v, g] : assignment) {
    if (g.p() != f.p()) throw std::invalid_argument("assignment over different field");
    if (rank == -1) rank = g.rank();
    if (g.rank() != rank) throw std::invalid_argument("assignment ranks disagree");
    if (f.mode() == Mode::nonunitary && g.mode() != Mode::nonunitary)
      throw std::invalid_argument("nonunitary polynomial needs nonunitary images");
  }
  if (rank == -1) throw std::invalid_argument("empty assignment");
  Mode emode = f.mode();
  GElem out = GElem::zero(f.p(), rank, emode);
  for (auto& [w, c] : f.terms()) {
    GElem term = w.empty() ? GElem::unit(f.p(), rank) : GElem::zero(f.p(), rank, emode);
    bool first = true;
    for (Var v : w.letters()) {
      auto it = assignment.find(v);
      if (it == assignment.end())
        throw std::invalid_argument("missing assignment for x" + std::to_string(v));
      GElem img = emode == Mode::unitary ? it->second.as_unitary() : it->second;
      term = first ? img : g_mul(term, img);
      first = false;
      if (term.is_zero()) break;
    }
    out = g_add(out, g_scale(term, c));
  }
  return out;
}

// Central iff it commutes with every generator e_i, i <= rank; generators
// generate, so that is sufficient.
inline bool is_central(const GElem& a) {
  for (int i = 1; i <= a.rank(); ++i) {
    GElem e = GElem::generator(a.p(), a.rank(), i, a.mode());
    if (g_mul(e, a) != g_mul(a, e)) return false;
  }
  return true;
}

// --- identity / centrality checking -------------------------------------

enum class Strategy { random_trials, exhaustive_basis };

struct CheckOptions {
  Strategy strategy = Strategy::random_trials;
  int trials = 1000;
  uint64_t seed = 1;
  int density = 4;  // terms per sampled element
};

struct Witness {
  std::map<Var, GElem> assignment;
  GElem value;
  Witness(std::map<Var, GElem> a, GElem v) : assignment(std::move(a)), value(std::move(v)) {}
};

struct CheckResult {
  bool holds = true;           // identity: all zero / centrality: all central
  bool nonzero_attained = false;
  long long points_checked = 0;
  uint64_t seed = 0;
  std::optional<Witness> witness;  // failing assignment when !holds
};

// Sparse random element: `density` terms, uniform nonzero coefficient,
// subset sizes mixed across odd and even so central values do not vanish
// for trivial parity reasons. Deterministic for a given engine state.
inline GElem random_element(uint32_t p, int rank, Mode mode, std::mt19937_64& rng, int density = 4) {
  GElem out = GElem::zero(p, rank, mode);
  for (int t = 0; t < density; ++t) {
    int maxsz = rank < 5 ? rank : 5;
    int size = 1 + static_cast<int>(rng() % maxsz);
    Subset s = 0;
    while (__builtin_popcountll(s) < size) s |= Subset(1) << (rng() % rank);
    if (mode == Mode::unitary && rng() % 4 == 0) s = 0;  // occasional scalar term
    uint32_t c = 1 + static_cast<uint32_t>(rng() % (p - 1));
    out.add_term(s, c);
  }
  return out;
}

namespace detail {

// All tuples of pairwise-disjoint blades, one per variable. For multilinear
// f those are the only assignments a word of f survives, so vanishing on
// them decides the identity at this rank. Each generator index is assigned
// to one of the variables or to none.
template <typename Fn>
void for_each_disjoint_tuple(int rank, int nvars, Mode mode, Fn&& fn) {
  std::vector<Subset> blades(nvars, 0);
  // odometer over (nvars+1)^rank
  std::vector<int> station(rank, 0);
  while (true) {
    bool ok = true;
    if (mode == Mode::nonunitary)
      for (int v = 0; ok && v < nvars; ++v)
        if (blades[v] == 0) ok = false;
    if (ok || mode == Mode::unitary) fn(const_cast<const std::vector<Subset>&>(blades));
    // increment
    int i = 0;
    for (; i < rank; ++i) {
      int cur = station[i];
      if (cur > 0) blades[cur - 1] &= ~(Subset(1) << i);
      if (cur < nvars) {
        station[i] = cur + 1;
        blades[cur] |= Subset(1) << i;
        break;
      }
      station[i] = 0;
    }
    if (i == rank) break;
  }
}

}  // namespace detail

// Does f vanish under every (sampled / exhaustive-multilinear) assignment?
inline CheckResult check_identity(const freealg::Poly& f, int rank, Mode algebra_mode,
                                  const CheckOptions& opts) {
  CheckResult res;
  res.seed = opts.seed;
  std::set<Var> support = f.support_vars();
  std::vector<Var> vars(support.begin(), support.end());
  if (f.mode() == Mode::nonunitary && algebra_mode == Mode::unitary)
    throw std::invalid_argument("nonunitary polynomial paired with unitary algebra");

  if (opts.strategy == Strategy::exhaustive_basis) {
    auto d = freealg::is_multihomogeneous(f);
    bool multilinear = d.has_value();
    if (multilinear)
      for (auto& [v, c] : d->counts())
        if (c != 1) multilinear = false;
    if (!multilinear)
      throw std::invalid_argument("exhaustive_basis strategy needs a multilinear polynomial");

    freealg::Field fld(f.p());
    bool failed = false;
    std::map<Var, int> slot;
    for (size_t i = 0; i < vars.size(); ++i) slot[vars[i]] = static_cast<int>(i);
    std::vector<Subset> witness_blades;
    detail::for_each_disjoint_tuple(rank, static_cast<int>(vars.size()), algebra_mode,
      [&](const std::vector<Subset>& blades) {
        if (failed) return;
        ++res.points_checked;
        // accumulate f on this blade tuple
        std::map<Subset, uint32_t> acc;
        for (auto& [w, c] : f.terms()) {
          bool dead = false;
          Subset cur = 0;
          int sign = 1;
          bool first = true;
          for (Var v : w.letters()) {
            Subset b = blades[slot[v]];
            if (first) {
              cur = b;
              first = false;
              continue;
            }
            BladeProduct pr = basis_mul(cur, b);
            if (pr.zero) { dead = true; break; }
            cur = pr.bits;
            sign *= pr.sign;
          }
          if (dead) continue;
          if (w.empty()) cur = 0;
          uint32_t add = sign > 0 ? c : fld.neg(c);
          auto it = acc.find(cur);
          if (it == acc.end()) acc[cur] = add;
          else {
            it->second = fld.add(it->second, add);
            if (!it->second) acc.erase(it);
          }
        }
        if (!acc.empty()) {
          failed = true;
          witness_blades = blades;
        }
      });
    if (failed) {
      res.holds = false;
      std::map<Var, GElem> asg;
      for (size_t i = 0; i < vars.size(); ++i)
        asg.emplace(vars[i], GElem::blade(f.p(), rank, witness_blades[i], 1, algebra_mode));
      res.witness.emplace(asg, evaluate(f, asg));
    }
    return res;
  }

  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.trials; ++t) {
    std::map<Var, GElem> asg;
    for (Var v : vars) asg.emplace(v, random_element(f.p(), rank, algebra_mode, rng, opts.density));
    if (asg.empty()) asg.emplace(0, GElem::zero(f.p(), rank, algebra_mode));
    GElem val = evaluate(f, asg);
    ++res.points_checked;
    if (!val.is_zero()) {
      res.holds = false;
      res.witness.emplace(asg, val);
      return res;
    }
  }
  return res;
}

// Is every sampled value of f central? Also reports whether some value was
// nonzero (a central polynomial must not be an identity).
inline CheckResult check_central(const freealg::Poly& f, int rank, Mode algebra_mode,
                                 const CheckOptions& opts) {
  CheckResult res;
  res.seed = opts.seed;
  std::set<Var> support = f.support_vars();
  std::vector<Var> vars(support.begin(), support.end());
  if (opts.strategy == Strategy::exhaustive_basis)
    throw std::invalid_argument("check_central supports random trials only");
  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.trials; ++t) {
    std::map<Var, GElem> asg;
    for (Var v : vars) asg.emplace(v, random_element(f.p(), rank, algebra_mode, rng, opts.density));
    if (asg.empty()) asg.emplace(0, GElem::zero(f.p(), rank, algebra_mode));
    GElem val = evaluate(f, asg);
    ++res.points_checked;
    if (!val.is_zero()) res.nonzero_attained = true;
    if (!is_central(val)) {
      res.holds = false;
      res.witness.emplace(asg, val);
      return res;
    }
  }
  return res;
}

}  // namespace grassmann

#endif
