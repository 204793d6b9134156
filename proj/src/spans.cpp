#include "grasspan/spans.hpp"

#include <algorithm>
#include <cctype>

#include "grasspan/io.hpp"

namespace spans {

using freealg::Field;
using freealg::Mode;

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Number of words of multidegree d; 0 signals overflow past cap.
unsigned long long word_count(const MultiDegree& d, unsigned long long cap) {
  unsigned long long n = 1;
  uint64_t placed = 0;
  for (auto& [v, c] : d.counts()) {
    for (uint32_t i = 1; i <= c; ++i) {
      ++placed;
      __uint128_t t = static_cast<__uint128_t>(n) * placed;
      t /= i;  // exact: product of i consecutive binomial steps
      if (t > cap) return 0;
      n = static_cast<unsigned long long>(t);
    }
  }
  return n;
}

// All ordered splits d = d_0 + ... + d_{parts-1}.
void for_each_split(const MultiDegree& d, size_t parts,
                    const std::function<void(const std::vector<MultiDegree>&)>& fn) {
  std::vector<std::pair<Var, uint32_t>> vars(d.counts().begin(), d.counts().end());
  std::vector<std::vector<uint32_t>> takes(vars.size(), std::vector<uint32_t>(parts, 0));
  std::function<void(size_t)> rec = [&](size_t vi) {
    if (vi == vars.size()) {
      std::vector<MultiDegree> out(parts);
      for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = 0; j < parts; ++j) out[j].bump(vars[i].first, takes[i][j]);
      fn(out);
      return;
    }
    uint32_t total = vars[vi].second;
    std::function<void(size_t, uint32_t)> dist = [&](size_t part, uint32_t left) {
      if (part + 1 == parts) {
        takes[vi][part] = left;
        rec(vi + 1);
        return;
      }
      for (uint32_t t = 0; t <= left; ++t) {
        takes[vi][part] = t;
        dist(part + 1, left - t);
      }
    };
    dist(0, total);
  };
  rec(0);
}

}  // namespace

std::vector<Word> component_words(const MultiDegree& d, const Budget& b) {
  unsigned long long n = word_count(d, b.max_words);
  if (n == 0 && d.total() > 0)
    throw BudgetError("word component of multidegree " + d.to_string() +
                      " exceeds the budget of " + std::to_string(b.max_words) + " words");
  std::vector<Var> letters;
  for (auto& [v, c] : d.counts()) letters.insert(letters.end(), c, v);
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(n));
  do {
    out.push_back(Word(letters));
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

// --- exact linear algebra ----------------------------------------------

FpSpan::FpSpan(uint32_t p, size_t dim) : field_(p), dim_(dim) {}

bool FpSpan::add(const std::vector<uint32_t>& col, size_t tag) {
  if (col.size() != dim_) throw std::invalid_argument("FpSpan: dimension mismatch");
  std::vector<uint32_t> v = col;
  std::map<size_t, uint32_t> combo{{tag, 1}};
  for (size_t r = 0; r < rows_.size(); ++r) {
    uint32_t c = v[lead_[r]];
    if (!c) continue;
    uint32_t m = field_.neg(c);
    for (size_t i = lead_[r]; i < dim_; ++i)
      if (rows_[r][i]) v[i] = field_.add(v[i], field_.mul(m, rows_[r][i]));
    for (auto& [t, cc] : combos_[r]) {
      uint32_t add = field_.mul(m, cc);
      auto it = combo.find(t);
      if (it == combo.end()) combo[t] = add;
      else {
        it->second = field_.add(it->second, add);
        if (!it->second) combo.erase(it);
      }
    }
  }
  size_t lead = dim_;
  for (size_t i = 0; i < dim_; ++i)
    if (v[i]) { lead = i; break; }
  if (lead == dim_) return false;
  uint32_t inv = field_.inv(v[lead]);
  for (auto& x : v) x = field_.mul(x, inv);
  for (auto& [t, cc] : combo) cc = field_.mul(cc, inv);
  rows_.push_back(std::move(v));
  lead_.push_back(lead);
  combos_.push_back(std::move(combo));
  return true;
}

std::vector<uint32_t> FpSpan::reduce(const std::vector<uint32_t>& target) const {
  if (target.size() != dim_) throw std::invalid_argument("FpSpan: dimension mismatch");
  std::vector<uint32_t> v = target;
  for (size_t r = 0; r < rows_.size(); ++r) {
    uint32_t c = v[lead_[r]];
    if (!c) continue;
    uint32_t m = field_.neg(c);
    for (size_t i = lead_[r]; i < dim_; ++i)
      if (rows_[r][i]) v[i] = field_.add(v[i], field_.mul(m, rows_[r][i]));
  }
  return v;
}

std::optional<std::vector<std::pair<size_t, uint32_t>>> FpSpan::solve(
    const std::vector<uint32_t>& target) const {
  if (target.size() != dim_) throw std::invalid_argument("FpSpan: dimension mismatch");
  std::vector<uint32_t> v = target;
  std::map<size_t, uint32_t> combo;
  for (size_t r = 0; r < rows_.size(); ++r) {
    uint32_t c = v[lead_[r]];
    if (!c) continue;
    uint32_t m = field_.neg(c);
    for (size_t i = lead_[r]; i < dim_; ++i)
      if (rows_[r][i]) v[i] = field_.add(v[i], field_.mul(m, rows_[r][i]));
    for (auto& [t, cc] : combos_[r]) {
      uint32_t add = field_.mul(c, cc);
      auto it = combo.find(t);
      if (it == combo.end()) combo[t] = add;
      else {
        it->second = field_.add(it->second, add);
        if (!it->second) combo.erase(it);
      }
    }
  }
  for (uint32_t x : v)
    if (x) return std::nullopt;
  return std::vector<std::pair<size_t, uint32_t>>(combo.begin(), combo.end());
}

size_t rank_f_p(uint32_t p, const std::vector<std::vector<uint32_t>>& columns) {
  if (columns.empty()) return 0;
  FpSpan span(p, columns[0].size());
  for (size_t i = 0; i < columns.size(); ++i) span.add(columns[i], i);
  return span.rank();
}

std::optional<std::vector<uint32_t>> solve_in_span(uint32_t p,
                                                   const std::vector<std::vector<uint32_t>>& columns,
                                                   const std::vector<uint32_t>& target) {
  FpSpan span(p, target.size());
  for (size_t i = 0; i < columns.size(); ++i) span.add(columns[i], i);
  auto combo = span.solve(target);
  if (!combo) return std::nullopt;
  std::vector<uint32_t> out(columns.size(), 0);
  for (auto& [tag, c] : *combo) out[tag] = c;
  return out;
}

// --- SpaceSpec -----------------------------------------------------------

std::string Summand::to_string() const {
  switch (kind) {
    case Kind::t3: return "T3";
    case Kind::s2: return "S2";
    case Kind::tg0: return "TG0";
    case Kind::w_family: return "W" + std::to_string(bound);
    case Kind::x0p_w_family: return "X0PW" + std::to_string(bound);
    case Kind::t_ideal: return "TIdeal(" + io::print_poly(*gen) + ")";
    case Kind::t_space: return "TSpace(" + io::print_poly(*gen) + ")";
  }
  return "?";
}

std::string SpaceSpec::to_string() const {
  std::string s;
  for (auto& sm : summands) {
    if (!s.empty()) s += "+";
    s += sm.to_string();
  }
  return s;
}

SpaceSpec SpaceSpec::parse(const std::string& text, uint32_t p) {
  SpaceSpec spec;
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0) {
      tokens.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  tokens.push_back(cur);
  for (std::string tok : tokens) {
    tok.erase(std::remove_if(tok.begin(), tok.end(),
                             [](unsigned char c) { return std::isspace(c) != 0; }),
              tok.end());
    if (tok.empty()) throw std::invalid_argument("empty summand in space spec");
    std::string low = lower(tok);
    Summand s;
    if (low == "t3") {
      s.kind = Summand::Kind::t3;
    } else if (low == "s2") {
      s.kind = Summand::Kind::s2;
    } else if (low == "tg0") {
      s.kind = Summand::Kind::tg0;
    } else if (low.rfind("x0pw", 0) == 0) {
      s.kind = Summand::Kind::x0p_w_family;
      s.bound = static_cast<uint32_t>(std::stoul(tok.substr(4)));
    } else if (low.size() > 1 && low[0] == 'w' &&
               std::isdigit(static_cast<unsigned char>(low[1]))) {
      s.kind = Summand::Kind::w_family;
      s.bound = static_cast<uint32_t>(std::stoul(tok.substr(1)));
      if (s.bound < 1) throw std::invalid_argument("W family bound must be >= 1");
    } else if (low.rfind("tideal(", 0) == 0 && tok.back() == ')') {
      s.kind = Summand::Kind::t_ideal;
      s.gen = io::parse_poly(tok.substr(7, tok.size() - 8), p, Mode::unitary);
    } else if (low.rfind("tspace(", 0) == 0 && tok.back() == ')') {
      s.kind = Summand::Kind::t_space;
      s.gen = io::parse_poly(tok.substr(7, tok.size() - 8), p, Mode::unitary);
    } else {
      throw std::invalid_argument("unknown space summand '" + tok + "'");
    }
    spec.summands.push_back(std::move(s));
  }
  return spec;
}

std::string coords_name(Coords c) {
  switch (c) {
    case Coords::free_words: return "free-words";
    case Coords::ss: return "ss";
    case Coords::bss: return "bss";
  }
  return "?";
}

// --- instance enumeration -------------------------------------------------

namespace {

Poly word_poly(uint32_t p, const Word& w) {
  return w.empty() ? Poly::unit(p) : Poly::monomial(p, Mode::unitary, w);
}

struct Sink {
  size_t& counter;
  size_t limit;
  const std::function<void(Instance&&)>& fn;
  void operator()(Poly poly, std::string descr) const {
    if (++counter > limit)
      throw BudgetError("instance enumeration exceeded the budget of " +
                        std::to_string(limit) + " instances");
    fn(Instance{std::move(poly), std::move(descr)});
  }
};

// Substitution images of one multidegree: the monomials, then (when sums
// is true) batches of up to K same-multidegree monomials with all
// coefficient tuples, leading coefficient normalized to 1. Same-degree
// batches keep every emitted instance multihomogeneous, which is what
// makes the column provably a member of the space.
std::vector<std::pair<Poly, std::string>> enumerate_images(const MultiDegree& delta, uint32_t p,
                                                           const Budget& b, bool sums) {
  std::vector<std::pair<Poly, std::string>> out;
  auto words = component_words(delta, b);
  for (auto& m : words) out.push_back({word_poly(p, m), io::print_word(m)});
  if (!sums) return out;
  for (uint32_t k = 2; k <= b.sum_terms && k <= words.size(); ++k) {
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<uint32_t> lam(k, 1);
      std::function<void(size_t)> coeffs = [&](size_t pos) {
        if (pos == k) {
          Poly f(p, Mode::unitary);
          std::string fd;
          for (size_t i = 0; i < k; ++i) {
            f = f + freealg::poly_scale(word_poly(p, words[idx[i]]), lam[i]);
            if (!fd.empty()) fd += "+";
            if (lam[i] != 1) fd += std::to_string(lam[i]) + "*";
            fd += io::print_word(words[idx[i]]);
          }
          out.push_back({std::move(f), std::move(fd)});
          return;
        }
        for (uint32_t c = 1; c < p; ++c) {
          lam[pos] = c;
          coeffs(pos + 1);
        }
      };
      coeffs(1);
      size_t i = k;
      while (i > 0 && idx[i - 1] == words.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

// T-ideal of the triple commutator: contexts times [[m1,m2],m3]. Inner-pair
// antisymmetry halves the enumeration.
void emit_t3(const MultiDegree& d, uint32_t p, const Budget& b, const Sink& sink) {
  for_each_split(d, 5, [&](const std::vector<MultiDegree>& parts) {
    const MultiDegree &du = parts[0], &d1 = parts[1], &d2 = parts[2], &d3 = parts[3],
                      &dw = parts[4];
    if (d1.total() == 0 || d2.total() == 0 || d3.total() == 0) return;
    auto us = component_words(du, b);
    auto m1s = component_words(d1, b);
    auto m2s = component_words(d2, b);
    auto m3s = component_words(d3, b);
    auto ws = component_words(dw, b);
    for (auto& m1 : m1s)
      for (auto& m2 : m2s) {
        if (!(m1 < m2)) continue;
        Poly inner = freealg::commutator(word_poly(p, m1), word_poly(p, m2));
        for (auto& m3 : m3s) {
          Poly core = freealg::commutator(inner, word_poly(p, m3));
          if (core.is_zero()) continue;
          for (auto& u : us)
            for (auto& w : ws) {
              Poly inst = word_poly(p, u) * core * word_poly(p, w);
              std::string descr;
              if (!u.empty()) descr += io::print_word(u) + "*";
              descr += "[[" + io::print_word(m1) + "," + io::print_word(m2) + "]," +
                       io::print_word(m3) + "]";
              if (!w.empty()) descr += "*" + io::print_word(w);
              sink(std::move(inst), std::move(descr));
            }
        }
      }
  });
}

// T-space of the commutator, full monomial pairs.
void emit_s2_pairs(const MultiDegree& d, uint32_t p, const Budget& b, const Sink& sink) {
  for_each_split(d, 2, [&](const std::vector<MultiDegree>& parts) {
    if (parts[0].total() == 0 || parts[1].total() == 0) return;
    auto m1s = component_words(parts[0], b);
    auto m2s = component_words(parts[1], b);
    for (auto& m1 : m1s)
      for (auto& m2 : m2s) {
        if (!(m1 < m2)) continue;
        Poly inst = freealg::commutator(word_poly(p, m1), word_poly(p, m2));
        sink(std::move(inst), "[" + io::print_word(m1) + "," + io::print_word(m2) + "]");
      }
  });
}

// Reduced commutator family [m, x]: spans the same space as the full pairs
// once the triple-commutator ideal is absorbed into the coordinates, at a
// fraction of the instance count.
void emit_s2_reduced(const MultiDegree& d, uint32_t p, const Budget& b, const Sink& sink) {
  for (auto& [v, cnt] : d.counts()) {
    MultiDegree unitv;
    unitv.bump(v, 1);
    MultiDegree rest;
    if (!d.minus(unitv, rest)) continue;
    if (rest.total() == 0) continue;
    for (auto& m : component_words(rest, b)) {
      bool only_v = true;
      for (Var u : m.letters())
        if (u != v) only_v = false;
      if (only_v) continue;  // [v^k, v] = 0
      Poly inst = freealg::commutator(word_poly(p, m), Poly::variable(p, Mode::unitary, v));
      sink(std::move(inst), "[" + io::print_word(m) + ",x" + std::to_string(v) + "]");
    }
  }
}

// Instances of the p-th power T-ideal: u * f^p * w with f a monomial or a
// same-multidegree sum batch.
void emit_xp(const MultiDegree& d, uint32_t p, const Budget& b, const Sink& sink) {
  for_each_split(d, 3, [&](const std::vector<MultiDegree>& parts) {
    const MultiDegree &du = parts[0], &core = parts[1], &dw = parts[2];
    if (core.total() == 0) return;
    MultiDegree delta;
    for (auto& [v, c] : core.counts()) {
      if (c % p) return;  // p-th powers have every degree divisible by p
      delta.bump(v, c / p);
    }
    auto us = component_words(du, b);
    auto ws = component_words(dw, b);
    for (auto& [image, idescr] : enumerate_images(delta, p, b, /*sums=*/true)) {
      Poly corep = freealg::poly_pow(image, p);
      std::string cd = "(" + idescr + ")^" + std::to_string(p);
      for (auto& u : us)
        for (auto& w : ws) {
          Poly inst = word_poly(p, u) * corep * word_poly(p, w);
          std::string descr;
          if (!u.empty()) descr += io::print_word(u) + "*";
          descr += cd;
          if (!w.empty()) descr += "*" + io::print_word(w);
          sink(std::move(inst), std::move(descr));
        }
    }
  });
}

Poly kappa_of(uint32_t p, const Poly& u, const Poly& v) {
  return freealg::commutator(u, v) * freealg::poly_pow(u, p - 1) * freealg::poly_pow(v, p - 1);
}

std::string kappa_descr(uint32_t p, const std::string& a, const std::string& b) {
  return "[" + a + "," + b + "]*(" + a + ")^" + std::to_string(p - 1) + "*(" + b + ")^" +
         std::to_string(p - 1);
}

// Variable-slot instances of the w_j families: every variable of d must
// occur a multiple of p times; the slot multiset is then forced and we
// enumerate its arrangements with distinct variables inside each kappa
// pair.
void emit_w_variables(uint32_t bound, const MultiDegree& d, uint32_t p, const Sink& sink) {
  std::vector<Var> slots;
  for (auto& [v, c] : d.counts()) {
    if (c % p) return;
    for (uint32_t i = 0; i < c / p; ++i) slots.push_back(v);
  }
  if (slots.empty() || slots.size() % 2) return;
  uint32_t j = static_cast<uint32_t>(slots.size() / 2);
  if (j < 1 || j > bound) return;
  std::sort(slots.begin(), slots.end());
  do {
    bool ok = true;
    for (size_t r = 0; ok && r < slots.size(); r += 2)
      if (slots[r] == slots[r + 1]) ok = false;
    if (!ok) continue;
    Poly inst = Poly::unit(p);
    std::string descr;
    for (size_t r = 0; r < slots.size(); r += 2) {
      Poly a = Poly::variable(p, Mode::unitary, slots[r]);
      Poly bv = Poly::variable(p, Mode::unitary, slots[r + 1]);
      inst = inst * kappa_of(p, a, bv);
      if (!descr.empty()) descr += "*";
      descr += kappa_descr(p, "x" + std::to_string(slots[r]), "x" + std::to_string(slots[r + 1]));
    }
    sink(std::move(inst), std::move(descr));
  } while (std::next_permutation(slots.begin(), slots.end()));
}

// General-substitution instances of w_j for the heuristic case: monomial
// slot images, plus sum batches applied to one slot at a time (the other
// slots stay monomial). Tuples whose slots are all single variables are
// skipped; emit_w_variables already produced them.
void emit_w_general(uint32_t bound, const MultiDegree& d, uint32_t p, const Budget& b,
                    const Sink& sink) {
  for (uint32_t j = 1; j <= bound; ++j) {
    size_t slots = 2 * j;
    if (d.total() % p || d.total() / p < slots) continue;
    for_each_split(d, slots, [&](const std::vector<MultiDegree>& parts) {
      std::vector<MultiDegree> deltas(slots);
      for (size_t i = 0; i < slots; ++i) {
        MultiDegree delta;
        for (auto& [v, c] : parts[i].counts()) {
          if (c % p) return;
          delta.bump(v, c / p);
        }
        if (delta.total() == 0) return;
        deltas[i] = delta;
      }
      // sum_slot == slots means "no sums anywhere"
      for (size_t sum_slot = 0; sum_slot <= slots; ++sum_slot) {
        size_t ss = sum_slot == 0 ? slots : sum_slot - 1;  // run the pure case first
        std::vector<std::vector<std::pair<Poly, std::string>>> choices(slots);
        bool any_sum_choice = false;
        for (size_t i = 0; i < slots; ++i) {
          bool sums = i == ss;
          choices[i] = enumerate_images(deltas[i], p, b, sums);
          if (sums) {
            // keep only the genuine sums; monomial tuples were done already
            size_t mono = component_words(deltas[i], b).size();
            choices[i].erase(choices[i].begin(), choices[i].begin() + mono);
            any_sum_choice = !choices[i].empty();
          }
        }
        if (ss != slots && !any_sum_choice) continue;
        std::vector<size_t> pick(slots, 0);
        bool empty_choice = false;
        for (auto& ch : choices)
          if (ch.empty()) empty_choice = true;
        if (empty_choice) continue;
        while (true) {
          bool all_vars = ss == slots;
          if (all_vars)
            for (size_t i = 0; i < slots; ++i)
              if (deltas[i].total() != 1) all_vars = false;
          if (!all_vars) {
            Poly inst = Poly::unit(p);
            std::string descr;
            bool nonzero = true;
            for (size_t r = 0; r < slots && nonzero; r += 2) {
              Poly k = kappa_of(p, choices[r][pick[r]].first, choices[r + 1][pick[r + 1]].first);
              if (k.is_zero()) nonzero = false;
              else {
                inst = inst * k;
                if (!descr.empty()) descr += "*";
                descr += kappa_descr(p, choices[r][pick[r]].second, choices[r + 1][pick[r + 1]].second);
              }
            }
            if (nonzero) sink(std::move(inst), std::move(descr));
          }
          size_t i = 0;
          for (; i < slots; ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
          }
          if (i == slots) break;
        }
      }
    });
  }
}

// Instances of the x0^p * w_j family: image^p * w_j(variables), j down to 0
// (bare p-th powers). The x0 image runs over monomials and sum batches.
void emit_x0p_w(uint32_t bound, const MultiDegree& d, uint32_t p, const Budget& b,
                const Sink& sink) {
  for_each_split(d, 2, [&](const std::vector<MultiDegree>& parts) {
    const MultiDegree &d0 = parts[0], &dslots = parts[1];
    if (d0.total() == 0) return;
    MultiDegree delta0;
    for (auto& [v, c] : d0.counts()) {
      if (c % p) return;
      delta0.bump(v, c / p);
    }
    std::vector<std::pair<Poly, std::string>> tails;
    if (dslots.total() == 0) {
      tails.push_back({Poly::unit(p), ""});
    } else {
      size_t scratch = 0;
      std::function<void(Instance &&)> collect = [&](Instance&& inst) {
        tails.push_back({inst.poly, inst.descr});
      };
      Sink tail_sink{scratch, b.max_instances, collect};
      emit_w_variables(bound, dslots, p, tail_sink);
      if (tails.empty()) return;
    }
    for (auto& [image, idescr] : enumerate_images(delta0, p, b, /*sums=*/true)) {
      Poly head = freealg::poly_pow(image, p);
      std::string hd = "(" + idescr + ")^" + std::to_string(p);
      for (auto& [tail, td] : tails)
        sink(head * tail, td.empty() ? hd : hd + "*" + td);
    }
  });
}

// Monomial substitution instances of a general generator, with contexts for
// T-ideals. Multilinear generators are exactly spanned this way; other
// generators must be multihomogeneous, get sum batches one slot at a time,
// and are flagged heuristic.
void emit_general(const Summand& s, const MultiDegree& d, uint32_t p, const Budget& b,
                  const Sink& sink) {
  const Poly& g = *s.gen;
  bool with_context = s.kind == Summand::Kind::t_ideal;
  auto hom = freealg::is_multihomogeneous(g);
  if (!hom)
    throw std::invalid_argument("instance enumeration needs a multihomogeneous generator: " +
                                io::print_poly(g));
  std::set<Var> gsupport = g.support_vars();
  std::vector<Var> gvars(gsupport.begin(), gsupport.end());
  if (gvars.empty()) return;
  bool multilinear = true;
  for (Var v : gvars)
    if ((*hom)[v] != 1) multilinear = false;
  size_t parts = gvars.size() + (with_context ? 2 : 0);
  for_each_split(d, parts, [&](const std::vector<MultiDegree>& split) {
    size_t off = with_context ? 1 : 0;
    std::vector<MultiDegree> deltas(gvars.size());
    for (size_t i = 0; i < gvars.size(); ++i) {
      const MultiDegree& di = split[off + i];
      if (multilinear) {
        deltas[i] = di;  // empty allowed: unit image
      } else {
        uint32_t gdeg = (*hom)[gvars[i]];
        MultiDegree delta;
        for (auto& [v, c] : di.counts()) {
          if (c % gdeg) return;
          delta.bump(v, c / gdeg);
        }
        if (delta.total() == 0) return;  // zero image kills the instance
        deltas[i] = delta;
      }
    }
    auto us = with_context ? component_words(split[0], b) : std::vector<Word>{Word()};
    auto ws = with_context ? component_words(split[parts - 1], b) : std::vector<Word>{Word()};
    size_t nslots = gvars.size();
    size_t sum_rounds = multilinear ? 1 : nslots + 1;
    for (size_t round = 0; round < sum_rounds; ++round) {
      size_t ss = round == 0 ? nslots : round - 1;  // pure monomials first
      std::vector<std::vector<std::pair<Poly, std::string>>> choices(nslots);
      bool any_sum = false;
      for (size_t i = 0; i < nslots; ++i) {
        if (multilinear && deltas[i].total() == 0) {
          choices[i] = {{Poly::unit(p), "1"}};
          continue;
        }
        bool sums = i == ss;
        choices[i] = enumerate_images(deltas[i], p, b, sums);
        if (sums) {
          size_t mono = component_words(deltas[i], b).size();
          choices[i].erase(choices[i].begin(), choices[i].begin() + mono);
          any_sum = !choices[i].empty();
        }
      }
      if (ss != nslots && !any_sum) continue;
      bool empty_choice = false;
      for (auto& ch : choices)
        if (ch.empty()) empty_choice = true;
      if (empty_choice) continue;
      std::vector<size_t> pick(nslots, 0);
      while (true) {
        std::map<Var, Poly> asg;
        std::string ad;
        for (size_t i = 0; i < nslots; ++i) {
          asg.emplace(gvars[i], choices[i][pick[i]].first);
          if (!ad.empty()) ad += ",";
          ad += "x" + std::to_string(gvars[i]) + "=" + choices[i][pick[i]].second;
        }
        Poly core = freealg::substitute(g, asg);
        if (!core.is_zero()) {
          for (auto& u : us)
            for (auto& w : ws) {
              Poly inst = word_poly(p, u) * core * word_poly(p, w);
              std::string descr;
              if (!u.empty()) descr += io::print_word(u) + "*";
              descr += "(" + io::print_poly(g) + ")@{" + ad + "}";
              if (!w.empty()) descr += "*" + io::print_word(w);
              sink(std::move(inst), std::move(descr));
            }
        }
        size_t i = 0;
        for (; i < nslots; ++i) {
          if (++pick[i] < choices[i].size()) break;
          pick[i] = 0;
        }
        if (i == nslots) break;
      }
    }
  });
}

bool generator_multilinear(const Poly& g) {
  auto hom = freealg::is_multihomogeneous(g);
  if (!hom) return false;
  for (auto& [v, c] : hom->counts())
    if (c != 1) return false;
  return true;
}

}  // namespace

// Whether the emitted family provably spans the summand's contribution to
// the multidegree-d component in these coordinates.
bool summand_exact(const Summand& s, const SpaceSpec& spec, Coords coords) {
  switch (s.kind) {
    case Summand::Kind::t3:
    case Summand::Kind::s2:
      return true;
    case Summand::Kind::tg0:
      return coords == Coords::bss;  // the coordinates are taken modulo this ideal
    case Summand::Kind::w_family:
      // With S2 and TG0 alongside, substitution by sums splits off S2 terms
      // and composite monomial slots land in TG0, so variable slots suffice.
      return coords == Coords::bss && spec.has(Summand::Kind::s2) &&
             spec.has(Summand::Kind::tg0);
    case Summand::Kind::x0p_w_family:
      return false;
    case Summand::Kind::t_ideal:
    case Summand::Kind::t_space:
      return generator_multilinear(*s.gen);
  }
  return false;
}

void enumerate_instances(const Summand& s, const SpaceSpec& spec, const MultiDegree& d,
                         uint32_t p, Coords coords, const Budget& b, size_t& counter,
                         bool& exact, const std::function<void(Instance&&)>& sink_fn) {
  Sink sink{counter, b.max_instances, sink_fn};
  exact = summand_exact(s, spec, coords);
  switch (s.kind) {
    case Summand::Kind::t3:
      if (coords == Coords::free_words) emit_t3(d, p, b, sink);
      return;  // absorbed by ss and bss coordinates
    case Summand::Kind::s2:
      if (coords == Coords::free_words) emit_s2_pairs(d, p, b, sink);
      else emit_s2_reduced(d, p, b, sink);
      return;
    case Summand::Kind::tg0:
      if (coords == Coords::bss) return;  // absorbed
      if (coords == Coords::free_words) emit_t3(d, p, b, sink);
      emit_xp(d, p, b, sink);
      return;
    case Summand::Kind::w_family:
      emit_w_variables(s.bound, d, p, sink);
      if (!exact) emit_w_general(s.bound, d, p, b, sink);
      return;
    case Summand::Kind::x0p_w_family:
      emit_x0p_w(s.bound, d, p, b, sink);
      return;
    case Summand::Kind::t_ideal:
    case Summand::Kind::t_space:
      emit_general(s, d, p, b, sink);
      return;
  }
}

// --- spans and membership --------------------------------------------------

namespace {

struct SaturatedTag {};

Coords default_coords(const SpaceSpec& spec) {
  if (spec.has(Summand::Kind::tg0)) return Coords::bss;
  if (spec.has(Summand::Kind::t3)) return Coords::ss;
  return Coords::free_words;
}

void validate_coords(const SpaceSpec& spec, Coords c) {
  if (c == Coords::bss && !spec.has(Summand::Kind::tg0))
    throw std::invalid_argument("bss coordinates require TG0 as a summand");
  if (c == Coords::ss && !spec.has(Summand::Kind::tg0) && !spec.has(Summand::Kind::t3))
    throw std::invalid_argument("ss coordinates require T3 or TG0 as a summand");
}

struct ComponentBasis {
  size_t dim = 0;
  std::vector<Word> words;  // free_words coordinates only
  std::map<Word, size_t> word_index;
};

ComponentBasis make_basis(const MultiDegree& d, uint32_t p, Coords coords, const Budget& b) {
  ComponentBasis basis;
  switch (coords) {
    case Coords::free_words:
      basis.words = component_words(d, b);
      basis.dim = basis.words.size();
      for (size_t i = 0; i < basis.words.size(); ++i) basis.word_index[basis.words[i]] = i;
      break;
    case Coords::ss:
      basis.dim = canonical::enumerate_ss(d).size();
      break;
    case Coords::bss:
      basis.dim = canonical::enumerate_bss(d, p).size();
      break;
  }
  return basis;
}

std::vector<uint32_t> vectorize(const Poly& f, const MultiDegree& d, Coords coords,
                                const ComponentBasis& basis) {
  switch (coords) {
    case Coords::free_words: {
      std::vector<uint32_t> v(basis.dim, 0);
      for (auto& [w, c] : f.terms()) {
        auto it = basis.word_index.find(w);
        if (it == basis.word_index.end())
          throw std::logic_error("vectorize: word outside the component");
        v[it->second] = c;
      }
      return v;
    }
    case Coords::ss:
      return canonical::nf_vector(f, d, canonical::Modulus::T3);
    case Coords::bss:
      return canonical::nf_vector(f, d, canonical::Modulus::TG0);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

SpanReport instance_span(const SpaceSpec& spec, const MultiDegree& d, uint32_t p,
                         Coords coords, const Budget& b, FpSpan* out) {
  validate_coords(spec, coords);
  ComponentBasis basis = make_basis(d, p, coords, b);
  FpSpan local(p, basis.dim);
  FpSpan& span = out ? *out : local;
  SpanReport rep;
  rep.coords = coords;
  rep.dim = basis.dim;
  size_t counter = 0;
  size_t tag = 0;
  for (auto& s : spec.summands) {
    bool exact = true;
    enumerate_instances(s, spec, d, p, coords, b, counter, exact, [&](Instance&& inst) {
      span.add(vectorize(inst.poly, d, coords, basis), tag++);
    });
    rep.exact = rep.exact && exact;
  }
  rep.n_instances = counter;
  rep.rank = span.rank();
  return rep;
}

MemberResult member(const Poly& f, const SpaceSpec& spec, const Budget& b,
                    std::optional<Coords> coords_override) {
  Coords coords = coords_override.value_or(default_coords(spec));
  validate_coords(spec, coords);
  MemberResult res;
  res.coords = coords;
  res.member = true;
  res.exact = true;
  for (auto& s : spec.summands) res.exact = res.exact && summand_exact(s, spec, coords);
  for (auto& [d, comp] : freealg::components(f)) {
    ComponentResult cr;
    cr.d = d;
    ComponentBasis basis = make_basis(d, f.p(), coords, b);
    cr.dim = basis.dim;
    std::vector<uint32_t> target = vectorize(comp, d, coords, basis);
    bool target_zero = true;
    for (uint32_t c : target)
      if (c) target_zero = false;

    FpSpan span(f.p(), basis.dim);
    std::vector<std::string> descrs;
    size_t counter = 0;
    if (!target_zero) {
      try {
        for (auto& s : spec.summands) {
          bool exact = true;
          enumerate_instances(s, spec, d, f.p(), coords, b, counter, exact, [&](Instance&& inst) {
            size_t tag = descrs.size();
            descrs.push_back(inst.descr);
            span.add(vectorize(inst.poly, d, coords, basis), tag);
            // once the span fills the whole component, membership is settled
            if (span.rank() == basis.dim) throw SaturatedTag{};
          });
        }
      } catch (const SaturatedTag&) {
      }
    }
    cr.n_instances = counter;
    cr.rank = span.rank();
    auto combo = target_zero ? std::make_optional(std::vector<std::pair<size_t, uint32_t>>{})
                             : span.solve(target);
    if (combo) {
      cr.member = true;
      for (auto& [tag, c] : *combo) cr.combination.push_back({c, descrs[tag]});
    } else {
      cr.member = false;
      res.member = false;
      auto resid = span.reduce(target);
      for (size_t i = 0; i < resid.size(); ++i)
        if (resid[i]) cr.residual.push_back({i, resid[i]});
    }
    res.rank += cr.rank;
    res.components.push_back(std::move(cr));
  }
  return res;
}

}  // namespace spans
