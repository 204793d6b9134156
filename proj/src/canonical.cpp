#include "grasspan/canonical.hpp"

#include <tuple>

namespace canonical {

std::string SSTerm::to_string() const {
  if (is_unit()) return "1";
  std::string s;
  auto power = [&](Var v, uint32_t e) {
    std::string t = "x" + std::to_string(v);
    if (e > 1) t += "^" + std::to_string(e);
    return t;
  };
  bool first = true;
  for (auto& [v, e] : beg) {
    if (!first) s += "*";
    s += power(v, e);
    first = false;
  }
  for (size_t i = 0; i + 1 < end.size(); i += 2) {
    if (!first) s += "*";
    first = false;
    s += "[x" + std::to_string(end[i].first) + ",x" + std::to_string(end[i + 1].first) + "]";
    if (end[i].second) s += "*" + power(end[i].first, end[i].second);
    if (end[i + 1].second) s += "*" + power(end[i + 1].first, end[i + 1].second);
  }
  return s;
}

namespace {

// Intermediate canonical shape modulo the triple-commutator ideal: a sorted
// commutative word part together with a product of variable brackets whose
// flattened index list is kept sorted and repetition-free. Products with a
// repeated bracket index vanish; reordering bracket slots costs the parity
// of the permutation.
struct ClassicalKey {
  std::vector<std::pair<Var, uint32_t>> word;  // sorted, exponents >= 1
  std::vector<Var> brackets;                   // sorted, distinct, even size

  bool operator<(const ClassicalKey& o) const {
    return std::tie(word, brackets) < std::tie(o.word, o.brackets);
  }
  bool operator==(const ClassicalKey& o) const {
    return word == o.word && brackets == o.brackets;
  }
};

using ClassicalForm = std::map<ClassicalKey, uint32_t>;

size_t count_greater(const std::vector<Var>& sorted, Var x) {
  return sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
}

bool contains(const std::vector<Var>& sorted, Var x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

void accumulate(ClassicalForm& form, const ClassicalKey& k, uint32_t c, const freealg::Field& F) {
  if (!c) return;
  auto it = form.find(k);
  if (it == form.end()) {
    form[k] = c;
  } else {
    it->second = F.add(it->second, c);
    if (!it->second) form.erase(it);
  }
}

// Multiply a classical form by the variable x on the right. The sorted
// insertion of x past a greater letter y extracts the bracket [y,x], which
// is -[x,y]; the bracket then merges into the sorted bracket list with the
// parity sign of its insertion. truncate_p > 0 drops any state whose word
// part reaches exponent truncate_p (such states carry a consecutive p-th
// power and vanish modulo the p-th-power T-ideal).
ClassicalForm right_mul_var(const ClassicalForm& form, Var x, const freealg::Field& F,
                            uint32_t truncate_p) {
  ClassicalForm out;
  for (auto& [k, c] : form) {
    // main term: x joins the sorted word
    {
      ClassicalKey k2 = k;
      auto it = std::lower_bound(k2.word.begin(), k2.word.end(), x,
                                 [](const auto& pr, Var v) { return pr.first < v; });
      uint32_t newexp = 1;
      if (it != k2.word.end() && it->first == x) {
        newexp = ++it->second;
      } else {
        k2.word.insert(it, {x, 1});
      }
      if (!(truncate_p && newexp >= truncate_p)) accumulate(out, k2, c, F);
    }
    // corrections: one per occurrence of a letter greater than x
    for (size_t i = 0; i < k.word.size(); ++i) {
      auto [y, e] = k.word[i];
      if (y <= x) continue;
      if (contains(k.brackets, x) || contains(k.brackets, y)) continue;  // repeated index: zero
      ClassicalKey k2 = k;
      if (e == 1)
        k2.word.erase(k2.word.begin() + i);
      else
        k2.word[i].second = e - 1;
      size_t inv = count_greater(k.brackets, x) + count_greater(k.brackets, y);
      k2.brackets.insert(std::upper_bound(k2.brackets.begin(), k2.brackets.end(), x), x);
      k2.brackets.insert(std::upper_bound(k2.brackets.begin(), k2.brackets.end(), y), y);
      // factor e for the multiplicity, -1 from [y,x] = -[x,y], parity of the merge
      uint32_t coef = F.mul(c, F.reduce(static_cast<long long>(e)));
      if ((inv + 1) % 2) coef = F.neg(coef);
      accumulate(out, k2, coef, F);
    }
  }
  return out;
}

ClassicalForm classical_of_word(const Word& w, const freealg::Field& F, uint32_t truncate_p) {
  ClassicalForm form;
  form[ClassicalKey{}] = 1;
  for (Var x : w.letters()) form = right_mul_var(form, x, F, truncate_p);
  return form;
}

ClassicalForm classical_nf(const Poly& f, uint32_t truncate_p) {
  freealg::Field F(f.p());
  ClassicalForm total;
  for (auto& [w, c] : f.terms()) {
    ClassicalForm part = classical_of_word(w, F, truncate_p);
    for (auto& [k, c2] : part) accumulate(total, k, F.mul(c, c2), F);
  }
  return total;
}

SSTerm reify(const ClassicalKey& k) {
  SSTerm t;
  for (auto& [v, e] : k.word)
    if (!contains(k.brackets, v)) t.beg.push_back({v, e});
  for (Var v : k.brackets) {
    uint32_t e = 0;
    for (auto& [u, eu] : k.word)
      if (u == v) e = eu;
    t.end.push_back({v, e});
  }
  return t;
}

// Classical normal form of an embedded SS term. By construction it is the
// term's own classical key with coefficient 1 plus states with strictly
// more brackets; asserted below. Memoized per (p, truncation, term).
struct EmbedCacheKey {
  uint32_t p;
  uint32_t truncate_p;
  SSTerm t;
  bool operator<(const EmbedCacheKey& o) const {
    return std::tie(p, truncate_p, t) < std::tie(o.p, o.truncate_p, o.t);
  }
};

const ClassicalForm& embed_nf(const SSTerm& t, const freealg::Field& F, uint32_t truncate_p) {
  thread_local std::map<EmbedCacheKey, ClassicalForm> cache;
  EmbedCacheKey key{F.p(), truncate_p, t};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Poly embedded = t.embed(F.p(), Mode::unitary);
  ClassicalForm nf = classical_nf(embedded, truncate_p);
  // sanity: unit leading coefficient, corrections strictly deeper
  size_t own_level = t.end.size();
  for (auto& [k, c] : nf) {
    if (k.brackets.size() == own_level) {
      SSTerm back = reify(k);
      if (!(back == t) || c != 1)
        throw std::logic_error("straightening: embedded SS term lost its leading coefficient");
    } else if (k.brackets.size() < own_level) {
      throw std::logic_error("straightening: embedded SS term produced a shallower state");
    }
  }
  return cache.emplace(std::move(key), std::move(nf)).first->second;
}

// Triangular change of coordinates from classical states to SS terms,
// by ascending bracket count.
SSForm classical_to_ss(ClassicalForm C, const freealg::Field& F, uint32_t truncate_p) {
  SSForm out(F.p());
  size_t level = 0;
  while (!C.empty()) {
    size_t max_level = 0;
    std::vector<std::pair<ClassicalKey, uint32_t>> batch;
    for (auto& [k, c] : C) {
      max_level = std::max(max_level, k.brackets.size());
      if (k.brackets.size() == level) batch.push_back({k, c});
    }
    if (batch.empty()) {
      if (level > max_level) throw std::logic_error("straightening: nonterminating elimination");
      ++level;
      continue;
    }
    for (auto& [k, lambda] : batch) {
      SSTerm t = reify(k);
      out.add_term(t, lambda);
      const ClassicalForm& en = embed_nf(t, F, truncate_p);
      for (auto& [k2, c2] : en) accumulate(C, k2, F.mul(lambda, F.neg(c2)), F);
    }
    ++level;
  }
  return out;
}

}  // namespace

SSForm straighten_t3(const Poly& f) {
  freealg::Field F(f.p());
  return classical_to_ss(classical_nf(f, 0), F, 0);
}

SSForm straighten_tg0(const Poly& f) {
  freealg::Field F(f.p());
  return classical_to_ss(classical_nf(f, f.p()), F, f.p());
}

SSForm reduce_tg0(const SSForm& F) {
  SSForm out(F.p());
  for (auto& [t, c] : F.terms())
    if (t.in_bss(F.p())) out.add_term(t, c);
  return out;
}

namespace {

std::vector<SSTerm> enumerate_impl(const MultiDegree& d, uint32_t bss_p) {
  std::vector<Var> support;
  for (auto& [v, c] : d.counts()) support.push_back(v);
  std::vector<SSTerm> out;
  size_t n = support.size();
  for (size_t s = 0; 2 * s <= n; ++s) {
    // choose 2s end variables, combinations in lexicographic order
    std::vector<size_t> idx(2 * s);
    for (size_t i = 0; i < 2 * s; ++i) idx[i] = i;
    while (true) {
      bool valid = true;
      std::vector<bool> in_end(n, false);
      for (size_t i : idx) in_end[i] = true;
      if (bss_p) {
        for (size_t i = 0; valid && i < n; ++i) {
          uint32_t deg = d[support[i]];
          if (in_end[i] ? deg > bss_p : deg >= bss_p) valid = false;
        }
      }
      if (valid) {
        SSTerm t;
        for (size_t i = 0; i < n; ++i) {
          if (in_end[i])
            t.end.push_back({support[i], d[support[i]] - 1});
          else
            t.beg.push_back({support[i], d[support[i]]});
        }
        out.push_back(std::move(t));
      }
      if (s == 0) break;
      // next combination
      size_t k = 2 * s;
      size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace

std::vector<SSTerm> enumerate_ss(const MultiDegree& d) { return enumerate_impl(d, 0); }

std::vector<SSTerm> enumerate_bss(const MultiDegree& d, uint32_t p) {
  return enumerate_impl(d, p);
}

std::vector<uint32_t> nf_vector(const Poly& f, const MultiDegree& d, Modulus m) {
  auto hom = freealg::is_multihomogeneous(f);
  if (!hom || (!f.is_zero() && *hom != d))
    throw std::invalid_argument("nf_vector: polynomial is not multihomogeneous of the given multidegree");
  SSForm nf = m == Modulus::T3 ? straighten_t3(f) : straighten_tg0(f);
  std::vector<SSTerm> basis = m == Modulus::T3 ? enumerate_ss(d) : enumerate_bss(d, f.p());
  std::map<SSTerm, size_t> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  std::vector<uint32_t> out(basis.size(), 0);
  for (auto& [t, c] : nf.terms()) {
    auto it = index.find(t);
    if (it == index.end())
      throw std::logic_error("nf_vector: normal form left the enumerated multidegree");
    out[it->second] = c;
  }
  return out;
}

}  // namespace canonical
