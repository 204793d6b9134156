#ifndef GRASSPAN_WORD_HPP
#define GRASSPAN_WORD_HPP

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace freealg {

// Variable index. Index 0 is legal (the distinguished variable x0 is an
// ordinary index).
using Var = uint32_t;

// A noncommutative monomial: a finite sequence of variable indices. The
// empty word is the unit and is only admitted by unitary polynomials.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Var> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Var> letters) : letters_(letters) {}

  const std::vector<Var>& letters() const { return letters_; }
  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Var operator[](size_t i) const { return letters_[i]; }

  Word concat(const Word& o) const {
    std::vector<Var> v = letters_;
    v.insert(v.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(v));
  }

  // Canonical term order: length first, then lexicographic on indices.
  bool operator<(const Word& o) const {
    if (letters_.size() != o.letters_.size())
      return letters_.size() < o.letters_.size();
    return letters_ < o.letters_;
  }
  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return !(*this == o); }

 private:
  std::vector<Var> letters_;
};

// Per-variable occurrence counts; zero counts are never stored.
class MultiDegree {
 public:
  MultiDegree() = default;

  static MultiDegree of_word(const Word& w) {
    MultiDegree d;
    for (Var v : w.letters()) d.bump(v, 1);
    return d;
  }

  void bump(Var v, uint32_t by) {
    if (by == 0) return;
    counts_[v] += by;
  }

  uint32_t operator[](Var v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
  }

  uint32_t total() const {
    uint32_t t = 0;
    for (auto& [v, c] : counts_) t += c;
    return t;
  }

  const std::map<Var, uint32_t>& counts() const { return counts_; }
  bool empty() const { return counts_.empty(); }

  MultiDegree plus(const MultiDegree& o) const {
    MultiDegree d = *this;
    for (auto& [v, c] : o.counts_) d.bump(v, c);
    return d;
  }

  // Componentwise difference; absent when any count would go negative.
  bool minus(const MultiDegree& o, MultiDegree& out) const {
    out = MultiDegree();
    auto d = counts_;
    for (auto& [v, c] : o.counts_) {
      auto it = d.find(v);
      if (it == d.end() || it->second < c) return false;
      it->second -= c;
    }
    for (auto& [v, c] : d)
      if (c) out.counts_[v] = c;
    return true;
  }

  bool operator<(const MultiDegree& o) const { return counts_ < o.counts_; }
  bool operator==(const MultiDegree& o) const { return counts_ == o.counts_; }
  bool operator!=(const MultiDegree& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (auto& [v, c] : counts_) {
      if (!first) s += ",";
      first = false;
      s += "x" + std::to_string(v) + ":" + std::to_string(c);
    }
    return s + "}";
  }

 private:
  std::map<Var, uint32_t> counts_;
};

inline MultiDegree multidegree(const Word& w) { return MultiDegree::of_word(w); }

}  // namespace freealg

#endif
