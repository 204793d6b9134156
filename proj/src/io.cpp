#include "grasspan/io.hpp"

#include <cctype>
#include <functional>

namespace io {

using freealg::Mode;
using freealg::Poly;
using freealg::Var;
using freealg::Word;
using grassmann::GElem;

namespace {

// Recursive-descent parser shared by the polynomial and Grassmann
// grammars; Atom is the hook that turns a variable/generator token into a
// value of the right algebra.
template <typename Value>
class Parser {
 public:
  Parser(const std::string& text, std::function<Value(uint64_t, size_t)> atom,
         std::function<Value(long long, size_t)> constant, bool brackets, char letter)
      : text_(text), atom_(std::move(atom)), constant_(std::move(constant)),
        brackets_(brackets), letter_(letter) {}

  Value run() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  uint64_t nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected a number", pos_);
    uint64_t n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + (text_[pos_] - '0');
      if (n > (1ull << 40)) throw ParseError("number too large", pos_);
      ++pos_;
    }
    return n;
  }

  Value expr() {
    Value v = term();
    while (true) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }

  Value term() {
    Value v = factor();
    while (eat('*')) v = v * factor();
    return v;
  }

  Value factor() {
    Value v = atom();
    if (eat('^')) {
      uint64_t e = nat();
      v = power(v, e);
    }
    return v;
  }

  Value atom() {
    skip_ws();
    size_t here = pos_;
    char c = peek();
    if (c == letter_) {
      ++pos_;
      return atom_(nat(), here);
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return constant_(static_cast<long long>(nat()), here);
    if (eat('(')) {
      Value v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (brackets_ && eat('[')) {
      Value a = expr();
      if (!eat(',')) throw ParseError("expected ',' in bracket", pos_);
      Value b = expr();
      if (!eat(']')) throw ParseError("expected ']'", pos_);
      return a * b - b * a;
    }
    throw ParseError("expected an atom", here);
  }

  static Value power(const Value& v, uint64_t e);

  const std::string& text_;
  size_t pos_ = 0;
  std::function<Value(uint64_t, size_t)> atom_;
  std::function<Value(long long, size_t)> constant_;
  bool brackets_;
  char letter_;
};

template <>
Poly Parser<Poly>::power(const Poly& v, uint64_t e) {
  return freealg::poly_pow(v, static_cast<uint32_t>(e));
}
template <>
GElem Parser<GElem>::power(const GElem& v, uint64_t e) {
  return grassmann::g_pow(v, static_cast<uint32_t>(e));
}

std::string render_power(const std::string& base, uint32_t e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

}  // namespace

Poly parse_poly(const std::string& text, uint32_t p, Mode mode) {
  Parser<Poly> parser(
      text,
      [p, mode](uint64_t idx, size_t) { return Poly::variable(p, mode, static_cast<Var>(idx)); },
      [p, mode](long long c, size_t pos) {
        Poly k = Poly::constant(p, c);
        if (mode == Mode::nonunitary && !k.is_zero())
          throw ParseError("unit literal in nonunitary mode", pos);
        return mode == Mode::nonunitary ? Poly::zero(p, mode) : k;
      },
      /*brackets=*/true, 'x');
  return parser.run();
}

GElem parse_gelem(const std::string& text, uint32_t p, int rank, Mode mode) {
  Parser<GElem> parser(
      text,
      [p, rank, mode](uint64_t idx, size_t pos) {
        if (idx < 1 || static_cast<int>(idx) > rank)
          throw ParseError("generator index out of rank range", pos);
        return GElem::generator(p, rank, static_cast<int>(idx), mode);
      },
      [p, rank, mode](long long c, size_t pos) {
        if (mode == Mode::nonunitary) {
          if (c % p != 0) throw ParseError("unit literal in nonunitary mode", pos);
          return GElem::zero(p, rank, mode);
        }
        return grassmann::g_scale(GElem::unit(p, rank), c);
      },
      /*brackets=*/false, 'e');
  return parser.run();
}

std::string print_word(const Word& w) {
  std::string s;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!s.empty()) s += "*";
    s += render_power("x" + std::to_string(w[i]), static_cast<uint32_t>(j - i));
    i = j;
  }
  return s;
}

std::string print_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (auto& [w, c] : f.terms()) {
    if (!s.empty()) s += " + ";
    if (w.empty()) {
      s += std::to_string(c);
    } else {
      if (c != 1) s += std::to_string(c) + "*";
      s += print_word(w);
    }
  }
  return s;
}

std::string print_gelem(const GElem& g) {
  if (g.is_zero()) return "0";
  std::string s;
  for (auto& [bits, c] : g.coeffs()) {
    if (!s.empty()) s += " + ";
    if (bits == 0) {
      s += std::to_string(c);
      continue;
    }
    std::string blade;
    for (int i = 0; i < grassmann::kMaxRank; ++i)
      if (bits & (grassmann::Subset(1) << i)) {
        if (!blade.empty()) blade += "*";
        blade += "e" + std::to_string(i + 1);
      }
    if (c != 1) s += std::to_string(c) + "*";
    s += blade;
  }
  return s;
}

}  // namespace io
