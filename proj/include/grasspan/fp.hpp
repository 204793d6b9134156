#ifndef GRASSPAN_FP_HPP
#define GRASSPAN_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace freealg {

// Arithmetic in the prime field F_p, p an odd prime. Residues are plain
// uint32_t values in [0, p); the Field object carries p and is the session
// configuration every container checks against. p is capped so that byte
// packed matrices and uint32 products stay exact.
class Field {
 public:
  explicit Field(uint32_t p) : p_(p) {
    if (p < 3 || p > 251 || !is_prime(p))
      throw std::invalid_argument("field characteristic must be an odd prime <= 251");
  }

  uint32_t p() const { return p_; }

  uint32_t reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }

  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p_; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + p_ - b) % p_; }
  uint32_t mul(uint32_t a, uint32_t b) const { return (a * b) % p_; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }

  uint32_t pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1 % p_;
    a %= p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Fermat inverse; zero has none.
  uint32_t inv(uint32_t a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p_ - 2);
  }

  // Binomial coefficient mod p by Lucas' theorem (exact for any n, r).
  uint32_t binomial(uint64_t n, uint64_t r) const {
    if (r > n) throw std::invalid_argument("binomial: r > n");
    uint32_t result = 1;
    while (n || r) {
      uint64_t nd = n % p_, rd = r % p_;
      if (rd > nd) return 0;
      result = mul(result, small_binomial(nd, rd));
      n /= p_;
      r /= p_;
    }
    return result;
  }

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  uint32_t small_binomial(uint64_t n, uint64_t r) const {
    // n, r < p <= 251: direct factorial arithmetic is exact in uint64.
    uint64_t num = 1, den = 1;
    for (uint64_t i = 0; i < r; ++i) {
      num = num * (n - i) % p_;
      den = den * (i + 1) % p_;
    }
    return mul(static_cast<uint32_t>(num), inv(static_cast<uint32_t>(den)));
  }

  static bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  uint32_t p_;
};

// Scalar bundles a residue with its field for the public helpers that the
// coefficient formulas use; internal hot paths work on raw residues.
struct Scalar {
  uint32_t value;
  uint32_t p;
};

inline Scalar mod_inverse(const Scalar& a) {
  Field f(a.p);
  return Scalar{f.inv(a.value), a.p};
}

inline Scalar binomial_mod_p(uint64_t n, uint64_t r, uint32_t p) {
  Field f(p);
  return Scalar{f.binomial(n, r), p};
}

}  // namespace freealg

#endif
