// Exact rational numbers backed by GMP, kept in canonical form
// (gcd(|num|, den) = 1, den > 0) at all times.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace mforge {

class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(long num, long den);

  /// Parses "a/b", plain integers, and decimal literals like "0.25".
  static Rat parse(const std::string& text);

  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }  // "a/b", or "a" when b = 1

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rat(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;  // canonical
};

}  // namespace mforge
