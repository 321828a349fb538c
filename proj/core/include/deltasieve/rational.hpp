#pragma once

#include <compare>
#include <string>

#include "deltasieve/arith.hpp"

namespace deltasieve {

// Exact rational on 128-bit integers, always normalized (den > 0, reduced).
// Arithmetic throws std::overflow_error rather than wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(i64 n) : num_(n), den_(1) {}  // NOLINT: implicit by design for literals
  Rational(i128 n, i128 d);

  static Rational parse(const std::string& text);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  double to_double() const;
  std::string str() const;
  std::string decimal(int digits) const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Rational& o) const;

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

std::string to_string(i128 v);

}  // namespace deltasieve
