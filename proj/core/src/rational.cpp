#include "deltasieve/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace deltasieve {

namespace {

using arith::gcd128;

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
  return r;
}

i128 parse_int(const std::string& s) {
  if (s.empty()) throw DomainError("Rational: empty integer");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw DomainError("Rational: malformed integer '" + s + "'");
  i128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw DomainError("Rational: malformed integer '" + s + "'");
    v = checked_add(checked_mul(v, 10), s[i] - '0');
  }
  return neg ? -v : v;
}

}  // namespace

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string out;
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    out.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
    v /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

Rational::Rational(i128 n, i128 d) {
  if (d == 0) throw DomainError("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    i128 scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale = checked_mul(scale, 10);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    i128 w = parse_int(whole);
    i128 f = frac.empty() ? 0 : parse_int(frac);
    i128 n = checked_add(checked_mul(w < 0 ? -w : w, scale), f);
    return Rational(neg ? -n : n, scale);
  }
  return Rational(parse_int(text), 1);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

std::string Rational::decimal(int digits) const {
  i128 n = num_ < 0 ? -num_ : num_;
  std::string out = (num_ < 0 ? "-" : "") + to_string(n / den_);
  i128 rem = n % den_;
  if (digits > 0) out.push_back('.');
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    out.push_back(static_cast<char>('0' + static_cast<int>(rem / den_)));
    rem %= den_;
  }
  return out;
}

Rational Rational::operator+(const Rational& o) const {
  i128 g = gcd128(den_, o.den_);
  i128 d = checked_mul(den_ / g, o.den_);
  return Rational(checked_add(checked_mul(num_, o.den_ / g), checked_mul(o.num_, den_ / g)), d);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  i128 g1 = gcd128(num_, o.den_), g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw DomainError("Rational: division by zero");
  return *this * Rational(o.den_, o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  i128 lhs = checked_mul(num_, o.den_), rhs = checked_mul(o.num_, den_);
  return lhs <=> rhs;
}

}  // namespace deltasieve
