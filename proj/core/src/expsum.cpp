#include "deltasieve/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "deltasieve/pairwise_sum.hpp"

namespace deltasieve::expsum {

using arith::reduce;
using arith::reduce128;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Rounding of sin/cos at an argument of modulus at most pi, including the
// rounding of 2 pi r / q itself.
constexpr double kTermError = 16.0 * kEps;

double sum_error(i64 n) {
  return static_cast<double>(n) * kEps * (kTermError / kEps + PairwiseSum<cplx>::error_factor(n));
}

}  // namespace

cplx unit_root(i64 r, i64 q) {
  r = reduce(r, q);
  if (r == 0) return {1.0, 0.0};
  // Centre the residue so the angle lies in (-pi, pi].
  i64 centred = 2 * r > q ? r - q : r;
  if (4 * r == q) return {0.0, 1.0};
  if (2 * r == q) return {-1.0, 0.0};
  if (4 * r == 3 * q) return {0.0, -1.0};
  double angle = 2.0 * std::numbers::pi * static_cast<double>(centred) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

cplx unit_root_frac(i128 num, i128 den) {
  if (den <= 0) throw DomainError("unit_root_frac: denominator must be positive");
  i128 r = num % den;
  if (r < 0) r += den;
  i128 g = arith::gcd128(r == 0 ? den : r, den);
  r /= g;
  i128 d = den / g;
  if (d > arith::kMaxModulus) {
    // Fall back to long double on the reduced fraction.
    long double x = static_cast<long double>(r) / static_cast<long double>(d);
    if (x > 0.5L) x -= 1.0L;
    long double angle = 2.0L * std::numbers::pi_v<long double> * x;
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
  }
  return unit_root(static_cast<i64>(r), static_cast<i64>(d));
}

ExpSumValue ExpSumValue::operator*(const ExpSumValue& o) const {
  ExpSumValue out;
  out.value = value * o.value;
  out.abs_error = std::abs(value) * o.abs_error + std::abs(o.value) * abs_error +
                  abs_error * o.abs_error + 2.0 * kEps * std::abs(out.value);
  out.term_count = term_count * o.term_count;
  return out;
}

ExpSumValue ExpSumValue::operator*(cplx exact_unit) const {
  ExpSumValue out = *this;
  out.value = value * exact_unit;
  out.abs_error = abs_error + (kTermError + 2.0 * kEps) * std::abs(value);
  return out;
}

ExpSumValue ExpSumValue::scaled(i64 k) const {
  ExpSumValue out = *this;
  double kk = static_cast<double>(k);
  out.value = value * kk;
  out.abs_error = abs_error * std::abs(kk) + kEps * std::abs(out.value);
  out.term_count = term_count * (k < 0 ? -k : k);
  return out;
}

PhasePolynomial::PhasePolynomial(std::vector<i64> coeffs, i64 modulus, bool coprime_only)
    : coeffs_(std::move(coeffs)), q_(modulus), coprime_only_(coprime_only) {
  if (q_ < 1) throw DomainError("PhasePolynomial: modulus must be >= 1");
  if (q_ > arith::kMaxModulus) throw DomainError("PhasePolynomial: modulus above 2^62");
  for (auto& c : coeffs_) c = reduce(c, q_);
}

PhasePolynomial PhasePolynomial::cubic(i64 c3, i64 c2, i64 c1, i64 modulus, bool coprime_only) {
  return PhasePolynomial({c1, c2, c3}, modulus, coprime_only);
}

i64 PhasePolynomial::coefficient(int k) const {
  if (k < 1 || static_cast<std::size_t>(k) > coeffs_.size()) return 0;
  return coeffs_[k - 1];
}

int PhasePolynomial::degree() const {
  for (int k = static_cast<int>(coeffs_.size()); k >= 1; --k) {
    if (coeffs_[k - 1] != 0) return k;
  }
  return 0;
}

i64 PhasePolynomial::eval(i64 x) const {
  x = reduce(x, q_);
  i128 acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = (acc + *it) % q_;
    acc = acc * x % q_;
  }
  return static_cast<i64>(acc);
}

PhasePolynomial PhasePolynomial::negated() const {
  std::vector<i64> neg;
  neg.reserve(coeffs_.size());
  for (i64 c : coeffs_) neg.push_back(-c);
  return PhasePolynomial(std::move(neg), q_, coprime_only_);
}

PhasePolynomial PhasePolynomial::shifted(int k, i64 by) const {
  std::vector<i64> c = coeffs_;
  if (static_cast<std::size_t>(k) > c.size()) c.resize(k, 0);
  c[k - 1] += by;
  return PhasePolynomial(std::move(c), q_, coprime_only_);
}

std::string PhasePolynomial::describe() const {
  std::ostringstream os;
  os << "f=";
  bool first = true;
  for (int k = static_cast<int>(coeffs_.size()); k >= 1; --k) {
    if (!first) os << "+";
    os << coeffs_[k - 1] << "x^" << k;
    first = false;
  }
  if (first) os << "0";
  os << " mod " << q_ << (coprime_only_ ? " units" : "");
  return os.str();
}

ExpSumValue raw_phase_sum(const PhasePolynomial& p) {
  const i64 q = p.modulus();
  if (q > kMaxRawModulus) {
    throw LimitExceeded("modulus", "raw_phase_sum needs q <= 10^7, got " + std::to_string(q));
  }
  PairwiseSum<cplx> acc;
  for (i64 x = 0; x < q; ++x) {
    if (p.coprime_only() && std::gcd(x, q) != 1) continue;
    acc.add(unit_root(p.eval(x), q));
  }
  ExpSumValue out;
  out.value = acc.total();
  out.term_count = static_cast<i64>(acc.count());
  out.abs_error = sum_error(out.term_count);
  return out;
}

ExpSumValue E_sum(i64 c, i64 d, i64 q) {
  if (q < 1) throw DomainError("E_sum: q must be >= 1");
  return raw_phase_sum(PhasePolynomial({0, reduce(-d, q), c}, q, true));
}

ExpSumValue F_sum(i64 c3, i64 c2, i64 c1, i64 r) {
  return raw_phase_sum(PhasePolynomial::cubic(c3, c2, c1, r, false));
}

void CongruenceFrame::validate() const {
  if (k2 != 1 && k2 != 2) throw DomainError("frame: k2 must be 1 or 2");
  if (k3 != 1 && k3 != 3) throw DomainError("frame: k3 must be 1 or 3");
  if (h < 1 || std::gcd(h, i64{6}) != 1) throw DomainError("frame: need h >= 1 and (h,6)=1");
  if (l < 1) throw DomainError("frame: l must be >= 1");
  if (!arith::factorize(l).squarefree()) throw DomainError("frame: l must be square-free");
  if (std::gcd(l, 6 * h) != 1) throw DomainError("frame: need (l,6h)=1");
}

std::string CongruenceFrame::describe() const {
  std::ostringstream os;
  os << "k2=" << k2 << " k3=" << k3 << " h=" << h << " l=" << l;
  return os.str();
}

DoubleSumSolutions::DoubleSumSolutions(const CongruenceFrame& frame) : frame_(frame) {
  frame.validate();
  modulus_ = frame.l * frame.l;
  if (modulus_ > kMaxDoubleSumModulus) {
    throw LimitExceeded("modulus", "double sum needs l^2 <= 10^4");
  }
  const i64 q = modulus_;
  const i64 a3 = frame.a() * frame.a() * frame.a();
  const i64 b2h = frame.b() * frame.b() * frame.h;
  // Bucket c by a^3 c^2 mod q, then match each d against -b^2 h d^3.
  std::vector<std::vector<i64>> by_value(static_cast<std::size_t>(q));
  for (i64 c = 0; c < q; ++c) {
    if (std::gcd(c, frame.l) != 1) continue;
    by_value[reduce128(static_cast<i128>(a3) * c % q * c, q)].push_back(c);
  }
  for (i64 d = 0; d < q; ++d) {
    if (std::gcd(d, frame.l) != 1) continue;
    i64 target = reduce128(-static_cast<i128>(b2h) * d % q * d % q * d, q);
    for (i64 c : by_value[target]) pairs_.emplace_back(c, d);
  }
  std::sort(pairs_.begin(), pairs_.end());
}

ExpSumValue DoubleSumSolutions::evaluate(i64 m, i64 n) const {
  const i64 q = modulus_;
  const i64 mr = reduce(m, q), nr = reduce(n, q);
  PairwiseSum<cplx> acc;
  for (const auto& [c, d] : pairs_) {
    acc.add(unit_root(reduce128(static_cast<i128>(c) * mr + static_cast<i128>(d) * nr, q), q));
  }
  ExpSumValue out;
  out.value = acc.total();
  out.term_count = static_cast<i64>(acc.count());
  out.abs_error = sum_error(out.term_count);
  return out;
}

ExpSumValue cal_E(const DoubleSumSpec& spec) {
  return DoubleSumSolutions(spec.frame).evaluate(spec.m, spec.n);
}

ExpSumValue exptrans_rhs(const CongruenceFrame& frame, i64 m, i64 n) {
  frame.validate();
  const i64 a = frame.a(), b = frame.b(), h = frame.h, q = frame.l * frame.l;
  const i64 c = reduce128(static_cast<i128>(a * a * a * b * b * b * b * h * h) * m, q);
  const i64 d = reduce128(static_cast<i128>(a * a * a * b * b * h) * n, q);
  return E_sum(c, d, q);
}

}  // namespace deltasieve::expsum
