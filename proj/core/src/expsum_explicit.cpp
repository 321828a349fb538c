#include <cmath>
#include <numeric>

#include "deltasieve/expsum.hpp"
#include "deltasieve/rational.hpp"

namespace deltasieve::expsum {

using arith::inv;
using arith::reduce;
using arith::reduce128;

namespace {

i64 frame_c(const CongruenceFrame& f) {  // a^3 b^4 h^2
  const i64 a = f.a(), b = f.b();
  return a * a * a * b * b * b * b * f.h * f.h;
}

i64 frame_d(const CongruenceFrame& f) {  // a^3 b^2 h
  const i64 a = f.a(), b = f.b();
  return a * a * a * b * b * f.h;
}

i64 mulmod_s(i64 x, i64 y, i64 m) { return reduce128(static_cast<i128>(x) * y, m); }

}  // namespace

FrameSplit split_frame(const CongruenceFrame& frame, i64 m, i64 n) {
  FrameSplit s{};
  s.d = m == 0 ? frame.l : std::gcd(m < 0 ? -m : m, frame.l);
  s.l1 = frame.l / s.d;
  s.m1 = m / s.d;
  s.divisible = n % s.d == 0;
  s.n1 = s.divisible ? n / s.d : 0;
  return s;
}

cplx l1_factor_hensel(const CongruenceFrame& frame, const FrameSplit& s) {
  const i64 l1 = s.l1, q = l1 * l1;
  if (l1 == 1) return {1.0, 0.0};
  const i64 dbar = inv(s.d, q);
  const i64 A = mulmod_s(mulmod_s(frame_c(frame), reduce(s.m1, q), q), dbar, q);
  const i64 B = mulmod_s(mulmod_s(frame_d(frame), reduce(s.n1, q), q), dbar, q);
  // Critical points of A x^3 - B x^2 on units: 3A x = 2B.
  arith::IntPolynomial g{{reduce(-2 * B, q), mulmod_s(3, A, q)}};
  const i64 root_mod_l1 = mulmod_s(mulmod_s(2, B % l1, l1), inv(mulmod_s(3, A % l1, l1), l1), l1);
  const i64 x = arith::hensel_lift_unique(arith::Residue(root_mod_l1, l1), g).value();
  const i64 fx = reduce128(static_cast<i128>(A) * x % q * x % q * x - static_cast<i128>(B) * x % q * x, q);
  return static_cast<double>(l1) * unit_root(fx, q);
}

cplx l1_factor_closed(const CongruenceFrame& frame, const FrameSplit& s) {
  const i64 l1 = s.l1, q = l1 * l1;
  if (l1 == 1) return {1.0, 0.0};
  // -(hd)^-1 (k2 m1^-1)^2 (k3^-1 n1)^3 mod l1^2
  const i64 hd_inv = inv(mulmod_s(frame.h, s.d, q), q);
  const i64 t = mulmod_s(frame.k2, inv(reduce(s.m1, q), q), q);
  const i64 w = mulmod_s(inv(frame.k3, q), reduce(s.n1, q), q);
  i64 val = mulmod_s(hd_inv, mulmod_s(t, t, q), q);
  val = mulmod_s(val, mulmod_s(mulmod_s(w, w, q), w, q), q);
  return static_cast<double>(l1) * unit_root(-val, q);
}

cplx l1_factor_flipped(const CongruenceFrame& frame, const FrameSplit& s) {
  const i64 l1 = s.l1;
  const i128 n3 = static_cast<i128>(s.n1) * s.n1 * s.n1;
  const i128 k22 = frame.k2 * frame.k2;
  const i64 M = static_cast<i64>(static_cast<i128>(frame.k3) * frame.k3 * frame.k3 * frame.h * s.d * s.m1 * s.m1);
  // e(-k2^2 n1^3 / (M l1^2))
  cplx first = unit_root_frac(-k22 * n3, static_cast<i128>(M) * l1 * l1);
  // e(l1bar^2 k2^2 n1^3 / M), inverse taken mod M
  const i64 l1bar = inv(l1, M);
  const i64 num = reduce128(static_cast<i128>(mulmod_s(l1bar, l1bar, M)) * reduce128(k22 * reduce128(n3, M), M), M);
  cplx second = unit_root(num, M);
  return static_cast<double>(l1) * first * second;
}

ExpSumValue evaluate_E_explicit(const CongruenceFrame& frame, i64 m, i64 n) {
  frame.validate();
  const FrameSplit s = split_frame(frame, m, n);
  ExpSumValue zero;
  zero.term_count = 0;
  if (!s.divisible) return zero;

  if (m == 0) {
    // d = l, l1 = 1: E = d phi(e) f(a^3 b^2 h n2; d2) with e = (n1, d).
    const i64 e = std::gcd(s.n1 < 0 ? -s.n1 : s.n1, s.d);
    const i64 e_eff = s.n1 == 0 ? s.d : e;
    const i64 d2 = s.d / e_eff;
    const i64 n2 = s.n1 == 0 ? 0 : s.n1 / e_eff;
    ExpSumValue out;
    cplx f = gauss_f(reduce128(static_cast<i128>(frame_d(frame)) * n2, d2 == 0 ? 1 : d2), d2);
    out.value = static_cast<double>(s.d) * static_cast<double>(arith::euler_phi(e_eff)) * f;
    out.abs_error = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(out.value) + s.d * s.d);
    out.term_count = s.d * s.d;
    return out;
  }

  // The unit x = 2B/(3A) mod l1 exists only when n1 is a unit mod l1.
  if (std::gcd(s.n1 < 0 ? -s.n1 : s.n1, s.l1) != 1) return zero;

  const i64 l1bar = inv(s.l1, s.d);
  const i64 l1bar2 = mulmod_s(l1bar, l1bar, s.d);
  const i64 c = mulmod_s(mulmod_s(frame_c(frame), reduce(s.m1, s.d), s.d), l1bar2, s.d);
  const i64 dd = mulmod_s(mulmod_s(frame_d(frame), reduce(s.n1, s.d), s.d), l1bar2, s.d);
  // The mod d^2 component only sees z mod d, so it is d E(c, dd; d).
  ExpSumValue mod_d = E_sum(c, dd, s.d).scaled(s.d);
  ExpSumValue out = mod_d * l1_factor_flipped(frame, s);
  out.term_count = mod_d.term_count * s.l1;
  return out;
}

cplx gauss_f(i64 c, i64 q) {
  if (q < 1 || q % 2 == 0) throw DomainError("gauss_f: q must be odd and positive");
  auto fq = arith::factorize(q);
  if (!fq.squarefree()) throw DomainError("gauss_f: q must be square-free");
  cplx prod{1.0, 0.0};
  for (const auto& pp : fq.factors()) {
    const i64 p = pp.prime;
    const i64 arg = reduce128(-static_cast<i128>(c) * (q / p), p);
    auto le = arith::legendre_eps(arg, p);
    prod *= le.eps * (static_cast<double>(le.symbol) * std::sqrt(static_cast<double>(p))) - 1.0;
  }
  return prod;
}

namespace {
void require_flip_args(i64 m, i64 k) {
  if (m < 1 || k < 1) throw DomainError("kloosterman_flip_check: m, k must be >= 1");
  if (std::gcd(m, k) != 1) throw DomainError("kloosterman_flip_check: need (m,k)=1");
}
}  // namespace

double kloosterman_flip_deviation(i64 n, i64 m, i64 k) {
  require_flip_args(m, k);
  const i64 m2 = m * m, k2 = k * k;
  const i128 n3 = static_cast<i128>(n) * n * n;
  // e(-mbar^2 n^3 / k^2)
  const i64 mbar2 = inv(m2 % k2, k2);
  cplx lhs = unit_root(reduce128(-static_cast<i128>(mbar2) * reduce128(n3, k2), k2), k2);
  const i64 kbar2 = inv(k2 % m2, m2);
  cplx rhs = unit_root(reduce128(static_cast<i128>(kbar2) * reduce128(n3, m2), m2), m2) *
             unit_root_frac(-n3, static_cast<i128>(m2) * k2);
  return std::abs(lhs - rhs);
}

bool kloosterman_flip_check(i64 n, i64 m, i64 k) {
  require_flip_args(m, k);
  const i64 m2 = m * m, k2 = k * k;
  // Exact: mbar2/k^2 + kbar2/m^2 - 1/(m^2 k^2) is an integer.
  const Rational lhs = Rational(inv(m2 % k2, k2), k2) + Rational(inv(k2 % m2, m2), m2) -
                       Rational(1, static_cast<i128>(m2) * k2);
  if (lhs.den() != 1) return false;
  return kloosterman_flip_deviation(n, m, k) <= 1e-12;
}

}  // namespace deltasieve::expsum
