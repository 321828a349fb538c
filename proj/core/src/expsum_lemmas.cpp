#include <cmath>
#include <numeric>
#include <sstream>

#include "deltasieve/expsum.hpp"
#include "deltasieve/pairwise_sum.hpp"

namespace deltasieve::expsum {

using arith::inv;
using arith::reduce;
using arith::reduce128;

namespace {
i64 mulmod_s(i64 x, i64 y, i64 m) { return reduce128(static_cast<i128>(x) * y, m); }
}  // namespace

Lemma3Result lemma3_reduce(const PhasePolynomial& p, i64 delta) {
  if (p.coprime_only()) throw DomainError("lemma3_reduce: needs an unrestricted sum");
  const i64 Q = p.modulus();
  if (delta < 1 || Q % delta != 0) throw DomainError("lemma3_reduce: delta must divide Q");
  const int n = static_cast<int>(p.coefficients().size());
  for (int k = 2; k <= n; ++k) {
    if (p.coefficient(k) % delta != 0) {
      throw DomainError("lemma3_reduce: delta must divide c_" + std::to_string(k));
    }
  }
  if (p.coefficient(1) % delta != 0) return {true, std::nullopt, delta};
  std::vector<i64> reduced;
  for (int k = 1; k <= n; ++k) reduced.push_back(p.coefficient(k) / delta);
  return {false, PhasePolynomial(std::move(reduced), Q / delta, false), delta};
}

LoxtonSchmidtBound loxton_schmidt(const PhasePolynomial& p) {
  if (p.coprime_only()) throw DomainError("loxton_schmidt: needs an unrestricted sum");
  const int deg = p.degree();
  if (deg > 3) throw DomainError("loxton_schmidt: phases of degree above 3 are not supported");
  if (deg <= 1) throw DomainError("loxton_schmidt: f' is constant (degenerate)");
  const i64 Q = p.modulus();
  const i128 c3 = p.coefficient(3), c2 = p.coefficient(2), c1 = p.coefficient(1);
  LoxtonSchmidtBound out{};
  if (deg == 3) {
    // f' = 3c3 x^2 + 2c2 x + c1, discriminant D = 4c2^2 - 12 c3 c1.
    out.derivative_degree = 2;
    const i128 D = 4 * c2 * c2 - 12 * c3 * c1;
    if (D != 0) {
      out.eta = 1;
      out.semi_disc = -D;  // A^2 (z1-z2)(z2-z1)
    } else {
      out.eta = 2;
      out.semi_disc = 9 * c3 * c3;  // A^2 with a double root
    }
  } else {
    // f' = 2c2 x + c1: one simple root, empty product.
    out.derivative_degree = 1;
    out.eta = 1;
    out.semi_disc = 1;
  }
  const double g = static_cast<double>(arith::gcd128(out.semi_disc, Q));
  const double qd = static_cast<double>(Q);
  const double two_eta = 2.0 * out.eta;
  out.bound = std::pow(qd, 1.0 - 1.0 / two_eta) * std::pow(g, 1.0 / two_eta) *
              std::pow(static_cast<double>(out.derivative_degree), arith::factorize(Q).omega());
  ExpSumValue s = raw_phase_sum(p);
  out.observed = std::abs(s.value);
  out.holds = out.observed <= out.bound * (1.0 + 1e-12) + s.abs_error;
  return out;
}

i64 CrtSplitParams::q() const {
  return static_cast<i64>(k3) * k3 * k3 * h * d * m_star * m_star;
}

std::string CrtSplitParams::describe() const {
  std::ostringstream os;
  os << "k2=" << k2 << " k3=" << k3 << " h=" << h << " d=" << d << " m*=" << m_star
     << " mt=" << m_tilde << " u=" << u << " l1=" << l1;
  return os.str();
}

CrtSplitResult crt_split_check(const CrtSplitParams& P) {
  if (P.k2 != 1 && P.k2 != 2) throw DomainError("crt_split_check: k2 must be 1 or 2");
  if (P.k3 != 1 && P.k3 != 3) throw DomainError("crt_split_check: k3 must be 1 or 3");
  if (P.h < 1 || P.d < 1 || P.l1 < 1 || P.m_star == 0 || P.m_tilde == 0) {
    throw DomainError("crt_split_check: h, d, l1 positive and m*, mt nonzero");
  }
  const i64 q = P.q();
  const i64 mt = P.m_tilde < 0 ? -P.m_tilde : P.m_tilde;
  const i64 mt2 = mt * mt;
  const i64 big = q * mt2;
  if (std::gcd(mt, q) != 1) throw DomainError("crt_split_check: need (mt, q)=1");
  if (std::gcd(P.l1, big) != 1) throw DomainError("crt_split_check: need (l1, q mt)=1");
  if (big > kMaxDoubleSumModulus) throw LimitExceeded("modulus", "crt_split_check needs q mt^2 <= 10^4");

  const i64 a = 3 / P.k3, b = 2 / P.k2;
  const i64 d = P.d;
  // One inverse of l1 modulo q mt^2 serves every modulus dividing it.
  const i64 l1bar = inv(P.l1, big);
  const i64 l1bar2 = mulmod_s(l1bar, l1bar, big);
  const i64 A0 = mulmod_s(reduce128(static_cast<i128>(a * a * a * b * b * b * b * P.h * P.h) * P.m_star % d * P.m_tilde, d),
                          l1bar2 % d, d);
  const i64 B0 = mulmod_s(a * a * a * b * b * P.h % d, l1bar2 % d, d);
  // E(A0, B0 v; d) depends on v mod d only.
  std::vector<ExpSumValue> e_tab;
  for (i64 z = 0; z < d; ++z) e_tab.push_back(E_sum(A0, mulmod_s(B0, z, d), d));
  const i64 K0 = mulmod_s(l1bar2, P.k2 * P.k2, big);

  PairwiseSum<cplx> lhs;
  for (i64 v = 0; v < big; ++v) {
    i64 ph = reduce128(static_cast<i128>(K0) * v % big * v % big * v + static_cast<i128>(P.u) * v, big);
    lhs.add(e_tab[v % d].value * unit_root(ph, big));
  }

  const i64 mt4 = reduce128(static_cast<i128>(mt2) * mt2, q);
  const i64 K = mulmod_s(K0 % q, mt4, q);  // l1bar^2 k2^2 mt^4 mod q
  PairwiseSum<cplx> xs;
  for (i64 x = 0; x < q; ++x) {
    i64 ph = reduce128(static_cast<i128>(K) * x % q * x % q * x + static_cast<i128>(P.u) * x, q);
    xs.add(e_tab[reduce128(static_cast<i128>(x) * mt2, d)].value * unit_root(ph, q));
  }
  const i64 q2 = reduce128(static_cast<i128>(q) * q, mt2);
  ExpSumValue ysum = F_sum(mulmod_s(K0 % mt2, q2, mt2), 0, P.u, mt2);

  const i64 qt = q / d;
  PairwiseSum<cplx> zs;
  for (i64 z = 0; z < d; ++z) {
    i64 ph = reduce128(static_cast<i128>(K) * z % q * z % q * z + static_cast<i128>(P.u) * z, q);
    const i64 Kq = K % qt;
    ExpSumValue inner = F_sum(mulmod_s(Kq, d * d % qt, qt), mulmod_s(Kq, 3 * d * z % qt, qt),
                              reduce128(static_cast<i128>(3) * Kq * z % qt * z + P.u, qt), qt);
    zs.add(e_tab[reduce128(static_cast<i128>(z) * mt2, d)].value * unit_root(ph, q) * inner.value);
  }

  CrtSplitResult r{};
  r.v_sum = lhs.total();
  r.x_sum = xs.total();
  r.factored = r.x_sum * ysum.value;
  r.zy_sum = zs.total();
  r.reduction_dev = std::abs(r.v_sum - r.factored);
  r.reduction2_dev = std::abs(r.x_sum - r.zy_sum);
  r.tolerance_reduction = 1e-8 * static_cast<double>(big + 1);
  r.tolerance_reduction2 = 1e-8 * static_cast<double>(q + 1);
  return r;
}

namespace {
void require_fev(const FevParams& P) {
  if (P.k2 != 1 && P.k2 != 2) throw DomainError("F_explicit: k2 must be 1 or 2");
  if (P.m_tilde == 0 || P.q < 1 || P.l1 < 1) throw DomainError("F_explicit: need mt != 0, q >= 1, l1 >= 1");
  const i64 mt = P.m_tilde < 0 ? -P.m_tilde : P.m_tilde;
  if (std::gcd(mt, 6 * P.q * P.l1) != 1) throw DomainError("F_explicit: need (mt, 6 q l1)=1");
  if (mt > 1000) throw LimitExceeded("modulus", "F_explicit needs mt^2 <= 10^6");
}
}  // namespace

ExpSumValue F_explicit_brute(const FevParams& P) {
  require_fev(P);
  const i64 mt = P.m_tilde < 0 ? -P.m_tilde : P.m_tilde;
  const i64 r = mt * mt;
  const i64 l1bar = inv(P.l1, r);
  const i64 kq = mulmod_s(P.k2, P.q % r, r);
  const i64 c3 = mulmod_s(mulmod_s(l1bar, l1bar, r), mulmod_s(kq, kq, r), r);
  return F_sum(c3, 0, P.u, r);
}

ExpSumValue F_explicit(const FevParams& P) {
  require_fev(P);
  const i64 mt = P.m_tilde < 0 ? -P.m_tilde : P.m_tilde;
  const i64 r = mt * mt;
  ExpSumValue out;
  if (mt == 1) {
    out.value = 1.0;
    out.term_count = 1;
    return out;
  }
  const i64 target = mulmod_s(reduce(-P.u, mt), inv(3, mt), mt);
  const auto roots = arith::sqrt_mod(target, mt);
  const i64 w = mulmod_s(inv(mulmod_s(P.k2, P.q % r, r), r), P.l1 % r, r);  // (k2 q)^-1 l1 mod mt^2
  PairwiseSum<cplx> acc;
  for (i64 x1 : roots) {
    i64 ph = reduce128((static_cast<i128>(x1) * x1 % r * x1 + static_cast<i128>(P.u) * x1) % r * w, r);
    acc.add(unit_root(ph, r));
  }
  out.value = acc.total() * static_cast<double>(mt);
  out.term_count = static_cast<i64>(roots.size()) * mt;
  out.abs_error = static_cast<double>(mt) * static_cast<double>(roots.size() + 1) * 32.0 *
                  std::numeric_limits<double>::epsilon();
  return out;
}

}  // namespace deltasieve::expsum
