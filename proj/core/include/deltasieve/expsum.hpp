#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltasieve/arith.hpp"
#include "deltasieve/weight.hpp"

namespace deltasieve::expsum {

using cplx = std::complex<double>;

inline constexpr i64 kMaxRawModulus = 10000000;
inline constexpr i64 kMaxDoubleSumModulus = 10000;

// e(r/q) for an exact residue r mod q.
cplx unit_root(i64 r, i64 q);
// e(num/den) for an exact rational, reduced into [0,1) in integers first.
cplx unit_root_frac(i128 num, i128 den);

struct ExpSumValue {
  cplx value{};
  double abs_error = 0.0;
  i64 term_count = 0;

  ExpSumValue operator*(const ExpSumValue& o) const;
  ExpSumValue operator*(cplx exact_unit) const;  // multiply by a computed unit-modulus factor
  ExpSumValue scaled(i64 k) const;
};

// f(x) = c_1 x + ... + c_n x^n mod q (no constant term).
class PhasePolynomial {
 public:
  PhasePolynomial(std::vector<i64> coeffs_low_to_high, i64 modulus, bool coprime_only = false);
  static PhasePolynomial cubic(i64 c3, i64 c2, i64 c1, i64 modulus, bool coprime_only = false);

  i64 modulus() const { return q_; }
  bool coprime_only() const { return coprime_only_; }
  // coefficient(k) is c_k, reduced into [0, q); zero past the stored degree.
  i64 coefficient(int k) const;
  const std::vector<i64>& coefficients() const { return coeffs_; }
  // Highest k with c_k != 0 mod q, 0 for the zero phase.
  int degree() const;
  i64 eval(i64 x) const;
  PhasePolynomial negated() const;
  PhasePolynomial shifted(int k, i64 by) const;  // c_k += by
  std::string describe() const;

 private:
  std::vector<i64> coeffs_;  // coeffs_[k-1] = c_k
  i64 q_;
  bool coprime_only_;
};

ExpSumValue raw_phase_sum(const PhasePolynomial& p);

// E(c,d;q) = sum over units z mod q of e((c z^3 - d z^2)/q).
ExpSumValue E_sum(i64 c, i64 d, i64 q);
// F(c3,c2,c1;r), the unrestricted cubic sum.
ExpSumValue F_sum(i64 c3, i64 c2, i64 c1, i64 r);

struct CongruenceFrame {
  int k2 = 1;
  int k3 = 1;
  i64 h = 1;
  i64 l = 1;

  i64 a() const { return 3 / k3; }
  i64 b() const { return 2 / k2; }
  void validate() const;
  std::string describe() const;
};

struct DoubleSumSpec {
  CongruenceFrame frame;
  i64 m = 0;
  i64 n = 0;
};

// Solutions (c,d) mod l^2 of a^3 c^2 + b^2 h d^3 = 0 with (cd,l)=1, enumerated once.
class DoubleSumSolutions {
 public:
  explicit DoubleSumSolutions(const CongruenceFrame& frame);
  const CongruenceFrame& frame() const { return frame_; }
  i64 modulus() const { return modulus_; }
  const std::vector<std::pair<i64, i64>>& pairs() const { return pairs_; }
  ExpSumValue evaluate(i64 m, i64 n) const;

 private:
  CongruenceFrame frame_;
  i64 modulus_;
  std::vector<std::pair<i64, i64>> pairs_;
};

ExpSumValue cal_E(const DoubleSumSpec& spec);
// Right side of the change of variables: E(a^3 b^4 h^2 m, a^3 b^2 h n; l^2).
ExpSumValue exptrans_rhs(const CongruenceFrame& frame, i64 m, i64 n);

struct FrameSplit {
  i64 d;
  i64 l1;
  i64 m1;
  i64 n1;  // meaningful only when d | n
  bool divisible;
};
FrameSplit split_frame(const CongruenceFrame& frame, i64 m, i64 n);

ExpSumValue evaluate_E_explicit(const CongruenceFrame& frame, i64 m, i64 n);

// The modulus-l1^2 factor E(a^3 b^4 h^2 m1 dbar, a^3 b^2 h n1 dbar; l1^2) by two routes:
// lifting the critical point with Hensel, and the closed form after substitution.
cplx l1_factor_hensel(const CongruenceFrame& frame, const FrameSplit& s);
cplx l1_factor_closed(const CongruenceFrame& frame, const FrameSplit& s);
// Same factor after flipping the Kloosterman fraction onto modulus k3^3 h d m1^2.
cplx l1_factor_flipped(const CongruenceFrame& frame, const FrameSplit& s);

// f(c;q) = prod over p | q of (eps_p ((-c q/p)/p) sqrt(p) - 1), q odd square-free.
cplx gauss_f(i64 c, i64 q);

// Checks inv(m^2 mod k^2)/k^2 + inv(k^2 mod m^2)/m^2 = 1/(m^2 k^2) mod 1 exactly and
// e(-mbar^2 n^3/k^2) = e(kbar^2 n^3/m^2) e(-n^3/(m^2 k^2)) numerically.
bool kloosterman_flip_check(i64 n, i64 m, i64 k);
double kloosterman_flip_deviation(i64 n, i64 m, i64 k);

struct Lemma3Result {
  bool zero;                               // certified: sum vanishes because delta does not divide c1
  std::optional<PhasePolynomial> reduced;  // f/delta mod Q/delta when not zero
  i64 factor;                              // delta
};
Lemma3Result lemma3_reduce(const PhasePolynomial& p, i64 delta);

struct LoxtonSchmidtBound {
  int eta;
  i128 semi_disc;
  int derivative_degree;
  double bound;
  double observed;
  bool holds;
};
LoxtonSchmidtBound loxton_schmidt(const PhasePolynomial& p);

// Parameters of the second Poisson step: q = k3^3 h d (m*)^2, q = qt d.
struct CrtSplitParams {
  int k2 = 1;
  int k3 = 1;
  i64 h = 1;
  i64 d = 1;
  i64 m_star = 1;
  i64 m_tilde = 1;
  i64 u = 0;
  i64 l1 = 1;

  i64 q() const;
  std::string describe() const;
};

struct CrtSplitResult {
  cplx v_sum;           // sum over v mod q mt^2
  cplx factored;        // x-sum times y-sum
  cplx x_sum;           // sum over x mod q
  cplx zy_sum;          // sum over z mod d of E e() F(...; qt)
  double reduction_dev;
  double reduction2_dev;
  double tolerance_reduction;
  double tolerance_reduction2;
  bool ok() const {
    return reduction_dev <= tolerance_reduction && reduction2_dev <= tolerance_reduction2;
  }
};
CrtSplitResult crt_split_check(const CrtSplitParams& params);

// F(l1bar^2 k2^2 q^2, 0, u; mt^2).
struct FevParams {
  int k2 = 1;
  i64 q = 1;
  i64 l1 = 1;
  i64 m_tilde = 1;
  i64 u = 0;
};
ExpSumValue F_explicit(const FevParams& params);
ExpSumValue F_explicit_brute(const FevParams& params);

struct PoissonCheckResult {
  double lhs;
  double rhs;
  double delta;
  i64 lattice_terms;
  i64 dual_terms;
};
PoissonCheckResult poisson_check(const CongruenceFrame& frame, double X, const SchwartzWeight& weight,
                                 double truncation = 1e-14);
// Modulus-one case: sum Gamma(x/s) against s sum Gammahat(s m).
PoissonCheckResult poisson_check_plain(double s, const SchwartzWeight& weight, double truncation = 1e-14);

}  // namespace deltasieve::expsum
