#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "deltasieve/arith.hpp"

namespace deltasieve::characters {

using cplx = std::complex<double>;

inline constexpr i64 kMaxCharacterModulus = 10000;

// (Z/qZ)^* as a product of cyclic factors with explicit generators.
class UnitGroup {
 public:
  explicit UnitGroup(i64 q);

  i64 modulus() const { return q_; }
  i64 order() const { return order_; }
  // Lcm of the cyclic orders; character values are powers of e(1/exponent).
  i64 exponent() const { return exponent_; }
  const std::vector<i64>& generators() const { return gens_; }
  const std::vector<i64>& cyclic_orders() const { return orders_; }
  bool is_unit(i64 n) const { return logs_[arith::reduce(n, q_) * stride()] >= 0; }
  // Discrete logarithm of unit n with respect to generator i.
  int log(i64 n, std::size_t i) const { return logs_[arith::reduce(n, q_) * stride() + i]; }
  cplx root(i64 k) const { return roots_[arith::reduce(k, exponent_)]; }

 private:
  std::size_t stride() const { return gens_.empty() ? 1 : gens_.size(); }
  i64 q_;
  i64 order_ = 1;
  i64 exponent_ = 1;
  std::vector<i64> gens_;
  std::vector<i64> orders_;
  std::vector<int> logs_;  // -1 marks non-units
  std::vector<cplx> roots_;
};

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<i64> exponents);

  i64 modulus() const { return group_->modulus(); }
  const std::vector<i64>& exponents() const { return exponents_; }
  const UnitGroup& group() const { return *group_; }

  cplx operator()(i64 n) const;
  // chi(n) = e(k/exponent); nullopt for non-units.
  std::optional<i64> phase(i64 n) const;
  bool is_principal() const;
  bool is_primitive() const;
  i64 order() const;
  DirichletCharacter conj() const;

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::vector<i64> exponents_;
};

std::vector<DirichletCharacter> character_table(i64 q);
DirichletCharacter principal_character(i64 q);

// tau(chi) = sum over x mod q of chi(x) e(x/q).
cplx tau(const DirichletCharacter& chi);

// e(w n) with either a real or an exact rational frequency.
class Twist {
 public:
  static Twist real(double w);
  static Twist rational(i64 a, i64 r);

  bool is_rational() const { return r_ > 0; }
  i64 numerator() const { return a_; }
  i64 denominator() const { return r_; }
  double frequency() const;
  cplx operator()(i64 n) const;

 private:
  double w_ = 0.0;
  i64 a_ = 0;
  i64 r_ = 0;
};

struct APMobiusSumSpec {
  double lower = 0.0;  // L, exclusive
  double upper = 0.0;  // s, inclusive
  Twist twist = Twist::real(0.0);
  i64 q1 = 1;
  i64 j = 0;
  i64 coprime_to = 1;
};

// S_j(s,w) = sum over L < n <= s, (n, coprime_to) = 1, n = j mod q1 of mu(n) e(w n).
cplx ap_mobius_sum(const APMobiusSumSpec& spec);

struct DecompositionResult {
  cplx direct;
  cplx reconstructed;
  double delta;
};

// Reconstructs S_j(s, a/r) from characters mod q1 and mod r/f, f | r.
// Precomputes the character-independent Mobius class sums once, so many
// (j, a) pairs at fixed (q1, r, L, s, C) are cheap.
class DecompositionEngine {
 public:
  static constexpr i64 kMaxQ1 = 20;
  static constexpr i64 kMaxR = 12;
  static constexpr i64 kMaxS = 10000;

  DecompositionEngine(i64 q1, i64 r, double lower, double upper, i64 coprime_to);
  DecompositionResult check(i64 j, i64 a) const;
  cplx direct(i64 j, i64 a) const;
  cplx reconstructed(i64 j, i64 a) const;

 private:
  struct Block {
    i64 f;
    i64 r1;
    std::vector<DirichletCharacter> chis1;
    std::vector<cplx> taus;
    // T[chi][chi1] = sum of (chi chi0 conj(chi1))(n1) mu(n1) over L/f < n1 <= s/f.
    std::vector<std::vector<cplx>> T;
  };
  i64 q1_, r_, C_;
  double L_, s_;
  std::vector<DirichletCharacter> chis_;
  std::vector<Block> blocks_;
  std::vector<std::int8_t> mu_;
};

DecompositionResult decomposition_check(const APMobiusSumSpec& spec);

struct DirichletApproximation {
  i64 a;
  i64 r;
  double beta;  // w - a/r
};
DirichletApproximation dirichlet_approximation(double w, i64 R);

struct SjRow {
  i64 q1;
  double s;
  double w;
  double sum_abs;
  double ratio;
};
// Sum over j of |S_j(s,w)| against q1^(1/2) s^(5/6). Observational only.
std::vector<SjRow> sj_cancellation_scan(i64 q1, const std::vector<double>& s_grid,
                                        const std::vector<double>& w_grid, double lower = 0.0,
                                        i64 coprime_to = 1);
void write_sj_csv(std::ostream& os, const std::vector<SjRow>& rows);

}  // namespace deltasieve::characters
