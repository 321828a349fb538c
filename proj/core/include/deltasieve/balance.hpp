#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltasieve/rational.hpp"

namespace deltasieve::density {

// Exponent x + xi t + xi_kappa t kappa, where X^t is the cut parameter xi.
struct ExponentTerm {
  Rational x;
  Rational xi;
  Rational xi_kappa;
  std::string label;

  Rational eval(const Rational& t, const Rational& kappa) const { return x + xi * t + xi_kappa * t * kappa; }
};

struct BalanceProblem {
  std::vector<ExponentTerm> terms;
  std::optional<Rational> t_max;  // none: unbounded t, probed by doubling

  Rational max_at(const Rational& t, const Rational& kappa) const;
  // Index of a term attaining the max.
  std::size_t argmax_at(const Rational& t, const Rational& kappa) const;
};

// The seven error exponents of the final balancing step.
BalanceProblem paper_preset();

struct BalanceResult {
  Rational t;
  Rational kappa;
  Rational exponent;
  std::vector<std::size_t> active;  // terms equal to the max at the optimum
};

// Exact minimax over t >= 0, 0 <= kappa <= 1 as a linear program in
// (t, w = t kappa, z), solved by enumerating vertices in rational arithmetic.
// Throws DomainError when the objective is unbounded below.
BalanceResult balance_exponents(const BalanceProblem& problem);

struct GridResult {
  Rational best;
  Rational t;
  Rational kappa;
  long points;
};
// Exhaustive grid t = i/step (0 < t <= t_max), kappa = j/step (0 < kappa < 1).
GridResult grid_search(const BalanceProblem& problem, long step = 1000, long t_max = 10);

}  // namespace deltasieve::density
