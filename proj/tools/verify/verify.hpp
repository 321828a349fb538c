#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "deltasieve/arith.hpp"

namespace deltasieve::verify {

// Portable draws: the reduction is done by hand so sequences match across standard libraries.
class Rng {
 public:
  explicit Rng(u64 seed) : g_(seed) {}
  i64 uniform(i64 lo, i64 hi) { return lo + static_cast<i64>(g_() % static_cast<u64>(hi - lo + 1)); }
  double unit() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(uniform(0, static_cast<i64>(v.size()) - 1))]; }

 private:
  std::mt19937_64 g_;
};

// One named family of comparisons. A comparison fails when its deviation exceeds the tolerance.
struct Check {
  std::string name;
  double tolerance = 0.0;
  long count = 0;
  long failures = 0;
  double max_deviation = 0.0;
  std::string first_failure;
  double seconds = 0.0;

  bool ok() const { return failures == 0 && count > 0; }

  template <class Describe>
  void compare(double deviation, double tol, Describe&& describe) {
    ++count;
    if (deviation > max_deviation || deviation != deviation) max_deviation = deviation;
    if (!(deviation <= tol)) fail(describe());
  }
  template <class Describe>
  void compare(double deviation, Describe&& describe) {
    compare(deviation, tolerance, describe);
  }
  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++count;
    if (!ok) fail(describe());
  }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

struct Options {
  u64 seed = 42;
  // Deliberately corrupted formulas, used to exercise the failure path.
  std::set<std::string> perturb;
  unsigned workers = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool ok() const;
  long total() const;
  long failures() const;
  // "check: parameters" of the first failing comparison, empty when ok.
  std::string first_failure() const;
};

const std::vector<std::string>& suite_names();
// Throws DomainError for an unknown name. "all" runs every suite in order.
std::vector<SuiteReport> run_suite(const std::string& name, const Options& opts);

SuiteReport arith_suite(const Options& opts);
SuiteReport expsum_suite(const Options& opts);
SuiteReport characters_suite(const Options& opts);
SuiteReport oscint_suite(const Options& opts);
SuiteReport density_suite(const Options& opts);
SuiteReport sieve_suite(const Options& opts);
SuiteReport poisson_suite(const Options& opts);

// Individual checks, shared with the acceptance runner.
Check check_exptrans(const Options& opts);
Check check_E_explicit(const Options& opts);
Check check_gauss_f();
Check check_kloosterman_flip();
Check check_reduce_cubic(const Options& opts);
Check check_crt_split(const Options& opts);
Check check_F_explicit(const Options& opts);
Check check_loxton_schmidt(const Options& opts, int instances = 1000);
Check check_poisson_plain();
Check check_poisson_frames();

Check check_orthogonality(i64 q_max = 60);
Check check_gauss_modulus(i64 q_max = 200);
Check check_decomposition(const Options& opts);

Check check_plancherel();
Check check_I1_finite_difference();
Check check_G_zero();
Check check_quadrature_refinement();
Check check_reflection();
Check check_station_envelope();
Check check_omega_tail();

Check check_sigma_values();
Check check_one_third();
Check check_sigma_prime_square(i64 p_max = 100);
Check check_sigma_enumeration(i64 q_max = 300);
Check check_sigma_multiplicative(i64 q_max = 300);
Check check_euler_overlap();
Check check_euler_nesting();
Check check_per_prime_identity(i64 p_max = 10000);
Check check_mu_phi();
Check check_balance_preset();
Check check_balance_grid();
Check check_balance_drop();

Check check_exact_vs_naive(const std::vector<double>& xs, unsigned workers);
Check check_sieve_identity();
Check check_count_one();
Check check_determinism(const std::vector<double>& xs);
Check check_marking_soundness(const Options& opts, long samples = 100000);
Check check_zero_delta_exclusion();
Check check_S_term(const Options& opts);
Check check_smoothed_oracle(unsigned workers);
Check check_tail();

}  // namespace deltasieve::verify
