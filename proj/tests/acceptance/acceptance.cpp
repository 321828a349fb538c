// One PASS/FAIL line per acceptance criterion. Tolerances and time limits are fixed here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "deltasieve/sieve.hpp"
#include "verify.hpp"

using namespace deltasieve;
using verify::Check;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void add(const Check& c) {
    pass = pass && c.ok();
    detail << " " << c.name << "[n=" << c.count << " max=" << c.max_deviation;
    if (!c.ok()) detail << " FAIL: " << (c.count == 0 ? "no comparisons" : c.first_failure);
    detail << "]";
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

verify::Options opts() {
  verify::Options o;
  o.seed = 42;
  return o;
}

void ac8(Outcome& out) {
  out.add(verify::check_exact_vs_naive({1, 2, 3}, 0));
  // X = 4 on its own clock: 8.4e6 pairs under a minute.
  const auto t0 = std::chrono::steady_clock::now();
  out.add(verify::check_exact_vs_naive({4}, 0));
  const double s4 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.detail << " X=4 sieve+oracle " << s4 << "s";
  out.pass = out.pass && s4 < 60.0;
  out.add(verify::check_sieve_identity());
  out.add(verify::check_count_one());
  out.add(verify::check_determinism({2, 3, 4}));
}

void ac9(Outcome& out) {
  const auto rows = sieve::compare_main_term({3, 4, 5, 6}, sieve::Mode::exact);
  const double rel3 = rows.front().relative_deviation, rel6 = rows.back().relative_deviation;
  const double ref = std::abs(rows.front().residual_over_X7);
  bool bounded = true;
  for (const auto& r : rows) {
    bounded = bounded && std::abs(r.residual_over_X7) <= 10.0 * ref;
    out.detail << " X=" << r.X << ":count=" << static_cast<long long>(r.value) << ",rel=" << r.relative_deviation
               << ",res/X^7=" << r.residual_over_X7;
  }
  out.detail << " | rel(6)<rel(3): " << (rel6 < rel3 ? "yes" : "no") << ", bounded within 10x: " << (bounded ? "yes" : "no");
  out.pass = rel6 < rel3 && bounded;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "local densities", 30.0,
       [](Outcome& o) {
         o.add(verify::check_sigma_values());
         o.add(verify::check_one_third());
         o.add(verify::check_sigma_prime_square(100));
       }},
      {2, "constant agreement", 30.0,
       [](Outcome& o) {
         o.add(verify::check_euler_overlap());
         o.add(verify::check_per_prime_identity(10000));
       }},
      {3, "exponential-sum identities", 300.0,
       [](Outcome& o) {
         o.add(verify::check_exptrans(opts()));
         o.add(verify::check_E_explicit(opts()));
         o.add(verify::check_gauss_f());
         o.add(verify::check_kloosterman_flip());
         o.add(verify::check_reduce_cubic(opts()));
         o.add(verify::check_crt_split(opts()));
       }},
      {4, "complete-sum bound, 1000 random cubics", 300.0,
       [](Outcome& o) { o.add(verify::check_loxton_schmidt(opts(), 1000)); }},
      {5, "Poisson two-sided checks", 120.0,
       [](Outcome& o) {
         o.add(verify::check_poisson_plain());
         o.add(verify::check_poisson_frames());
       }},
      {6, "oscillatory integrals", 300.0,
       [](Outcome& o) {
         o.add(verify::check_plancherel());
         o.add(verify::check_I1_finite_difference());
         o.add(verify::check_G_zero());
         o.add(verify::check_station_envelope());
         o.add(verify::check_omega_tail());
       }},
      {7, "characters", 180.0,
       [](Outcome& o) {
         o.add(verify::check_orthogonality(60));
         o.add(verify::check_gauss_modulus(200));
         o.add(verify::check_decomposition(opts()));
       }},
      {8, "counting", 600.0, ac8},
      {9, "main-term trend", 1800.0, ac9},
      {10, "exponent balancer", 60.0,
       [](Outcome& o) {
         o.add(verify::check_balance_preset());
         o.add(verify::check_balance_grid());
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " exception: " << e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_seconds) {
      out.pass = false;
      out.detail << " over time limit " << c.limit_seconds << "s";
    }
    std::printf("AC%d %s %s (%.2fs):%s\n", c.id, out.pass ? "PASS" : "FAIL", c.title, s, out.detail.str().c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
