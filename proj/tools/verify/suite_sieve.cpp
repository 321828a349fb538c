#include <cmath>
#include <cstring>
#include <sstream>

#include "deltasieve/sieve.hpp"
#include "timing.hpp"

namespace deltasieve::verify {

using namespace sieve;

namespace {

std::string x_str(double X) {
  std::ostringstream os;
  os << "X=" << X;
  return os.str();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

Check check_exact_vs_naive(const std::vector<double>& xs, unsigned workers) {
  Timed t("exact_vs_naive", 0.0);
  for (double X : xs) {
    CountConfig cfg;
    cfg.X = X;
    cfg.workers = workers;
    const i64 c = exact_count(cfg).count, n = naive_count(X);
    t.check.expect(c == n, [&] { return x_str(X) + " sieve=" + std::to_string(c) + " naive=" + std::to_string(n); });
  }
  return t.done();
}

Check check_sieve_identity() {
  Timed t("mobius_sieve_identity", 0.0);
  for (double X : {1.0, 2.0, 3.0}) {
    const auto r = mobius_sieve_identity(X);
    t.check.expect(r.ok(), [&] {
      return x_str(X) + " count=" + std::to_string(r.count) + " sum=" + std::to_string(r.mobius_sum);
    });
  }
  return t.done();
}

Check check_count_one() {
  Timed t("count_one", 0.0);
  CountConfig cfg;
  cfg.X = 1.0;
  const i64 c = exact_count(cfg).count;
  t.check.expect(c == 4, [&] { return "exact_count(1) = " + std::to_string(c); });
  t.check.expect(S_term(1.0, 2) == 2, [] { return "S(1;4)"; });
  t.check.expect(S_term(1.0, 5) == 0, [] { return "S(1;25)"; });
  return t.done();
}

Check check_determinism(const std::vector<double>& xs) {
  Timed t("determinism", 0.0);
  for (Mode mode : {Mode::exact, Mode::smoothed}) {
    for (double X : xs) {
      CountConfig cfg;
      cfg.X = X;
      cfg.mode = mode;
      cfg.workers = 1;
      const CountResult ref = count(cfg);
      for (unsigned w : {4u, 16u}) {
        cfg.workers = w;
        const CountResult r = count(cfg);
        t.check.expect(r.count == ref.count && same_bits(r.weighted_sum, ref.weighted_sum) &&
                           r.checksum == ref.checksum && r.stripe_counts == ref.stripe_counts,
                       [&] { return x_str(X) + " mode=" + mode_name(mode) + " workers=" + std::to_string(w); });
      }
    }
  }
  return t.done();
}

Check check_marking_soundness(const Options& opts, long samples) {
  Timed t("marking_soundness", 0.0);
  Rng rng(opts.seed ^ 0x5E);
  const i64 A_max = 625, B_max = 15625;  // X = 5
  long taken = 0;
  while (taken < samples) {
    const i64 A = rng.uniform(-A_max, A_max);
    const auto marks = mark_stripe(A, B_max);
    std::vector<i64> marked;
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (marks[i] != 0) marked.push_back(static_cast<i64>(i));
    }
    if (marked.empty()) continue;
    for (int k = 0; k < 500 && taken < samples; ++k, ++taken) {
      const i64 idx = rng.pick(marked), B = idx - B_max;
      const i64 p = marks[static_cast<std::size_t>(idx)];
      const i64 d = delta_value(A, B);
      t.check.expect(d % (p * p) == 0, [&] {
        return "A=" + std::to_string(A) + " B=" + std::to_string(B) + " p=" + std::to_string(p);
      });
    }
  }
  return t.done();
}

Check check_zero_delta_exclusion() {
  Timed t("zero_delta_exclusion", 0.0);
  for (double X : {1.0, 2.0, 3.0, 4.0}) {
    CountConfig cfg;
    cfg.X = X;
    const CountResult r = exact_count(cfg);
    const Box b = r.box;
    for (i64 tt = 0; 3 * tt * tt <= b.A_max && 2 * tt * tt * tt <= b.B_max; ++tt) {
      const i64 A = -3 * tt * tt;
      i64 direct = 0;
      for (i64 B = -b.B_max; B <= b.B_max; ++B) {
        const i64 d = delta_value(A, B);
        if (d != 0 && squarefree_trial(d)) ++direct;
      }
      const i64 stripe = r.stripe_counts[static_cast<std::size_t>(A + b.A_max)];
      t.check.expect(stripe == direct, [&] {
        return x_str(X) + " A=" + std::to_string(A) + " stripe=" + std::to_string(stripe) +
               " direct=" + std::to_string(direct);
      });
    }
  }
  return t.done();
}

Check check_S_term(const Options&) {
  Timed t("S_term", 0.0);
  for (i64 k = 1; k <= 40; ++k) {
    const i64 a = S_term(2.0, k), b = S_term_brute(2.0, k);
    t.check.expect(a == b, [&] { return "X=2 k=" + std::to_string(k) + " crt=" + std::to_string(a) +
                                        " brute=" + std::to_string(b); });
  }
  for (i64 k : {49, 121, 169, 210, 289}) {
    t.check.expect(S_term(3.0, k) == S_term_brute(3.0, k), [&] { return "X=3 k=" + std::to_string(k); });
  }
  return t.done();
}

Check check_smoothed_oracle(unsigned workers) {
  Timed t("smoothed_oracle", 1e-10);
  for (double X : {1.0, 1.5, 2.0}) {
    CountConfig cfg;
    cfg.X = X;
    cfg.mode = Mode::smoothed;
    cfg.workers = workers;
    const double a = smoothed_count(cfg).weighted_sum, b = naive_smoothed(cfg);
    t.check.compare(std::abs(a / b - 1.0), [&] { return x_str(X); });
  }
  return t.done();
}

Check check_tail() {
  Timed t("tail_S2", 0.0);
  t.check.expect(tail_S2(1.0, 3.0).value == 0, [] { return "X=1 xi=3"; });
  t.check.expect(tail_S2(2.0, static_cast<double>(k_limit(2.0))).value == 0, [] { return "X=2 xi=k_limit"; });
  for (auto [X, xi] : {std::pair{2.0, 2.0}, {3.0, 5.0}}) {
    // Independent route: the full sum is the count, so the tail is count minus the head.
    i64 head = 0;
    for (i64 k = 1; k <= static_cast<i64>(xi); ++k) head += arith::mobius(k) * S_term_brute(X, k);
    const i64 expect = naive_count(X) - head;
    const i64 got = tail_S2(X, xi).value;
    t.check.expect(got == expect, [&, X = X, xi = xi] {
      return x_str(X) + " xi=" + std::to_string(xi) + " tail=" + std::to_string(got) + " expect=" + std::to_string(expect);
    });
  }
  return t.done();
}

SuiteReport sieve_suite(const Options& opts) {
  return {"sieve",
          {check_count_one(), check_exact_vs_naive({1, 2, 3, 4}, opts.workers), check_sieve_identity(),
           check_determinism({2, 3}), check_marking_soundness(opts), check_zero_delta_exclusion(), check_S_term(opts),
           check_smoothed_oracle(opts.workers), check_tail()}};
}

}  // namespace deltasieve::verify
