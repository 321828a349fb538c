#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "deltasieve/expsum.hpp"
#include "verify.hpp"
#include "timing.hpp"

namespace deltasieve::verify {

using namespace expsum;

namespace {

const std::vector<i64> kH{1, 5, 7};

bool valid(const CongruenceFrame& f) {
  try {
    f.validate();
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::string frame_args(const CongruenceFrame& f, i64 m, i64 n) {
  std::ostringstream os;
  os << f.describe() << " m=" << m << " n=" << n;
  return os.str();
}

}  // namespace

Check check_exptrans(const Options& opts) {
  Timed t("exptrans", 0.0);
  const bool perturbed = opts.perturb.count("exptrans") > 0;
  for (i64 l : {1, 5, 7, 11, 13}) {
    for (i64 h : kH) {
      for (int k2 : {1, 2}) {
        for (int k3 : {1, 3}) {
          CongruenceFrame f{k2, k3, h, l};
          if (!valid(f)) continue;
          const DoubleSumSolutions sols(f);
          const double tol = 1e-8 * static_cast<double>(l * l);
          for (i64 m = -3; m <= 3; ++m) {
            for (i64 n = -3; n <= 3; ++n) {
              const cplx lhs = sols.evaluate(m, n).value;
              cplx rhs = exptrans_rhs(f, m, n).value;
              if (perturbed) rhs += cplx(1e-6 * static_cast<double>(l * l), 0.0);
              t.check.compare(std::abs(lhs - rhs), tol, [&] { return "(exptrans) " + frame_args(f, m, n); });
            }
          }
        }
      }
    }
  }
  t.check.tolerance = 1e-8;  // times l^2
  return t.done();
}

Check check_E_explicit(const Options& opts) {
  Timed t("E_explicit", 1e-8);
  Rng rng(opts.seed ^ 0x45);
  for (i64 l = 1; l <= 30; ++l) {
    if (std::gcd(l, i64{6}) != 1 || !arith::factorize(l).squarefree()) continue;
    std::vector<CongruenceFrame> frames;
    for (i64 h : kH) {
      for (int k2 : {1, 2}) {
        for (int k3 : {1, 3}) {
          CongruenceFrame f{k2, k3, h, l};
          if (valid(f)) frames.push_back(f);
        }
      }
    }
    std::map<std::size_t, DoubleSumSolutions> cache;
    const std::vector<i64> divs = arith::factorize(l).divisors();
    const double tol = 1e-8 * static_cast<double>(l * l);
    for (int i = 0; i < 50; ++i) {
      const std::size_t fi = static_cast<std::size_t>(rng.uniform(0, static_cast<i64>(frames.size()) - 1));
      const CongruenceFrame& f = frames[fi];
      auto it = cache.find(fi);
      if (it == cache.end()) it = cache.emplace(fi, DoubleSumSolutions(f)).first;
      i64 m = rng.uniform(-l * l, l * l);
      i64 n = rng.uniform(-l * l, l * l);
      // Exercise d = (m, l) > 1 and the d | n branch.
      if (i % 3 != 0) m = rng.pick(divs) * rng.uniform(-l, l);
      if (i % 2 == 1) n = std::gcd(m, l) * rng.uniform(-l, l);
      const cplx brute = it->second.evaluate(m, n).value;
      const cplx closed = evaluate_E_explicit(f, m, n).value;
      t.check.compare(std::abs(brute - closed), tol, [&] { return "E_explicit " + frame_args(f, m, n); });
    }
  }
  return t.done();
}

Check check_gauss_f() {
  Timed t("gauss_f", 1e-10);
  for (i64 q = 1; q <= 50; q += 2) {
    if (!arith::factorize(q).squarefree()) continue;
    for (i64 c = 1; c <= q; ++c) {
      if (std::gcd(c, q) != 1) continue;
      const cplx a = gauss_f(c, q);
      const cplx b = E_sum(0, c, q).value;
      t.check.compare(std::abs(a - b), [&] { return "f(c;q) c=" + std::to_string(c) + " q=" + std::to_string(q); });
    }
  }
  return t.done();
}

Check check_kloosterman_flip() {
  Timed t("kloosterman_flip", 1e-10);
  for (i64 m = 1; m <= 40; ++m) {
    for (i64 k = 1; k <= 40; ++k) {
      if (std::gcd(m, k) != 1) continue;
      for (i64 n : {1, 2, 5}) {
        auto args = [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " k=" + std::to_string(k); };
        t.check.expect(kloosterman_flip_check(n, m, k), [&] { return "exact flip " + args(); });
        t.check.compare(kloosterman_flip_deviation(n, m, k), [&] { return "numeric flip " + args(); });
      }
    }
  }
  return t.done();
}

Check check_reduce_cubic(const Options& opts) {
  Timed t("reduce_cubic", 1e-9);
  Rng rng(opts.seed ^ 0x13);
  int zeros = 0;
  for (int i = 0; i < 500; ++i) {
    const i64 Q = rng.uniform(2, 400);
    const auto divs = arith::factorize(Q).divisors();
    i64 delta = rng.pick(divs);
    if (delta == 1) delta = Q;
    const i64 c3 = delta * rng.uniform(0, Q / delta - 1);
    const i64 c2 = delta * rng.uniform(0, Q / delta - 1);
    i64 c1 = rng.uniform(0, Q - 1);
    if (i % 2 == 0) c1 = delta * rng.uniform(0, Q / delta - 1);
    const auto p = PhasePolynomial::cubic(c3, c2, c1, Q);
    const auto r = lemma3_reduce(p, delta);
    const ExpSumValue raw = raw_phase_sum(p);
    const double tol = 1e-9 * static_cast<double>(Q);
    auto args = [&] { return "reduce_cubic " + p.describe() + " delta=" + std::to_string(delta); };
    if (r.zero) {
      ++zeros;
      t.check.expect(c1 % delta != 0, [&] { return "zero certificate with delta | c1: " + args(); });
      t.check.compare(std::abs(raw.value), tol, args);
    } else {
      const cplx reduced = static_cast<double>(r.factor) * raw_phase_sum(*r.reduced).value;
      t.check.compare(std::abs(raw.value - reduced), tol, args);
    }
  }
  t.check.expect(zeros > 0, [] { return "no zero certificates drawn"; });
  return t.done();
}

Check check_crt_split(const Options& opts) {
  Timed t("crt_split", 1e-8);
  Rng rng(opts.seed ^ 0xC7);
  const std::vector<i64> ds{1, 5, 7, 11, 13};
  const std::vector<i64> mts{1, 5, 7, 11, 13, 17, 19, 23};
  int drawn = 0;
  while (drawn < 100) {
    CrtSplitParams P;
    P.k2 = static_cast<int>(rng.uniform(1, 2));
    P.k3 = rng.uniform(0, 1) ? 3 : 1;
    P.h = rng.pick(kH);
    P.d = rng.pick(ds);
    if (std::gcd(P.d, 6 * P.h) != 1) continue;
    const std::vector<i64> stars{1, 2, 3, 6, P.h, P.d, 2 * P.d};
    P.m_star = rng.pick(stars) * (rng.uniform(0, 1) ? 1 : -1);
    P.m_tilde = rng.pick(mts) * (rng.uniform(0, 1) ? 1 : -1);
    P.u = rng.uniform(-5, 5);
    P.l1 = rng.uniform(1, 40);
    const i64 q = P.q(), mt = std::abs(P.m_tilde);
    if (std::gcd(mt, 6 * P.h * P.d) != 1 || std::gcd(mt, q) != 1) continue;
    if (std::gcd(P.l1, q * mt) != 1 || q * mt * mt > kMaxDoubleSumModulus) continue;
    ++drawn;
    const auto r = crt_split_check(P);
    t.check.compare(r.reduction_dev, [&] { return "reduce_linear " + P.describe(); });
    t.check.compare(r.reduction2_dev, [&] { return "reduce_quadratic " + P.describe(); });
  }
  return t.done();
}

Check check_F_explicit(const Options& opts) {
  Timed t("F_explicit", 1e-8);
  Rng rng(opts.seed ^ 0xFE);
  int drawn = 0;
  while (drawn < 200) {
    FevParams P;
    P.k2 = static_cast<int>(rng.uniform(1, 2));
    P.q = rng.uniform(1, 60);
    P.l1 = rng.uniform(1, 30);
    P.m_tilde = rng.uniform(1, 40) * (rng.uniform(0, 1) ? 1 : -1);
    P.u = rng.uniform(-50, 50);
    if (std::gcd(std::abs(P.m_tilde), 6 * P.q * P.l1) != 1) continue;
    ++drawn;
    const double tol = 1e-8 * static_cast<double>(P.m_tilde * P.m_tilde);
    t.check.compare(std::abs(F_explicit(P).value - F_explicit_brute(P).value), tol, [&] {
      std::ostringstream os;
      os << "F_explicit k2=" << P.k2 << " q=" << P.q << " l1=" << P.l1 << " mt=" << P.m_tilde << " u=" << P.u;
      return os.str();
    });
  }
  return t.done();
}

Check check_loxton_schmidt(const Options& opts, int instances) {
  Timed t("loxton_schmidt", 0.0);
  Rng rng(opts.seed ^ 0x15);
  for (int i = 0; i < instances; ++i) {
    const i64 Q = rng.uniform(2, 500);
    const i64 c3 = rng.uniform(1, Q - 1);  // c3 != 0 mod Q
    const i64 c2 = rng.uniform(0, Q - 1), c1 = rng.uniform(0, Q - 1);
    const auto p = PhasePolynomial::cubic(c3, c2, c1, Q);
    const auto b = loxton_schmidt(p);
    t.check.max_deviation = std::max(t.check.max_deviation, b.observed / b.bound);
    ++t.check.count;
    if (!b.holds) {
      std::ostringstream os;
      os << "F_bound " << p.describe() << " |F|=" << b.observed << " bound=" << b.bound << " eta=" << b.eta;
      t.check.fail(os.str());
    }
  }
  t.check.tolerance = 1.0;  // max_deviation here is the largest |F| / bound
  return t.done();
}

Check check_poisson_plain() {
  Timed t("poisson_plain", 1e-10);
  for (double s : {0.5, 1.0, 2.0, 3.0, 7.5, 20.0}) {
    const auto r = poisson_check_plain(s, SchwartzWeight::gaussian());
    t.check.compare(r.delta / std::abs(r.lhs), [&] { return "modulus 1, s=" + std::to_string(s); });
  }
  return t.done();
}

Check check_poisson_frames() {
  Timed t("poisson_frames", 1e-8);
  struct Case {
    CongruenceFrame f;
    double X;
  };
  for (const Case& c : {Case{{1, 1, 1, 5}, 2.0}, Case{{1, 1, 1, 7}, 3.0}, Case{{2, 3, 1, 5}, 2.0}}) {
    const auto r = poisson_check(c.f, c.X, SchwartzWeight::gaussian());
    t.check.compare(r.delta / std::abs(r.lhs), [&] { return c.f.describe() + " X=" + std::to_string(c.X); });
  }
  return t.done();
}

SuiteReport expsum_suite(const Options& opts) {
  return {"expsum",
          {check_exptrans(opts), check_E_explicit(opts), check_gauss_f(), check_kloosterman_flip(), check_reduce_cubic(opts),
           check_crt_split(opts), check_F_explicit(opts), check_loxton_schmidt(opts)}};
}

SuiteReport poisson_suite(const Options&) { return {"poisson", {check_poisson_plain(), check_poisson_frames()}}; }

}  // namespace deltasieve::verify
