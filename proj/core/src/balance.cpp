#include "deltasieve/balance.hpp"

#include <array>
#include <limits>

#include "deltasieve/errors.hpp"

namespace deltasieve::density {

namespace {

Rational frac(i64 n, i64 d) { return Rational(n, d); }

// a . (t, w, z) >= b
struct Constraint {
  std::array<Rational, 3> a;
  Rational b;
};

Rational det3(const std::array<std::array<Rational, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

struct Vertex {
  Rational t, w, z;
};

std::optional<Vertex> solve_capped(const BalanceProblem& p, const Rational& cap) {
  std::vector<Constraint> cs;
  for (const auto& term : p.terms) cs.push_back({{-term.xi, -term.xi_kappa, Rational(1)}, term.x});
  cs.push_back({{Rational(0), Rational(1), Rational(0)}, Rational(0)});    // w >= 0
  cs.push_back({{Rational(1), Rational(-1), Rational(0)}, Rational(0)});   // w <= t
  cs.push_back({{Rational(1), Rational(0), Rational(0)}, Rational(0)});    // t >= 0
  cs.push_back({{Rational(-1), Rational(0), Rational(0)}, -cap});          // t <= cap

  std::optional<Vertex> best;
  const std::size_t n = cs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        std::array<std::array<Rational, 3>, 3> m = {cs[i].a, cs[j].a, cs[k].a};
        const Rational D = det3(m);
        if (D == Rational(0)) continue;
        const std::array<Rational, 3> rhs = {cs[i].b, cs[j].b, cs[k].b};
        std::array<Rational, 3> v;
        for (int c = 0; c < 3; ++c) {
          auto mc = m;
          for (int r = 0; r < 3; ++r) mc[r][c] = rhs[r];
          v[c] = det3(mc) / D;
        }
        bool feasible = true;
        for (const auto& con : cs) {
          if (con.a[0] * v[0] + con.a[1] * v[1] + con.a[2] * v[2] < con.b) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        Vertex cand{v[0], v[1], v[2]};
        auto kappa_of = [](const Vertex& x) { return x.t == Rational(0) ? Rational(0) : x.w / x.t; };
        if (!best || cand.z < best->z ||
            (cand.z == best->z && (cand.t < best->t || (cand.t == best->t && kappa_of(cand) < kappa_of(*best))))) {
          best = cand;
        }
      }
    }
  }
  return best;
}

}  // namespace

Rational BalanceProblem::max_at(const Rational& t, const Rational& kappa) const {
  return terms.at(argmax_at(t, kappa)).eval(t, kappa);
}

std::size_t BalanceProblem::argmax_at(const Rational& t, const Rational& kappa) const {
  if (terms.empty()) throw DomainError("balance: no exponent terms");
  std::size_t best = 0;
  Rational v = terms[0].eval(t, kappa);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    Rational w = terms[i].eval(t, kappa);
    if (w > v) {
      v = w;
      best = i;
    }
  }
  return best;
}

BalanceProblem paper_preset() {
  BalanceProblem p;
  p.terms = {
      {Rational(6), Rational(0), Rational(0), "6"},
      {Rational(16), Rational(-2), Rational(0), "16-2t"},
      {Rational(10), Rational(-1), Rational(0), "10-t"},
      {Rational(4), frac(1, 2), frac(-1, 2), "4+t(1-k)/2"},
      {Rational(0), Rational(2), Rational(-1), "t(2-k)"},
      {Rational(-2), frac(11, 6), frac(1, 6), "t(11/6+k/6)-2"},
      {frac(-8, 3), Rational(2), Rational(0), "2t-8/3"},
  };
  return p;
}

BalanceResult balance_exponents(const BalanceProblem& problem) {
  if (problem.terms.empty()) throw DomainError("balance: no exponent terms");
  std::optional<Vertex> v;
  if (problem.t_max) {
    if (*problem.t_max <= Rational(0)) throw DomainError("balance: t_max must be positive");
    v = solve_capped(problem, *problem.t_max);
  } else {
    Rational cap(16);
    v = solve_capped(problem, cap);
    for (int round = 0; v && v->t == cap; ++round) {
      // The cap is binding: see whether relaxing it still improves the value.
      const Rational bigger = cap * Rational(2);
      auto w = solve_capped(problem, bigger);
      if (!(w->z < v->z)) break;
      if (round == 40) throw DomainError("balance: objective is unbounded below as t grows");
      v = w;
      cap = bigger;
    }
  }
  if (!v) throw DomainError("balance: infeasible");
  BalanceResult out;
  out.t = v->t;
  out.kappa = v->t == Rational(0) ? Rational(0) : v->w / v->t;
  out.exponent = v->z;
  for (std::size_t i = 0; i < problem.terms.size(); ++i) {
    if (problem.terms[i].eval(out.t, out.kappa) == out.exponent) out.active.push_back(i);
  }
  return out;
}

GridResult grid_search(const BalanceProblem& problem, long step, long t_max) {
  if (problem.terms.empty()) throw DomainError("balance: no exponent terms");
  if (step < 2 || t_max < 1) throw DomainError("grid_search: need step >= 2 and t_max >= 1");
  // Scale every term by L step^2 so all grid values are integers.
  i128 L = 1;
  for (const auto& term : problem.terms) {
    for (const Rational* r : {&term.x, &term.xi, &term.xi_kappa}) L = L / arith::gcd128(L, r->den()) * r->den();
  }
  const i128 S = step;
  struct Scaled {
    i128 c, a, b;
  };
  std::vector<Scaled> sc;
  for (const auto& term : problem.terms) {
    sc.push_back({term.x.num() * (L / term.x.den()) * S * S, term.xi.num() * (L / term.xi.den()) * S,
                  term.xi_kappa.num() * (L / term.xi_kappa.den())});
  }
  i128 best = std::numeric_limits<i64>::max();
  long bi = 0, bj = 0, points = 0;
  for (long i = 1; i <= t_max * step; ++i) {
    for (long j = 1; j < step; ++j) {
      i128 m = std::numeric_limits<i64>::min();
      for (const auto& s : sc) {
        const i128 v = s.c + s.a * i + s.b * i * j;
        if (v > m) m = v;
      }
      ++points;
      if (m < best) {
        best = m;
        bi = i;
        bj = j;
      }
    }
  }
  return {Rational(best, L * S * S), Rational(bi, step), Rational(bj, step), points};
}

}  // namespace deltasieve::density
