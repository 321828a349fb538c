#include "deltasieve/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "deltasieve/expsum.hpp"
#include "deltasieve/pairwise_sum.hpp"

namespace deltasieve::characters {

using arith::reduce;

namespace {

bool is_generator(i64 g, i64 mod, i64 order, const arith::Factorization& order_f) {
  if (std::gcd(g, mod) != 1) return false;
  for (const auto& pp : order_f.factors()) {
    if (arith::powmod(g, order / pp.prime, mod) == 1) return false;
  }
  return true;
}

i64 smallest_primitive_root(i64 pe) {
  const i64 order = arith::euler_phi(pe);
  const auto f = arith::factorize(order);
  for (i64 g = 2; g < pe; ++g) {
    if (is_generator(g, pe, order, f)) return g;
  }
  return 1;  // pe = 2
}

}  // namespace

UnitGroup::UnitGroup(i64 q) : q_(q) {
  if (q < 1) throw DomainError("UnitGroup: modulus must be >= 1");
  if (q > kMaxCharacterModulus) throw LimitExceeded("modulus", "characters need q <= 10^4");
  const auto fq = arith::factorize(q);
  // Component generators, lifted to mod q by CRT with 1 on the other components.
  for (const auto& [p, e] : fq.factors()) {
    const i64 pe = arith::ipow(p, e);
    std::vector<std::pair<i64, i64>> local;  // (generator mod pe, order)
    if (p == 2) {
      if (e == 2) local.push_back({3, 2});
      if (e >= 3) {
        local.push_back({pe - 1, 2});
        local.push_back({5, pe / 4});
      }
    } else {
      local.push_back({smallest_primitive_root(pe), pe / p * (p - 1)});
    }
    for (const auto& [g, ord] : local) {
      const i64 lifted = arith::crt(arith::Residue(g, pe), arith::Residue(1, q / pe)).value();
      gens_.push_back(lifted);
      orders_.push_back(ord);
    }
  }
  for (i64 o : orders_) {
    order_ *= o;
    exponent_ = std::lcm(exponent_, o);
  }
  const std::size_t k = stride();
  logs_.assign(static_cast<std::size_t>(q) * k, -1);
  std::vector<i64> idx(gens_.size(), 0);
  for (i64 t = 0; t < order_; ++t) {
    i64 n = 1 % q;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      n = static_cast<i64>(arith::mulmod(n, arith::powmod(gens_[i], idx[i], q), q));
    }
    if (gens_.empty()) {
      logs_[static_cast<std::size_t>(n) * k] = 0;
    } else {
      for (std::size_t i = 0; i < gens_.size(); ++i) logs_[static_cast<std::size_t>(n) * k + i] = static_cast<int>(idx[i]);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < orders_[i]) break;
      idx[i] = 0;
    }
  }
  roots_.reserve(static_cast<std::size_t>(exponent_));
  for (i64 j = 0; j < exponent_; ++j) roots_.push_back(expsum::unit_root(j, exponent_));
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<i64> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  if (exponents_.size() != group_->generators().size()) {
    throw DomainError("DirichletCharacter: exponent vector does not match the unit group");
  }
  for (std::size_t i = 0; i < exponents_.size(); ++i) exponents_[i] = reduce(exponents_[i], group_->cyclic_orders()[i]);
}

std::optional<i64> DirichletCharacter::phase(i64 n) const {
  const UnitGroup& g = *group_;
  if (!g.is_unit(n)) return std::nullopt;
  i64 k = 0;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    k += exponents_[i] * g.log(n, i) * (g.exponent() / g.cyclic_orders()[i]);
  }
  return reduce(k, g.exponent());
}

cplx DirichletCharacter::operator()(i64 n) const {
  auto k = phase(n);
  return k ? group_->root(*k) : cplx{0.0, 0.0};
}

bool DirichletCharacter::is_principal() const {
  for (i64 e : exponents_) {
    if (e != 0) return false;
  }
  return true;
}

bool DirichletCharacter::is_primitive() const {
  const i64 q = modulus();
  const auto fq = arith::factorize(q);
  for (const auto& pp : fq.factors()) {
    // Imprimitive iff chi is trivial on the units that are 1 mod q/p.
    const i64 step = q / pp.prime;
    bool trivial = true;
    for (i64 n = 1; n < q && trivial; n += step) {
      auto k = phase(n);
      if (k && *k != 0) trivial = false;
    }
    if (trivial) return false;
  }
  return true;
}

i64 DirichletCharacter::order() const {
  i64 o = 1;
  const auto& ords = group_->cyclic_orders();
  for (std::size_t i = 0; i < exponents_.size(); ++i) o = std::lcm(o, ords[i] / std::gcd(ords[i], exponents_[i]));
  return o;
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<i64> neg;
  for (i64 e : exponents_) neg.push_back(-e);
  return DirichletCharacter(group_, std::move(neg));
}

std::vector<DirichletCharacter> character_table(i64 q) {
  auto group = std::make_shared<const UnitGroup>(q);
  const auto& ords = group->cyclic_orders();
  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(group->order()));
  std::vector<i64> idx(ords.size(), 0);
  for (i64 t = 0; t < group->order(); ++t) {
    out.emplace_back(group, idx);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < ords[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

DirichletCharacter principal_character(i64 q) {
  auto group = std::make_shared<const UnitGroup>(q);
  return DirichletCharacter(group, std::vector<i64>(group->generators().size(), 0));
}

cplx tau(const DirichletCharacter& chi) {
  const i64 q = chi.modulus();
  PairwiseSum<cplx> acc;
  for (i64 x = 0; x < q; ++x) {
    auto k = chi.phase(x);
    if (k) acc.add(chi.group().root(*k) * expsum::unit_root(x, q));
  }
  return acc.total();
}

Twist Twist::real(double w) {
  Twist t;
  t.w_ = w;
  return t;
}

Twist Twist::rational(i64 a, i64 r) {
  if (r < 1) throw DomainError("Twist: denominator must be >= 1");
  Twist t;
  t.a_ = reduce(a, r);
  t.r_ = r;
  t.w_ = static_cast<double>(t.a_) / static_cast<double>(r);
  return t;
}

double Twist::frequency() const { return w_; }

cplx Twist::operator()(i64 n) const {
  if (r_ > 0) return expsum::unit_root(static_cast<i64>(static_cast<i128>(a_) * n % r_), r_);
  long double x = static_cast<long double>(w_) * static_cast<long double>(n);
  x -= std::floor(x);
  double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * x);
  return {std::cos(angle), std::sin(angle)};
}

DirichletApproximation dirichlet_approximation(double w, i64 R) {
  if (R < 1) throw DomainError("dirichlet_approximation: R must be >= 1");
  if (!std::isfinite(w)) throw DomainError("dirichlet_approximation: w must be finite");
  // Convergents p_k/q_k of w; keep the last with q_k <= R.
  long double x = w;
  i128 p_prev = 1, q_prev = 0;
  i128 a0 = static_cast<i128>(std::floor(x));
  i128 p = a0, q = 1;
  long double frac = x - static_cast<long double>(a0);
  while (frac > 1e-15L) {
    long double inv_frac = 1.0L / frac;
    i128 ak = static_cast<i128>(std::floor(inv_frac));
    i128 p_next = ak * p + p_prev, q_next = ak * q + q_prev;
    if (q_next > R) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    frac = inv_frac - static_cast<long double>(ak);
  }
  DirichletApproximation out{static_cast<i64>(p), static_cast<i64>(q), 0.0};
  out.beta = static_cast<double>(static_cast<long double>(w) - static_cast<long double>(p) / static_cast<long double>(q));
  return out;
}

}  // namespace deltasieve::characters
