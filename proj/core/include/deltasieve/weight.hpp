#pragma once

#include <string>

namespace deltasieve {

// Schwartz weight Gamma with Fourier transform normalized so fourier(0) = 1.
// gaussian: Gamma(z) = exp(-pi z^2), self-dual.
// scaled_gaussian(w): Gamma(z) = exp(-pi z^2 / w^2) / w, Gamma^(x) = exp(-pi w^2 x^2).
class SchwartzWeight {
 public:
  enum class Kind { gaussian, scaled_gaussian };

  static SchwartzWeight gaussian() { return SchwartzWeight(Kind::gaussian, 1.0); }
  static SchwartzWeight scaled_gaussian(double width);
  static SchwartzWeight from_name(const std::string& name);

  Kind kind() const { return kind_; }
  double width() const { return width_; }
  std::string name() const;

  double value(double z) const;
  double derivative(double z) const;
  double fourier(double x) const;
  double fourier_derivative(double x) const;

  // Smallest Z such that value and fourier are both below threshold for |z| >= Z.
  double decay_radius(double threshold) const;
  double value_radius(double threshold) const;
  double fourier_radius(double threshold) const;

 private:
  SchwartzWeight(Kind kind, double width) : kind_(kind), width_(width) {}
  Kind kind_;
  double width_;
};

}  // namespace deltasieve
