#include "deltasieve/weight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "deltasieve/errors.hpp"

namespace deltasieve {

namespace {
constexpr double kPi = std::numbers::pi;
}

SchwartzWeight SchwartzWeight::scaled_gaussian(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("scaled_gaussian: width must be positive");
  return SchwartzWeight(Kind::scaled_gaussian, width);
}

SchwartzWeight SchwartzWeight::from_name(const std::string& name) {
  if (name == "gaussian") return gaussian();
  const std::string prefix = "scaled_gaussian:";
  if (name.rfind(prefix, 0) == 0) return scaled_gaussian(std::stod(name.substr(prefix.size())));
  throw DomainError("unknown weight '" + name + "'");
}

std::string SchwartzWeight::name() const {
  if (kind_ == Kind::gaussian) return "gaussian";
  return "scaled_gaussian:" + std::to_string(width_);
}

double SchwartzWeight::value(double z) const {
  double t = z / width_;
  return std::exp(-kPi * t * t) / width_;
}

double SchwartzWeight::derivative(double z) const {
  double t = z / width_;
  return -2.0 * kPi * t / (width_ * width_) * std::exp(-kPi * t * t);
}

double SchwartzWeight::fourier(double x) const {
  double t = x * width_;
  return std::exp(-kPi * t * t);
}

double SchwartzWeight::fourier_derivative(double x) const {
  double t = x * width_;
  return -2.0 * kPi * t * width_ * std::exp(-kPi * t * t);
}

double SchwartzWeight::value_radius(double threshold) const {
  // exp(-pi t^2)/w < threshold  <=>  t > sqrt(log(1/(w threshold))/pi)
  double arg = std::log(1.0 / (width_ * threshold));
  return arg <= 0.0 ? 0.0 : width_ * std::sqrt(arg / kPi);
}

double SchwartzWeight::fourier_radius(double threshold) const {
  double arg = std::log(1.0 / threshold);
  return arg <= 0.0 ? 0.0 : std::sqrt(arg / kPi) / width_;
}

double SchwartzWeight::decay_radius(double threshold) const {
  return std::max(value_radius(threshold), fourier_radius(threshold));
}

}  // namespace deltasieve
