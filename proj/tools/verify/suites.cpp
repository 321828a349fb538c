#include <functional>
#include <map>

#include "deltasieve/errors.hpp"
#include "verify.hpp"

namespace deltasieve::verify {

bool SuiteReport::ok() const {
  for (const auto& c : checks) {
    if (!c.ok()) return false;
  }
  return true;
}

long SuiteReport::total() const {
  long n = 0;
  for (const auto& c : checks) n += c.count;
  return n;
}

long SuiteReport::failures() const {
  long n = 0;
  for (const auto& c : checks) n += c.failures;
  return n;
}

std::string SuiteReport::first_failure() const {
  for (const auto& c : checks) {
    if (c.failures > 0) return c.name + ": " + c.first_failure;
    if (c.count == 0) return c.name + ": no comparisons ran";
  }
  return {};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"arith", "expsum", "characters", "oscint", "density", "sieve", "poisson"};
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const Options& opts) {
  static const std::map<std::string, std::function<SuiteReport(const Options&)>> table{
      {"arith", arith_suite},   {"expsum", expsum_suite}, {"characters", characters_suite}, {"oscint", oscint_suite},
      {"density", density_suite}, {"sieve", sieve_suite}, {"poisson", poisson_suite}};
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(table.at(n)(opts));
    return out;
  }
  auto it = table.find(name);
  if (it == table.end()) throw DomainError("unknown suite '" + name + "'");
  out.push_back(it->second(opts));
  return out;
}

}  // namespace deltasieve::verify
