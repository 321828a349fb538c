#pragma once

#include <chrono>
#include <string>

#include "verify.hpp"

namespace deltasieve::verify {

// Check plus a stopwatch started at construction.
struct Timed {
  Check check;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Timed(std::string name, double tolerance) {
    check.name = std::move(name);
    check.tolerance = tolerance;
  }
  Check done() {
    check.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(check);
  }
};

}  // namespace deltasieve::verify
