#pragma once

// Piecewise-linear path in R^m: breakpoint times with one value row each.
// Consecutive rows describe one linear segment; repeated values give
// degenerate (zero-displacement) segments, which are legal and retained.

#include <cstddef>
#include <vector>

#include "leadlag/errors.hpp"

namespace leadlag {

struct PolylinePath {
  int dim = 0;
  std::vector<double> times;   // strictly increasing
  std::vector<double> values;  // (#times) x dim, row-major

  int points() const { return static_cast<int>(times.size()); }
  const double* row(int k) const {
    return values.data() + static_cast<std::size_t>(k) * dim;
  }
  double value(int k, int c) const {
    return values[static_cast<std::size_t>(k) * dim + c];
  }

  void validate(const char* who = "PolylinePath") const {
    if (dim < 1 || times.size() < 2 ||
        values.size() != times.size() * static_cast<std::size_t>(dim)) {
      throw invalid_input(std::string(who) + ": shape mismatch");
    }
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
      if (!(times[k] < times[k + 1])) {
        throw invalid_input(std::string(who) + ": times not strictly increasing");
      }
    }
  }
};

}  // namespace leadlag
