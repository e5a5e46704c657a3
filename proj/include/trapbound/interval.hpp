#pragma once

#include <cmath>
#include <string>

#include "trapbound/error.hpp"

namespace trapbound {

// Closed interval [a, b] with finite a < b.
struct Interval {
  double a;
  double b;

  Interval(double lo, double hi) : a(lo), b(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw ArgumentError("interval endpoints must be finite");
    if (!(lo < hi))
      throw ArgumentError("interval requires a < b, got a=" +
                          std::to_string(lo) + " b=" + std::to_string(hi));
  }

  double length() const noexcept { return b - a; }
  double midpoint() const noexcept { return 0.5 * (a + b); }
  bool interior(double x) const noexcept { return a < x && x < b; }
  bool contains(double x) const noexcept { return a <= x && x <= b; }
};

}  // namespace trapbound
