#pragma once

#include <cstddef>
#include <vector>

namespace sizevix {

// Ordered (x, y) pairs; for ranked-size curves y is non-increasing.
struct CurvePoints {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
};

}  // namespace sizevix
