#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace curvekit {

// Canonical name of an isotopy class of essential simple closed curves on the
// b-punctured sphere: its normal coordinates with respect to the reference
// triangulation (one weight per edge, Surface::get(b) edge order). Normal
// representatives are unique up to normal isotopy, so equality of keys is
// equality of curves.
struct CurveKey {
  int b = 0;
  std::vector<std::int64_t> w;

  auto operator<=>(const CurveKey&) const = default;
  bool operator==(const CurveKey&) const = default;
};

std::string to_string(const CurveKey& k);

std::int64_t total_weight(const CurveKey& k);

}  // namespace curvekit
