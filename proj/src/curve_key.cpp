#include "curvekit/curve_key.hpp"

#include <sstream>

namespace curvekit {

std::string to_string(const CurveKey& k) {
  std::ostringstream os;
  os << "key(b=" << k.b << ";";
  for (size_t i = 0; i < k.w.size(); ++i) {
    if (i) os << ",";
    os << k.w[i];
  }
  os << ")";
  return os.str();
}

std::int64_t total_weight(const CurveKey& k) {
  std::int64_t s = 0;
  for (auto v : k.w) s += v;
  return s;
}

}  // namespace curvekit
