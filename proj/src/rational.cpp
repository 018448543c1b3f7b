#include "curvekit/rational.hpp"

#include <stdexcept>

namespace curvekit {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::runtime_error("empty rational literal");
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw std::runtime_error("malformed rational literal: " + s);
    }
}

}  // namespace curvekit
