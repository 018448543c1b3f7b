#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace curvekit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) {
    return r.str();
}

/// Parses "p/q" or "p". Throws std::runtime_error on malformed input.
Rational parse_rational(const std::string& s);

inline int sign_of(const Rational& r) {
    return r.sign();
}

}  // namespace curvekit
