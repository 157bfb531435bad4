// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace eacc {

/// Exact rational used for every rate and bound value.
using Rational = boost::rational<std::int64_t>;

/// Renders "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses the output of to_string.
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Raised when a precondition on the inputs is violated. Contract
/// violations inside the simulator use the same type so callers have a
/// single thing to catch.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer power with overflow detection; throws Error on overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exponent);

}  // namespace eacc
