// SPDX-License-Identifier: Apache-2.0
#include "eacc/bounds.hpp"

#include <algorithm>

namespace eacc::bounds {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::entanglement_rich: return "entanglement-rich";
    case Regime::entanglement_poor: return "entanglement-poor";
    case Regime::boundary: return "boundary";
  }
  return "unknown";
}

std::optional<std::string> inadmissible_reason(long long n, long long d, long long c) {
  if (n < 1) return "n < 1";
  if (d < 1) return "d < 1";
  if (c < 0) return "c < 0";
  if (c > n) return "c > n";
  if (d > n + 1) return "d > n+1";
  return std::nullopt;
}

bool admissible(long long n, long long d, long long c) { return !inadmissible_reason(n, d, c); }

namespace {
void require_admissible(long long n, long long d, long long c) {
  if (auto why = inadmissible_reason(n, d, c)) throw Error("inadmissible: " + *why);
}
}  // namespace

Regime regime_of(long long d, long long c) {
  if (d - 1 < c) return Regime::entanglement_rich;
  if (d - 1 > c) return Regime::entanglement_poor;
  return Regime::boundary;
}

BoundValue eacc_singleton(long long n, long long d, long long c) {
  require_admissible(n, d, c);
  return {(Rational(1) + Rational(c, n)) * Rational(n - d + 1), std::nullopt};
}

BoundValue separate_singleton(long long n, long long d, long long c) {
  require_admissible(n, d, c);
  return {Rational(std::max(n + c - 2 * d + 2, n - d + 1)), regime_of(d, c)};
}

}  // namespace eacc::bounds
