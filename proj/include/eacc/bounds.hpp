// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "eacc/common.hpp"

namespace eacc::bounds {

/// Which branch of the separate-encoder bound is active. At c = d - 1
/// both branches coincide and the regime is reported as boundary.
enum class Regime { entanglement_rich, entanglement_poor, boundary };

std::string to_string(Regime regime);

struct BoundValue {
  Rational value;
  std::optional<Regime> regime;
};

/// n >= 1, d >= 1, 0 <= c <= n and d <= n + 1.
bool admissible(long long n, long long d, long long c);

/// Short reason such as "c > n", or nullopt when admissible.
std::optional<std::string> inadmissible_reason(long long n, long long d, long long c);

Regime regime_of(long long d, long long c);

/// (1 + c/n)(n - d + 1).
BoundValue eacc_singleton(long long n, long long d, long long c);

/// max(n + c - 2d + 2, n - d + 1), tagged with the active regime.
BoundValue separate_singleton(long long n, long long d, long long c);

}  // namespace eacc::bounds
