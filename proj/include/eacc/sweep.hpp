// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eacc/codes.hpp"
#include "eacc/verify.hpp"

namespace eacc::sweep {

enum class BuildKind { spaceshared, separate, superdense, unassisted };

std::string to_string(BuildKind kind);
BuildKind parse_build_kind(const std::string& text);

/// Field order a builder uses when none is given: the smallest power of two
/// >= n, or >= n + c for the separate construction.
std::uint32_t default_qbar(BuildKind kind, int n, int c);

/// Builds one code. Superdense and unassisted ignore c except for checking
/// it equals n or 0 respectively.
codes::EaccCode build(BuildKind kind, int n, int d, int c, std::optional<std::uint32_t> qbar = std::nullopt);

struct SweepRow {
  int n = 0, d = 0, c = 0;
  std::uint32_t qbar = 0;
  std::uint64_t q = 0;
  Rational k_achieved{0};
  Rational eacc_bound{0};
  Rational separate_bound{0};
  bool verified = false;
  bool separate = false;
  /// k_achieved equals the bound the construction targets.
  bool saturates = false;
  std::uint64_t failure_count = 0;
  std::optional<std::string> error;  // construction or verification raised
};

struct SweepOptions {
  BuildKind kind = BuildKind::spaceshared;
  int nmax = 6;
  std::uint64_t seed = 0;
  std::size_t samples = 1024;
};

/// Every admissible (n, d, c) with n <= nmax, ordered by (n, d, c).
std::vector<SweepRow> run_sweep(const SweepOptions& options);
std::vector<SweepRow> run_sweep_serial(const SweepOptions& options);

/// True when every row built, verified and saturates its target.
bool sweep_passed(const std::vector<SweepRow>& rows);

}  // namespace eacc::sweep
