// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eacc/codes.hpp"

namespace eacc::verify {

using codes::EaccCode;
using codes::ErasurePattern;
using codes::Message;

/// Name of the sampling generator, recorded in every report.
inline constexpr const char* kPrngName = "mt19937_64";
/// Combined message spaces up to 2^16 are enumerated in full.
inline constexpr double kExhaustiveBits = 16.0;
/// Standalone subcodes (or one superdense stream) up to 2^18 are enumerated.
inline constexpr double kSubcodeExhaustiveBits = 18.0;

enum class PolicyKind { exhaustive, sampled, automatic };

struct Policy {
  PolicyKind kind = PolicyKind::automatic;
  std::uint64_t seed = 0;
  /// Random messages drawn when sampling; the all-zero and all-max
  /// messages are always added on top.
  std::size_t count = 1024;

  static Policy exhaustive() { return {PolicyKind::exhaustive, 0, 0}; }
  static Policy sampled(std::uint64_t seed, std::size_t count = 1024) { return {PolicyKind::sampled, seed, count}; }
  static Policy automatic(std::uint64_t seed = 0, std::size_t count = 1024) {
    return {PolicyKind::automatic, seed, count};
  }
};

std::string to_string(PolicyKind kind);

/// The messages a policy selects for a code with `dits` symbols over GF(qbar).
/// Sampled lists start with all-zero and all-(qbar-1), then draw dits with
/// mt19937_64(seed) reduced mod qbar.
std::vector<Message> select_messages(std::size_t dits, std::uint32_t qbar, const Policy& policy,
                                     PolicyKind* resolved = nullptr);

struct Failure {
  Message message;
  ErasurePattern pattern;
  std::optional<Message> decoded;  // empty when decoding raised
  std::string reason;
};

struct SubcodeReport {
  std::size_t index = 0;
  codes::SubcodeKind kind = codes::SubcodeKind::unassisted;
  int row = 0;
  /// "exhaustive", "stream-exhaustive" (each superdense stream runs over
  /// its full space, the two streams paired by a bijection) or "sampled".
  std::string coverage;
  std::uint64_t patterns_checked = 0;
  std::uint64_t messages_checked = 0;
  std::uint64_t failure_count = 0;
  bool cached = false;
  bool passed = false;
};

struct VerifyReport {
  codes::CodeParams code_params;
  std::string construction;
  int pattern_size = 0;
  std::uint64_t patterns_checked = 0;
  std::uint64_t messages_checked = 0;  // per pattern
  Policy policy;
  PolicyKind resolved_policy = PolicyKind::exhaustive;
  std::string prng = kPrngName;
  std::uint64_t failure_count = 0;
  /// First failures in (pattern, message) order; at most VerifyOptions::max_failures.
  std::vector<Failure> failures;
  std::vector<SubcodeReport> subcodes;
  bool passed = false;
};

/// Certificates of standalone subcodes, shared across verify calls.
class SubcodeCache {
 public:
  std::optional<SubcodeReport> find(const std::string& key) const;
  void store(const std::string& key, const SubcodeReport& report);

 private:
  mutable std::mutex mutex_;
  std::map<std::string, SubcodeReport> entries_;
};

struct VerifyOptions {
  Policy policy = Policy::automatic();
  bool check_subcodes = true;
  std::size_t max_failures = 32;
  SubcodeCache* cache = nullptr;
};

/// encode -> erase -> decode for every pattern of size d - 1 and every
/// selected message, plus a standalone check of every subcode.
VerifyReport verify_code(const EaccCode& code, const VerifyOptions& options = {});
/// Single-threaded reference with identical results.
VerifyReport verify_code_serial(const EaccCode& code, const VerifyOptions& options = {});

/// The standalone single-row code a subcode forms on its own.
EaccCode standalone_subcode(const EaccCode& code, std::size_t index);

struct SeparateCheck {
  bool separate = false;
  /// First crossing edge, e.g. "Q2,2<-A1,3".
  std::optional<std::string> witness;
};

/// Structural check that Q_i draws entanglement only from A_i.
SeparateCheck check_separate_encoders(const EaccCode& code);

struct GapReport {
  Rational k_achieved;
  Rational eacc_bound;
  Rational separate_bound;
  bool saturates_eacc = false;
  bool saturates_separate = false;
  bool separate = false;
  /// k <= eacc bound, and k <= separate bound when the code is separate.
  bool consistent = false;
};

GapReport check_rate_against_bounds(const EaccCode& code);

}  // namespace eacc::verify
