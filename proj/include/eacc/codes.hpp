// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eacc/common.hpp"
#include "eacc/gf.hpp"
#include "eacc/mds.hpp"
#include "eacc/qsym.hpp"

namespace eacc::codes {

using gf::Symbol;
using Message = std::vector<Symbol>;
/// Erased channel positions, 0-based, strictly increasing.
using ErasurePattern = std::vector<std::size_t>;

/// [n, k, d; c]_q with k in base-q dits, carried by r sub-slots of
/// dimension qbar per channel position (q = qbar^r).
struct CodeParams {
  int n = 1;
  int d = 1;
  int c = 0;
  std::uint64_t q = 2;
  Rational k{0};
  std::uint32_t qbar = 2;
  int r = 1;
};

/// "[n,k,d;c]_q", k rendered exactly.
std::string format_params(const CodeParams& p);

/// Smallest power of two that is >= max(n, 2).
std::uint32_t smallest_power_of_two_at_least(std::uint64_t n);

struct SpaceSharingPlan {
  int r = 1;
  int l1 = 1;  // unassisted sub-slot rows
  int l2 = 0;  // superdense sub-slot rows
  int k1 = 0;
  int k2 = 0;
  std::uint32_t qbar = 2;
  std::uint64_t q = 2;
  Rational k{0};
};

/// r = n / gcd(n, c), l1 = (n - c) r / n, l2 = c r / n, k1 = n - d + 1,
/// k2 = 2 k1, q = qbar^r and k = (k1 l1 + k2 l2) / r. qbar defaults to the
/// smallest power of two >= n. Throws Error if k != (1 + c/n)(n - d + 1).
SpaceSharingPlan space_sharing_plan(int n, int d, int c, std::optional<std::uint32_t> qbar = std::nullopt);

/// Channel sub-slot Q_{position, row}, 0-based.
struct ChannelRef {
  int position = 0;
  int row = 0;
  friend bool operator==(const ChannelRef&, const ChannelRef&) = default;
};

/// Alice memory sub-slot A_{block, row}, 0-based; its partner is B_{block, row}.
struct MemoryRef {
  int block = 0;
  int row = 0;
  friend bool operator==(const MemoryRef&, const MemoryRef&) = default;
};

struct Assignment {
  MemoryRef from;
  ChannelRef to;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct RearrangeSchedule {
  std::vector<Assignment> assignment;
  friend bool operator==(const RearrangeSchedule&, const RearrangeSchedule&) = default;
};

/// Memory sub-slots taken block by block, handed to channel sub-slots
/// position by position within rows r - cr/n .. r - 1. Needs n | c r.
RearrangeSchedule rearrange_schedule(int n, int c, int r);

enum class SubcodeKind {
  unassisted,  // codeword symbol i sent as |x_i> on Q_{i,row}
  superdense,  // two codewords; displacement (y_i, y'_i) on the pair at Q_{i,row}
  separate     // one length n + c codeword: two symbols on each entangled position, one elsewhere
};

std::string to_string(SubcodeKind kind);
SubcodeKind parse_subcode_kind(const std::string& text);

struct Subcode {
  SubcodeKind kind;
  mds::GeneratorMatrix generator;
  int row = 0;

  /// Message dits carried by this subcode.
  std::size_t dits() const;
};

/// MDS generator over any field: Reed-Solomon when n <= q, otherwise one
/// of the trivial MDS codes (k in {0, 1, n-1, n}); Error if none applies.
mds::GeneratorMatrix mds_generator(std::size_t n, std::size_t k, const gf::FieldPtr& field);

class EaccCode {
 public:
  /// Validates the wiring and builds the slot layout. `construction` names
  /// the builder that produced the code and is informational.
  EaccCode(std::string construction, CodeParams params, gf::FieldPtr field, RearrangeSchedule schedule,
           std::vector<Subcode> subcodes);

  const std::string& construction() const { return construction_; }
  const CodeParams& params() const { return params_; }
  const gf::FieldPtr& field() const { return field_; }
  const RearrangeSchedule& schedule() const { return schedule_; }
  const std::vector<Subcode>& subcodes() const { return subcodes_; }
  const qsym::SlotLayout& layout() const { return *layout_; }

  std::size_t message_dits() const { return message_dits_; }
  /// log2 of the message space size.
  double message_bits() const;

  qsym::SlotId channel_slot(int position, int row) const;
  qsym::SlotId alice_slot(int block, int row) const;
  qsym::SlotId bob_slot(int block, int row) const;
  std::vector<qsym::SlotId> channel_slots(int position) const;
  std::vector<qsym::SlotId> bob_slots() const;
  /// Bob's half paired with channel sub-slot Q_{position,row}, if scheduled.
  std::optional<qsym::SlotId> bob_partner(int position, int row) const;

  /// Distributes entanglement, rearranges it, then encodes every subcode.
  qsym::SymbolicState encode(std::span<const Symbol> msg) const;
  /// Sends the state through the erasure channel.
  qsym::SymbolicState transmit(qsym::SymbolicState state, const ErasurePattern& erased) const;
  /// Measures the survivors and decodes. Patterns smaller than d - 1 are
  /// padded by discarding the highest-index survivors. Throws Error when
  /// the pattern is too large or decoding is impossible.
  Message decode(qsym::SymbolicState state, const ErasurePattern& erased) const;

  /// Same code with a different claimed distance; k is unchanged.
  EaccCode with_claimed_distance(int d) const;

 private:
  std::string construction_;
  CodeParams params_;
  gf::FieldPtr field_;
  RearrangeSchedule schedule_;
  std::vector<Subcode> subcodes_;
  std::shared_ptr<const qsym::SlotLayout> layout_;
  std::size_t message_dits_ = 0;
  std::vector<std::optional<qsym::SlotId>> bob_of_channel_;
  qsym::SlotId alice_base_ = 0;
  qsym::SlotId bob_base_ = 0;
};

qsym::SymbolicState eacc_encode(const EaccCode& code, std::span<const Symbol> msg);
Message eacc_decode(const EaccCode& code, qsym::SymbolicState state, const ErasurePattern& erased);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<ErasurePattern> all_patterns(int n, int size);

EaccCode build_unassisted(int n, int d, const gf::FieldPtr& field);
EaccCode build_superdense(int n, int d, const gf::FieldPtr& field);
/// Space-shared combination of l1 unassisted and l2 superdense subcodes.
EaccCode build_spaceshared(int n, int d, int c, std::optional<std::uint32_t> qbar = std::nullopt);
/// Separate-encoder construction: when d - 1 <= c, a length n + c MDS code
/// spread two symbols per entangled position; otherwise plain MDS.
EaccCode build_separate(int n, int d, int c, const gf::FieldPtr& field);
/// build_separate over the smallest power-of-two field of order >= n + c.
EaccCode build_separate(int n, int d, int c);

struct AsymptoticResult {
  EaccCode code;
  std::uint64_t q = 0;        // requested channel dimension
  std::uint64_t q_tilde = 0;  // dimension actually used, qbar^r <= q
  double k_achieved = 0.0;    // log_q(q_tilde) * k
  double k_lower_bound = 0.0; // (1 - r log_q 2)(1 + c/n)(n - d + 1)
  bool exact = false;         // q_tilde == q, so k_achieved == code.params().k
};

/// Picks the largest power of two qbar with qbar^r <= q and builds the
/// space-shared code over it. Throws Error when qbar < n or the field
/// table is exceeded.
AsymptoticResult build_asymptotic(int n, int d, int c, std::uint64_t q);

}  // namespace eacc::codes
