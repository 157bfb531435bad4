// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "eacc/common.hpp"

namespace eacc::qsym {

using SlotId = std::size_t;
using PairId = std::size_t;
using Value = std::uint32_t;

enum class Owner { channel, bob_memory, alice_memory };

struct Slot {
  std::string label;
  std::uint32_t dim = 2;
  Owner owner = Owner::channel;
};

/// Ordered, uniquely labelled slots.
class SlotLayout {
 public:
  /// Throws Error on a duplicate label or dim < 2.
  SlotId add(std::string label, std::uint32_t dim, Owner owner);

  std::size_t size() const { return slots_.size(); }
  const Slot& operator[](SlotId id) const { return slots_.at(id); }
  std::optional<SlotId> find(const std::string& label) const;
  SlotId at(const std::string& label) const;

 private:
  std::vector<Slot> slots_;
  std::unordered_map<std::string, SlotId> index_;
};

/// Weyl-Heisenberg digit structure of a dimension: p^m splits into m
/// base-p digits; any other dimension is a single cyclic digit.
struct WeylDigits {
  std::uint32_t base;
  std::uint32_t count;
};

WeylDigits weyl_digits(std::uint32_t dim);
Value weyl_add(std::uint32_t dim, Value a, Value b);
Value weyl_neg(std::uint32_t dim, Value a);
/// Sum over digits of a_t * b_t, reduced mod the digit base.
std::uint32_t weyl_dot(std::uint32_t dim, Value a, Value b);

struct Displacement {
  Value x = 0;
  Value z = 0;
  friend bool operator==(const Displacement&, const Displacement&) = default;
};

enum class Role { first, second };
enum class ContentKind { classical, bell_half, erased };

struct SlotContent {
  ContentKind kind = ContentKind::classical;
  Value value = 0;  // classical symbol
  PairId pair = 0;  // bell_half only
  Role role = Role::first;
};

/// A maximally entangled pair X^x Z^z (x) I |Phi>, displacement taken on
/// the first half. A surviving half whose partner is erased is flagged.
struct Pair {
  SlotId first;
  SlotId second;
  Displacement displacement;
  bool first_erased = false;
  bool second_erased = false;
  bool live = true;
};

struct MeasurementOutcome {
  enum class Kind { computational, bell } kind;
  Value x = 0;
  Value z = 0;
};

/// Products of computational-basis symbols and displaced Bell pairs, with
/// erasure. Anything that would leave this family is rejected with Error.
class SymbolicState {
 public:
  /// All slots start as Classical(0).
  explicit SymbolicState(std::shared_ptr<const SlotLayout> layout);

  const SlotLayout& layout() const { return *layout_; }
  const std::shared_ptr<const SlotLayout>& layout_ptr() const { return layout_; }
  const SlotContent& content(SlotId slot) const { return contents_.at(slot); }
  const Pair& pair(PairId id) const { return pairs_.at(id); }
  /// The other half of the slot's pair, if the slot holds a live half.
  std::optional<SlotId> partner(SlotId slot) const;

  void set_classical(SlotId slot, Value x);
  PairId make_bell_pair(SlotId a, SlotId b);
  void apply_displacement(SlotId slot, Value x, Value z);
  MeasurementOutcome bell_measure(SlotId a, SlotId b);
  MeasurementOutcome computational_measure(SlotId slot) const;
  void erase(std::span<const SlotId> slots);
  /// SWAP gate between two equal-dimension slots.
  void swap_slots(SlotId a, SlotId b);

 private:
  void check_slot(SlotId slot) const;

  std::shared_ptr<const SlotLayout> layout_;
  std::vector<SlotContent> contents_;
  std::vector<Pair> pairs_;
};

}  // namespace eacc::qsym
