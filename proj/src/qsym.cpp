// SPDX-License-Identifier: Apache-2.0
#include "eacc/qsym.hpp"

#include <utility>

#include "eacc/gf.hpp"

namespace eacc::qsym {

SlotId SlotLayout::add(std::string label, std::uint32_t dim, Owner owner) {
  if (dim < 2) throw Error("slot '" + label + "' has dimension < 2");
  if (index_.count(label) != 0) throw Error("duplicate slot label '" + label + "'");
  SlotId id = slots_.size();
  index_.emplace(label, id);
  slots_.push_back(Slot{std::move(label), dim, owner});
  return id;
}

std::optional<SlotId> SlotLayout::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SlotId SlotLayout::at(const std::string& label) const {
  auto id = find(label);
  if (!id) throw Error("no slot labelled '" + label + "'");
  return *id;
}

WeylDigits weyl_digits(std::uint32_t dim) {
  std::uint32_t p = 0, m = 0;
  if (gf::prime_power(dim, p, m)) return {p, m};
  return {dim, 1};
}

Value weyl_add(std::uint32_t dim, Value a, Value b) {
  const auto [base, count] = weyl_digits(dim);
  if (base == 2) return a ^ b;
  Value out = 0, scale = 1;
  for (std::uint32_t t = 0; t < count; ++t) {
    out += ((a % base + b % base) % base) * scale;
    a /= base;
    b /= base;
    scale *= base;
  }
  return out;
}

Value weyl_neg(std::uint32_t dim, Value a) {
  const auto [base, count] = weyl_digits(dim);
  if (base == 2) return a;
  Value out = 0, scale = 1;
  for (std::uint32_t t = 0; t < count; ++t) {
    out += ((base - a % base) % base) * scale;
    a /= base;
    scale *= base;
  }
  return out;
}

std::uint32_t weyl_dot(std::uint32_t dim, Value a, Value b) {
  const auto [base, count] = weyl_digits(dim);
  std::uint64_t acc = 0;
  for (std::uint32_t t = 0; t < count; ++t) {
    acc += static_cast<std::uint64_t>(a % base) * (b % base);
    a /= base;
    b /= base;
  }
  return static_cast<std::uint32_t>(acc % base);
}

SymbolicState::SymbolicState(std::shared_ptr<const SlotLayout> layout)
    : layout_(std::move(layout)), contents_(layout_ ? layout_->size() : 0) {
  if (!layout_) throw Error("state without a layout");
}

void SymbolicState::check_slot(SlotId slot) const {
  if (slot >= contents_.size()) throw Error("slot index " + std::to_string(slot) + " out of range");
}

std::optional<SlotId> SymbolicState::partner(SlotId slot) const {
  check_slot(slot);
  const SlotContent& c = contents_[slot];
  if (c.kind != ContentKind::bell_half) return std::nullopt;
  const Pair& p = pairs_[c.pair];
  return c.role == Role::first ? p.second : p.first;
}

void SymbolicState::set_classical(SlotId slot, Value x) {
  check_slot(slot);
  const Slot& s = (*layout_)[slot];
  if (x >= s.dim) throw Error("symbol " + std::to_string(x) + " exceeds dimension of " + s.label);
  if (contents_[slot].kind != ContentKind::classical)
    throw Error("slot " + s.label + " is entangled or erased");
  contents_[slot].value = x;
}

PairId SymbolicState::make_bell_pair(SlotId a, SlotId b) {
  check_slot(a);
  check_slot(b);
  if (a == b) throw Error("a pair needs two distinct slots");
  if ((*layout_)[a].dim != (*layout_)[b].dim) throw Error("pair slots differ in dimension");
  if (contents_[a].kind != ContentKind::classical || contents_[b].kind != ContentKind::classical)
    throw Error("pair slot already occupied");
  PairId id = pairs_.size();
  pairs_.push_back(Pair{a, b, {}, false, false, true});
  contents_[a] = SlotContent{ContentKind::bell_half, 0, id, Role::first};
  contents_[b] = SlotContent{ContentKind::bell_half, 0, id, Role::second};
  return id;
}

void SymbolicState::apply_displacement(SlotId slot, Value x, Value z) {
  check_slot(slot);
  const SlotContent& c = contents_[slot];
  const std::uint32_t dim = (*layout_)[slot].dim;
  if (c.kind != ContentKind::bell_half) throw Error("displacement on a slot that is not a Bell half");
  if (x >= dim || z >= dim) throw Error("displacement outside the slot dimension");
  // (I (x) A)|Phi> = (A^T (x) I)|Phi>, and (X^x Z^z)^T ~ X^{-x} Z^z up to phase.
  Value dx = c.role == Role::first ? x : weyl_neg(dim, x);
  Displacement& d = pairs_[c.pair].displacement;
  d.x = weyl_add(dim, d.x, dx);
  d.z = weyl_add(dim, d.z, z);
}

MeasurementOutcome SymbolicState::bell_measure(SlotId a, SlotId b) {
  check_slot(a);
  check_slot(b);
  const SlotContent& ca = contents_[a];
  const SlotContent& cb = contents_[b];
  if (ca.kind != ContentKind::bell_half || cb.kind != ContentKind::bell_half || ca.pair != cb.pair)
    throw Error("Bell measurement needs the two halves of one live pair");
  Pair& p = pairs_[ca.pair];
  Displacement d = p.displacement;
  p.live = false;
  contents_[a] = SlotContent{};
  contents_[b] = SlotContent{};
  return {MeasurementOutcome::Kind::bell, d.x, d.z};
}

MeasurementOutcome SymbolicState::computational_measure(SlotId slot) const {
  check_slot(slot);
  const SlotContent& c = contents_[slot];
  if (c.kind != ContentKind::classical)
    throw Error("computational measurement of non-classical slot " + (*layout_)[slot].label);
  return {MeasurementOutcome::Kind::computational, c.value, 0};
}

void SymbolicState::erase(std::span<const SlotId> slots) {
  for (SlotId slot : slots) {
    check_slot(slot);
    SlotContent& c = contents_[slot];
    if (c.kind == ContentKind::bell_half) {
      Pair& p = pairs_[c.pair];
      (c.role == Role::first ? p.first_erased : p.second_erased) = true;
      if (p.first_erased && p.second_erased) p.live = false;
    }
    c = SlotContent{ContentKind::erased, 0, 0, Role::first};
  }
}

void SymbolicState::swap_slots(SlotId a, SlotId b) {
  check_slot(a);
  check_slot(b);
  if (a == b) return;
  if ((*layout_)[a].dim != (*layout_)[b].dim) throw Error("swap between slots of different dimension");
  std::swap(contents_[a], contents_[b]);
  for (SlotId s : {a, b}) {
    const SlotContent& c = contents_[s];
    if (c.kind != ContentKind::bell_half) continue;
    Pair& p = pairs_[c.pair];
    (c.role == Role::first ? p.first : p.second) = s;
  }
}

}  // namespace eacc::qsym
