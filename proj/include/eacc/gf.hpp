// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "eacc/common.hpp"

namespace eacc::gf {

/// Canonical integer encoding of a field element: the polynomial
/// residue's coefficients read as base-p digits, constant term first.
using Symbol = std::uint32_t;

/// Version of the built-in primitive polynomial table.
inline constexpr int kPolyTableVersion = 1;
inline constexpr std::uint32_t kMaxOrder = 1u << 16;

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  /// Coefficients c_0..c_m of the modulus, monic (c_m = 1).
  std::vector<std::uint32_t> primitive_poly;
  std::uint32_t order = 2;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

/// Splits n = p^m. Returns false when n is not a prime power.
bool prime_power(std::uint64_t n, std::uint32_t& p, std::uint32_t& m);

/// GF(p^m) with arithmetic tables. Instances are immutable and shared.
class Field {
 public:
  /// Same (p, m) always yields the same spec, and the same instance.
  static std::shared_ptr<const Field> create(std::uint32_t p, std::uint32_t m);
  static std::shared_ptr<const Field> of_order(std::uint32_t q);
  static std::shared_ptr<const Field> create(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t order() const { return spec_.order; }
  std::uint32_t characteristic() const { return spec_.p; }
  std::uint32_t degree() const { return spec_.m; }

  Symbol add(Symbol a, Symbol b) const;
  Symbol sub(Symbol a, Symbol b) const;
  Symbol neg(Symbol a) const;
  Symbol mul(Symbol a, Symbol b) const;
  /// Throws Error when b == 0.
  Symbol div(Symbol a, Symbol b) const;
  Symbol inv(Symbol a) const;
  Symbol pow(Symbol a, std::uint64_t e) const;

  bool contains(Symbol a) const { return a < spec_.order; }

  explicit Field(FieldSpec spec);

 private:
  FieldSpec spec_;
  // Extension fields only: x is primitive, so exp_[i] = x^i.
  std::vector<Symbol> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Equivalent to Field::create(p, m)->spec().
FieldSpec field_new(std::uint32_t p, std::uint32_t m);

enum class Op { add, sub, mul, div };

/// A value tagged with its field; mixing fields is an error.
class FieldElem {
 public:
  FieldElem(FieldPtr field, Symbol rep);

  Symbol rep() const { return rep_; }
  const FieldPtr& field() const { return field_; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  friend bool operator==(const FieldElem& a, const FieldElem& b);

 private:
  FieldPtr field_;
  Symbol rep_;
};

FieldElem field_arith(const FieldElem& a, const FieldElem& b, Op op);

}  // namespace eacc::gf
