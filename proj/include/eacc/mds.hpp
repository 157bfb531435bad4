// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eacc/gf.hpp"

namespace eacc::mds {

using gf::FieldPtr;
using gf::Symbol;

/// Row-major k x n generator over a finite field.
class GeneratorMatrix {
 public:
  GeneratorMatrix(FieldPtr field, std::size_t k, std::size_t n, std::vector<Symbol> entries,
                  bool flagged_mds = false);

  const FieldPtr& field() const { return field_; }
  std::size_t k() const { return k_; }
  std::size_t n() const { return n_; }
  Symbol at(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  std::span<const Symbol> entries() const { return entries_; }
  bool flagged_mds() const { return flagged_mds_; }

  friend bool operator==(const GeneratorMatrix& a, const GeneratorMatrix& b) {
    return a.field_->spec() == b.field_->spec() && a.k_ == b.k_ && a.n_ == b.n_ &&
           a.entries_ == b.entries_;
  }

 private:
  FieldPtr field_;
  std::size_t k_;
  std::size_t n_;
  std::vector<Symbol> entries_;
  bool flagged_mds_;
};

/// Received word: each position holds a symbol or nothing (erased).
class ErasedWord {
 public:
  /// All positions start erased.
  explicit ErasedWord(std::size_t n) : values_(n), erased_(n) {}
  explicit ErasedWord(std::vector<std::optional<Symbol>> values);

  std::size_t size() const { return values_.size(); }
  const std::optional<Symbol>& operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, Symbol v);
  void erase(std::size_t i);
  std::size_t erased_count() const { return erased_; }

 private:
  std::vector<std::optional<Symbol>> values_;
  std::size_t erased_ = 0;
};

/// Vandermonde generator: entry (i, j) is e_j^i where e_j is the field
/// element with rep j. Requires k <= n <= q. k = 0 yields the empty code.
GeneratorMatrix rs_generator(std::size_t n, std::size_t k, const FieldPtr& field);

/// The binary [3,2,2] generator [[1,0,1],[0,1,1]] used by the worked example.
GeneratorMatrix binary_parity_generator();

std::vector<Symbol> mds_encode(std::span<const Symbol> msg, const GeneratorMatrix& g);

/// Solves msg * G = word on the first k surviving columns.
/// Throws Error when fewer than k positions survive or the system is singular.
std::vector<Symbol> mds_erasure_decode(const ErasedWord& word, const GeneratorMatrix& g);

/// Exhaustive over all k-subsets of columns.
bool is_mds(const GeneratorMatrix& g);

/// Rank of the k x |cols| submatrix on the given columns.
std::size_t column_rank(const GeneratorMatrix& g, std::span<const std::size_t> cols);

}  // namespace eacc::mds
