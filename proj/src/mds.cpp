// SPDX-License-Identifier: Apache-2.0
#include "eacc/mds.hpp"

#include <string>
#include <utility>

namespace eacc::mds {

GeneratorMatrix::GeneratorMatrix(FieldPtr field, std::size_t k, std::size_t n,
                                 std::vector<Symbol> entries, bool flagged_mds)
    : field_(std::move(field)), k_(k), n_(n), entries_(std::move(entries)), flagged_mds_(flagged_mds) {
  if (!field_) throw Error("generator matrix without a field");
  if (entries_.size() != k_ * n_) throw Error("generator entry count does not match k x n");
  for (Symbol s : entries_)
    if (!field_->contains(s)) throw Error("generator entry outside the field");
}

ErasedWord::ErasedWord(std::vector<std::optional<Symbol>> values) : values_(std::move(values)) {
  for (const auto& v : values_)
    if (!v) ++erased_;
}

void ErasedWord::set(std::size_t i, Symbol v) {
  if (!values_.at(i)) --erased_;
  values_[i] = v;
}

void ErasedWord::erase(std::size_t i) {
  if (values_.at(i)) ++erased_;
  values_[i].reset();
}

GeneratorMatrix rs_generator(std::size_t n, std::size_t k, const FieldPtr& field) {
  if (n > field->order())
    throw Error("RS length " + std::to_string(n) + " exceeds field order " + std::to_string(field->order()));
  if (k > n) throw Error("RS dimension " + std::to_string(k) + " exceeds length " + std::to_string(n));
  std::vector<Symbol> entries(k * n);
  for (std::size_t j = 0; j < n; ++j) {
    Symbol power = 1;
    for (std::size_t i = 0; i < k; ++i) {
      entries[i * n + j] = power;
      power = field->mul(power, static_cast<Symbol>(j));
    }
  }
  return GeneratorMatrix(field, k, n, std::move(entries), true);
}

GeneratorMatrix binary_parity_generator() {
  return GeneratorMatrix(gf::Field::create(2, 1), 2, 3, {1, 0, 1, 0, 1, 1}, true);
}

std::vector<Symbol> mds_encode(std::span<const Symbol> msg, const GeneratorMatrix& g) {
  if (msg.size() != g.k())
    throw Error("message length " + std::to_string(msg.size()) + " != k = " + std::to_string(g.k()));
  const gf::Field& f = *g.field();
  std::vector<Symbol> word(g.n(), 0);
  for (std::size_t i = 0; i < g.k(); ++i) {
    if (!f.contains(msg[i])) throw Error("message symbol outside the field");
    if (msg[i] == 0) continue;
    for (std::size_t j = 0; j < g.n(); ++j) word[j] = f.add(word[j], f.mul(msg[i], g.at(i, j)));
  }
  return word;
}

namespace {

// Gaussian elimination on an augmented row-major matrix. Returns rank.
std::size_t eliminate(const gf::Field& f, std::vector<Symbol>& a, std::size_t rows, std::size_t cols,
                      std::size_t pivot_cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < pivot_cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    Symbol inv = f.inv(a[rank * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) a[rank * cols + j] = f.mul(a[rank * cols + j], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r * cols + c] == 0) continue;
      Symbol factor = a[r * cols + c];
      for (std::size_t j = 0; j < cols; ++j)
        a[r * cols + j] = f.sub(a[r * cols + j], f.mul(factor, a[rank * cols + j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<Symbol> mds_erasure_decode(const ErasedWord& word, const GeneratorMatrix& g) {
  if (word.size() != g.n())
    throw Error("word length " + std::to_string(word.size()) + " != n = " + std::to_string(g.n()));
  const std::size_t k = g.k();
  if (word.size() - word.erased_count() < k)
    throw Error("only " + std::to_string(word.size() - word.erased_count()) + " survivors for k = " +
                std::to_string(k));
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < word.size() && cols.size() < k; ++j)
    if (word[j]) cols.push_back(j);

  // Transposed system: row t is column cols[t] of G, augmented by word[cols[t]].
  const gf::Field& f = *g.field();
  const std::size_t width = k + 1;
  std::vector<Symbol> a(k * width);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t i = 0; i < k; ++i) a[t * width + i] = g.at(i, cols[t]);
    Symbol v = *word[cols[t]];
    if (!f.contains(v)) throw Error("received symbol outside the field");
    a[t * width + k] = v;
  }
  if (eliminate(f, a, k, width, k) != k) throw Error("singular decoding system: generator is not MDS");
  std::vector<Symbol> msg(k);
  for (std::size_t i = 0; i < k; ++i) msg[i] = a[i * width + k];
  return msg;
}

std::size_t column_rank(const GeneratorMatrix& g, std::span<const std::size_t> cols) {
  std::vector<Symbol> a(g.k() * cols.size());
  for (std::size_t i = 0; i < g.k(); ++i)
    for (std::size_t t = 0; t < cols.size(); ++t) a[i * cols.size() + t] = g.at(i, cols[t]);
  return eliminate(*g.field(), a, g.k(), cols.size(), cols.size());
}

bool is_mds(const GeneratorMatrix& g) {
  const std::size_t k = g.k(), n = g.n();
  if (k == 0) return true;
  if (k > n) return false;
  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  while (true) {
    if (column_rank(g, cols) != k) return false;
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++cols[i - 1];
    for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
}

}  // namespace eacc::mds
