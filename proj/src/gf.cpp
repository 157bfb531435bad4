// SPDX-License-Identifier: Apache-2.0
#include "eacc/gf.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace eacc::gf {
namespace {

struct TableRow {
  std::uint32_t p;
  std::uint32_t m;
  std::vector<std::uint32_t> poly;
};

const std::vector<TableRow>& poly_table() {
  static const std::vector<TableRow> table = {
#include "gf_poly_table.inc"
  };
  return table;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

bool prime_power(std::uint64_t n, std::uint32_t& p, std::uint32_t& m) {
  if (n < 2) return false;
  std::uint64_t f = 2;
  while (f * f <= n && n % f != 0) ++f;
  if (n % f != 0) f = n;
  std::uint32_t e = 0;
  while (n % f == 0) {
    n /= f;
    ++e;
  }
  if (n != 1) return false;
  p = static_cast<std::uint32_t>(f);
  m = e;
  return true;
}

FieldSpec field_new(std::uint32_t p, std::uint32_t m) { return Field::create(p, m)->spec(); }

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (spec_.m == 1) return;
  const std::uint32_t q = spec_.order;
  const std::uint32_t p = spec_.p;
  const std::uint32_t m = spec_.m;
  exp_.assign(2 * (q - 1), 0);
  log_.assign(q, 0);
  // Multiply by x with reduction, on base-p digit vectors.
  std::vector<std::uint32_t> digits(m, 0);
  digits[0] = 1;
  auto encode = [&] {
    Symbol v = 0;
    for (std::uint32_t i = m; i-- > 0;) v = v * p + digits[i];
    return v;
  };
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    Symbol v = encode();
    exp_[i] = v;
    exp_[i + q - 1] = v;
    log_[v] = i;
    std::uint32_t carry = digits[m - 1];
    for (std::uint32_t t = m - 1; t > 0; --t) digits[t] = digits[t - 1];
    digits[0] = 0;
    for (std::uint32_t t = 0; t < m; ++t)
      digits[t] = (digits[t] + (p - spec_.primitive_poly[t]) * carry) % p;
  }
}

std::shared_ptr<const Field> Field::create(std::uint32_t p, std::uint32_t m) {
  if (m < 1) throw Error("field degree must be >= 1");
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    order *= p;
    if (order > kMaxOrder)
      throw Error("field order " + std::to_string(p) + "^" + std::to_string(m) +
                  " exceeds the built-in table (2^16)");
  }

  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Field>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find({p, m}); it != cache.end()) return it->second;

  FieldSpec spec;
  spec.p = p;
  spec.m = m;
  spec.order = static_cast<std::uint32_t>(order);
  if (m == 1) {
    spec.primitive_poly = {0, 1};
  } else {
    for (const auto& row : poly_table())
      if (row.p == p && row.m == m) spec.primitive_poly = row.poly;
    if (spec.primitive_poly.empty())
      throw Error("no table entry for GF(" + std::to_string(p) + "^" + std::to_string(m) + ")");
  }
  auto field = std::make_shared<const Field>(std::move(spec));
  cache.emplace(std::make_pair(p, m), field);
  return field;
}

std::shared_ptr<const Field> Field::of_order(std::uint32_t q) {
  std::uint32_t p = 0, m = 0;
  if (!prime_power(q, p, m)) throw Error("field order " + std::to_string(q) + " is not a prime power");
  return create(p, m);
}

std::shared_ptr<const Field> Field::create(const FieldSpec& spec) {
  auto field = create(spec.p, spec.m);
  if (field->spec() != spec)
    throw Error("field spec does not match the built-in table (version " +
                std::to_string(kPolyTableVersion) + ")");
  return field;
}

Symbol Field::add(Symbol a, Symbol b) const {
  const std::uint32_t p = spec_.p;
  if (p == 2) return a ^ b;
  if (spec_.m == 1) return (a + b) % p;
  Symbol out = 0, scale = 1;
  while (a != 0 || b != 0) {
    out += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

Symbol Field::neg(Symbol a) const {
  const std::uint32_t p = spec_.p;
  if (p == 2) return a;
  if (spec_.m == 1) return (p - a) % p;
  Symbol out = 0, scale = 1;
  while (a != 0) {
    out += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return out;
}

Symbol Field::sub(Symbol a, Symbol b) const { return add(a, neg(b)); }

Symbol Field::mul(Symbol a, Symbol b) const {
  if (a == 0 || b == 0) return 0;
  if (spec_.m == 1)
    return static_cast<Symbol>((static_cast<std::uint64_t>(a) * b) % spec_.p);
  return exp_[log_[a] + log_[b]];
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw Error("division by zero in GF(" + std::to_string(spec_.order) + ")");
  if (spec_.m == 1) return pow(a, spec_.p - 2);
  return exp_[(spec_.order - 1 - log_[a]) % (spec_.order - 1)];
}

Symbol Field::div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

Symbol Field::pow(Symbol a, std::uint64_t e) const {
  Symbol result = 1;
  while (e != 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FieldElem::FieldElem(FieldPtr field, Symbol rep) : field_(std::move(field)), rep_(rep) {
  if (!field_) throw Error("field element without a field");
  if (!field_->contains(rep_))
    throw Error("rep " + std::to_string(rep_) + " outside GF(" + std::to_string(field_->order()) + ")");
}

FieldElem field_arith(const FieldElem& a, const FieldElem& b, Op op) {
  if (a.field() != b.field() && a.field()->spec() != b.field()->spec())
    throw Error("field spec mismatch");
  const Field& f = *a.field();
  switch (op) {
    case Op::add: return {a.field(), f.add(a.rep(), b.rep())};
    case Op::sub: return {a.field(), f.sub(a.rep(), b.rep())};
    case Op::mul: return {a.field(), f.mul(a.rep(), b.rep())};
    case Op::div: return {a.field(), f.div(a.rep(), b.rep())};
  }
  throw Error("unknown field operation");
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) { return field_arith(a, b, Op::add); }
FieldElem operator-(const FieldElem& a, const FieldElem& b) { return field_arith(a, b, Op::sub); }
FieldElem operator*(const FieldElem& a, const FieldElem& b) { return field_arith(a, b, Op::mul); }
FieldElem operator/(const FieldElem& a, const FieldElem& b) { return field_arith(a, b, Op::div); }

bool operator==(const FieldElem& a, const FieldElem& b) {
  return a.field()->spec() == b.field()->spec() && a.rep() == b.rep();
}

}  // namespace eacc::gf
