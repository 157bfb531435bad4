// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <vector>

#include "eacc/gf.hpp"

using namespace eacc;
using gf::Symbol;

namespace {

// Schoolbook polynomial product over Z_p reduced by the spec's modulus.
// Independent of the exp/log tables the library builds.
Symbol oracle_mul(const gf::FieldSpec& spec, Symbol a, Symbol b) {
  const std::uint32_t p = spec.p, m = spec.m;
  if (m == 1) return static_cast<Symbol>((std::uint64_t{a} * b) % p);
  std::vector<std::uint32_t> x(m), y(m), prod(2 * m - 1, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (std::size_t deg = prod.size(); deg-- > m;) {
    const std::uint32_t lead = prod[deg];
    if (lead == 0) continue;
    for (std::uint32_t t = 0; t <= m; ++t) {
      const std::size_t at = deg - m + t;
      prod[at] = (prod[at] + p * p - lead * spec.primitive_poly[t] % p) % p;
    }
  }
  Symbol out = 0;
  for (std::uint32_t i = m; i-- > 0;) out = out * p + prod[i];
  return out;
}

const std::vector<std::uint32_t> kSmallOrders = {2,  3,  4,  5,  7,  8,  9,  11, 13, 16, 17, 19, 23, 25,
                                                 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64};

}  // namespace

TEST_CASE("prime and prime-power detection") {
  CHECK(gf::is_prime(2));
  CHECK(gf::is_prime(65521));
  CHECK_FALSE(gf::is_prime(1));
  CHECK_FALSE(gf::is_prime(65535));
  std::uint32_t p = 0, m = 0;
  CHECK(gf::prime_power(81, p, m));
  CHECK(p == 3);
  CHECK(m == 4);
  CHECK_FALSE(gf::prime_power(12, p, m));
  CHECK_THROWS_AS(gf::Field::of_order(6), Error);
  CHECK_THROWS_AS(gf::Field::of_order(1u << 17), Error);
}

TEST_CASE("small known products") {
  const auto f4 = gf::Field::of_order(4);
  CHECK(f4->mul(2, 2) == 3);  // x * x = x + 1 mod x^2 + x + 1
  CHECK(f4->mul(2, 3) == 1);
  CHECK(f4->add(2, 3) == 1);
  const auto f5 = gf::Field::of_order(5);
  CHECK(f5->inv(2) == 3);
  CHECK(f5->sub(1, 3) == 3);
  const auto f8 = gf::Field::of_order(8);
  CHECK(f8->spec().primitive_poly == std::vector<std::uint32_t>{1, 1, 0, 1});
  CHECK(f8->mul(4, 2) == 3);  // x^3 = x + 1
  CHECK_THROWS_AS(f8->div(1, 0), Error);
}

TEST_CASE("field axioms hold exhaustively for every order up to 64") {
  for (std::uint32_t q : kSmallOrders) {
    CAPTURE(q);
    const auto f = gf::Field::of_order(q);
    bool ok = true;
    for (Symbol a = 0; a < q && ok; ++a) {
      ok = ok && f->add(a, 0) == a && f->mul(a, 1) == a && f->add(a, f->neg(a)) == 0;
      if (a != 0) ok = ok && f->mul(a, f->inv(a)) == 1;
      for (Symbol b = 0; b < q && ok; ++b) {
        ok = ok && f->add(a, b) == f->add(b, a) && f->mul(a, b) == f->mul(b, a);
        ok = ok && f->mul(a, b) == oracle_mul(f->spec(), a, b);
        ok = ok && f->sub(f->add(a, b), b) == a;
        if (b != 0) ok = ok && f->mul(f->div(a, b), b) == a;
        for (Symbol c = 0; c < q && ok; ++c) {
          ok = ok && f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
          ok = ok && f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
          ok = ok && f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("table moduli are primitive: x has multiplicative order q - 1") {
  for (std::uint32_t q = 4; q <= gf::kMaxOrder; ++q) {
    std::uint32_t p = 0, m = 0;
    if (!gf::prime_power(q, p, m) || m < 2) continue;
    CAPTURE(q);
    const auto spec = gf::field_new(p, m);
    CHECK(spec.order == q);
    CHECK(spec.primitive_poly.size() == m + 1);
    CHECK(spec.primitive_poly.back() == 1);
    // Powers of x computed by the oracle; first return to 1 must be at q - 1.
    Symbol x = 1;
    std::uint32_t order = 0;
    do {
      x = oracle_mul(spec, x, p);
      ++order;
    } while (x != 1 && order < q);
    CHECK(order == q - 1);
  }
}

TEST_CASE("GF(256) products match the oracle") {
  const auto f = gf::Field::of_order(256);
  std::size_t mismatches = 0;
  for (Symbol a = 0; a < 256; ++a)
    for (Symbol b = 0; b < 256; ++b) mismatches += f->mul(a, b) != oracle_mul(f->spec(), a, b);
  CHECK(mismatches == 0);
  CHECK(f->pow(2, 255) == 1);
  CHECK(f->pow(0, 0) == 1);
}

TEST_CASE("instances are shared and specs round-trip") {
  CHECK(gf::Field::create(2, 3) == gf::Field::of_order(8));
  const auto spec = gf::field_new(3, 2);
  CHECK(gf::Field::create(spec)->order() == 9);
  auto wrong = spec;
  wrong.primitive_poly = {1, 0, 1};  // irreducible, but x has order 4
  CHECK_THROWS_AS(gf::Field::create(wrong), Error);
}

TEST_CASE("tagged elements refuse to mix fields") {
  const auto f4 = gf::Field::of_order(4);
  const auto f8 = gf::Field::of_order(8);
  gf::FieldElem a(f4, 2), b(f4, 3), c(f8, 1);
  CHECK((a * a).rep() == 3);
  CHECK((a + b).rep() == 1);
  CHECK((b / a).rep() == f4->div(3, 2));
  CHECK_THROWS_AS(a + c, Error);
  CHECK_THROWS_AS(gf::FieldElem(f4, 4), Error);
  CHECK(gf::field_arith(a, b, gf::Op::sub) == a - b);
}
