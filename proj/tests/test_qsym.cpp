// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "eacc/qsym.hpp"

using namespace eacc;
using namespace eacc::qsym;

namespace {

std::shared_ptr<const SlotLayout> pair_layout(std::uint32_t dim) {
  auto layout = std::make_shared<SlotLayout>();
  layout->add("Q", dim, Owner::channel);
  layout->add("B", dim, Owner::bob_memory);
  layout->add("R", dim, Owner::channel);
  return layout;
}

}  // namespace

TEST_CASE("slot layout labels and dimensions") {
  SlotLayout layout;
  CHECK(layout.add("Q1,1", 2, Owner::channel) == 0);
  CHECK(layout.add("B1,1", 2, Owner::bob_memory) == 1);
  CHECK_THROWS_AS(layout.add("Q1,1", 2, Owner::channel), Error);
  CHECK_THROWS_AS(layout.add("X", 1, Owner::channel), Error);
  CHECK(layout.at("B1,1") == 1);
  CHECK_FALSE(layout.find("A1,1"));
  CHECK_THROWS_AS(layout.at("A1,1"), Error);
}

TEST_CASE("Weyl digit arithmetic") {
  CHECK(weyl_digits(9).base == 3);
  CHECK(weyl_digits(9).count == 2);
  CHECK(weyl_digits(6).base == 6);
  CHECK(weyl_add(9, 5, 7) == 0);  // (2,1) + (1,2) digitwise mod 3
  CHECK(weyl_add(8, 5, 3) == 6);
  CHECK(weyl_add(6, 4, 5) == 3);
  CHECK(weyl_neg(9, 1) == 2);
  CHECK(weyl_neg(9, 4) == 8);
  CHECK(weyl_neg(4, 3) == 3);
  CHECK(weyl_dot(4, 3, 3) == 0);
  CHECK(weyl_dot(9, 4, 4) == 2);
}

TEST_CASE("superdense round trip returns every displacement") {
  for (std::uint32_t dim : {2u, 3u, 4u, 5u, 8u, 9u}) {
    const auto layout = pair_layout(dim);
    for (Value x = 0; x < dim; ++x)
      for (Value z = 0; z < dim; ++z) {
        SymbolicState s(layout);
        s.make_bell_pair(0, 1);
        s.apply_displacement(0, x, z);
        const auto out = s.bell_measure(0, 1);
        CHECK(out.kind == MeasurementOutcome::Kind::bell);
        CHECK(out.x == x);
        CHECK(out.z == z);
      }
  }
}

TEST_CASE("displacements compose and move across the pair") {
  const auto layout = pair_layout(9);
  SymbolicState s(layout);
  s.make_bell_pair(0, 1);
  s.apply_displacement(0, 1, 2);
  s.apply_displacement(0, 1, 2);
  s.apply_displacement(1, 1, 0);  // second half contributes -x
  const auto out = s.bell_measure(0, 1);
  CHECK(out.x == weyl_add(9, weyl_add(9, 1, 1), weyl_neg(9, 1)));
  CHECK(out.z == weyl_add(9, 2, 2));
}

TEST_CASE("swap carries the pair with it") {
  const auto layout = pair_layout(4);
  SymbolicState s(layout);
  s.set_classical(2, 3);
  s.make_bell_pair(0, 1);
  s.swap_slots(0, 2);
  CHECK(s.partner(2) == SlotId{0} + 1);
  CHECK(s.partner(1) == SlotId{2});
  CHECK_FALSE(s.partner(0));
  CHECK(s.computational_measure(0).x == 3);
  s.apply_displacement(2, 1, 3);
  const auto out = s.bell_measure(2, 1);
  CHECK(out.x == 1);
  CHECK(out.z == 3);
}

TEST_CASE("operations outside the state family are rejected") {
  const auto layout = pair_layout(2);
  SymbolicState s(layout);
  CHECK_THROWS_AS(s.set_classical(0, 2), Error);
  CHECK_THROWS_AS(s.apply_displacement(0, 1, 0), Error);
  s.make_bell_pair(0, 1);
  CHECK_THROWS_AS(s.set_classical(0, 1), Error);
  CHECK_THROWS_AS(s.computational_measure(0), Error);
  CHECK_THROWS_AS(s.make_bell_pair(0, 2), Error);
  CHECK_THROWS_AS(s.bell_measure(0, 2), Error);
  const std::vector<SlotId> lost{0};
  s.erase(lost);
  CHECK(s.content(0).kind == ContentKind::erased);
  CHECK(s.pair(0).first_erased);
  CHECK(s.pair(0).live);
  CHECK_THROWS_AS(s.bell_measure(0, 1), Error);
  CHECK_THROWS_AS(s.computational_measure(0), Error);
  CHECK_THROWS_AS(s.set_classical(7, 0), Error);
}
