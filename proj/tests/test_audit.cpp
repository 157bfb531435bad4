// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "eacc/densim.hpp"
#include "eacc/entropy_audit.hpp"

using namespace eacc;
using namespace eacc::audit;

namespace {

const Step& step(const StepReport& r, const std::string& label) {
  for (const auto& s : r.chain)
    if (s.label == label) return s;
  throw Error("no step " + label);
}

}  // namespace

TEST_CASE("instances split the positions") {
  const auto code = codes::build_separate(5, 2, 3);
  const auto one = make_instance(code, 1);
  CHECK(one.E == std::vector<int>{0});
  CHECK(one.I == std::vector<int>{1, 2});
  CHECK(one.J == std::vector<int>{3, 4});
  CHECK_THROWS_AS(make_instance(code, 2), Error);
  const auto poor = make_instance(codes::build_separate(4, 3, 1), 2);
  CHECK(poor.E == std::vector<int>{0, 1});
  CHECK(poor.J == std::vector<int>{2, 3});
  CHECK(poor.I.empty());
  CHECK_THROWS_AS(make_instance(code, 3), Error);
}

TEST_CASE("the space-shared example is refused") {
  CHECK_THROWS_AS(audit_code(codes::build_spaceshared(3, 2, 2, 2u), 1), Error);
}

TEST_CASE("regime 1 on the two-position superdense code") {
  const auto code = codes::build_superdense(2, 2, gf::Field::of_order(2));
  const auto r = audit_code(code, 1);
  CHECK(r.holds);
  CHECK(r.messages == 4);
  CHECK(r.I == std::vector<int>{1});
  CHECK(r.J.empty());
  // Oracle: sigma_m on Q2 B1 B2 is a Bell state on (Q2, B2) times I/2 on B1,
  // so H(Q2 B|m) = 1, H(B|m) = 2, hence H(Q_I|MB) = -1.
  CHECK(step(r, "classical-conditioning").rhs == doctest::Approx(2.0));
  const Step& wm = step(r, "weak-monotonicity");
  CHECK(wm.lhs == doctest::Approx(2.0));
  CHECK(wm.rhs == doctest::Approx(2.0));
  CHECK(std::abs(wm.slack) <= densim::kTolerance);
  CHECK(r.terminal == doctest::Approx(2.0));
  CHECK(step(r, "holevo").rhs == doctest::Approx(2.0));
  CHECK(r.chain.front().lhs == doctest::Approx(2.0));
}

TEST_CASE("regime 2 on unassisted codes") {
  const auto r = audit_code(codes::build_unassisted(3, 2, gf::Field::of_order(2)), 2);
  CHECK(r.holds);
  CHECK(r.J == std::vector<int>{1, 2});
  CHECK(r.terminal == doctest::Approx(2.0));
  CHECK(step(r, "independence").rhs == doctest::Approx(2.0));  // H(Q_J|M) = 0
  for (const auto& s : r.chain) CHECK(std::abs(s.slack) <= densim::kTolerance);

  const auto r3 = audit_code(codes::build_unassisted(3, 3, gf::Field::of_order(4)), 2);
  CHECK(r3.holds);
  CHECK(r3.chain.front().lhs == doctest::Approx(1.0));
  CHECK(r3.terminal == doctest::Approx(1.0));
}

TEST_CASE("separate construction at native field size") {
  const auto r = audit_code(codes::build_separate(3, 2, 2), 1);
  CHECK(r.holds);
  CHECK(r.messages == 512);
  CHECK(r.terminal == doctest::Approx(3.0));
  CHECK(r.chain.front().lhs == doctest::Approx(3.0));
}

TEST_CASE("every small separate code passes its chain") {
  for (int n = 1; n <= 3; ++n)
    for (int d = 1; d <= n + 1; ++d)
      for (int c = 0; c <= n; ++c) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(c);
        const auto code = codes::build_separate(n, d, c);
        // Keep the dense average small: channel survivors plus Bob's memory.
        if (std::pow(code.params().qbar, n - d + 1 + c) > 512.0) continue;
        for (int regime : {1, 2}) {
          if ((regime == 1 && d - 1 > c) || (regime == 2 && c > d - 1)) continue;
          const auto r = audit_code(code, regime);
          CHECK(r.holds);
          CHECK(r.terminal == doctest::Approx(regime == 1 ? n + c - 2 * d + 2 : n - d + 1));
        }
      }
}

TEST_CASE("a message-blind encoder carries no information") {
  const auto f2 = gf::Field::of_order(2);
  mds::GeneratorMatrix zero(f2, 1, 3, {0, 0, 0});
  codes::CodeParams p{3, 2, 0, 2, Rational(1), 2, 1};
  const codes::EaccCode code("blind", p, f2, {}, {{codes::SubcodeKind::unassisted, zero, 0}});
  const auto r = audit_code(code, 2);
  CHECK(step(r, "holevo").rhs == doctest::Approx(0.0));
  CHECK_FALSE(step(r, "decoding").holds);
  CHECK_FALSE(r.holds);
  CHECK(step(r, "classical-conditioning").holds);
}

TEST_CASE("step relations") {
  CHECK(make_step("a", 1.0, 1.0 + 1e-10, Relation::equal).holds);
  CHECK_FALSE(make_step("a", 1.0, 1.1, Relation::equal).holds);
  CHECK(make_step("a", 1.0, 2.0, Relation::at_most).holds);
  CHECK(make_step("a", 1.0, 2.0, Relation::at_most).slack == doctest::Approx(1.0));
  CHECK_FALSE(make_step("a", 2.0, 1.0, Relation::at_most).holds);
}

TEST_CASE("no-signaling on every construction") {
  const auto sd = check_no_signaling(codes::build_superdense(2, 2, gf::Field::of_order(2)));
  CHECK(sd.holds);
  CHECK(sd.route == "partial-trace");
  CHECK(sd.messages_checked == 4);
  const auto shared = check_no_signaling(codes::build_spaceshared(3, 2, 2, 2u));
  CHECK(shared.holds);
  CHECK(shared.messages_checked == 1024);
  const auto un = check_no_signaling(codes::build_unassisted(3, 2, gf::Field::of_order(2)));
  CHECK(un.holds);
  CHECK(un.route == "vacuous");
  CHECK(check_no_signaling(codes::build_separate(3, 2, 2)).holds);
  CHECK(check_no_signaling(codes::build_separate(4, 3, 1)).holds);
}
