// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <omp.h>

#include "eacc/densim.hpp"
#include "eacc/sweep.hpp"

using namespace eacc;

namespace {

// Runs `body` with the given OpenMP thread count, restoring the old one.
template <typename F>
auto with_threads(int threads, F body) {
  const int old = omp_get_max_threads();
  omp_set_num_threads(threads);
  auto result = body();
  omp_set_num_threads(old);
  return result;
}

densim::FactoredEnsemble superdense_ensemble() {
  const auto code = codes::build_superdense(3, 2, gf::Field::of_order(2));
  densim::FactoredEnsemble ens;
  const auto bob = code.bob_slots();
  std::vector<qsym::SlotId> subset{code.channel_slot(1, 0), code.channel_slot(2, 0)};
  subset.insert(subset.end(), bob.begin(), bob.end());
  for (std::uint32_t m = 0; m < 16; ++m) {
    codes::Message msg{m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1};
    ens.members.push_back(densim::to_factors(code.encode(msg), subset));
    ens.weights.push_back(1.0 / 16);
  }
  return ens;
}

}  // namespace

TEST_CASE("dense assembly agrees across thread counts") {
  const auto ens = superdense_ensemble();
  for (const auto& member : ens.members) {
    const auto serial = densim::assemble_serial(member);
    for (int threads : {1, 2, 4}) {
      const auto par = with_threads(threads, [&] { return densim::assemble(member); });
      CHECK((par.matrix() - serial.matrix()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("ensemble entropies agree with the serial reference") {
  const auto ens = superdense_ensemble();
  const auto serial = densim::cq_quantities_serial(ens, 2);
  for (int threads : {1, 2, 4}) {
    const auto par = with_threads(threads, [&] { return densim::cq_quantities(ens, 2); });
    CHECK(par.h_avg == doctest::Approx(serial.h_avg).epsilon(1e-12));
    CHECK(par.h_cond == doctest::Approx(serial.h_cond).epsilon(1e-12));
  }
  std::vector<densim::DensityMatrix> dense;
  std::vector<std::uint64_t> labels;
  for (std::size_t m = 0; m < ens.members.size(); ++m) {
    dense.push_back(densim::assemble_serial(ens.members[m]));
    labels.push_back(m);
  }
  const auto cq = densim::CqEnsemble::uniform(labels, dense);
  const auto a = with_threads(3, [&] { return densim::ensemble_average(cq); });
  CHECK((a.matrix() - densim::ensemble_average_serial(cq).matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("sweep rows are identical and ordered whatever the pool size") {
  sweep::SweepOptions opts;
  opts.nmax = 4;
  opts.samples = 64;
  const auto serial = sweep::run_sweep_serial(opts);
  const auto par = with_threads(4, [&] { return sweep::run_sweep(opts); });
  REQUIRE(serial.size() == par.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].n == par[i].n);
    CHECK(serial[i].d == par[i].d);
    CHECK(serial[i].c == par[i].c);
    CHECK(serial[i].k_achieved == par[i].k_achieved);
    CHECK(serial[i].verified == par[i].verified);
    CHECK(serial[i].failure_count == par[i].failure_count);
  }
  for (std::size_t i = 1; i < par.size(); ++i)
    CHECK(std::tie(par[i - 1].n, par[i - 1].d, par[i - 1].c) < std::tie(par[i].n, par[i].d, par[i].c));
}
