// SPDX-License-Identifier: Apache-2.0
// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "eacc/densim.hpp"
#include "eacc/sweep.hpp"
#include "eacc/verify.hpp"

using namespace eacc;

namespace {

densim::FactoredEnsemble superdense_ensemble() {
  const auto code = codes::build_superdense(3, 2, gf::Field::of_order(4));
  const auto bob = code.bob_slots();
  std::vector<qsym::SlotId> subset{code.channel_slot(1, 0), code.channel_slot(2, 0)};
  subset.insert(subset.end(), bob.begin(), bob.end());
  const auto messages = verify::select_messages(code.message_dits(), 4, verify::Policy::exhaustive());
  densim::FactoredEnsemble ens;
  for (const auto& m : messages) {
    ens.members.push_back(densim::to_factors(code.encode(m), subset));
    ens.weights.push_back(1.0 / static_cast<double>(messages.size()));
  }
  return ens;
}

verify::VerifyOptions exhaustive() {
  verify::VerifyOptions vo;
  vo.policy = verify::Policy::exhaustive();
  vo.check_subcodes = false;
  return vo;
}

void BM_verify_parallel(benchmark::State& state) {
  const auto code = codes::build_spaceshared(3, 2, 2, 2u);
  for (auto _ : state) benchmark::DoNotOptimize(verify::verify_code(code, exhaustive()));
}

void BM_verify_serial(benchmark::State& state) {
  const auto code = codes::build_spaceshared(3, 2, 2, 2u);
  for (auto _ : state) benchmark::DoNotOptimize(verify::verify_code_serial(code, exhaustive()));
}

void BM_assemble_parallel(benchmark::State& state) {
  const auto ens = superdense_ensemble();
  for (auto _ : state) benchmark::DoNotOptimize(densim::assemble(ens.members.front()));
}

void BM_assemble_serial(benchmark::State& state) {
  const auto ens = superdense_ensemble();
  for (auto _ : state) benchmark::DoNotOptimize(densim::assemble_serial(ens.members.front()));
}

void BM_cq_quantities_parallel(benchmark::State& state) {
  const auto ens = superdense_ensemble();
  for (auto _ : state) benchmark::DoNotOptimize(densim::cq_quantities(ens, 4));
}

void BM_cq_quantities_serial(benchmark::State& state) {
  const auto ens = superdense_ensemble();
  for (auto _ : state) benchmark::DoNotOptimize(densim::cq_quantities_serial(ens, 4));
}

sweep::SweepOptions small_sweep() {
  sweep::SweepOptions opts;
  opts.nmax = 4;
  opts.samples = 256;
  return opts;
}

void BM_sweep_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep::run_sweep(small_sweep()));
}

void BM_sweep_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep::run_sweep_serial(small_sweep()));
}

}  // namespace

BENCHMARK(BM_verify_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_assemble_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_cq_quantities_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cq_quantities_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
