// SPDX-License-Identifier: Apache-2.0
#include "eacc/sweep.hpp"

#include <tuple>

#include "eacc/bounds.hpp"

namespace eacc::sweep {

std::string to_string(BuildKind kind) {
  switch (kind) {
    case BuildKind::spaceshared: return "spaceshared";
    case BuildKind::separate: return "separate";
    case BuildKind::superdense: return "superdense";
    case BuildKind::unassisted: return "unassisted";
  }
  return "unknown";
}

BuildKind parse_build_kind(const std::string& text) {
  if (text == "spaceshared") return BuildKind::spaceshared;
  if (text == "separate") return BuildKind::separate;
  if (text == "superdense") return BuildKind::superdense;
  if (text == "unassisted") return BuildKind::unassisted;
  throw Error("unknown construction '" + text + "'");
}

std::uint32_t default_qbar(BuildKind kind, int n, int c) {
  const int floor = kind == BuildKind::separate ? n + c : n;
  return codes::smallest_power_of_two_at_least(static_cast<std::uint64_t>(std::max(floor, 1)));
}

codes::EaccCode build(BuildKind kind, int n, int d, int c, std::optional<std::uint32_t> qbar) {
  if (auto why = bounds::inadmissible_reason(n, d, c)) throw Error("inadmissible: " + *why);
  const std::uint32_t order = qbar ? *qbar : default_qbar(kind, n, c);
  switch (kind) {
    case BuildKind::spaceshared: return codes::build_spaceshared(n, d, c, order);
    case BuildKind::separate: return codes::build_separate(n, d, c, gf::Field::of_order(order));
    case BuildKind::superdense:
      if (c != n) throw Error("the superdense construction uses c = n");
      return codes::build_superdense(n, d, gf::Field::of_order(order));
    case BuildKind::unassisted:
      if (c != 0) throw Error("the unassisted construction uses c = 0");
      return codes::build_unassisted(n, d, gf::Field::of_order(order));
  }
  throw Error("unknown construction");
}

namespace {

std::vector<std::tuple<int, int, int>> grid(int nmax) {
  std::vector<std::tuple<int, int, int>> out;
  for (int n = 1; n <= nmax; ++n)
    for (int d = 1; d <= n + 1; ++d)
      for (int c = 0; c <= n; ++c) out.emplace_back(n, d, c);
  return out;
}

SweepRow run_row(const SweepOptions& options, int n, int d, int c, verify::SubcodeCache& cache, bool parallel) {
  SweepRow row;
  row.n = n;
  row.d = d;
  row.c = c;
  row.eacc_bound = bounds::eacc_singleton(n, d, c).value;
  row.separate_bound = bounds::separate_singleton(n, d, c).value;
  try {
    const auto code = build(options.kind, n, d, c);
    const auto& p = code.params();
    row.qbar = p.qbar;
    row.q = p.q;
    row.k_achieved = p.k;
    row.separate = verify::check_separate_encoders(code).separate;
    const Rational target = options.kind == BuildKind::separate ? row.separate_bound : row.eacc_bound;
    row.saturates = p.k == target;
    verify::VerifyOptions vo;
    vo.policy = verify::Policy::sampled(options.seed, options.samples);
    vo.cache = &cache;
    const auto report = parallel ? verify::verify_code(code, vo) : verify::verify_code_serial(code, vo);
    row.verified = report.passed;
    row.failure_count = report.failure_count;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepOptions& options) {
  const auto triples = grid(options.nmax);
  std::vector<SweepRow> rows(triples.size());
  verify::SubcodeCache cache;
  const auto count = static_cast<std::int64_t>(triples.size());
  // Rows run concurrently; verification inside a row stays on its thread.
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < count; ++t) {
    const auto [n, d, c] = triples[t];
    rows[t] = run_row(options, n, d, c, cache, false);
  }
  return rows;
}

std::vector<SweepRow> run_sweep_serial(const SweepOptions& options) {
  std::vector<SweepRow> rows;
  verify::SubcodeCache cache;
  for (const auto& [n, d, c] : grid(options.nmax)) rows.push_back(run_row(options, n, d, c, cache, false));
  return rows;
}

bool sweep_passed(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows)
    if (r.error || !r.verified || !r.saturates) return false;
  return true;
}

}  // namespace eacc::sweep
