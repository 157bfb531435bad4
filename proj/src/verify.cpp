// SPDX-License-Identifier: Apache-2.0
#include "eacc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>
#include <utility>

#include "eacc/bounds.hpp"

namespace eacc::verify {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::exhaustive: return "exhaustive";
    case PolicyKind::sampled: return "sampled";
    case PolicyKind::automatic: return "automatic";
  }
  return "unknown";
}

std::optional<SubcodeReport> SubcodeCache::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void SubcodeCache::store(const std::string& key, const SubcodeReport& report) {
  std::lock_guard lock(mutex_);
  entries_.emplace(key, report);
}

namespace {

Message digits_of(std::uint64_t index, std::size_t dits, std::uint32_t qbar) {
  Message m(dits);
  for (std::size_t i = 0; i < dits; ++i) {
    m[i] = static_cast<gf::Symbol>(index % qbar);
    index /= qbar;
  }
  return m;
}

double space_bits(std::size_t dits, std::uint32_t qbar) {
  return static_cast<double>(dits) * std::log2(static_cast<double>(qbar));
}

}  // namespace

std::vector<Message> select_messages(std::size_t dits, std::uint32_t qbar, const Policy& policy,
                                     PolicyKind* resolved) {
  PolicyKind kind = policy.kind;
  if (kind == PolicyKind::automatic)
    kind = space_bits(dits, qbar) <= kExhaustiveBits ? PolicyKind::exhaustive : PolicyKind::sampled;
  if (resolved) *resolved = kind;

  std::vector<Message> out;
  if (kind == PolicyKind::exhaustive) {
    if (space_bits(dits, qbar) > 24.0) throw Error("message space too large to enumerate");
    const std::uint64_t total = checked_pow(qbar, static_cast<unsigned>(dits));
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) out.push_back(digits_of(idx, dits, qbar));
    return out;
  }
  out.push_back(Message(dits, 0));
  out.push_back(Message(dits, qbar - 1));
  std::mt19937_64 rng(policy.seed);
  for (std::size_t s = 0; s < policy.count; ++s) {
    Message m(dits);
    for (auto& dit : m) dit = static_cast<gf::Symbol>(rng() % qbar);
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

struct Indexed {
  std::size_t pattern;
  std::size_t message;
  Failure failure;
};

struct RunResult {
  std::uint64_t count = 0;
  std::vector<Indexed> kept;
};

void trim(std::vector<Indexed>& v, std::size_t limit) {
  std::sort(v.begin(), v.end(), [](const Indexed& a, const Indexed& b) {
    return std::tie(a.pattern, a.message) < std::tie(b.pattern, b.message);
  });
  if (v.size() > limit) v.resize(limit);
}

// One message against every pattern.
void check_message(const EaccCode& code, const std::vector<Message>& messages,
                   const std::vector<ErasurePattern>& patterns, std::size_t mi, RunResult& local) {
  const Message& msg = messages[mi];
  std::optional<qsym::SymbolicState> encoded;
  std::string encode_error;
  try {
    encoded = code.encode(msg);
  } catch (const Error& e) {
    encode_error = e.what();
  }
  for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
    Failure f{msg, patterns[pi], std::nullopt, {}};
    if (!encoded) {
      f.reason = "encode: " + encode_error;
    } else {
      try {
        Message decoded = code.decode(code.transmit(*encoded, patterns[pi]), patterns[pi]);
        if (decoded == msg) continue;
        f.decoded = std::move(decoded);
        f.reason = "decoded message differs";
      } catch (const Error& e) {
        f.reason = e.what();
      }
    }
    ++local.count;
    local.kept.push_back({pi, mi, std::move(f)});
  }
}

RunResult run_serial(const EaccCode& code, const std::vector<Message>& messages,
                     const std::vector<ErasurePattern>& patterns, std::size_t limit) {
  RunResult result;
  for (std::size_t mi = 0; mi < messages.size(); ++mi) {
    check_message(code, messages, patterns, mi, result);
    if (result.kept.size() > 4 * limit + 64) trim(result.kept, limit);
  }
  trim(result.kept, limit);
  return result;
}

RunResult run_parallel(const EaccCode& code, const std::vector<Message>& messages,
                       const std::vector<ErasurePattern>& patterns, std::size_t limit) {
  RunResult result;
  const auto count = static_cast<std::int64_t>(messages.size());
#pragma omp parallel
  {
    RunResult local;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t mi = 0; mi < count; ++mi) {
      check_message(code, messages, patterns, static_cast<std::size_t>(mi), local);
      if (local.kept.size() > 4 * limit + 64) trim(local.kept, limit);
    }
#pragma omp critical
    {
      result.count += local.count;
      for (auto& f : local.kept) result.kept.push_back(std::move(f));
    }
  }
  trim(result.kept, limit);
  return result;
}

std::string subcode_key(const EaccCode& standalone, const Policy& policy) {
  std::ostringstream key;
  const auto& p = standalone.params();
  const auto& sc = standalone.subcodes().front();
  key << codes::to_string(sc.kind) << '|' << p.n << '|' << p.d << '|' << p.c << '|' << p.qbar << '|'
      << policy.seed << '|' << policy.count << '|';
  for (auto e : sc.generator.entries()) key << e << ',';
  return key.str();
}

SubcodeReport certify_subcode(const EaccCode& code, std::size_t index, const VerifyOptions& options,
                              bool parallel) {
  const EaccCode standalone = standalone_subcode(code, index);
  const auto& sc = standalone.subcodes().front();
  const std::string key = subcode_key(standalone, options.policy);
  if (options.cache) {
    if (auto hit = options.cache->find(key)) {
      hit->index = index;
      hit->row = code.subcodes()[index].row;
      hit->cached = true;
      return *hit;
    }
  }

  const std::uint32_t qbar = standalone.params().qbar;
  const std::size_t dits = standalone.message_dits();
  SubcodeReport report;
  report.index = index;
  report.kind = sc.kind;
  report.row = code.subcodes()[index].row;

  std::vector<Message> messages;
  if (space_bits(dits, qbar) <= kSubcodeExhaustiveBits) {
    report.coverage = "exhaustive";
    messages = select_messages(dits, qbar, Policy::exhaustive());
  } else if (sc.kind == codes::SubcodeKind::superdense && space_bits(dits / 2, qbar) <= kSubcodeExhaustiveBits) {
    report.coverage = "stream-exhaustive";
    const std::size_t k = dits / 2;
    const std::uint64_t total = checked_pow(qbar, static_cast<unsigned>(k));
    messages.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Message m = digits_of(idx, k, qbar);
      Message v = digits_of(total - 1 - idx, k, qbar);
      m.insert(m.end(), v.begin(), v.end());
      messages.push_back(std::move(m));
    }
  } else {
    report.coverage = "sampled";
    messages = select_messages(dits, qbar, Policy::sampled(options.policy.seed, options.policy.count));
  }
  const auto patterns = codes::all_patterns(standalone.params().n, standalone.params().d - 1);
  const RunResult run = parallel ? run_parallel(standalone, messages, patterns, 1)
                                 : run_serial(standalone, messages, patterns, 1);
  report.patterns_checked = patterns.size();
  report.messages_checked = messages.size();
  report.failure_count = run.count;
  report.passed = run.count == 0;
  if (options.cache) options.cache->store(key, report);
  return report;
}

VerifyReport verify_impl(const EaccCode& code, const VerifyOptions& options, bool parallel) {
  VerifyReport report;
  report.code_params = code.params();
  report.construction = code.construction();
  report.policy = options.policy;
  report.pattern_size = code.params().d - 1;

  const auto messages = select_messages(code.message_dits(), code.params().qbar, options.policy,
                                        &report.resolved_policy);
  const auto patterns = codes::all_patterns(code.params().n, report.pattern_size);
  const RunResult run = parallel ? run_parallel(code, messages, patterns, options.max_failures)
                                 : run_serial(code, messages, patterns, options.max_failures);
  report.patterns_checked = patterns.size();
  report.messages_checked = messages.size();
  report.failure_count = run.count;
  for (const auto& f : run.kept) report.failures.push_back(f.failure);

  bool subcodes_ok = true;
  if (options.check_subcodes) {
    SubcodeCache local;
    VerifyOptions sub = options;
    if (!sub.cache) sub.cache = &local;
    for (std::size_t i = 0; i < code.subcodes().size(); ++i) {
      report.subcodes.push_back(certify_subcode(code, i, sub, parallel));
      subcodes_ok = subcodes_ok && report.subcodes.back().passed;
    }
  }
  report.passed = report.failure_count == 0 && subcodes_ok;
  return report;
}

}  // namespace

VerifyReport verify_code(const EaccCode& code, const VerifyOptions& options) {
  return verify_impl(code, options, true);
}

VerifyReport verify_code_serial(const EaccCode& code, const VerifyOptions& options) {
  return verify_impl(code, options, false);
}

EaccCode standalone_subcode(const EaccCode& code, std::size_t index) {
  const codes::Subcode& sc = code.subcodes().at(index);
  const auto& p = code.params();
  codes::RearrangeSchedule schedule;
  int entangled = 0;
  for (int i = 0; i < p.n; ++i)
    if (code.bob_partner(i, sc.row)) schedule.assignment.push_back({{entangled++, 0}, {i, 0}});
  codes::CodeParams sp{p.n, p.d, entangled, p.qbar, Rational(static_cast<std::int64_t>(sc.dits())), p.qbar, 1};
  return EaccCode("subcode", sp, code.field(), std::move(schedule), {codes::Subcode{sc.kind, sc.generator, 0}});
}

SeparateCheck check_separate_encoders(const EaccCode& code) {
  for (const auto& a : code.schedule().assignment) {
    if (a.to.position == a.from.block) continue;
    return {false, "Q" + std::to_string(a.to.position + 1) + "," + std::to_string(a.to.row + 1) + "<-A" +
                       std::to_string(a.from.block + 1) + "," + std::to_string(a.from.row + 1)};
  }
  return {true, std::nullopt};
}

GapReport check_rate_against_bounds(const EaccCode& code) {
  const auto& p = code.params();
  GapReport gap;
  gap.k_achieved = p.k;
  gap.eacc_bound = bounds::eacc_singleton(p.n, p.d, p.c).value;
  gap.separate_bound = bounds::separate_singleton(p.n, p.d, p.c).value;
  gap.saturates_eacc = gap.k_achieved == gap.eacc_bound;
  gap.saturates_separate = gap.k_achieved == gap.separate_bound;
  gap.separate = check_separate_encoders(code).separate;
  gap.consistent = gap.k_achieved <= gap.eacc_bound && (!gap.separate || gap.k_achieved <= gap.separate_bound);
  return gap;
}

}  // namespace eacc::verify
