// SPDX-License-Identifier: Apache-2.0
#include "eacc/codes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "eacc/bounds.hpp"

namespace eacc::codes {

std::string format_params(const CodeParams& p) {
  return "[" + std::to_string(p.n) + "," + eacc::to_string(p.k) + "," + std::to_string(p.d) + ";" +
         std::to_string(p.c) + "]_" + std::to_string(p.q);
}

std::uint32_t smallest_power_of_two_at_least(std::uint64_t n) {
  std::uint64_t q = 2;
  while (q < n) q <<= 1;
  if (q > gf::kMaxOrder) throw Error("no power-of-two field of order >= " + std::to_string(n) + " in the table");
  return static_cast<std::uint32_t>(q);
}

SpaceSharingPlan space_sharing_plan(int n, int d, int c, std::optional<std::uint32_t> qbar) {
  if (auto why = bounds::inadmissible_reason(n, d, c)) throw Error("inadmissible: " + *why);
  SpaceSharingPlan plan;
  plan.r = n / std::gcd(n, c);
  plan.l1 = (n - c) * plan.r / n;
  plan.l2 = c * plan.r / n;
  plan.k1 = n - d + 1;
  plan.k2 = 2 * (n - d + 1);
  plan.qbar = qbar ? *qbar : smallest_power_of_two_at_least(static_cast<std::uint64_t>(n));
  std::uint32_t p = 0, m = 0;
  if (!gf::prime_power(plan.qbar, p, m)) throw Error("qbar = " + std::to_string(plan.qbar) + " is not a prime power");
  plan.q = checked_pow(plan.qbar, static_cast<unsigned>(plan.r));
  plan.k = Rational(plan.k1 * plan.l1 + plan.k2 * plan.l2, plan.r);
  if (plan.l1 + plan.l2 != plan.r) throw Error("sub-slot rows do not add up to r");
  if (plan.k != bounds::eacc_singleton(n, d, c).value)
    throw Error("space-sharing rate " + eacc::to_string(plan.k) + " misses the Singleton value");
  return plan;
}

RearrangeSchedule rearrange_schedule(int n, int c, int r) {
  if (n < 1 || c < 0 || r < 1) throw Error("rearrangement needs n >= 1, c >= 0, r >= 1");
  if ((c * r) % n != 0) throw Error("n does not divide c r");
  const int l2 = c * r / n;
  const int l1 = r - l2;
  if (l1 < 0) throw Error("more entangled rows than sub-slot rows");
  std::vector<ChannelRef> targets;
  for (int i = 0; i < n; ++i)
    for (int j = l1; j < r; ++j) targets.push_back({i, j});
  RearrangeSchedule schedule;
  std::size_t next = 0;
  for (int s = 0; s < c; ++s)
    for (int t = 0; t < r; ++t) schedule.assignment.push_back({{s, t}, targets[next++]});
  return schedule;
}

std::string to_string(SubcodeKind kind) {
  switch (kind) {
    case SubcodeKind::unassisted: return "unassisted";
    case SubcodeKind::superdense: return "superdense";
    case SubcodeKind::separate: return "separate";
  }
  return "unknown";
}

SubcodeKind parse_subcode_kind(const std::string& text) {
  if (text == "unassisted") return SubcodeKind::unassisted;
  if (text == "superdense") return SubcodeKind::superdense;
  if (text == "separate") return SubcodeKind::separate;
  throw Error("unknown subcode kind '" + text + "'");
}

std::size_t Subcode::dits() const {
  return kind == SubcodeKind::superdense ? 2 * generator.k() : generator.k();
}

mds::GeneratorMatrix mds_generator(std::size_t n, std::size_t k, const gf::FieldPtr& field) {
  if (k > n) throw Error("MDS dimension exceeds length");
  if (n <= field->order()) return mds::rs_generator(n, k, field);
  std::vector<Symbol> g(k * n, 0);
  if (k == 1) {
    std::fill(g.begin(), g.end(), 1);
  } else if (k == n || k + 1 == n) {
    for (std::size_t i = 0; i < k; ++i) {
      g[i * n + i] = 1;
      if (k + 1 == n) g[i * n + n - 1] = 1;
    }
  } else if (k != 0) {
    throw Error("field GF(" + std::to_string(field->order()) + ") too small for an [" + std::to_string(n) + "," +
                std::to_string(k) + "] MDS code");
  }
  return mds::GeneratorMatrix(field, k, n, std::move(g), true);
}

namespace {

std::string ref_label(char prefix, int a, int b) {
  return std::string(1, prefix) + std::to_string(a + 1) + "," + std::to_string(b + 1);
}

}  // namespace

EaccCode::EaccCode(std::string construction, CodeParams params, gf::FieldPtr field, RearrangeSchedule schedule,
                   std::vector<Subcode> subcodes)
    : construction_(std::move(construction)),
      params_(params),
      field_(std::move(field)),
      schedule_(std::move(schedule)),
      subcodes_(std::move(subcodes)) {
  const int n = params_.n, c = params_.c, r = params_.r;
  if (auto why = bounds::inadmissible_reason(n, params_.d, c)) throw Error("inadmissible: " + *why);
  if (!field_) throw Error("code without a field");
  if (r < 1) throw Error("r must be >= 1");
  if (field_->order() != params_.qbar) throw Error("field order differs from qbar");
  if (checked_pow(params_.qbar, static_cast<unsigned>(r)) != params_.q) throw Error("q != qbar^r");

  auto layout = std::make_shared<qsym::SlotLayout>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) layout->add(ref_label('Q', i, j), params_.qbar, qsym::Owner::channel);
  alice_base_ = layout->size();
  for (int s = 0; s < c; ++s)
    for (int t = 0; t < r; ++t) layout->add(ref_label('A', s, t), params_.qbar, qsym::Owner::alice_memory);
  bob_base_ = layout->size();
  for (int s = 0; s < c; ++s)
    for (int t = 0; t < r; ++t) layout->add(ref_label('B', s, t), params_.qbar, qsym::Owner::bob_memory);
  layout_ = std::move(layout);

  bob_of_channel_.assign(static_cast<std::size_t>(n) * r, std::nullopt);
  std::set<std::pair<int, int>> used_memory;
  for (const auto& a : schedule_.assignment) {
    if (a.from.block < 0 || a.from.block >= c || a.from.row < 0 || a.from.row >= r)
      throw Error("schedule names a memory sub-slot outside the code");
    if (a.to.position < 0 || a.to.position >= n || a.to.row < 0 || a.to.row >= r)
      throw Error("schedule names a channel sub-slot outside the code");
    if (!used_memory.insert({a.from.block, a.from.row}).second) throw Error("memory sub-slot scheduled twice");
    auto& target = bob_of_channel_[static_cast<std::size_t>(a.to.position) * r + a.to.row];
    if (target) throw Error("channel sub-slot receives two memory sub-slots");
    target = bob_slot(a.from.block, a.from.row);
  }

  std::set<int> rows;
  std::size_t dits = 0;
  for (const auto& sc : subcodes_) {
    if (sc.row < 0 || sc.row >= r) throw Error("subcode row outside the code");
    if (!rows.insert(sc.row).second) throw Error("two subcodes share a sub-slot row");
    if (sc.generator.field()->spec() != field_->spec()) throw Error("subcode field differs from the code field");
    std::size_t entangled = 0;
    for (int i = 0; i < n; ++i)
      if (bob_partner(i, sc.row)) ++entangled;
    switch (sc.kind) {
      case SubcodeKind::unassisted:
        if (sc.generator.n() != static_cast<std::size_t>(n)) throw Error("unassisted subcode length != n");
        if (entangled != 0) throw Error("unassisted subcode row carries entanglement");
        break;
      case SubcodeKind::superdense:
        if (sc.generator.n() != static_cast<std::size_t>(n)) throw Error("superdense subcode length != n");
        if (entangled != static_cast<std::size_t>(n)) throw Error("superdense subcode row is not fully entangled");
        break;
      case SubcodeKind::separate:
        if (sc.generator.n() != static_cast<std::size_t>(n) + entangled)
          throw Error("separate subcode length != n + entangled positions");
        break;
    }
    dits += sc.dits();
  }
  message_dits_ = dits;
  if (params_.k != Rational(static_cast<std::int64_t>(dits), r))
    throw Error("declared k = " + eacc::to_string(params_.k) + " but subcodes carry " + std::to_string(dits) + "/" +
                std::to_string(r));
}

double EaccCode::message_bits() const {
  return static_cast<double>(message_dits_) * std::log2(static_cast<double>(params_.qbar));
}

qsym::SlotId EaccCode::channel_slot(int position, int row) const {
  return static_cast<qsym::SlotId>(position) * params_.r + row;
}
qsym::SlotId EaccCode::alice_slot(int block, int row) const {
  return alice_base_ + static_cast<qsym::SlotId>(block) * params_.r + row;
}
qsym::SlotId EaccCode::bob_slot(int block, int row) const {
  return bob_base_ + static_cast<qsym::SlotId>(block) * params_.r + row;
}

std::vector<qsym::SlotId> EaccCode::channel_slots(int position) const {
  std::vector<qsym::SlotId> out;
  for (int j = 0; j < params_.r; ++j) out.push_back(channel_slot(position, j));
  return out;
}

std::vector<qsym::SlotId> EaccCode::bob_slots() const {
  std::vector<qsym::SlotId> out;
  for (int s = 0; s < params_.c; ++s)
    for (int t = 0; t < params_.r; ++t) out.push_back(bob_slot(s, t));
  return out;
}

std::optional<qsym::SlotId> EaccCode::bob_partner(int position, int row) const {
  return bob_of_channel_.at(static_cast<std::size_t>(position) * params_.r + row);
}

qsym::SymbolicState EaccCode::encode(std::span<const Symbol> msg) const {
  if (msg.size() != message_dits_)
    throw Error("message has " + std::to_string(msg.size()) + " dits, code expects " + std::to_string(message_dits_));
  for (Symbol s : msg)
    if (!field_->contains(s)) throw Error("message dit outside GF(" + std::to_string(params_.qbar) + ")");

  qsym::SymbolicState state(layout_);
  for (int s = 0; s < params_.c; ++s)
    for (int t = 0; t < params_.r; ++t) state.make_bell_pair(alice_slot(s, t), bob_slot(s, t));
  for (const auto& a : schedule_.assignment)
    state.swap_slots(alice_slot(a.from.block, a.from.row), channel_slot(a.to.position, a.to.row));

  std::size_t offset = 0;
  for (const auto& sc : subcodes_) {
    const std::size_t k = sc.generator.k();
    const auto first = mds::mds_encode(msg.subspan(offset, k), sc.generator);
    switch (sc.kind) {
      case SubcodeKind::unassisted:
        for (int i = 0; i < params_.n; ++i) state.set_classical(channel_slot(i, sc.row), first[i]);
        break;
      case SubcodeKind::superdense: {
        const auto second = mds::mds_encode(msg.subspan(offset + k, k), sc.generator);
        for (int i = 0; i < params_.n; ++i) state.apply_displacement(channel_slot(i, sc.row), first[i], second[i]);
        break;
      }
      case SubcodeKind::separate: {
        std::size_t coord = 0;
        for (int i = 0; i < params_.n; ++i) {
          if (bob_partner(i, sc.row)) {
            state.apply_displacement(channel_slot(i, sc.row), first[coord], first[coord + 1]);
            coord += 2;
          } else {
            state.set_classical(channel_slot(i, sc.row), first[coord++]);
          }
        }
        break;
      }
    }
    offset += sc.dits();
  }
  return state;
}

namespace {

void check_pattern(const ErasurePattern& erased, int n) {
  for (std::size_t t = 0; t < erased.size(); ++t) {
    if (erased[t] >= static_cast<std::size_t>(n)) throw Error("erasure position out of range");
    if (t > 0 && erased[t] <= erased[t - 1]) throw Error("erasure pattern must be strictly increasing");
  }
}

}  // namespace

qsym::SymbolicState EaccCode::transmit(qsym::SymbolicState state, const ErasurePattern& erased) const {
  check_pattern(erased, params_.n);
  for (std::size_t i : erased) {
    const auto slots = channel_slots(static_cast<int>(i));
    state.erase(slots);
  }
  return state;
}

Message EaccCode::decode(qsym::SymbolicState state, const ErasurePattern& erased) const {
  check_pattern(erased, params_.n);
  const std::size_t tolerated = static_cast<std::size_t>(params_.d - 1);
  if (erased.size() > tolerated)
    throw Error("pattern erases " + std::to_string(erased.size()) + " positions, code tolerates " +
                std::to_string(tolerated));
  std::vector<bool> lost(params_.n, false);
  for (std::size_t i : erased) lost[i] = true;
  std::size_t count = erased.size();
  for (int i = params_.n - 1; i >= 0 && count < tolerated; --i) {
    if (lost[i]) continue;
    lost[i] = true;
    ++count;
    const auto slots = channel_slots(i);
    state.erase(slots);
  }

  Message out;
  out.reserve(message_dits_);
  for (const auto& sc : subcodes_) {
    const std::size_t len = sc.generator.n();
    switch (sc.kind) {
      case SubcodeKind::unassisted: {
        mds::ErasedWord word(len);
        for (int i = 0; i < params_.n; ++i)
          if (!lost[i]) word.set(i, state.computational_measure(channel_slot(i, sc.row)).x);
        const auto u = mds::mds_erasure_decode(word, sc.generator);
        out.insert(out.end(), u.begin(), u.end());
        break;
      }
      case SubcodeKind::superdense: {
        mds::ErasedWord wx(len), wz(len);
        for (int i = 0; i < params_.n; ++i) {
          if (lost[i]) continue;
          const auto outcome = state.bell_measure(channel_slot(i, sc.row), *bob_partner(i, sc.row));
          wx.set(i, outcome.x);
          wz.set(i, outcome.z);
        }
        const auto u = mds::mds_erasure_decode(wx, sc.generator);
        const auto v = mds::mds_erasure_decode(wz, sc.generator);
        out.insert(out.end(), u.begin(), u.end());
        out.insert(out.end(), v.begin(), v.end());
        break;
      }
      case SubcodeKind::separate: {
        mds::ErasedWord word(len);
        std::size_t coord = 0;
        for (int i = 0; i < params_.n; ++i) {
          const auto partner = bob_partner(i, sc.row);
          if (partner) {
            if (!lost[i]) {
              const auto outcome = state.bell_measure(channel_slot(i, sc.row), *partner);
              word.set(coord, outcome.x);
              word.set(coord + 1, outcome.z);
            }
            coord += 2;
          } else {
            if (!lost[i]) word.set(coord, state.computational_measure(channel_slot(i, sc.row)).x);
            ++coord;
          }
        }
        const auto u = mds::mds_erasure_decode(word, sc.generator);
        out.insert(out.end(), u.begin(), u.end());
        break;
      }
    }
  }
  return out;
}

EaccCode EaccCode::with_claimed_distance(int d) const {
  CodeParams p = params_;
  p.d = d;
  return EaccCode(construction_, p, field_, schedule_, subcodes_);
}

qsym::SymbolicState eacc_encode(const EaccCode& code, std::span<const Symbol> msg) { return code.encode(msg); }

Message eacc_decode(const EaccCode& code, qsym::SymbolicState state, const ErasurePattern& erased) {
  return code.decode(std::move(state), erased);
}

std::vector<ErasurePattern> all_patterns(int n, int size) {
  std::vector<ErasurePattern> out;
  if (size < 0 || size > n) return out;
  ErasurePattern cur(size);
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  while (true) {
    out.push_back(cur);
    int i = size;
    while (i > 0 && cur[i - 1] == static_cast<std::size_t>(n - size + i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (int j = i; j < size; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

EaccCode build_unassisted(int n, int d, const gf::FieldPtr& field) {
  if (auto why = bounds::inadmissible_reason(n, d, 0)) throw Error("inadmissible: " + *why);
  CodeParams p{n, d, 0, field->order(), Rational(n - d + 1), field->order(), 1};
  std::vector<Subcode> subcodes{{SubcodeKind::unassisted, mds_generator(n, n - d + 1, field), 0}};
  return EaccCode("unassisted", p, field, {}, std::move(subcodes));
}

EaccCode build_superdense(int n, int d, const gf::FieldPtr& field) {
  if (auto why = bounds::inadmissible_reason(n, d, n)) throw Error("inadmissible: " + *why);
  CodeParams p{n, d, n, field->order(), Rational(2 * (n - d + 1)), field->order(), 1};
  std::vector<Subcode> subcodes{{SubcodeKind::superdense, mds_generator(n, n - d + 1, field), 0}};
  return EaccCode("superdense", p, field, rearrange_schedule(n, n, 1), std::move(subcodes));
}

EaccCode build_spaceshared(int n, int d, int c, std::optional<std::uint32_t> qbar) {
  const SpaceSharingPlan plan = space_sharing_plan(n, d, c, qbar);
  const auto field = gf::Field::of_order(plan.qbar);
  const auto g = mds_generator(n, n - d + 1, field);
  std::vector<Subcode> subcodes;
  for (int j = 0; j < plan.l1; ++j) subcodes.push_back({SubcodeKind::unassisted, g, j});
  for (int j = plan.l1; j < plan.r; ++j) subcodes.push_back({SubcodeKind::superdense, g, j});
  CodeParams p{n, d, c, plan.q, plan.k, plan.qbar, plan.r};
  return EaccCode("spaceshared", p, field, rearrange_schedule(n, c, plan.r), std::move(subcodes));
}

EaccCode build_separate(int n, int d, int c, const gf::FieldPtr& field) {
  if (auto why = bounds::inadmissible_reason(n, d, c)) throw Error("inadmissible: " + *why);
  const std::uint32_t qbar = field->order();
  RearrangeSchedule schedule;
  std::vector<Subcode> subcodes;
  int dits = 0;
  try {
    if (d - 1 <= c) {
      for (int s = 0; s < c; ++s) schedule.assignment.push_back({{s, 0}, {s, 0}});
      dits = n + c - 2 * d + 2;
      subcodes.push_back({SubcodeKind::separate, mds_generator(n + c, dits, field), 0});
    } else {
      dits = n - d + 1;
      subcodes.push_back({SubcodeKind::unassisted, mds_generator(n, dits, field), 0});
    }
  } catch (const Error& e) {
    throw Error(std::string("field too small for the separate construction: ") + e.what());
  }
  CodeParams p{n, d, c, qbar, Rational(dits), qbar, 1};
  return EaccCode("separate", p, field, std::move(schedule), std::move(subcodes));
}

EaccCode build_separate(int n, int d, int c) {
  return build_separate(n, d, c, gf::Field::of_order(smallest_power_of_two_at_least(n + c)));
}

AsymptoticResult build_asymptotic(int n, int d, int c, std::uint64_t q) {
  if (auto why = bounds::inadmissible_reason(n, d, c)) throw Error("inadmissible: " + *why);
  const int r = n / std::gcd(n, c);
  // Largest t with 2^{t r} <= q.
  unsigned t = 0;
  while (t + 1 < 63 && (static_cast<unsigned>(r) * (t + 1)) < 64 &&
         (std::uint64_t{1} << (static_cast<unsigned>(r) * (t + 1))) <= q)
    ++t;
  const std::uint64_t qbar = std::uint64_t{1} << t;
  if (t == 0 || qbar < static_cast<std::uint64_t>(n))
    throw Error("q = " + std::to_string(q) + " too small: no power of two qbar >= n with qbar^r <= q");
  if (qbar > gf::kMaxOrder) throw Error("qbar = " + std::to_string(qbar) + " exceeds the field table");

  EaccCode code = build_spaceshared(n, d, c, static_cast<std::uint32_t>(qbar));
  AsymptoticResult result{std::move(code), q, 0, 0.0, 0.0, false};
  result.q_tilde = result.code.params().q;
  result.exact = result.q_tilde == q;
  const double logq = std::log(static_cast<double>(q));
  const double k = to_double(result.code.params().k);
  result.k_achieved = result.exact ? k : std::log(static_cast<double>(result.q_tilde)) / logq * k;
  result.k_lower_bound = (1.0 - r * std::log(2.0) / logq) * to_double(bounds::eacc_singleton(n, d, c).value);
  if (result.k_achieved < result.k_lower_bound - 1e-12)
    throw Error("asymptotic rate fell below its analytic lower bound");
  return result;
}

}  // namespace eacc::codes
