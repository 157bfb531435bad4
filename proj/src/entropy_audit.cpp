// SPDX-License-Identifier: Apache-2.0
#include "eacc/entropy_audit.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <utility>

#include "eacc/densim.hpp"
#include "eacc/verify.hpp"

namespace eacc::audit {

namespace {

std::vector<int> range(int from, int to) {
  std::vector<int> out;
  for (int i = from; i < to; ++i) out.push_back(i);
  return out;
}

}  // namespace

AuditInstance make_instance(const EaccCode& code, int regime) {
  const auto& p = code.params();
  if (!verify::check_separate_encoders(code).separate)
    throw Error("audit needs separate encoders; this code lets a position use another memory block");
  AuditInstance inst{code, regime, {}, {}, range(0, p.d - 1)};
  if (regime == 1) {
    if (p.d - 1 > p.c) throw Error("regime 1 needs d - 1 <= c");
    inst.I = range(p.d - 1, p.c);
    inst.J = range(p.c, p.n);
  } else if (regime == 2) {
    if (p.c > p.d - 1) throw Error("regime 2 needs c <= d - 1");
    if (p.d - 1 > p.n) throw Error("regime 2 needs d - 1 <= n");
    inst.J = range(p.d - 1, p.n);
  } else {
    throw Error("regime must be 1 or 2");
  }
  return inst;
}

std::string to_string(Relation relation) { return relation == Relation::equal ? "=" : "<="; }

Step make_step(std::string label, double lhs, double rhs, Relation relation) {
  Step s{std::move(label), lhs, rhs, relation, 0.0, false};
  if (relation == Relation::equal) {
    s.slack = std::abs(lhs - rhs);
    s.holds = s.slack <= densim::kTolerance;
  } else {
    s.slack = rhs - lhs;
    s.holds = lhs <= rhs + densim::kTolerance;
  }
  return s;
}

namespace {

// Per-message encoded states plus the cq entropies of any slot subset.
class Ensemble {
 public:
  explicit Ensemble(const AuditInstance& inst) : code_(inst.code) {
    const auto& p = code_.params();
    base_ = static_cast<double>(p.q);
    const double bits = code_.message_bits();
    if (bits > std::log2(static_cast<double>(densim::kEnsembleCap)))
      throw Error("message space exceeds the 2^12 ensemble cap");
    messages_ = verify::select_messages(code_.message_dits(), p.qbar, verify::Policy::exhaustive());
    states_.resize(messages_.size(), qsym::SymbolicState(std::make_shared<qsym::SlotLayout>()));
    const auto count = static_cast<std::int64_t>(messages_.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t m = 0; m < count; ++m) states_[m] = code_.encode(messages_[m]);
  }

  std::size_t size() const { return messages_.size(); }
  double base() const { return base_; }

  std::vector<qsym::SlotId> channel(const std::vector<int>& positions) const {
    std::vector<qsym::SlotId> out;
    for (int i : positions)
      for (auto s : code_.channel_slots(i)) out.push_back(s);
    return out;
  }
  std::vector<qsym::SlotId> bob() const { return code_.bob_slots(); }

  /// H(X) and H(X|M) for the union of the given slot lists.
  densim::CqQuantities entropies(std::initializer_list<std::vector<qsym::SlotId>> parts) const {
    std::vector<qsym::SlotId> subset;
    for (const auto& p : parts) subset.insert(subset.end(), p.begin(), p.end());
    if (subset.empty()) return {};
    densim::FactoredEnsemble ens;
    ens.weights.assign(states_.size(), 1.0 / static_cast<double>(states_.size()));
    ens.members.resize(states_.size());
    for (std::size_t m = 0; m < states_.size(); ++m) ens.members[m] = densim::to_factors(states_[m], subset);
    return densim::cq_quantities(ens, base_);
  }

  /// H(M) in base q.
  double message_entropy() const { return std::log(static_cast<double>(size())) / std::log(base_); }

  /// I(M; M^) = H(M^) for the deterministic decoder run on the erased pattern.
  double decoding_information(const std::vector<int>& erased) const {
    codes::ErasurePattern pattern(erased.begin(), erased.end());
    std::map<codes::Message, std::size_t> histogram;
    for (std::size_t m = 0; m < states_.size(); ++m) {
      codes::Message decoded;
      try {
        decoded = code_.decode(code_.transmit(states_[m], pattern), pattern);
      } catch (const Error&) {
        decoded.clear();  // every failed decode lands on the same outcome
      }
      ++histogram[decoded];
    }
    double h = 0.0;
    for (const auto& [_, n] : histogram) {
      const double pm = static_cast<double>(n) / static_cast<double>(size());
      h -= pm * std::log(pm);
    }
    return h / std::log(base_);
  }

 private:
  const EaccCode& code_;
  double base_ = 2.0;
  std::vector<codes::Message> messages_;
  std::vector<qsym::SymbolicState> states_;
};

StepReport start_report(const AuditInstance& inst, const Ensemble& ens) {
  StepReport r;
  r.code_params = inst.code.params();
  r.regime = inst.regime;
  r.I = inst.I;
  r.J = inst.J;
  r.E = inst.E;
  r.messages = ens.size();
  return r;
}

// Adds the step from the previous line to `value`.
void link(StepReport& r, double& line, std::string label, double value, Relation relation) {
  r.chain.push_back(make_step(std::move(label), line, value, relation));
  line = value;
}

void finish(StepReport& r, double line, double terminal) {
  r.terminal = terminal;
  r.chain.push_back(make_step("terminal", line, terminal, Relation::equal));
  r.holds = true;
  for (const auto& s : r.chain) r.holds = r.holds && s.holds;
  for (const auto& s : r.auxiliary) r.holds = r.holds && s.holds;
}

}  // namespace

StepReport audit_regime1(const AuditInstance& inst) {
  if (inst.regime != 1) throw Error("not a regime-1 instance");
  const auto& p = inst.code.params();
  const Ensemble ens(inst);
  const auto QI = ens.channel(inst.I), QJ = ens.channel(inst.J), B = ens.bob();

  const auto all = ens.entropies({QI, QJ, B});   // H(QIQJB), H(QIQJB|M)
  const auto b = ens.entropies({B});              // H(B), H(B|M)
  const auto ib = ens.entropies({QI, B});         // H(QIB|M)
  const auto ij = ens.entropies({QI, QJ});        // H(QIQJ)
  const auto i = ens.entropies({QI});             // H(QI)
  const auto j = ens.entropies({QJ});             // H(QJ|M)

  const double width = static_cast<double>(inst.I.size() + inst.J.size());  // n - d + 1
  const double h_i_given_mb = ib.h_cond - b.h_cond;
  const double h_j_given_imb = all.h_cond - ib.h_cond;
  const double info_b = b.h_avg - b.h_cond;
  const double h_q_given_b = all.h_avg - b.h_avg;
  const double h_q_given_mb = all.h_cond - b.h_cond;

  StepReport r = start_report(inst, ens);
  double line = to_double(p.k);
  link(r, line, "message-entropy", ens.message_entropy(), Relation::equal);
  link(r, line, "decoding", ens.decoding_information(inst.E), Relation::equal);
  link(r, line, "holevo", all.holevo, Relation::at_most);
  link(r, line, "no-signaling", all.holevo - info_b, Relation::equal);
  link(r, line, "cmi-definition", h_q_given_b - h_q_given_mb, Relation::equal);
  link(r, line, "conditioning-and-dimension", width - h_i_given_mb - h_j_given_imb, Relation::at_most);
  link(r, line, "independence", width - h_i_given_mb - j.h_cond, Relation::equal);
  link(r, line, "classical-conditioning", width - h_i_given_mb, Relation::at_most);
  link(r, line, "weak-monotonicity", width + static_cast<double>(p.c - p.d + 1), Relation::at_most);

  r.auxiliary.push_back(make_step("B independent of M: I(M;B) = 0", info_b, 0.0, Relation::equal));
  r.auxiliary.push_back(make_step("H(QIQJ|B) <= H(QIQJ)", h_q_given_b, ij.h_avg, Relation::at_most));
  r.auxiliary.push_back(make_step("H(QIQJ) <= log|QIQJ|", ij.h_avg, width, Relation::at_most));
  r.auxiliary.push_back(make_step("H(QJ|M) >= 0", -j.h_cond, 0.0, Relation::at_most));
  r.auxiliary.push_back(make_step("-H(QI|MB) <= H(QI)", -h_i_given_mb, i.h_avg, Relation::at_most));
  r.auxiliary.push_back(
      make_step("H(QI) <= log|QI|", i.h_avg, static_cast<double>(inst.I.size()), Relation::at_most));
  finish(r, line, static_cast<double>(p.n + p.c - 2 * p.d + 2));
  return r;
}

StepReport audit_regime2(const AuditInstance& inst) {
  if (inst.regime != 2) throw Error("not a regime-2 instance");
  const auto& p = inst.code.params();
  const Ensemble ens(inst);
  const auto QJ = ens.channel(inst.J), B = ens.bob();

  const auto all = ens.entropies({QJ, B});
  const auto b = ens.entropies({B});
  const auto j = ens.entropies({QJ});

  const double width = static_cast<double>(inst.J.size());  // n - d + 1
  const double info_b = b.h_avg - b.h_cond;
  const double h_j_given_b = all.h_avg - b.h_avg;
  const double h_j_given_mb = all.h_cond - b.h_cond;

  StepReport r = start_report(inst, ens);
  double line = to_double(p.k);
  link(r, line, "message-entropy", ens.message_entropy(), Relation::equal);
  link(r, line, "decoding", ens.decoding_information(inst.E), Relation::equal);
  link(r, line, "holevo", all.holevo, Relation::at_most);
  link(r, line, "no-signaling", all.holevo - info_b, Relation::equal);
  link(r, line, "cmi-definition", h_j_given_b - h_j_given_mb, Relation::equal);
  link(r, line, "conditioning-and-dimension", width - h_j_given_mb, Relation::at_most);
  link(r, line, "independence", width - j.h_cond, Relation::equal);
  link(r, line, "classical-conditioning", width, Relation::at_most);

  r.auxiliary.push_back(make_step("B independent of M: I(M;B) = 0", info_b, 0.0, Relation::equal));
  r.auxiliary.push_back(make_step("H(QJ|B) <= H(QJ)", h_j_given_b, j.h_avg, Relation::at_most));
  r.auxiliary.push_back(make_step("H(QJ) <= log|QJ|", j.h_avg, width, Relation::at_most));
  r.auxiliary.push_back(make_step("H(QJ|M) >= 0", -j.h_cond, 0.0, Relation::at_most));
  finish(r, line, static_cast<double>(p.n - p.d + 1));
  return r;
}

StepReport run_audit(const AuditInstance& inst) {
  return inst.regime == 1 ? audit_regime1(inst) : audit_regime2(inst);
}

StepReport audit_code(const EaccCode& code, int regime) { return run_audit(make_instance(code, regime)); }

NoSignalingReport check_no_signaling(const EaccCode& code) {
  NoSignalingReport report;
  const auto& p = code.params();
  const auto B = code.bob_slots();
  std::vector<codes::Message> messages;
  if (code.message_bits() <= std::log2(static_cast<double>(densim::kEnsembleCap)))
    messages = verify::select_messages(code.message_dits(), p.qbar, verify::Policy::exhaustive());
  else
    messages = verify::select_messages(code.message_dits(), p.qbar, verify::Policy::sampled(0));
  report.messages_checked = messages.size();
  if (B.empty()) {
    report.route = "vacuous";
    report.holds = true;
    return report;
  }

  // B followed by whatever holds the other halves of its pairs.
  const auto probe = code.encode(messages.front());
  std::vector<qsym::SlotId> subset = B;
  for (auto s : B)
    if (auto other = probe.partner(s)) subset.push_back(*other);
  std::size_t dim = 1;
  for (auto s : subset) dim *= code.layout()[s].dim;
  const bool dense = dim <= (std::size_t{1} << 10);
  report.route = dense ? "partial-trace" : "factorwise";
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < B.size(); ++t) keep.push_back(t);

  auto deviation_from_mixed = [](const densim::DensityMatrix& rho) {
    densim::Matrix diff = rho.matrix();
    diff.diagonal().array() -= 1.0 / static_cast<double>(rho.dim());
    return diff.cwiseAbs().maxCoeff();
  };

  std::vector<double> deviation(messages.size(), 0.0);
  const auto count = static_cast<std::int64_t>(messages.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t m = 0; m < count; ++m) {
    const auto state = code.encode(messages[m]);
    double worst = 0.0;
    // Marginal of every factor touching B. Factors are independent, so
    // the B state is I/dim(B) exactly when every such marginal is I/dim.
    const auto product = densim::to_factors(state, subset);
    for (const auto& f : product.factors) {
      std::vector<std::size_t> mine;
      for (std::size_t t = 0; t < f.positions.size(); ++t)
        if (f.positions[t] < B.size()) mine.push_back(t);
      if (mine.empty()) continue;
      worst = std::max(worst, deviation_from_mixed(densim::partial_trace(f.rho, mine)));
    }
    if (dense) worst = std::max(worst, deviation_from_mixed(densim::partial_trace(densim::assemble(product), keep)));
    deviation[m] = worst;
  }
  for (double dev : deviation) report.max_deviation = std::max(report.max_deviation, dev);
  report.holds = report.max_deviation <= densim::kTolerance;
  return report;
}

}  // namespace eacc::audit
