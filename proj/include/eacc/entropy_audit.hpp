// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eacc/codes.hpp"

namespace eacc::audit {

using codes::EaccCode;

/// Regime 1: d - 1 <= c, channel positions split into erased E, I and J.
/// Regime 2: c <= d - 1, I is empty.
struct AuditInstance {
  EaccCode code;
  int regime = 1;
  std::vector<int> I;  // 0-based channel positions
  std::vector<int> J;
  std::vector<int> E;
};

/// Regime 1: E = {0..d-2}, I = {d-1..c-1}, J = {c..n-1}.
/// Regime 2: E = {0..d-2}, J = {d-1..n-1}.
/// Throws Error for codes without separate encoders or the wrong regime.
AuditInstance make_instance(const EaccCode& code, int regime);

enum class Relation { equal, at_most };

std::string to_string(Relation relation);

struct Step {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::equal;
  double slack = 0.0;  // rhs - lhs for at_most, |lhs - rhs| for equal
  bool holds = false;
};

Step make_step(std::string label, double lhs, double rhs, Relation relation);

struct StepReport {
  codes::CodeParams code_params;
  int regime = 1;
  std::vector<int> I, J, E;
  std::size_t messages = 0;
  /// Consecutive lines of the chain from k = H(M) down to the bound.
  std::vector<Step> chain;
  /// Side inequalities each chain step relies on.
  std::vector<Step> auxiliary;
  double terminal = 0.0;
  bool holds = false;
};

/// Entropies in base q of the classical-quantum state over uniform messages.
StepReport audit_regime1(const AuditInstance& inst);
StepReport audit_regime2(const AuditInstance& inst);
/// Picks the chain matching inst.regime.
StepReport run_audit(const AuditInstance& inst);
/// make_instance followed by run_audit.
StepReport audit_code(const EaccCode& code, int regime);

struct NoSignalingReport {
  std::size_t messages_checked = 0;
  /// Largest max-norm distance of sigma_m^B from I / dim(B).
  double max_deviation = 0.0;
  /// "partial-trace" when B plus its partners is small enough to trace
  /// densely as well, "factorwise" otherwise, "vacuous" when c = 0.
  std::string route;
  bool holds = false;
};

/// Reduced state of Bob's memory is I / q^c for every message. Vacuous when c = 0.
NoSignalingReport check_no_signaling(const EaccCode& code);

}  // namespace eacc::audit
