// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eacc/bounds.hpp"
#include "eacc/codes.hpp"
#include "eacc/entropy_audit.hpp"
#include "eacc/sweep.hpp"
#include "eacc/verify.hpp"

namespace eacc::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "eacc-lab/1";

/// Positions in every report are 1-based, like the Q_i labels.
Json code_to_json(const codes::EaccCode& code);
/// Throws Error on a malformed or inconsistent document.
codes::EaccCode code_from_json(const Json& doc);

Json verify_to_json(const verify::VerifyReport& report);
std::string verify_table(const verify::VerifyReport& report);

struct BoundsSummary {
  int n = 0, d = 0, c = 0;
  bounds::BoundValue eacc;
  bounds::BoundValue separate;
  std::optional<verify::GapReport> gap;  // present when a code was given
};

BoundsSummary summarize_bounds(int n, int d, int c);
BoundsSummary summarize_bounds(const codes::EaccCode& code);
Json bounds_to_json(const BoundsSummary& summary, bool with_float);
std::string bounds_table(const BoundsSummary& summary, bool with_float);

Json audit_to_json(const audit::StepReport& report, const audit::NoSignalingReport& nosig);
std::string audit_table(const audit::StepReport& report, const audit::NoSignalingReport& nosig);

Json sweep_to_json(const std::vector<sweep::SweepRow>& rows, bool with_float);
/// Header row plus one line per row, LF line endings.
std::string sweep_csv(const std::vector<sweep::SweepRow>& rows, bool with_float);
std::string sweep_table(const std::vector<sweep::SweepRow>& rows, bool with_float);

/// Left-aligned columns separated by two spaces.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace eacc::report
