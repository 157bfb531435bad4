// SPDX-License-Identifier: Apache-2.0
#include "eacc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace eacc::report {

namespace {

// Rounded so reports stay byte-identical whatever the summation order.
double tidy(double x) {
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, tidy(x));
  std::string s = buf;
  if (s.rfind("-0.", 0) == 0 && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string sub_label(char prefix, int a, int b) {
  return std::string(1, prefix) + std::to_string(a + 1) + "," + std::to_string(b + 1);
}

std::pair<int, int> parse_sub_label(const std::string& text, char prefix) {
  int a = 0, b = 0;
  char tail = 0;
  if (text.empty() || text[0] != prefix ||
      std::sscanf(text.c_str() + 1, "%d,%d%c", &a, &b, &tail) != 2 || a < 1 || b < 1)
    throw Error("malformed sub-slot label '" + text + "'");
  return {a - 1, b - 1};
}

Json one_based(const std::vector<std::size_t>& positions) {
  Json out = Json::array();
  for (auto p : positions) out.push_back(p + 1);
  return out;
}

Json one_based(const std::vector<int>& positions) {
  Json out = Json::array();
  for (auto p : positions) out.push_back(p + 1);
  return out;
}

std::string brace_list(const std::vector<std::size_t>& positions) {
  std::string s = "{";
  for (std::size_t t = 0; t < positions.size(); ++t) s += (t ? "," : "") + std::to_string(positions[t] + 1);
  return s + "}";
}

std::string brace_list(const std::vector<int>& positions) {
  std::vector<std::size_t> v(positions.begin(), positions.end());
  return brace_list(v);
}

std::string dit_list(const codes::Message& m) {
  std::string s = "[";
  for (std::size_t t = 0; t < m.size(); ++t) s += (t ? " " : "") + std::to_string(m[t]);
  return s + "]";
}

Json params_json(const codes::CodeParams& p) {
  return Json{{"n", p.n}, {"k", to_string(p.k)}, {"d", p.d}, {"c", p.c},
              {"q", p.q}, {"qbar", p.qbar},      {"r", p.r}};
}

template <typename T>
T get(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  };
  measure(header);
  for (const auto& r : rows) measure(r);
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out.str();
}

Json code_to_json(const codes::EaccCode& code) {
  const auto& spec = code.field()->spec();
  Json doc;
  doc["schema"] = kSchema;
  doc["type"] = "code";
  doc["construction"] = code.construction();
  doc["label"] = codes::format_params(code.params());
  doc["params"] = params_json(code.params());
  doc["field"] = {{"p", spec.p}, {"m", spec.m}, {"primitive_poly", spec.primitive_poly}};
  Json schedule = Json::array();
  for (const auto& a : code.schedule().assignment)
    schedule.push_back({{"from", sub_label('A', a.from.block, a.from.row)},
                        {"to", sub_label('Q', a.to.position, a.to.row)}});
  doc["schedule"] = std::move(schedule);
  Json subcodes = Json::array();
  for (const auto& sc : code.subcodes()) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < sc.generator.k(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < sc.generator.n(); ++j) row.push_back(sc.generator.at(i, j));
      rows.push_back(std::move(row));
    }
    subcodes.push_back({{"kind", codes::to_string(sc.kind)},
                        {"row", sc.row + 1},
                        {"length", sc.generator.n()},
                        {"dimension", sc.generator.k()},
                        {"generator", std::move(rows)}});
  }
  doc["subcodes"] = std::move(subcodes);
  return doc;
}

codes::EaccCode code_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error("code document is not a JSON object");
  if (get<std::string>(doc, "schema") != kSchema) throw Error("unsupported schema '" + doc["schema"].dump() + "'");
  if (get<std::string>(doc, "type") != "code") throw Error("document is not a code");

  const Json& pj = doc.at("params");
  codes::CodeParams p;
  p.n = get<int>(pj, "n");
  p.d = get<int>(pj, "d");
  p.c = get<int>(pj, "c");
  p.q = get<std::uint64_t>(pj, "q");
  p.k = parse_rational(get<std::string>(pj, "k"));
  p.qbar = get<std::uint32_t>(pj, "qbar");
  p.r = get<int>(pj, "r");

  const Json& fj = doc.at("field");
  gf::FieldSpec spec;
  spec.p = get<std::uint32_t>(fj, "p");
  spec.m = get<std::uint32_t>(fj, "m");
  spec.primitive_poly = get<std::vector<std::uint32_t>>(fj, "primitive_poly");
  spec.order = static_cast<std::uint32_t>(checked_pow(spec.p, spec.m));
  const auto field = gf::Field::create(spec);

  codes::RearrangeSchedule schedule;
  for (const auto& a : get<Json>(doc, "schedule")) {
    const auto [block, mrow] = parse_sub_label(get<std::string>(a, "from"), 'A');
    const auto [pos, crow] = parse_sub_label(get<std::string>(a, "to"), 'Q');
    schedule.assignment.push_back({{block, mrow}, {pos, crow}});
  }

  std::vector<codes::Subcode> subcodes;
  for (const auto& sj : get<Json>(doc, "subcodes")) {
    const auto kind = codes::parse_subcode_kind(get<std::string>(sj, "kind"));
    const auto rows = get<std::vector<std::vector<gf::Symbol>>>(sj, "generator");
    const auto k = get<std::size_t>(sj, "dimension");
    const auto n = get<std::size_t>(sj, "length");
    if (rows.size() != k) throw Error("generator row count differs from its dimension");
    std::vector<gf::Symbol> entries;
    for (const auto& row : rows) {
      if (row.size() != n) throw Error("generator row length differs from the subcode length");
      for (auto e : row) {
        if (!field->contains(e)) throw Error("generator entry outside the field");
        entries.push_back(e);
      }
    }
    subcodes.push_back({kind, mds::GeneratorMatrix(field, k, n, std::move(entries)), get<int>(sj, "row") - 1});
  }
  return codes::EaccCode(get<std::string>(doc, "construction"), p, field, std::move(schedule), std::move(subcodes));
}

Json verify_to_json(const verify::VerifyReport& r) {
  Json doc;
  doc["schema"] = kSchema;
  doc["type"] = "verify";
  doc["code"] = codes::format_params(r.code_params);
  doc["construction"] = r.construction;
  doc["policy"] = verify::to_string(r.policy.kind);
  doc["resolved_policy"] = verify::to_string(r.resolved_policy);
  doc["prng"] = r.prng;
  doc["seed"] = r.policy.seed;
  doc["pattern_size"] = r.pattern_size;
  doc["patterns_checked"] = r.patterns_checked;
  doc["messages_per_pattern"] = r.messages_checked;
  doc["failure_count"] = r.failure_count;
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json fj{{"erased", one_based(f.pattern)}, {"message", f.message}};
    fj["decoded"] = f.decoded ? Json(*f.decoded) : Json(nullptr);
    fj["reason"] = f.reason;
    failures.push_back(std::move(fj));
  }
  doc["failures"] = std::move(failures);
  Json subcodes = Json::array();
  for (const auto& s : r.subcodes)
    subcodes.push_back({{"index", s.index + 1},
                        {"kind", codes::to_string(s.kind)},
                        {"row", s.row + 1},
                        {"coverage", s.coverage},
                        {"patterns_checked", s.patterns_checked},
                        {"messages_per_pattern", s.messages_checked},
                        {"failure_count", s.failure_count},
                        {"passed", s.passed}});
  doc["subcodes"] = std::move(subcodes);
  doc["passed"] = r.passed;
  return doc;
}

std::string verify_table(const verify::VerifyReport& r) {
  std::ostringstream out;
  out << "code    " << codes::format_params(r.code_params) << " (" << r.construction << ")\n";
  out << "policy  " << verify::to_string(r.resolved_policy);
  if (r.resolved_policy == verify::PolicyKind::sampled) out << " (" << r.prng << ", seed " << r.policy.seed << ")";
  out << "\n";
  out << r.patterns_checked << " patterns × " << r.messages_checked << " messages: " << (r.passed ? "PASS" : "FAIL")
      << "\n";
  if (!r.subcodes.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : r.subcodes)
      rows.push_back({std::to_string(s.index + 1), codes::to_string(s.kind), std::to_string(s.row + 1), s.coverage,
                      std::to_string(s.patterns_checked) + " × " + std::to_string(s.messages_checked),
                      std::to_string(s.failure_count), s.passed ? "PASS" : "FAIL"});
    out << "\n" << render_table({"subcode", "kind", "row", "coverage", "checked", "failures", "status"}, rows);
  }
  if (r.failure_count > 0) {
    out << "\n" << r.failure_count << " failures";
    if (r.failures.size() < r.failure_count) out << " (first " << r.failures.size() << " shown)";
    out << "\n";
    for (const auto& f : r.failures) {
      out << "  erased " << brace_list(f.pattern) << " message " << dit_list(f.message);
      if (f.decoded) out << " decoded " << dit_list(*f.decoded);
      out << ": " << f.reason << "\n";
    }
  }
  return out.str();
}

BoundsSummary summarize_bounds(int n, int d, int c) {
  return {n, d, c, bounds::eacc_singleton(n, d, c), bounds::separate_singleton(n, d, c), std::nullopt};
}

BoundsSummary summarize_bounds(const codes::EaccCode& code) {
  const auto& p = code.params();
  BoundsSummary s = summarize_bounds(p.n, p.d, p.c);
  s.gap = verify::check_rate_against_bounds(code);
  return s;
}

Json bounds_to_json(const BoundsSummary& s, bool with_float) {
  Json doc;
  doc["schema"] = kSchema;
  doc["type"] = "bounds";
  doc["n"] = s.n;
  doc["d"] = s.d;
  doc["c"] = s.c;
  doc["eacc_bound"] = to_string(s.eacc.value);
  doc["separate_bound"] = to_string(s.separate.value);
  doc["regime"] = bounds::to_string(*s.separate.regime);
  if (with_float) {
    doc["eacc_bound_float"] = to_double(s.eacc.value);
    doc["separate_bound_float"] = to_double(s.separate.value);
  }
  if (s.gap) {
    const auto& g = *s.gap;
    Json gj{{"k_achieved", to_string(g.k_achieved)},
            {"saturates_eacc", g.saturates_eacc},
            {"saturates_separate", g.saturates_separate},
            {"separate", g.separate},
            {"consistent", g.consistent}};
    if (with_float) gj["k_achieved_float"] = to_double(g.k_achieved);
    doc["code"] = std::move(gj);
  }
  doc["passed"] = !s.gap || s.gap->consistent;
  return doc;
}

std::string bounds_table(const BoundsSummary& s, bool with_float) {
  auto value = [&](const Rational& r) {
    return with_float ? to_string(r) + " (" + fixed(to_double(r)) + ")" : to_string(r);
  };
  std::vector<std::vector<std::string>> rows{
      {"eacc", value(s.eacc.value)},
      {"separate", value(s.separate.value) + "  " + bounds::to_string(*s.separate.regime)}};
  if (s.gap) {
    const auto& g = *s.gap;
    rows.push_back({"k achieved", value(g.k_achieved)});
    rows.push_back({"saturates eacc", g.saturates_eacc ? "yes" : "no"});
    rows.push_back({"saturates separate", g.saturates_separate ? "yes" : "no"});
    rows.push_back({"separate encoders", g.separate ? "yes" : "no"});
    rows.push_back({"consistent", g.consistent ? "PASS" : "FAIL"});
  }
  return "(n,d,c) = (" + std::to_string(s.n) + "," + std::to_string(s.d) + "," + std::to_string(s.c) + ")\n" +
         render_table({"bound", "value"}, rows);
}

namespace {

Json steps_json(const std::vector<audit::Step>& steps) {
  Json out = Json::array();
  for (const auto& s : steps)
    out.push_back({{"label", s.label},
                   {"lhs", tidy(s.lhs)},
                   {"relation", audit::to_string(s.relation)},
                   {"rhs", tidy(s.rhs)},
                   {"slack", tidy(s.slack)},
                   {"holds", s.holds}});
  return out;
}

std::vector<std::vector<std::string>> steps_rows(const std::vector<audit::Step>& steps) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : steps)
    rows.push_back({s.label, fixed(s.lhs), audit::to_string(s.relation), fixed(s.rhs), fixed(s.slack),
                    s.holds ? "HOLD" : "FAIL"});
  return rows;
}

}  // namespace

Json audit_to_json(const audit::StepReport& r, const audit::NoSignalingReport& nosig) {
  Json doc;
  doc["schema"] = kSchema;
  doc["type"] = "audit";
  doc["code"] = codes::format_params(r.code_params);
  doc["regime"] = r.regime;
  doc["I"] = one_based(r.I);
  doc["J"] = one_based(r.J);
  doc["E"] = one_based(r.E);
  doc["messages"] = r.messages;
  doc["chain"] = steps_json(r.chain);
  doc["auxiliary"] = steps_json(r.auxiliary);
  doc["terminal"] = tidy(r.terminal);
  doc["no_signaling"] = {{"route", nosig.route},
                         {"messages_checked", nosig.messages_checked},
                         {"max_deviation", tidy(nosig.max_deviation)},
                         {"holds", nosig.holds}};
  doc["passed"] = r.holds && nosig.holds;
  return doc;
}

std::string audit_table(const audit::StepReport& r, const audit::NoSignalingReport& nosig) {
  std::ostringstream out;
  out << "code " << codes::format_params(r.code_params) << ", regime " << r.regime << ", I = " << brace_list(r.I)
      << ", J = " << brace_list(r.J) << ", erased = " << brace_list(r.E) << ", " << r.messages
      << " messages, base q\n\n";
  const std::vector<std::string> header{"step", "lhs", "rel", "rhs", "slack", "status"};
  out << render_table(header, steps_rows(r.chain)) << "\n";
  out << render_table({"side condition", "lhs", "rel", "rhs", "slack", "status"}, steps_rows(r.auxiliary)) << "\n";
  out << "no-signaling (" << nosig.route << ", " << nosig.messages_checked
      << " messages): max deviation from I/dim " << fixed(nosig.max_deviation, 12) << " "
      << (nosig.holds ? "HOLD" : "FAIL") << "\n";
  out << "terminal " << fixed(r.terminal) << ": " << (r.holds && nosig.holds ? "PASS" : "FAIL") << "\n";
  return out.str();
}

namespace {

std::vector<std::string> sweep_header(bool with_float) {
  std::vector<std::string> h{"n",        "d",        "c",          "qbar",     "q",     "k_achieved", "eacc_bound",
                             "separate_bound", "verified", "separate", "saturates", "failures", "error"};
  if (with_float) {
    h.push_back("k_achieved_float");
    h.push_back("eacc_bound_float");
    h.push_back("separate_bound_float");
  }
  return h;
}

std::vector<std::string> sweep_fields(const sweep::SweepRow& r, bool with_float) {
  std::vector<std::string> f{std::to_string(r.n),
                             std::to_string(r.d),
                             std::to_string(r.c),
                             std::to_string(r.qbar),
                             std::to_string(r.q),
                             to_string(r.k_achieved),
                             to_string(r.eacc_bound),
                             to_string(r.separate_bound),
                             r.verified ? "true" : "false",
                             r.separate ? "true" : "false",
                             r.saturates ? "true" : "false",
                             std::to_string(r.failure_count),
                             r.error.value_or("")};
  if (with_float) {
    f.push_back(fixed(to_double(r.k_achieved)));
    f.push_back(fixed(to_double(r.eacc_bound)));
    f.push_back(fixed(to_double(r.separate_bound)));
  }
  return f;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json sweep_to_json(const std::vector<sweep::SweepRow>& rows, bool with_float) {
  Json doc;
  doc["schema"] = kSchema;
  doc["type"] = "sweep";
  Json list = Json::array();
  for (const auto& r : rows) {
    Json rj{{"n", r.n},
            {"d", r.d},
            {"c", r.c},
            {"qbar", r.qbar},
            {"q", r.q},
            {"k_achieved", to_string(r.k_achieved)},
            {"eacc_bound", to_string(r.eacc_bound)},
            {"separate_bound", to_string(r.separate_bound)},
            {"verified", r.verified},
            {"separate", r.separate},
            {"saturates", r.saturates},
            {"failure_count", r.failure_count}};
    rj["error"] = r.error ? Json(*r.error) : Json(nullptr);
    if (with_float) {
      rj["k_achieved_float"] = to_double(r.k_achieved);
      rj["eacc_bound_float"] = to_double(r.eacc_bound);
      rj["separate_bound_float"] = to_double(r.separate_bound);
    }
    list.push_back(std::move(rj));
  }
  doc["rows"] = std::move(list);
  doc["passed"] = sweep::sweep_passed(rows);
  return doc;
}

std::string sweep_csv(const std::vector<sweep::SweepRow>& rows, bool with_float) {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_escape(fields[i]);
    out << '\n';
  };
  emit(sweep_header(with_float));
  for (const auto& r : rows) emit(sweep_fields(r, with_float));
  return out.str();
}

std::string sweep_table(const std::vector<sweep::SweepRow>& rows, bool with_float) {
  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows) body.push_back(sweep_fields(r, with_float));
  std::size_t bad = 0;
  for (const auto& r : rows)
    if (r.error || !r.verified || !r.saturates) ++bad;
  return render_table(sweep_header(with_float), body) + std::to_string(rows.size()) + " rows, " +
         std::to_string(bad) + " failing: " + (bad == 0 ? "PASS" : "FAIL") + "\n";
}

}  // namespace eacc::report
