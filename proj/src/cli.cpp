// SPDX-License-Identifier: Apache-2.0
#include "eacc/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "eacc/bounds.hpp"
#include "eacc/codes.hpp"
#include "eacc/entropy_audit.hpp"
#include "eacc/report.hpp"
#include "eacc/sweep.hpp"
#include "eacc/verify.hpp"

namespace eacc::cli {

namespace {

struct CodeArgs {
  std::optional<int> n, d, c;
  std::optional<std::uint32_t> qbar;
  std::optional<std::string> kind;
  std::optional<std::uint64_t> q;
  std::optional<std::string> file;
};

void add_code_options(CLI::App* cmd, CodeArgs& a, bool with_file) {
  cmd->add_option("--n", a.n, "channel uses");
  cmd->add_option("--d", a.d, "minimum distance (tolerates d - 1 erasures)");
  cmd->add_option("--c", a.c, "pre-shared entangled pairs");
  cmd->add_option("--qbar", a.qbar, "sub-slot field order");
  cmd->add_option("--kind", a.kind, "spaceshared|separate|superdense|unassisted|asymptotic");
  cmd->add_option("--q", a.q, "channel dimension for the asymptotic construction");
  if (with_file) cmd->add_option("--file", a.file, "code JSON written by construct");
}

void need_params(const CodeArgs& a) {
  if (!a.n || !a.d || !a.c) throw CLI::ValidationError("--n, --d and --c are required");
}

void check_admissible(int n, int d, int c) {
  if (auto why = bounds::inadmissible_reason(n, d, c)) throw Error("inadmissible: " + *why);
}

sweep::BuildKind default_kind(int n, int c) {
  if (c == n) return sweep::BuildKind::superdense;
  if (c == 0) return sweep::BuildKind::unassisted;
  return sweep::BuildKind::separate;
}

codes::EaccCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  report::Json doc;
  try {
    doc = report::Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
  return report::code_from_json(doc);
}

/// The code named by --file, or built from the inline parameters.
codes::EaccCode resolve_code(const CodeArgs& a, std::optional<sweep::BuildKind> fallback = std::nullopt) {
  if (a.file) return load_code(*a.file);
  need_params(a);
  check_admissible(*a.n, *a.d, *a.c);
  if (a.kind && *a.kind == "asymptotic") {
    if (!a.q) throw CLI::ValidationError("--kind asymptotic needs --q");
    return codes::build_asymptotic(*a.n, *a.d, *a.c, *a.q).code;
  }
  sweep::BuildKind kind = fallback.value_or(sweep::BuildKind::spaceshared);
  if (a.kind) kind = sweep::parse_build_kind(*a.kind);
  return sweep::build(kind, *a.n, *a.d, *a.c, a.qbar);
}

void write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw Error("cannot write '" + *path + "'");
  file << text;
}

// Routes spdlog to `err` for the duration of one run.
class LogScope {
 public:
  explicit LogScope(std::ostream& err) : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("eacc", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(spdlog::level::warn);
    if (const char* level = std::getenv("EACC_LOG")) logger->set_level(spdlog::level::from_str(level));
    spdlog::set_default_logger(logger);
  }
  ~LogScope() { spdlog::set_default_logger(previous_); }
  LogScope(const LogScope&) = delete;
  LogScope& operator=(const LogScope&) = delete;

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  LogScope log_scope(err);
  CLI::App app{"Entanglement-assisted classical code construction and verification"};
  app.require_subcommand(1);

  CodeArgs construct_args;
  std::optional<std::string> construct_out;
  auto* construct = app.add_subcommand("construct", "build a code and write its JSON");
  add_code_options(construct, construct_args, false);
  construct->add_option("--out", construct_out, "output path (default stdout)");

  CodeArgs verify_args;
  std::string verify_format = "table";
  std::string policy_name = "automatic";
  std::uint64_t verify_seed = 0;
  std::size_t samples = 1024;
  std::optional<int> claimed_d;
  bool skip_subcodes = false;
  auto* verify_cmd = app.add_subcommand("verify", "encode, erase and decode over every erasure pattern");
  add_code_options(verify_cmd, verify_args, true);
  verify_cmd->add_option("--format", verify_format)->check(CLI::IsMember({"json", "table"}));
  verify_cmd->add_option("--policy", policy_name)->check(CLI::IsMember({"automatic", "exhaustive", "sampled"}));
  verify_cmd->add_option("--seed", verify_seed, "sampling seed");
  verify_cmd->add_option("--samples", samples, "random messages per pattern when sampling");
  verify_cmd->add_option("--claimed-d", claimed_d, "check against this distance instead");
  verify_cmd->add_flag("--no-subcodes", skip_subcodes, "skip the standalone subcode checks");

  CodeArgs bounds_args;
  std::string bounds_format = "table";
  bool bounds_float = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the Singleton-type bounds");
  add_code_options(bounds_cmd, bounds_args, true);
  bounds_cmd->add_option("--format", bounds_format)->check(CLI::IsMember({"json", "table"}));
  bounds_cmd->add_flag("--float", bounds_float, "add floating-point columns");

  CodeArgs audit_args;
  std::string audit_format = "table";
  std::optional<int> regime;
  auto* audit_cmd = app.add_subcommand("audit", "evaluate the entropy chain behind the separate-encoder bound");
  add_code_options(audit_cmd, audit_args, true);
  audit_cmd->add_option("--regime", regime, "1 (d - 1 <= c) or 2 (c <= d - 1)")->check(CLI::IsMember({1, 2}));
  audit_cmd->add_option("--format", audit_format)->check(CLI::IsMember({"json", "table"}));

  sweep::SweepOptions sweep_opts;
  std::string sweep_kind = "spaceshared";
  std::string sweep_format = "csv";
  bool sweep_float = false;
  std::optional<std::string> sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "construct and verify every admissible (n, d, c)");
  sweep_cmd->add_option("--nmax", sweep_opts.nmax, "largest n")->check(CLI::Range(1, 8));
  sweep_cmd->add_option("--kind", sweep_kind)->check(CLI::IsMember({"spaceshared", "separate"}));
  sweep_cmd->add_option("--seed", sweep_opts.seed);
  sweep_cmd->add_option("--samples", sweep_opts.samples);
  sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json", "table"}));
  sweep_cmd->add_flag("--float", sweep_float);
  sweep_cmd->add_option("--out", sweep_out);

  std::vector<std::string> argv_store{"eacc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    Stopwatch clock;
    if (construct->parsed()) {
      const auto code = resolve_code(construct_args);
      const std::string doc = report::code_to_json(code).dump(2) + "\n";
      write_text(construct_out, doc, out);
      (construct_out ? out : err) << codes::format_params(code.params()) << "\n";
      spdlog::info("construct took {:.3f} s", clock.seconds());
      return kExitPass;
    }

    if (verify_cmd->parsed()) {
      auto code = resolve_code(verify_args);
      if (claimed_d) code = code.with_claimed_distance(*claimed_d);
      verify::VerifyOptions opts;
      opts.check_subcodes = !skip_subcodes;
      if (policy_name == "exhaustive")
        opts.policy = verify::Policy::exhaustive();
      else if (policy_name == "sampled")
        opts.policy = verify::Policy::sampled(verify_seed, samples);
      else
        opts.policy = verify::Policy::automatic(verify_seed, samples);
      const auto rep = verify::verify_code(code, opts);
      out << (verify_format == "json" ? report::verify_to_json(rep).dump(2) + "\n" : report::verify_table(rep));
      spdlog::info("verify took {:.3f} s", clock.seconds());
      return rep.passed ? kExitPass : kExitFail;
    }

    if (bounds_cmd->parsed()) {
      report::BoundsSummary summary;
      if (bounds_args.file || bounds_args.kind) {
        summary = report::summarize_bounds(resolve_code(bounds_args));
      } else {
        need_params(bounds_args);
        check_admissible(*bounds_args.n, *bounds_args.d, *bounds_args.c);
        summary = report::summarize_bounds(*bounds_args.n, *bounds_args.d, *bounds_args.c);
      }
      out << (bounds_format == "json" ? report::bounds_to_json(summary, bounds_float).dump(2) + "\n"
                                      : report::bounds_table(summary, bounds_float));
      return !summary.gap || summary.gap->consistent ? kExitPass : kExitFail;
    }

    if (audit_cmd->parsed()) {
      std::optional<sweep::BuildKind> fallback;
      if (!audit_args.file) {
        need_params(audit_args);
        fallback = default_kind(*audit_args.n, *audit_args.c);
      }
      const auto code = resolve_code(audit_args, fallback);
      const auto& p = code.params();
      const int chosen = regime.value_or(p.d - 1 <= p.c ? 1 : 2);
      const auto rep = audit::audit_code(code, chosen);
      const auto nosig = audit::check_no_signaling(code);
      out << (audit_format == "json" ? report::audit_to_json(rep, nosig).dump(2) + "\n"
                                     : report::audit_table(rep, nosig));
      spdlog::info("audit took {:.3f} s", clock.seconds());
      return rep.holds && nosig.holds ? kExitPass : kExitFail;
    }

    if (sweep_cmd->parsed()) {
      sweep_opts.kind = sweep::parse_build_kind(sweep_kind);
      const auto rows = sweep::run_sweep(sweep_opts);
      std::string text;
      if (sweep_format == "json")
        text = report::sweep_to_json(rows, sweep_float).dump(2) + "\n";
      else if (sweep_format == "table")
        text = report::sweep_table(rows, sweep_float);
      else
        text = report::sweep_csv(rows, sweep_float);
      write_text(sweep_out, text, out);
      spdlog::info("sweep of {} rows took {:.3f} s", rows.size(), clock.seconds());
      return sweep::sweep_passed(rows) ? kExitPass : kExitFail;
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace eacc::cli
