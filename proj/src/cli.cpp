// Copyright 2026 The wfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wfsim/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wfsim/circuit.hpp"
#include "wfsim/measure.hpp"
#include "wfsim/report.hpp"
#include "wfsim/scenario.hpp"
#include "wfsim/verify.hpp"

namespace wfsim::cli {

namespace {

using nlohmann::json;
using scenario::ContextId;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string circuit_path;
  int context = 0;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  unsigned streams = 1;
  std::string format;
};

struct VerifyOptions {
  bool all = false;
  std::string property;
  std::string context;
  bool commutators = false;
  bool memory = false;
  int trials = 100;
  std::uint64_t seed = 42;
  std::string format;
};

std::string default_format() {
  if (const char* env = std::getenv("WFSIM_FORMAT"); env && *env) return env;
  return "table";
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw UsageError("unsupported output format '" + format + "'");
}

std::string read_circuit_text(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

struct RunData {
  json source;
  OutcomeDistribution dist;
  std::vector<scenario::PropertyReport> properties;
  std::optional<scenario::ParadoxTrace> paradox;
  std::optional<Histogram> histogram;
};

json run_report_json(const RunData& d, const RunOptions& opt) {
  json j;
  j["tool"] = report::kToolName;
  j["version"] = report::kToolVersion;
  j["source"] = d.source;
  j["outcomes"] = report::to_json(d.dist);
  j["total_probability"] = d.dist.total();
  j["properties"] = json::array();
  for (const auto& p : d.properties) j["properties"].push_back(report::to_json(p));
  j["commutators"] = report::commutators_json(scenario::observables());
  j["paradox"] = d.paradox ? report::to_json(*d.paradox) : json(nullptr);
  if (d.histogram) {
    j["sampling"] = {{"shots", opt.shots},
                     {"seed", opt.seed},
                     {"streams", opt.streams},
                     {"rng", report::kRngName},
                     {"histogram", report::to_json(*d.histogram)}};
  } else {
    j["sampling"] = nullptr;
  }
  return j;
}

void print_run_table(const RunData& d, const RunOptions& opt, std::ostream& out) {
  out << "wfsim " << report::kToolVersion << "  " << d.source.value("id", d.source.value("path", "")) << "\n\n";
  out << std::left << std::setw(12) << "outcome" << std::setw(28) << "probability";
  if (d.histogram) out << "count";
  out << "\n";
  for (std::size_t k = 0; k < d.dist.entries.size(); ++k) {
    const auto& e = d.dist.entries[k];
    out << std::left << std::setw(12) << e.label << std::setw(28) << report::format_probability(e.probability);
    if (d.histogram) out << d.histogram->counts[k].second;
    out << "\n";
  }
  out << std::left << std::setw(12) << "total" << report::format_probability(d.dist.total()) << "\n";
  if (d.histogram) out << "\nshots " << opt.shots << ", seed " << opt.seed << ", rng " << report::kRngName << "\n";
  if (!d.properties.empty()) {
    out << "\nproperties\n";
    for (const auto& p : d.properties) {
      out << "  " << to_string(p.property) << "  " << std::setw(14) << to_string(p.status);
      if (p.amplitude_magnitude) out << report::format_probability(*p.amplitude_magnitude);
      out << "\n";
    }
  }
  out << "\ncommutators\n";
  for (const auto& c : scenario::observables().commutators)
    out << "  " << std::setw(10) << c.name << report::format_probability(c.frobenius_norm) << "\n";
  if (d.paradox) {
    out << "\nparadox chain (" << to_string(d.paradox->context) << ")\n";
    for (const auto& s : d.paradox->steps)
      out << "  " << to_string(s.property) << "  " << std::setw(14) << to_string(s.status) << s.inference << "\n";
    out << "  chain complete: " << (d.paradox->chain_complete ? "yes" : "no") << ", P(" << d.paradox->a_ok_label
        << ") = " << report::format_probability(d.paradox->p_a_ok) << "\n";
  }
}

void print_run_csv(const RunData& d, std::ostream& out) {
  out << "label,probability,exact" << (d.histogram ? ",count" : "") << "\n";
  for (std::size_t k = 0; k < d.dist.entries.size(); ++k) {
    const auto& e = d.dist.entries[k];
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", e.probability);
    out << '"' << e.label << "\"," << buf << "," << report::exact_rational(e.probability).value_or("");
    if (d.histogram) out << "," << d.histogram->counts[k].second;
    out << "\n";
  }
}

int cmd_run(const RunOptions& opt, std::istream& in, std::ostream& out, std::ostream& err) {
  const std::string format = opt.format.empty() ? default_format() : opt.format;
  check_format(format, {"json", "csv", "table"});
  if (opt.shots < 0) throw UsageError("--shots must be non-negative");
  if (opt.streams < 1) throw UsageError("--streams must be at least 1");
  if ((opt.context != 0) == !opt.circuit_path.empty())
    throw UsageError("give exactly one of --context or a circuit file");

  RunData d;
  if (opt.context != 0) {
    const ContextId ctx = opt.context == 1 ? ContextId::context1 : ContextId::context2;
    d.source = {{"kind", "context"}, {"id", to_string(ctx)}};
    d.dist = scenario::context_distribution(ctx);
    using scenario::PropertyId;
    for (PropertyId p : {PropertyId::p1, PropertyId::p2, PropertyId::p3})
      d.properties.push_back(scenario::check_property(p, scenario::setting_of(ctx)));
    d.paradox = scenario::paradox_trace(ctx);
  } else {
    std::string text;
    try {
      text = read_circuit_text(opt.circuit_path, in);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitRuntime;
    }
    Circuit circuit;
    try {
      circuit = parse(text);
    } catch (const ParseError& e) {
      err << (opt.circuit_path == "-" ? "<stdin>" : opt.circuit_path) << ":" << e.what() << "\n";
      return kExitUsage;
    }
    d.source = {{"kind", "circuit"}, {"path", opt.circuit_path}, {"circuit", wfsim::format(circuit)}};
    d.dist = run(lower(circuit));
  }

  if (opt.shots > 0)
    d.histogram = opt.streams == 1 ? sample(d.dist, opt.shots, opt.seed)
                                   : sample_parallel(d.dist, opt.shots, opt.seed, opt.streams);

  if (format == "json")
    out << run_report_json(d, opt).dump(2) << "\n";
  else if (format == "csv")
    print_run_csv(d, out);
  else
    print_run_table(d, opt, out);
  return kExitOk;
}

std::optional<scenario::Setting> parse_setting(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "pre" || s == "pre-wigner" || s == "0") return scenario::Setting::pre_wigner;
  if (s == "1" || s == "context1") return scenario::Setting::context1;
  if (s == "2" || s == "context2") return scenario::Setting::context2;
  throw UsageError("unknown context '" + s + "'");
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  const std::string format = opt.format.empty() ? default_format() : opt.format;
  check_format(format, {"json", "table"});
  const auto setting = parse_setting(opt.context);
  if (setting && opt.property.empty()) throw UsageError("--context applies to --property only");
  if (opt.trials < 1) throw UsageError("--trials must be at least 1");

  std::vector<verify::CheckResult> checks;
  auto append = [&checks](std::vector<verify::CheckResult> more) {
    checks.insert(checks.end(), more.begin(), more.end());
  };
  const bool any_selected = opt.all || !opt.property.empty() || opt.commutators || opt.memory;
  if (opt.all || !any_selected) {
    append(verify::all(opt.trials, opt.seed));
  } else {
    if (!opt.property.empty()) {
      const auto p = opt.property == "P1"   ? scenario::PropertyId::p1
                     : opt.property == "P2" ? scenario::PropertyId::p2
                                            : scenario::PropertyId::p3;
      try {
        append(verify::properties(p, setting));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (opt.commutators) append(verify::commutators());
    if (opt.memory) append(verify::memory_equivalence(opt.trials, opt.seed));
  }

  bool passed = true;
  for (const auto& c : checks) passed = passed && c.passed;

  if (format == "json") {
    json j;
    j["tool"] = report::kToolName;
    j["version"] = report::kToolVersion;
    j["checks"] = json::array();
    for (const auto& c : checks) j["checks"].push_back(report::to_json(c));
    j["passed"] = passed;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : checks)
      out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(50) << c.name << c.detail << "\n";
    out << "overall: " << (passed ? "PASS" : "FAIL") << "\n";
  }
  return passed ? kExitOk : kExitRuntime;
}

}  // namespace

int main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-photon Wigner's-friend interferometer simulator", "wfsim"};
  app.set_version_flag("--version", std::string(report::kToolName) + " " + report::kToolVersion);
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Outcome table for a built-in context or a .wfc circuit");
  auto* ctx_opt = run_cmd->add_option("--context", run_opt.context, "Built-in context (1 or 2)")
                      ->check(CLI::IsMember({1, 2}));
  run_cmd->add_option("circuit", run_opt.circuit_path, "Circuit file, '-' for stdin")->excludes(ctx_opt);
  run_cmd->add_option("--shots", run_opt.shots, "Number of sampled detections (0: analytic only)");
  run_cmd->add_option("--seed", run_opt.seed, "Sampling seed");
  run_cmd->add_option("--streams", run_opt.streams, "Independent RNG streams for sampling");
  run_cmd->add_option("--format", run_opt.format, "json, csv or table (default: $WFSIM_FORMAT or table)");

  VerifyOptions ver_opt;
  auto* verify_cmd = app.add_subcommand("verify", "Check the scenario's properties and identities");
  verify_cmd->add_flag("--all", ver_opt.all, "Run every check (default)");
  verify_cmd->add_option("--property", ver_opt.property, "P1, P2 or P3")->check(CLI::IsMember({"P1", "P2", "P3"}));
  verify_cmd->add_option("--context", ver_opt.context, "pre, 1 or 2 (with --property)");
  verify_cmd->add_flag("--commutators", ver_opt.commutators, "Commutators of the property observables");
  verify_cmd->add_flag("--memory-equivalence", ver_opt.memory, "Entangled memory vs collapsed mixture");
  verify_cmd->add_option("--trials", ver_opt.trials, "Random trials for --memory-equivalence");
  verify_cmd->add_option("--seed", ver_opt.seed, "Seed for --memory-equivalence");
  verify_cmd->add_option("--format", ver_opt.format, "json or table (default: $WFSIM_FORMAT or table)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << report::kToolName << " " << report::kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_opt, in, out, err);
    return cmd_verify(ver_opt, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace wfsim::cli
