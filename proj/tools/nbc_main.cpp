// Copyright 2026 The nboson-contextuality Authors
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

// nbc: command-line driver for the N-boson contextuality engine.
//
//   nbc chsh --n 4 --collective [--exact | --shots S --seed X] [--out json|csv]
//   nbc sweep --n-min 1 --n-max 8 --single-rescaled
//   nbc run experiment.nbc [--shots S] [--seed X]
//   nbc check [--n-max 4] [--tol 1e-12]
//   nbc dsl validate|format FILE
//
// Exit codes: 0 ok, 2 usage, 3 DSL parse error, 4 invariant failure.

#include "nbc/checks.hpp"
#include "nbc/contextuality.hpp"
#include "nbc/dsl.hpp"
#include "nbc/optics.hpp"
#include "nbc/sampling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kParse = 3, kInvariant = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json manifest(const std::string& command, json parameters, std::optional<std::uint64_t> seed,
              const std::vector<nbc::BasisPolicy>& bases, Clock::time_point t0) {
  json m;
  m["command"] = command;
  m["parameters"] = std::move(parameters);
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["engine_version"] = NBC_VERSION;
  m["rng"] = nbc::kGeneratorName;
  json sizes = json::array();
  for (const auto& b : bases) {
    sizes.push_back({{"policy", nbc::to_string(b)}, {"size", nbc::basis_size(b)}});
  }
  m["basis_sizes"] = std::move(sizes);
  m["wall_time_s"] = seconds_since(t0);
  return m;
}

const char* const kPairNames[4] = {"AB", "AB'", "A'B", "A'B'"};

std::array<double, 4> as_array(const nbc::Correlators& c) {
  return {c.ab, c.ab_prime, c.a_prime_b, c.a_prime_b_prime};
}

json correlators_json(const nbc::Correlators& c) {
  json j;
  const auto v = as_array(c);
  for (int i = 0; i < 4; ++i) j[kPairNames[i]] = v[i];
  return j;
}

struct Common {
  std::string out = "text";
  bool collective = false;
  bool single = false;
  bool single_rescaled = false;

  nbc::SetKind kind() const {
    if (single) return nbc::SetKind::SingleBoson;
    if (single_rescaled) return nbc::SetKind::SingleBosonRescaled;
    return nbc::SetKind::Collective;
  }
};

void add_kind_flags(CLI::App* cmd, Common& c) {
  auto* a = cmd->add_flag("--collective", c.collective, "order-N collective observables (default)");
  auto* b = cmd->add_flag("--single", c.single, "single-boson observables, scale 2");
  auto* d = cmd->add_flag("--single-rescaled", c.single_rescaled,
                          "single-boson observables, scale 2/N");
  a->excludes(b)->excludes(d);
  b->excludes(d);
}

void add_out(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// chsh

struct ChshArgs {
  Common common;
  int n = 0;
  bool exact = false;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

nbc::ChshReport chsh_for(int n, nbc::SetKind kind, std::optional<std::uint64_t> shots,
                         std::uint64_t seed) {
  if (n < 1) throw UsageError("--n must be >= 1");
  const nbc::ObservableSet set = nbc::standard_observable_set(n, kind);
  const nbc::StateVector psi = nbc::noon_state(n, set.basis_ptr());
  if (shots) return nbc::sample_chsh(psi, set, *shots, seed);
  return nbc::chsh(psi, set);
}

void print_report_text(const nbc::ChshReport& r) {
  const auto v = as_array(r.correlators);
  for (int i = 0; i < 4; ++i) {
    std::cout << "<" << kPairNames[i] << "> = " << num(v[i]);
    if (r.standard_errors) std::cout << " +- " << num(as_array(*r.standard_errors)[i]);
    std::cout << "\n";
  }
  std::cout << "E = " << num(r.e);
  if (r.e_standard_error) std::cout << " +- " << num(*r.e_standard_error);
  std::cout << (r.violated ? "  (violates E <= 2)" : "  (no violation)") << "\n";
}

void print_report_csv(const nbc::ChshReport& r) {
  std::cout << "quantity,value,stderr\n";
  const auto v = as_array(r.correlators);
  for (int i = 0; i < 4; ++i) {
    std::cout << kPairNames[i] << "," << num(v[i]) << ",";
    if (r.standard_errors) std::cout << num(as_array(*r.standard_errors)[i]);
    std::cout << "\n";
  }
  std::cout << "E," << num(r.e) << ",";
  if (r.e_standard_error) std::cout << num(*r.e_standard_error);
  std::cout << "\nviolated," << (r.violated ? 1 : 0) << ",\n";
}

void add_report(json& j, const nbc::ChshReport& r) {
  j["correlators"] = correlators_json(r.correlators);
  j["E"] = r.e;
  j["violated"] = r.violated;
  if (r.standard_errors) {
    json se = correlators_json(*r.standard_errors);
    se["E"] = *r.e_standard_error;
    j["stderr"] = std::move(se);
  }
}

int cmd_chsh(const ChshArgs& a) {
  const auto t0 = Clock::now();
  const nbc::ChshReport r = chsh_for(a.n, a.common.kind(), a.shots, a.seed);
  if (a.common.out == "csv") {
    print_report_csv(r);
  } else if (a.common.out == "json") {
    json params{{"n", a.n},
                {"set", nbc::to_string(a.common.kind())},
                {"mode", a.shots ? "shots" : "exact"}};
    if (a.shots) params["shots"] = *a.shots;
    json j;
    j["manifest"] = manifest("chsh", std::move(params),
                             a.shots ? std::optional<std::uint64_t>(a.seed) : std::nullopt,
                             {nbc::BasisPolicy::sector(a.n)}, t0);
    add_report(j, r);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "N = " << a.n << ", " << nbc::to_string(a.common.kind()) << " set, "
              << (a.shots ? std::to_string(*a.shots) + " shots" : std::string("exact")) << "\n";
    print_report_text(r);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  Common common;
  int n_min = 1;
  int n_max = 8;
};

int cmd_sweep(const SweepArgs& a) {
  const auto t0 = Clock::now();
  if (a.n_min < 1 || a.n_max < a.n_min) throw UsageError("need 1 <= --n-min <= --n-max");
  const nbc::SetKind kind = a.common.kind();
  std::vector<std::future<nbc::ChshReport>> jobs;
  for (int n = a.n_min; n <= a.n_max; ++n) {
    jobs.push_back(std::async(std::launch::async, [n, kind] {
      return chsh_for(n, kind, std::nullopt, 0);
    }));
  }
  std::vector<nbc::ChshReport> rows;
  for (auto& f : jobs) rows.push_back(f.get());

  if (a.common.out == "csv") {
    std::cout << "N,AB,AB',A'B,A'B',E,violated\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::cout << a.n_min + static_cast<int>(i);
      for (double v : as_array(rows[i].correlators)) std::cout << "," << num(v);
      std::cout << "," << num(rows[i].e) << "," << (rows[i].violated ? 1 : 0) << "\n";
    }
  } else if (a.common.out == "json") {
    std::vector<nbc::BasisPolicy> bases;
    json out = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int n = a.n_min + static_cast<int>(i);
      bases.push_back(nbc::BasisPolicy::sector(n));
      json row{{"N", n}};
      add_report(row, rows[i]);
      out.push_back(std::move(row));
    }
    json j;
    j["manifest"] = manifest("sweep",
                             {{"n_min", a.n_min}, {"n_max", a.n_max}, {"set", nbc::to_string(kind)}},
                             std::nullopt, bases, t0);
    j["rows"] = std::move(out);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "N\tE\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::cout << a.n_min + static_cast<int>(i) << "\t" << num(rows[i].e) << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
  Common common;
  std::string file;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  bool exact = false;
};

struct SettingRun {
  std::string label;
  nbc::OutcomeDistribution distribution;
  std::vector<nbc::ShotRecord> records;  // sampled only
  nbc::SettingTally tally;
};

void print_diagnostics(const std::string& file, const std::vector<nbc::dsl::Diagnostic>& ds) {
  for (const auto& d : ds) std::cerr << file << ":" << nbc::dsl::format(d) << "\n";
}

std::optional<nbc::dsl::ExperimentDoc> load_doc(const std::string& file) {
  const std::string text = read_file(file);
  nbc::dsl::ParseResult r = nbc::dsl::parse(text);
  if (!r.ok()) {
    print_diagnostics(file, r.diagnostics);
    return std::nullopt;
  }
  return std::move(r.doc);
}

json histogram_json(const SettingRun& s, bool sampled) {
  json h;
  h["channels"] = s.distribution.channels;
  json outcomes = json::array();
  if (sampled) {
    for (const auto& r : s.records) outcomes.push_back({{"pattern", r.pattern}, {"count", r.count}});
  } else {
    for (const auto& [p, w] : s.distribution.outcomes) {
      if (w > 0.0) outcomes.push_back({{"pattern", p}, {"probability", w}});
    }
  }
  h["outcomes"] = std::move(outcomes);
  return h;
}

int cmd_run(const RunArgs& a) {
  const auto t0 = Clock::now();
  const auto doc = load_doc(a.file);
  if (!doc) return kParse;
  std::optional<std::uint64_t> shots = a.exact ? std::nullopt : (a.shots ? a.shots : doc->shots);
  const std::uint64_t seed = a.seed.value_or(doc->seed.value_or(0));
  if (shots && *shots == 0) throw UsageError("shots must be >= 1");

  const std::vector<nbc::Circuit> circuits = nbc::dsl::lower(*doc);
  std::vector<std::future<SettingRun>> jobs;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      const nbc::Circuit& c = circuits[i];
      SettingRun run;
      run.label = c.setting ? nbc::label(*c.setting) : std::string("bare");
      run.distribution =
          nbc::detection_distribution(nbc::run_circuit(c), nbc::detection_layout(c));
      if (shots) {
        run.records =
            nbc::sample_shots(run.distribution, *shots, nbc::derive_seed(seed, i), run.label);
      }
      if (c.setting) {
        const nbc::AssignmentTable table = nbc::derive_assignment(c);
        run.tally = shots ? nbc::tally_from_records(*c.setting, table, run.records)
                          : nbc::tally_from_distribution(*c.setting, table, run.distribution);
      }
      return run;
    }));
  }
  std::vector<SettingRun> runs;
  for (auto& f : jobs) runs.push_back(f.get());

  std::vector<std::pair<std::string, nbc::CorrelatorEstimate>> per_setting;
  std::vector<nbc::SettingTally> tallies;
  for (const auto& r : runs) {
    if (!doc->settings.empty()) {
      per_setting.emplace_back(r.label, nbc::estimate_correlator(r.tally));
      tallies.push_back(r.tally);
    }
  }
  std::optional<nbc::ChshReport> report;
  if (tallies.size() == 4) {
    try {
      report = nbc::estimate_chsh(tallies);
    } catch (const std::invalid_argument&) {
      report.reset();  // settings do not form a CHSH quadruple
    }
  }

  if (a.common.out == "csv") {
    std::cout << "quantity,value,stderr\n";
    for (const auto& [label, e] : per_setting) {
      std::cout << label << "," << num(e.mean) << "," << (shots ? num(e.standard_error) : "")
                << "\n";
    }
    if (report) {
      std::cout << "E," << num(report->e) << ","
                << (report->e_standard_error ? num(*report->e_standard_error) : "") << "\n";
      std::cout << "violated," << (report->violated ? 1 : 0) << ",\n";
    }
  } else if (a.common.out == "json") {
    json params{{"file", a.file}, {"document", nbc::dsl::serialize(*doc)},
                {"mode", shots ? "shots" : "exact"}};
    if (shots) params["shots"] = *shots;
    json j;
    j["manifest"] = manifest("run", std::move(params),
                             shots ? std::optional<std::uint64_t>(seed) : std::nullopt,
                             {nbc::BasisPolicy::sector(doc->photons)}, t0);
    json corr = json::object();
    json se = json::object();
    for (const auto& [label, e] : per_setting) {
      corr[label] = e.mean;
      se[label] = e.standard_error;
    }
    j["correlators"] = std::move(corr);
    j["E"] = report ? json(report->e) : json(nullptr);
    j["violated"] = report ? json(report->violated) : json(nullptr);
    if (shots) {
      if (report) se["E"] = *report->e_standard_error;
      j["stderr"] = std::move(se);
    }
    json hist = json::object();
    for (const auto& r : runs) hist[r.label] = histogram_json(r, shots.has_value());
    j["histograms"] = std::move(hist);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << a.file << ": N = " << doc->photons << ", "
              << (shots ? std::to_string(*shots) + " shots per setting, seed " +
                              std::to_string(seed)
                        : std::string("exact"))
              << "\n";
    for (const auto& [label, e] : per_setting) {
      std::cout << "<" << label << "> = " << num(e.mean);
      if (shots) std::cout << " +- " << num(e.standard_error);
      std::cout << "\n";
    }
    if (report) {
      std::cout << "E = " << num(report->e);
      if (report->e_standard_error) std::cout << " +- " << num(*report->e_standard_error);
      std::cout << (report->violated ? "  (violates E <= 2)" : "  (no violation)") << "\n";
    }
    if (per_setting.empty()) {
      const auto& r = runs.front();
      for (const auto& [p, w] : r.distribution.outcomes) {
        if (w <= 0.0) continue;
        for (std::size_t k = 0; k < p.size(); ++k) {
          std::cout << (k ? " " : "") << r.distribution.channels[k] << "=" << p[k];
        }
        std::cout << "\t" << num(w) << "\n";
      }
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  Common common;
  nbc::CheckOptions options;
};

int cmd_check(const CheckArgs& a) {
  const auto t0 = Clock::now();
  if (a.options.max_n < 1) throw UsageError("--n-max must be >= 1");
  if (!(a.options.tolerance >= 0.0)) throw UsageError("--tol must be >= 0");
  const auto results = nbc::run_invariant_suite(a.options);
  const bool ok = nbc::all_passed(results);

  if (a.common.out == "csv") {
    std::cout << "group,check,deviation,passed\n";
    for (const auto& r : results) {
      std::cout << r.group << ",\"" << r.name << "\"," << num(r.deviation) << ","
                << (r.passed ? 1 : 0) << "\n";
    }
  } else if (a.common.out == "json") {
    std::vector<nbc::BasisPolicy> bases;
    for (int n = 1; n <= a.options.max_n; ++n) {
      bases.push_back(nbc::BasisPolicy::sector(n));
      bases.push_back(nbc::BasisPolicy::cutoff_per_mode(3 * n));
    }
    json checks = json::array();
    for (const auto& r : results) {
      checks.push_back({{"group", r.group},
                        {"check", r.name},
                        {"deviation", r.deviation},
                        {"exact", r.exact},
                        {"informational", r.informational},
                        {"passed", r.passed}});
    }
    json j;
    j["manifest"] = manifest("check",
                             {{"n_max", a.options.max_n}, {"tol", a.options.tolerance},
                              {"inject_jy_flip", a.options.flip_collective_jy}},
                             std::nullopt, bases, t0);
    j["checks"] = std::move(checks);
    j["passed"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::string group;
    for (const auto& r : results) {
      if (r.group != group) {
        group = r.group;
        std::cout << "[" << group << "]\n";
      }
      const char* tag = r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL");
      std::cout << "  " << tag << "  " << r.name << "  (" << num(r.deviation) << ")\n";
    }
    std::cout << (ok ? "all checks passed" : "CHECK FAILURES") << "\n";
  }
  return ok ? kOk : kInvariant;
}

// ---------------------------------------------------------------------------
// dsl

int cmd_dsl_validate(const std::string& file) {
  const auto doc = load_doc(file);
  if (!doc) return kParse;
  std::cout << file << ": ok, N = " << doc->photons << ", " << doc->elements.size()
            << " elements, " << doc->settings.size() << " settings\n";
  return kOk;
}

int cmd_dsl_format(const std::string& file) {
  const auto doc = load_doc(file);
  if (!doc) return kParse;
  std::cout << nbc::dsl::serialize(*doc);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-boson contextuality engine: CHSH tests, optical circuits, invariant checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(NBC_VERSION));

  ChshArgs chsh_args;
  auto* chsh = app.add_subcommand("chsh", "exact or sampled CHSH value on the NOON state");
  chsh->add_option("--n", chsh_args.n, "photon number N")->required();
  add_kind_flags(chsh, chsh_args.common);
  auto* exact = chsh->add_flag("--exact", chsh_args.exact, "exact expectation values (default)");
  auto* shots = chsh->add_option("--shots", chsh_args.shots, "shots per setting")
                    ->check(CLI::PositiveNumber);
  exact->excludes(shots);
  chsh->add_option("--seed", chsh_args.seed, "master seed");
  add_out(chsh, chsh_args.common);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "exact CHSH value over a range of N");
  sweep->add_option("--n-min", sweep_args.n_min, "first N")->capture_default_str();
  sweep->add_option("--n-max", sweep_args.n_max, "last N")->capture_default_str();
  add_kind_flags(sweep, sweep_args.common);
  add_out(sweep, sweep_args.common);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "execute a DSL experiment");
  run->add_option("file", run_args.file, "experiment file")->required();
  auto* run_exact = run->add_flag("--exact", run_args.exact, "ignore shots, use probabilities");
  auto* run_shots = run->add_option("--shots", run_args.shots, "override shots per setting")
                        ->check(CLI::PositiveNumber);
  run_exact->excludes(run_shots);
  run->add_option("--seed", run_args.seed, "override master seed");
  add_out(run, run_args.common);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "run the invariant suites");
  check->add_option("--n-max", check_args.options.max_n, "largest N")->capture_default_str();
  check->add_option("--tol", check_args.options.tolerance, "tolerance")->capture_default_str();
  check->add_flag("--inject-jy-flip", check_args.options.flip_collective_jy)->group("");
  add_out(check, check_args.common);

  std::string dsl_file;
  auto* dsl = app.add_subcommand("dsl", "experiment language tools");
  dsl->require_subcommand(1);
  auto* validate = dsl->add_subcommand("validate", "parse and report diagnostics");
  validate->add_option("file", dsl_file)->required();
  auto* format = dsl->add_subcommand("format", "print the canonical form");
  format->add_option("file", dsl_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*chsh) return cmd_chsh(chsh_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*run) return cmd_run(run_args);
    if (*check) return cmd_check(check_args);
    if (*validate) return cmd_dsl_validate(dsl_file);
    if (*format) return cmd_dsl_format(dsl_file);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
