// Copyright 2026 The Readiness Authors
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

#include "readiness/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "readiness/config.hpp"
#include "readiness/error.hpp"
#include "readiness/json_io.hpp"
#include "readiness/lineage.hpp"
#include "readiness/profiler.hpp"
#include "readiness/quality.hpp"
#include "readiness/remediation.hpp"
#include "readiness/report.hpp"

namespace readiness {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::string data;
  std::string sidecar;
  std::string config;
  std::string plan;
  std::string ledger;
  std::string out = ".";
  std::string actor;
  std::string persona;
  std::vector<std::string> formats;
  std::optional<std::uint64_t> seed;
  std::optional<double> fail_below;
  bool no_ledger = false;
  // lineage and diff
  std::optional<std::uint64_t> upto;
  std::string filter_actor;
  std::string since;
  std::vector<std::string> reports;
};

bool is_integrity_error(ErrorCode code) {
  return code == ErrorCode::kChainBroken || code == ErrorCode::kReplayDivergence ||
         code == ErrorCode::kBaselineMismatch || code == ErrorCode::kDigestMismatch;
}

fs::path resolve(const std::string& path) { return fs::absolute(fs::path(path)).lexically_normal(); }

// Files written by one invocation, removed again if it fails.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  fs::path path(std::string_view name) const { return dir_ / name; }

  void write(std::string_view name, const std::string& content) {
    fs::create_directories(dir_);
    const fs::path target = dir_ / name;
    std::ofstream file(target, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIoError, "cannot write '" + target.string() + "'");
    file << content;
    file.close();
    if (!file) throw Error(ErrorCode::kIoError, "cannot write '" + target.string() + "'");
    written_.push_back(target);
  }

  void write_dataset_file(std::string_view name, const Dataset& dataset) {
    fs::create_directories(dir_);
    write_dataset(dataset, dir_ / name);
    written_.push_back(dir_ / name);
  }

  void rollback() {
    std::error_code ec;
    for (const fs::path& p : written_) fs::remove(p, ec);
    written_.clear();
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

class Session {
 public:
  Session(const RunConfig& run, bool mutating) : run_(run), outputs_(resolve(run.out)) {
    if (!run.config.empty()) settings_ = load_settings(resolve(run.config));
    if (run.seed) settings_.assess.seed = *run.seed;
    actor_ = resolve_actor(run, mutating);
    if (!run.no_ledger) {
      ledger_ = LineageLedger(run.ledger.empty() ? resolve(run.out) / "lineage.jsonl" : resolve(run.ledger));
    }
  }

  const RunSettings& settings() const { return settings_; }
  const Actor& actor() const { return actor_; }
  LineageLedger& ledger() { return ledger_; }
  Outputs& outputs() { return outputs_; }

  Dataset ingest() {
    if (run_.data.empty()) throw Error(ErrorCode::kInvalidParameterValue, "--data is required");
    Dataset dataset = load_dataset(resolve(run_.data), settings_.ingest);
    record(Operation::kIngest,
           {{"source", fs::path(run_.data).filename().string()},
            {"rows", dataset.row_count()},
            {"columns", dataset.column_count()},
            {"warnings", dataset.warnings().size()}},
           dataset.digest(), dataset.digest());
    return dataset;
  }

  DataProfile profile(const Dataset& dataset, std::string_view stage, bool recorded) {
    DataProfile profile = profile_dataset(dataset, settings_.profile);
    if (recorded) {
      record(Operation::kProfile,
             {{"stage", stage},
              {"rows", profile.row_count},
              {"columns", profile.column_count},
              {"missing_cells", profile.missing_cells()}},
             dataset.digest(), dataset.digest());
    }
    return profile;
  }

  QualityAssessment assess(const Dataset& dataset, const DataProfile& profile, std::string_view stage,
                           bool recorded) {
    QualityAssessment assessment = readiness::assess(dataset, profile, settings_.assess);
    if (recorded) {
      json scores = json::object();
      for (const QualityFinding& f : assessment.findings) {
        scores[std::string(to_string(f.dimension))] = f.score ? json(*f.score) : json(nullptr);
      }
      json detail = {{"stage", stage}, {"scores", scores}};
      put_optional(detail, "overall_score", assessment.overall_score);
      record(Operation::kAssess, std::move(detail), dataset.digest(), dataset.digest());
    }
    return assessment;
  }

 private:
  static Actor resolve_actor(const RunConfig& run, bool mutating) {
    Actor actor{run.actor, Persona::kOther};
    if (!run.persona.empty()) actor.persona = persona_from_string(run.persona);
    if (actor.name.empty()) {
      if (mutating) {
        throw Error(ErrorCode::kInvalidParameterValue,
                    "this command changes data; name the actor with --actor or READINESS_ACTOR");
      }
      actor.name = "unknown";
    }
    return actor;
  }

  void record(Operation op, json detail, const Digest& in, const Digest& out) {
    ledger_.append(actor_, op, std::move(detail), in, out);
  }

  const RunConfig& run_;
  RunSettings settings_;
  Actor actor_;
  LineageLedger ledger_;  // in memory when --no-ledger
  Outputs outputs_;
};

void print_scores(std::ostream& out, const QualityAssessment& a) {
  for (const QualityFinding& f : a.findings) {
    out << fmt::format("  {:<18} {:>8}  {}\n", to_string(f.dimension),
                       f.score ? fmt::format("{:.4f}", *f.score) : std::string("n/a"),
                       !f.applicable() ? "not applicable" : f.flagged ? "flagged" : "ok");
  }
  out << fmt::format("  {:<18} {:>8}\n", "overall",
                     a.overall_score ? fmt::format("{:.4f}", *a.overall_score) : std::string("n/a"));
}

RemediationPlan load_run_plan(const RunConfig& run) {
  RemediationPlan plan = load_plan(resolve(run.plan));
  if (run.seed) override_seeds(plan, *run.seed);
  return plan;
}

int cmd_profile(const RunConfig& run, std::ostream& out) {
  Session session(run, false);
  const Dataset dataset = session.ingest();
  const DataProfile profile = session.profile(dataset, "baseline", true);
  session.outputs().write("profile.baseline.json", pretty_dump(json(profile)) + "\n");
  out << fmt::format("profiled {} rows x {} columns ({} missing cells)\n", profile.row_count,
                     profile.column_count, profile.missing_cells());
  out << "wrote " << session.outputs().path("profile.baseline.json").string() << "\n";
  return kExitOk;
}

int cmd_assess(const RunConfig& run, std::ostream& out, std::ostream& err) {
  Session session(run, false);
  const Dataset dataset = session.ingest();
  const DataProfile profile = session.profile(dataset, "baseline", true);
  const QualityAssessment assessment = session.assess(dataset, profile, "baseline", true);
  session.outputs().write("assessment.baseline.json", pretty_dump(json(assessment)) + "\n");
  out << fmt::format("assessed {} rows x {} columns\n", dataset.row_count(), dataset.column_count());
  print_scores(out, assessment);
  if (run.fail_below) {
    if (!assessment.overall_score || *assessment.overall_score < *run.fail_below) {
      err << fmt::format("gate failed: overall score {} is below {}\n",
                         assessment.overall_score ? fmt::format("{:.4f}", *assessment.overall_score) : "n/a",
                         *run.fail_below);
      return kExitGateFailure;
    }
  }
  return kExitOk;
}

int cmd_remediate(const RunConfig& run, std::ostream& out) {
  if (run.plan.empty()) throw Error(ErrorCode::kInvalidParameterValue, "--plan is required");
  Session session(run, true);
  const RemediationPlan plan = load_run_plan(run);
  const Dataset dataset = session.ingest();
  const PlanResult result = apply_plan(dataset, plan, &session.ledger(), session.actor());
  session.outputs().write_dataset_file("data.updated.csv", result.dataset);
  for (const ChangeSummary& c : result.changes) {
    out << fmt::format("step {} {}: rows {} -> {}, columns {} -> {}, {} cell(s) modified\n", c.step_index,
                       to_string(c.kind), c.rows_before, c.rows_after, c.columns_before, c.columns_after,
                       c.cells_modified);
  }
  out << "digest " << result.dataset.digest().hex() << "\n";
  return kExitOk;
}

int cmd_report(const RunConfig& run, std::ostream& out) {
  if (run.sidecar.empty()) throw Error(ErrorCode::kInvalidParameterValue, "--sidecar is required");
  std::vector<ReportFormat> formats;
  for (const std::string& f : run.formats) {
    const ReportFormat format = report_format_from_string(f);
    if (std::find(formats.begin(), formats.end(), format) == formats.end()) formats.push_back(format);
  }
  if (formats.empty()) formats = {ReportFormat::kJson, ReportFormat::kMarkdown, ReportFormat::kHtml};

  std::string stage = "setup";
  Session session(run, !run.plan.empty());
  try {
    ReportInputs inputs;
    stage = "metadata";
    inputs.metadata = load_metadata(resolve(run.sidecar));
    std::optional<RemediationPlan> plan;
    if (!run.plan.empty()) {
      stage = "plan";
      plan = load_run_plan(run);
    }
    stage = "ingest";
    const Dataset dataset = session.ingest();
    inputs.source = run.data;
    stage = "baseline profile";
    inputs.baseline_profile = session.profile(dataset, "baseline", true);
    stage = "baseline assessment";
    inputs.baseline_assessment = session.assess(dataset, inputs.baseline_profile, "baseline", true);
    session.outputs().write("profile.baseline.json", pretty_dump(json(inputs.baseline_profile)) + "\n");
    session.outputs().write("assessment.baseline.json", pretty_dump(json(inputs.baseline_assessment)) + "\n");
    if (plan) {
      stage = "remediation";
      const PlanResult result = apply_plan(dataset, *plan, &session.ledger(), session.actor());
      session.outputs().write_dataset_file("data.updated.csv", result.dataset);
      stage = "updated profile";
      inputs.updated_profile = session.profile(result.dataset, "updated", false);
      stage = "updated assessment";
      inputs.updated_assessment = session.assess(result.dataset, *inputs.updated_profile, "updated", false);
      session.outputs().write("profile.updated.json", pretty_dump(json(*inputs.updated_profile)) + "\n");
      session.outputs().write("assessment.updated.json", pretty_dump(json(*inputs.updated_assessment)) + "\n");
    }
    stage = "report";
    const ReadinessReport report = build_report(inputs, session.ledger());
    for (ReportFormat format : formats) {
      session.outputs().write(report_file_name(format), render(report, format));
    }
    out << fmt::format("report for {} rows x {} columns\n", dataset.row_count(), dataset.column_count());
    out << "baseline:\n";
    print_scores(out, inputs.baseline_assessment);
    if (inputs.updated_assessment) {
      out << "updated:\n";
      print_scores(out, *inputs.updated_assessment);
    }
    for (ReportFormat format : formats) {
      out << "wrote " << session.outputs().path(report_file_name(format)).string() << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    session.outputs().rollback();
    throw Error(e.code(), "report stage '" + stage + "': " + e.message());
  } catch (...) {
    session.outputs().rollback();
    throw;
  }
}

bool entry_matches(const LineageEntry& e, const RunConfig& run) {
  if (!run.filter_actor.empty() && e.actor.name != run.filter_actor) return false;
  if (!run.since.empty() && e.timestamp < run.since) return false;
  return true;
}

std::string require_ledger(const RunConfig& run) {
  if (run.ledger.empty()) throw Error(ErrorCode::kInvalidParameterValue, "--ledger is required");
  const fs::path path = resolve(run.ledger);
  if (!fs::exists(path)) throw Error(ErrorCode::kIoError, "ledger '" + path.string() + "' does not exist");
  return path.string();
}

int cmd_lineage_show(const RunConfig& run, std::ostream& out) {
  const LineageLedger ledger(require_ledger(run));
  for (const LineageEntry& e : ledger.entries()) {
    if (!entry_matches(e, run)) continue;
    std::string params;
    if (e.operation == Operation::kRemediationStep) {
      params = " " + describe_step(step_from_json(e.operation_detail.at("step")));
    } else if (e.operation_detail.contains("stage")) {
      params = " stage=" + e.operation_detail.at("stage").get<std::string>();
    } else if (e.operation_detail.contains("source")) {
      params = " source=" + e.operation_detail.at("source").get<std::string>();
    }
    out << fmt::format("#{} {} {} ({}) {}{} {} -> {}\n", e.entry_id, e.timestamp, e.actor.name,
                       to_string(e.actor.persona), to_string(e.operation), params,
                       e.input_digest.hex().substr(0, 12), e.output_digest.hex().substr(0, 12));
  }
  return kExitOk;
}

int cmd_lineage_verify(const RunConfig& run, std::ostream& out) {
  const LineageLedger ledger(require_ledger(run));
  const VerifyResult result = ledger.verify();
  if (result.ok) {
    out << fmt::format("ok ({} entries)\n", result.entries);
    return kExitOk;
  }
  out << fmt::format("broken at entry {}: {}\n", result.broken_entry.value_or(0), result.reason);
  return kExitIntegrityFailure;
}

int cmd_lineage_replay(const RunConfig& run, std::ostream& out) {
  const LineageLedger ledger(require_ledger(run));
  if (run.data.empty()) throw Error(ErrorCode::kInvalidParameterValue, "--data (the baseline) is required");
  RunSettings settings;
  if (!run.config.empty()) settings = load_settings(resolve(run.config));
  const Dataset baseline = load_dataset(resolve(run.data), settings.ingest);
  const ReplayResult result = replay(baseline, ledger, run.upto);
  Outputs outputs(resolve(run.out));
  outputs.write_dataset_file("data.replayed.csv", result.dataset);
  if (result.last_entry) {
    out << fmt::format("replayed {} step(s); digest {} matches entry {}\n", result.steps_applied,
                       result.dataset.digest().hex(), *result.last_entry);
  } else {
    out << fmt::format("no remediation entries; digest {} equals the baseline\n", result.dataset.digest().hex());
  }
  out << "wrote " << outputs.path("data.replayed.csv").string() << "\n";
  return kExitOk;
}

int cmd_diff(const RunConfig& run, std::ostream& out) {
  if (run.reports.size() != 2) throw Error(ErrorCode::kInvalidParameterValue, "diff needs two report files");
  const ReadinessReport a = load_report(resolve(run.reports[0]));
  const ReadinessReport b = load_report(resolve(run.reports[1]));
  const ReportDiff diff = diff_reports(a, b);
  out << render_diff_text(diff);
  if (run.out != ".") {
    Outputs outputs(resolve(run.out));
    outputs.write("diff.json", pretty_dump(diff_to_json(diff)) + "\n");
  }
  return kExitOk;
}

void add_data_options(CLI::App* cmd, RunConfig& run) {
  cmd->add_option("--data", run.data, "Input CSV file");
  cmd->add_option("--config", run.config, "Settings file (YAML)");
  cmd->add_option("--ledger", run.ledger, "Lineage ledger (default: <out>/lineage.jsonl)");
  cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
  cmd->add_flag("--no-ledger", run.no_ledger, "Do not record lineage entries");
}

void add_actor_options(CLI::App* cmd, RunConfig& run) {
  cmd->add_option("--actor", run.actor, "Actor name recorded in the ledger")->envname("READINESS_ACTOR");
  cmd->add_option("--persona", run.persona, "Actor persona")->envname("READINESS_PERSONA");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data readiness profiling, assessment, remediation and reporting", "readiness"};
  app.require_subcommand(1);
  RunConfig run;

  CLI::App* profile = app.add_subcommand("profile", "Profile a dataset");
  add_data_options(profile, run);
  add_actor_options(profile, run);

  CLI::App* assess = app.add_subcommand("assess", "Assess quality dimensions");
  add_data_options(assess, run);
  add_actor_options(assess, run);
  assess->add_option("--seed", run.seed, "Seed for suggested sampling steps");
  assess->add_option("--fail-below", run.fail_below, "Exit 2 when the overall score is below this value");

  CLI::App* remediate = app.add_subcommand("remediate", "Apply a remediation plan");
  add_data_options(remediate, run);
  add_actor_options(remediate, run);
  remediate->add_option("--plan", run.plan, "Remediation plan (YAML)");
  remediate->add_option("--seed", run.seed, "Override the seed of every sampling step");

  CLI::App* report = app.add_subcommand("report", "Run the full pipeline and render the report");
  add_data_options(report, run);
  add_actor_options(report, run);
  report->add_option("--sidecar", run.sidecar, "Metadata sidecar (YAML)");
  report->add_option("--plan", run.plan, "Remediation plan (YAML)");
  report->add_option("--format", run.formats, "json, markdown or html; repeatable")->allow_extra_args(false);
  report->add_option("--seed", run.seed, "Override the seed of every sampling step");

  CLI::App* lineage = app.add_subcommand("lineage", "Inspect the lineage ledger");
  lineage->require_subcommand(1);
  CLI::App* show = lineage->add_subcommand("show", "Print ledger entries");
  show->add_option("--ledger", run.ledger, "Ledger file");
  show->add_option("--actor", run.filter_actor, "Only entries by this actor");
  show->add_option("--since", run.since, "Only entries at or after this RFC 3339 timestamp");
  CLI::App* verify = lineage->add_subcommand("verify", "Check the hash chain");
  verify->add_option("--ledger", run.ledger, "Ledger file");
  CLI::App* replay_cmd = lineage->add_subcommand("replay", "Rebuild a dataset version from the baseline");
  replay_cmd->add_option("--ledger", run.ledger, "Ledger file");
  replay_cmd->add_option("--data", run.data, "Baseline CSV file");
  replay_cmd->add_option("--config", run.config, "Settings file (YAML)");
  replay_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
  replay_cmd->add_option("--upto", run.upto, "Last entry id to replay");

  CLI::App* diff = app.add_subcommand("diff", "Compare two report.json files");
  diff->add_option("reports", run.reports, "Two report files")->expected(2);
  diff->add_option("--out", run.out, "Directory for diff.json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (*profile) return cmd_profile(run, out);
    if (*assess) return cmd_assess(run, out, err);
    if (*remediate) return cmd_remediate(run, out);
    if (*report) return cmd_report(run, out);
    if (*show) return cmd_lineage_show(run, out);
    if (*verify) return cmd_lineage_verify(run, out);
    if (*replay_cmd) return cmd_lineage_replay(run, out);
    if (*diff) return cmd_diff(run, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_integrity_error(e.code()) ? kExitIntegrityFailure : kExitInputError;
  } catch (const std::exception& e) {
    err << "error: IoError: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace readiness
