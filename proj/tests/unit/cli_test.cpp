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

#include <doctest.h>

#include "readiness/error.hpp"
#include "readiness/dataset.hpp"
#include "readiness/lineage.hpp"
#include "readiness/report.hpp"
#include "support.hpp"

using namespace readiness;
using namespace readiness::testing;

namespace {

std::string data_path(std::string_view name) { return (data_dir() / name).string(); }

constexpr std::string_view kMessy =
    "id,score,team,outcome\n"
    "1,10,red,win\n2,?,blue,loss\n3,12,red,loss\n3,12,red,loss\n"
    "5,?,blue,win\n6,15,red,loss\n7,16,blue,loss\n8,17,red,loss\n";

constexpr std::string_view kConfig =
    "ingest:\n  roles: {id: identifier, outcome: target, team: protected}\n"
    "assess:\n  favorable_value: win\n  label_noise_k: 3\n";

constexpr std::string_view kCleanupPlan =
    "plan_id: cleanup\nsteps:\n"
    "  - {kind: impute, params: {column: score, strategy: median}}\n"
    "  - {kind: dedupe}\n";

struct Workspace {
  TempDir dir{"cli"};
  std::string data = (dir / "messy.csv").string();
  std::string config = (dir / "config.yaml").string();
  std::string plan = (dir / "plan.yaml").string();
  std::string sidecar = data_path("adult_sidecar.yaml");
  std::string out = (dir / "out").string();

  Workspace() {
    write_file(data, kMessy);
    write_file(config, kConfig);
    write_file(plan, kCleanupPlan);
  }

  CliRun report(std::vector<std::string> extra = {}) const {
    std::vector<std::string> args{"report", "--data", data, "--config", config, "--sidecar", sidecar,
                                  "--out", out, "--actor", "Kim", "--persona", "data_steward"};
    args.insert(args.end(), extra.begin(), extra.end());
    return cli(args);
  }
  std::string ledger() const { return out + "/lineage.jsonl"; }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("profile writes its output and records ingest and profile") {
  Workspace w;
  const CliRun r = cli({"profile", "--data", w.data, "--out", w.out});
  CHECK(r.code == kExitOk);
  CHECK(std::filesystem::exists(w.out + "/profile.baseline.json"));
  const auto entries = LineageLedger(w.ledger()).entries();
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].actor.name == "unknown");
}

TEST_CASE("a missing data file exits 1 and names the error") {
  Workspace w;
  const CliRun r = cli({"profile", "--data", w.data + ".absent", "--out", w.out});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("FileNotFound") != std::string::npos);
}

TEST_CASE("--no-ledger writes no ledger") {
  Workspace w;
  CHECK(cli({"profile", "--data", w.data, "--out", w.out, "--no-ledger"}).code == kExitOk);
  CHECK_FALSE(std::filesystem::exists(w.ledger()));
}

TEST_CASE("the assess gate") {
  Workspace w;
  write_file(w.dir / "clean.csv", "a,b\n1,x\n2,y\n3,z\n4,w\n");
  const std::string clean = (w.dir / "clean.csv").string();
  CHECK(cli({"assess", "--data", clean, "--out", w.out, "--fail-below", "0.9"}).code == kExitOk);

  write_file(w.dir / "poor.csv", "a,b\n1,?\n1,?\n1,?\n1,?\n");
  const CliRun poor = cli({"assess", "--data", (w.dir / "poor.csv").string(), "--out", w.out, "--no-ledger",
                           "--fail-below", "0.9"});
  CHECK(poor.code == kExitGateFailure);
  CHECK(poor.err.find("gate failed") != std::string::npos);
  CHECK(std::filesystem::exists(w.out + "/assessment.baseline.json"));
}

TEST_CASE("an unknown dimension in the settings exits 1") {
  Workspace w;
  write_file(w.config, "assess:\n  dimensions: [missing_values, vibes]\n");
  const CliRun r = cli({"assess", "--data", w.data, "--config", w.config, "--out", w.out});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("InvalidParameterValue") != std::string::npos);
}

TEST_CASE("remediate requires an actor and writes the updated dataset") {
  Workspace w;
  const CliRun anonymous = cli({"remediate", "--data", w.data, "--config", w.config, "--plan", w.plan, "--out", w.out});
  CHECK(anonymous.code == kExitInputError);
  const CliRun r = cli({"remediate", "--data", w.data, "--config", w.config, "--plan", w.plan, "--out", w.out,
                        "--actor", "Kim"});
  CHECK(r.code == kExitOk);
  const Dataset updated = load_dataset(w.out + "/data.updated.csv");
  CHECK(updated.row_count() == 7);
  CHECK(r.out.find(updated.digest().hex()) != std::string::npos);
}

TEST_CASE("report without a plan renders baseline sections only") {
  Workspace w;
  const CliRun r = w.report({"--format", "json", "--format", "md"});
  CHECK(r.code == kExitOk);
  const ReadinessReport rep = load_report(w.out + "/report.json");
  CHECK_FALSE(rep.updated_profile.has_value());
  CHECK(std::filesystem::exists(w.out + "/report.md"));
  CHECK_FALSE(std::filesystem::exists(w.out + "/report.html"));
  CHECK(rep.lineage.size() == 3);
}

TEST_CASE("report with an impute and dedupe plan reaches full marks on both") {
  Workspace w;
  const CliRun r = w.report({"--plan", w.plan});
  REQUIRE(r.code == kExitOk);
  const ReadinessReport rep = load_report(w.out + "/report.json");
  REQUIRE(rep.updated_assessment.has_value());
  CHECK(*rep.updated_assessment->find(Dimension::kMissingValues)->score == 1.0);
  CHECK(*rep.updated_assessment->find(Dimension::kDuplicates)->score == 1.0);
  CHECK(rep.lineage.size() == 2 + 3);
  const std::string md = read_file(w.out + "/report.md");
  CHECK(md.find("| Missing Values | 0.8750 | 1.0000 |") != std::string::npos);
  CHECK(load_dataset(w.out + "/data.updated.csv").digest() == rep.updated_profile->dataset_digest);
}

TEST_CASE("two report runs give byte-identical JSON") {
  Workspace a, b;
  write_file(b.data, kMessy);
  REQUIRE(a.report({"--plan", a.plan}).code == kExitOk);
  REQUIRE(b.report({"--plan", b.plan}).code == kExitOk);
  CHECK(read_file(a.out + "/report.json") == read_file(b.out + "/report.json"));
  CHECK(read_file(a.out + "/report.html") == read_file(b.out + "/report.html"));
}

TEST_CASE("a failing report stage exits 1, names the stage and leaves no outputs") {
  Workspace w;
  write_file(w.plan, "plan_id: bad\nsteps:\n  - {kind: impute, params: {column: nope, strategy: mode}}\n");
  const CliRun r = w.report({"--plan", w.plan});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("report stage 'remediation'") != std::string::npos);
  CHECK(r.err.find("ColumnNotFound") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(w.out + "/report.json"));
  CHECK_FALSE(std::filesystem::exists(w.out + "/profile.baseline.json"));
}

TEST_CASE("lineage verify, tamper and replay") {
  Workspace w;
  REQUIRE(w.report({"--plan", w.plan}).code == kExitOk);

  const CliRun ok = cli({"lineage", "verify", "--ledger", w.ledger()});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.rfind("ok", 0) == 0);

  const CliRun shown = cli({"lineage", "show", "--ledger", w.ledger(), "--actor", "Kim"});
  CHECK(shown.code == kExitOk);
  CHECK(std::count(shown.out.begin(), shown.out.end(), '\n') == 5);

  const CliRun replayed = cli({"lineage", "replay", "--ledger", w.ledger(), "--data", w.data, "--config", w.config,
                               "--out", w.out});
  CHECK(replayed.code == kExitOk);
  CHECK(replayed.out.find("matches") != std::string::npos);
  CHECK(read_file(w.out + "/data.replayed.csv") == read_file(w.out + "/data.updated.csv"));

  std::string text = read_file(w.ledger());
  const std::size_t second = text.find('\n') + 1;
  const std::size_t pos = text.find("\"Kim\"", second);
  text.replace(pos, 5, "\"Kit\"");
  write_file(w.ledger(), text);
  const CliRun broken = cli({"lineage", "verify", "--ledger", w.ledger()});
  CHECK(broken.code == kExitIntegrityFailure);
  CHECK(broken.out.find("entry 2") != std::string::npos);
  CHECK(cli({"lineage", "replay", "--ledger", w.ledger(), "--data", w.data, "--config", w.config, "--out", w.out})
            .code == kExitIntegrityFailure);
}

TEST_CASE("replay against a different baseline is an integrity failure") {
  Workspace w;
  REQUIRE(w.report({"--plan", w.plan}).code == kExitOk);
  write_file(w.dir / "other.csv", "id,score,team,outcome\n1,1,red,win\n");
  const CliRun r = cli({"lineage", "replay", "--ledger", w.ledger(), "--data", (w.dir / "other.csv").string(),
                        "--config", w.config, "--out", w.out});
  CHECK(r.code == kExitIntegrityFailure);
  CHECK(r.err.find("BaselineMismatch") != std::string::npos);
}

TEST_CASE("diff compares two reports") {
  Workspace w;
  REQUIRE(w.report({"--format", "json"}).code == kExitOk);
  std::filesystem::rename(w.out + "/report.json", w.dir / "before.json");
  std::filesystem::remove(w.ledger());
  REQUIRE(w.report({"--plan", w.plan, "--format", "json"}).code == kExitOk);
  const CliRun r = cli({"diff", (w.dir / "before.json").string(), w.out + "/report.json", "--out", w.out});
  CHECK(r.code == kExitOk);
  CHECK(std::filesystem::exists(w.out + "/diff.json"));
  CHECK(r.out.find("missing_values") != std::string::npos);
}

TEST_CASE("the actor may come from the environment") {
  Workspace w;
  setenv("READINESS_ACTOR", "Env Person", 1);
  setenv("READINESS_PERSONA", "ml_engineer", 1);
  const CliRun r = cli({"profile", "--data", w.data, "--out", w.out});
  unsetenv("READINESS_ACTOR");
  unsetenv("READINESS_PERSONA");
  REQUIRE(r.code == kExitOk);
  const auto entries = LineageLedger(w.ledger()).entries();
  CHECK(entries[0].actor == Actor{"Env Person", Persona::kMlEngineer});
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli({}).code == kExitInputError);
  CHECK(cli({"frobnicate"}).code == kExitInputError);
  CHECK(cli({"assess", "--fail-below", "abc", "--data", "x"}).code == kExitInputError);
  Workspace w;
  CHECK(cli({"report", "--data", w.data, "--out", w.out}).code == kExitInputError);
  CHECK(cli({"report", "--data", w.data, "--sidecar", w.sidecar, "--out", w.out, "--format", "pdf"}).code ==
        kExitInputError);
}

}  // TEST_SUITE
