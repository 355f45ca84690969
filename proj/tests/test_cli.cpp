#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qsl/checks.hpp"
#include "qsl/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = QSL_TEST_DATA_DIR;
const fs::path kGolden = QSL_GOLDEN_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qsl");
  std::ostringstream out;
  std::ostringstream err;
  const int code = qsl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

json read_json(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  return json::parse(in);
}

// Same keys in the same order; numbers within `tol` (absolute, scaled by
// max(1, |expected|)); everything else equal.
void check_against_golden(const std::string& emitted, const fs::path& golden, double tol) {
  CAPTURE(golden.filename().string());
  CAPTURE(emitted);
  const json actual = json::parse(emitted);
  const json expected = read_json(golden);
  REQUIRE(actual.size() == expected.size());
  auto a = actual.begin();
  for (auto e = expected.begin(); e != expected.end(); ++e, ++a) {
    CHECK(a.key() == e.key());
    if (e->is_number() && a->is_number()) {
      const double want = e->get<double>();
      CHECK(std::abs(a->get<double>() - want) <= tol * std::max(1.0, std::abs(want)));
    } else {
      CHECK(*a == *e);
    }
  }
}

}  // namespace

TEST_CASE("bound goldens") {
  struct Case {
    const char* problem;
    const char* kind;
    const char* golden;
  };
  const Case cases[] = {
      {"rabi.json", "bhattacharyya", "bound_rabi_bhattacharyya.json"},
      {"rabi.json", "orthogonal", "bound_rabi_orthogonal.json"},
      {"rabi.json", "offset", "bound_rabi_offset.json"},
      {"rabi.json", "general", "bound_rabi_general.json"},
      {"fg_symmetric.json", "bhattacharyya", "bound_fg_symmetric_bhattacharyya.json"},
      {"fg_symmetric.json", "orthogonal", "bound_fg_symmetric_orthogonal.json"},
      {"fg_symmetric.json", "general", "bound_fg_symmetric_general.json"},
      // the skewed problem file sets level 0.75, which takes precedence over the target fidelity
      {"fg_skewed.json", "bhattacharyya", "bound_fg_skewed_bhattacharyya.json"},
      {"fg_skewed.json", "orthogonal", "bound_fg_skewed_orthogonal.json"},
      {"fg_skewed.json", "general", "bound_fg_skewed_general.json"},
  };
  for (const auto& c : cases) {
    const auto r = invoke({"bound", data(c.problem), "--kind", c.kind});
    CHECK(r.code == 0);
    check_against_golden(r.out, kGolden / c.golden, 1e-12);
  }
}

TEST_CASE("hit goldens") {
  const auto rabi = invoke({"hit", data("rabi.json")});
  CHECK(rabi.code == 0);
  check_against_golden(rabi.out, kGolden / "hit_rabi.json", 1e-6);

  const auto still = invoke({"hit", data("eigenstate.json")});
  CHECK(still.code == 0);
  check_against_golden(still.out, kGolden / "hit_eigenstate.json", 1e-12);

  const auto sym = invoke({"hit", data("fg_symmetric.json")});
  CHECK(sym.code == 0);
  check_against_golden(sym.out, kGolden / "hit_fg_symmetric.json", 1e-6);

  // level 0.75 comes from the problem file
  const auto skew = invoke({"hit", data("fg_skewed.json")});
  CHECK(skew.code == 0);
  check_against_golden(skew.out, kGolden / "hit_fg_skewed.json", 1e-6);
}

TEST_CASE("fg goldens") {
  const auto sym = invoke({"fg", "--e-a", "1", "--e-b", "1", "--s", "0.5"});
  CHECK(sym.code == 0);
  check_against_golden(sym.out, kGolden / "fg_symmetric.json", 1e-12);

  const auto skew = invoke({"fg", "--e-a", "2", "--e-b", "1", "--s", "0.5"});
  CHECK(skew.code == 0);
  check_against_golden(skew.out, kGolden / "fg_skewed.json", 1e-12);

  const auto graded = invoke({"fg", "--e-a", "1", "--e-b", "1", "--s", "0.5", "--t-cqs", "6.28318"});
  CHECK(graded.code == 0);
  check_against_golden(graded.out, kGolden / "fg_symmetric_eta.json", 1e-12);

  CHECK(invoke({"fg", "--e-a", "1", "--e-b", "1", "--s", "0"}).code == 2);
  CHECK(invoke({"fg", "--e-a", "-1", "--e-b", "1", "--s", "0.5"}).code == 2);
  CHECK(invoke({"fg", "--e-a", "1", "--e-b", "1"}).code == 2);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands = {
      {"bound", data("three_level.json"), "--kind", "general"},
      {"hit", data("three_level.json"), "--level", "0.3"},
      {"evolve", data("three_level.json"), "--t", "2.5"},
      {"fg", "--e-a", "0.3", "--e-b", "2.2", "--s", "0.1"},
      {"check", "--seed", "7", "--cases", "5"},
  };
  for (const auto& command : commands) {
    const auto first = invoke(command);
    const auto second = invoke(command);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("bound options") {
  const auto level = invoke({"bound", data("rabi.json"), "--kind", "bhattacharyya", "--level", "0.5"});
  CHECK(json::parse(level.out)["t_min"].get<double>() == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-15));

  const auto scaled = invoke({"bound", data("rabi.json"), "--kind", "orthogonal", "--hbar", "2"});
  CHECK(json::parse(scaled.out)["t_min"].get<double>() == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(json::parse(scaled.out)["hbar"].get<double>() == 2.0);

  const auto same = invoke({"bound", data("rabi_no_target.json"), "--kind", "orthogonal"});
  CHECK(same.code == 0);

  const auto missing = invoke({"bound", data("rabi_no_target.json"), "--kind", "general"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("target_state") != std::string::npos);
  CHECK(missing.out.empty());

  const auto stationary = invoke({"bound", data("eigenstate.json"), "--kind", "orthogonal"});
  CHECK(stationary.code == 2);
  CHECK(stationary.err.find("stationary") != std::string::npos);

  CHECK(invoke({"bound", data("rabi.json"), "--kind", "fastest"}).code == 2);
  CHECK(invoke({"bound", data("no_such_file.json")}).code == 2);
}

TEST_CASE("evolve") {
  const auto start = invoke({"evolve", data("rabi.json"), "--t", "0"});
  CHECK(start.code == 0);
  const json state = json::parse(start.out);
  CHECK(state["t"] == 0.0);
  CHECK(state["state"] == json::parse("[[1, 0], [0, 0]]"));

  const fs::path csv = fs::temp_directory_path() / "qsl_test_cli_series.csv";
  const auto series =
      invoke({"evolve", data("rabi.json"), "--t-max", "3.141592653589793", "--grid", "5", "--csv", csv.string()});
  CHECK(series.code == 0);
  CHECK(json::parse(series.out)["rows"] == 5);

  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,p_target,p_survival,mt_envelope");
  const double expected_target[] = {0.0, 0.5, 1.0, 0.5, 0.0};
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    REQUIRE(cells.size() == 4);
    CHECK(std::abs(std::stod(cells[1]) - expected_target[rows]) <= 1e-9);
    // the envelope is only defined up to pi/2
    CHECK(cells[3].empty() == (rows > 2));
    ++rows;
  }
  CHECK(rows == 5);
  fs::remove(csv);

  CHECK(invoke({"evolve", data("rabi.json")}).code == 2);
  CHECK(invoke({"evolve", data("rabi.json"), "--t", "-1"}).code == 2);
  CHECK(invoke({"evolve", data("rabi.json"), "--t", "1", "--csv", csv.string()}).code == 2);
}

TEST_CASE("hit options") {
  const auto vanish = invoke({"hit", data("rabi_survival.json"), "--level", "0"});
  CHECK(vanish.code == 0);
  CHECK(json::parse(vanish.out)["time"].get<double>() == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-6));

  const auto short_horizon = invoke({"hit", data("rabi.json"), "--t-max", "1"});
  CHECK(short_horizon.code == 0);
  CHECK(json::parse(short_horizon.out)["converged"] == false);

  CHECK(invoke({"hit", data("rabi.json"), "--level", "1.5"}).code == 2);
  CHECK(invoke({"hit", data("rabi_no_target.json")}).code == 2);
}

TEST_CASE("eta") {
  const auto two = invoke({"eta", data("rabi.json"), "--runs", data("rabi_runs.json"), "--kind", "orthogonal"});
  CHECK(two.code == 0);
  std::vector<json> lines;
  std::istringstream in(two.out);
  for (std::string line; std::getline(in, line);) lines.push_back(json::parse(line));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0]["eta"] == 1.0);
  CHECK(lines[1]["eta"] == 0.5);
  CHECK(lines[2]["mean_eta"] == 0.75);
  CHECK(lines[2]["count"] == 2);

  const auto mixed = invoke({"eta", data("rabi.json"), "--runs", data("mixed_runs.json")});
  CHECK(mixed.code == 0);
  CHECK(mixed.out.find(R"({"label": "lost", "eta": 0,)") != std::string::npos);
  CHECK(mixed.out.find(R"({"label": "bad", "error":)") != std::string::npos);
  CHECK(mixed.out.find(R"("failed": 2)") != std::string::npos);

  CHECK(invoke({"eta", data("rabi.json"), "--runs", data("bad_runs.json")}).code == 2);
  CHECK(invoke({"eta", data("rabi.json")}).code == 2);
}

TEST_CASE("check") {
  const auto green = invoke({"check", "--seed", "42", "--cases", "50"});
  CHECK(green.code == 0);
  CHECK(green.out.find("all 7 suites passed") != std::string::npos);
  CHECK(invoke({"check", "--cases", "0"}).code == 2);
}

TEST_CASE("a corrupted closed form is caught by the check suite") {
  qsl::CheckOptions options;
  // sign flip inside the bracket
  options.fg_probability = [](const qsl::FgModel& m, double t, const qsl::PhysicalConstants& k) {
    const double s = std::sin(m.mu() * m.e() * t / (2.0 * k.hbar()));
    return m.s() * m.s() * (-(1.0 / (m.mu() * m.mu()) - 1.0) * s * s + 1.0);
  };
  const auto results = qsl::run_checks(options);
  std::ostringstream out;
  CHECK(qsl::cli::report_checks(results, out) == qsl::cli::kCheckFailed);
  CHECK(out.str().find("fg_closed_form: ") != std::string::npos);
  CHECK(out.str().find("FAILED") != std::string::npos);
  for (const auto& suite : results) CHECK(suite.ok() == (suite.name != "fg_closed_form"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"teleport"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}
