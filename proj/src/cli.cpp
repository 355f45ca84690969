#include "qsl/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "qsl/bounds.hpp"
#include "qsl/errors.hpp"
#include "qsl/farhi_gutmann.hpp"
#include "qsl/io.hpp"
#include "qsl/performance.hpp"
#include "qsl/propagation.hpp"

namespace qsl::cli {
namespace {

/// Value of a flag if given, else of the problem-file key, else nothing.
template <typename T>
std::optional<T> pick(const CLI::Option* flag, const T& flag_value, const std::optional<T>& file_value) {
  if (flag->count() > 0) return flag_value;
  return file_value;
}

const QuantumState& require_target(const io::ProblemFile& problem, const char* why) {
  if (!problem.target_state) {
    throw io::InputError(std::string("problem file is missing 'target_state', required for ") + why);
  }
  return *problem.target_state;
}

struct CommonFlags {
  std::string problem_path;
  double hbar = 1.0;
  CLI::Option* hbar_flag = nullptr;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("problem", flags.problem_path, "Problem file (JSON)")->required();
  flags.hbar_flag = sub->add_option("--hbar", flags.hbar, "Reduced Planck constant (overrides the file)");
}

PhysicalConstants constants_for(const CommonFlags& flags, const io::ProblemFile& problem) {
  return PhysicalConstants(pick(flags.hbar_flag, flags.hbar, problem.hbar).value_or(1.0));
}

const std::vector<std::string> kKinds = {"bhattacharyya", "orthogonal", "offset", "general"};

int cmd_bound(const CommonFlags& flags, const std::string& kind_name, const CLI::Option* level_flag, double level,
              std::ostream& out) {
  const io::ProblemFile problem = io::load_problem(flags.problem_path);
  const PhysicalConstants k = constants_for(flags, problem);
  const double delta_h = std_dev(problem.hamiltonian, problem.initial_state);
  BoundReport report;
  switch (parse_bound_kind(kind_name).value()) {
    case BoundKind::bhattacharyya: {
      std::optional<double> p = pick(level_flag, level, problem.level);
      if (!p) {
        p = fidelity(problem.initial_state, require_target(problem, "the bhattacharyya bound without a level"));
      }
      report = bhattacharyya_time(delta_h, *p, k);
      break;
    }
    case BoundKind::orthogonal:
      report = orthogonal_bound(delta_h, k);
      break;
    case BoundKind::offset: {
      const QuantumState& c = require_target(problem, "the offset bound (target_state is the reference |c>)");
      report = offset_bound(delta_h, overlap_angle(problem.initial_state, c), k);
      break;
    }
    case BoundKind::general:
      report = general_transition_bound(problem.initial_state, require_target(problem, "the general bound"),
                                        delta_h, k);
      break;
  }
  out << io::to_json(report) << '\n';
  return kSuccess;
}

struct EvolveFlags {
  double t = 0.0;
  CLI::Option* t_flag = nullptr;
  std::string csv_path;
  CLI::Option* csv_flag = nullptr;
  double t_max = 0.0;
  CLI::Option* t_max_flag = nullptr;
  int grid = 2048;
  CLI::Option* grid_flag = nullptr;
};

int cmd_evolve(const CommonFlags& flags, const EvolveFlags& ev, std::ostream& out) {
  const io::ProblemFile problem = io::load_problem(flags.problem_path);
  const PhysicalConstants k = constants_for(flags, problem);
  const Observable& h = problem.hamiltonian;
  const QuantumState& psi0 = problem.initial_state;

  if (ev.csv_flag->count() == 0) {
    if (ev.t_flag->count() == 0) throw io::InputError("evolve needs --t (single time) or --csv (time series)");
    out << io::state_json(ev.t, evolve(h, psi0, ev.t, k)) << '\n';
    return kSuccess;
  }

  const double delta_h = std_dev(h, psi0);
  const std::optional<double> t_max_given = pick(ev.t_max_flag, ev.t_max, problem.t_max);
  const double t_max = t_max_given ? *t_max_given : default_t_max(delta_h, k);
  const int grid = pick(ev.grid_flag, ev.grid, problem.grid_points).value_or(2048);
  const ProbabilitySeries survival = scan_probability(h, psi0, psi0, t_max, grid, k);
  std::optional<ProbabilitySeries> target;
  if (problem.target_state) target = scan_probability(h, psi0, *problem.target_state, t_max, grid, k);
  const double window = envelope_window(delta_h, k);

  std::vector<io::SeriesRow> rows;
  rows.reserve(survival.times.size());
  for (std::size_t i = 0; i < survival.times.size(); ++i) {
    const double t = survival.times[i];
    io::SeriesRow row{t, std::nullopt, survival.values[i], std::nullopt};
    if (target) row.p_target = target->values[i];
    if (t <= window) row.mt_envelope = mt_envelope(delta_h, t, k);
    rows.push_back(row);
  }
  std::ofstream csv(ev.csv_path, std::ios::binary);
  if (!csv) throw io::InputError("cannot write " + ev.csv_path);
  io::write_series_csv(csv, rows);
  out << io::JsonObject().text("csv", ev.csv_path).integer("rows", static_cast<long long>(rows.size())).str()
      << '\n';
  return kSuccess;
}

struct HitFlags {
  double level = 1.0;
  CLI::Option* level_flag = nullptr;
  double t_max = 0.0;
  CLI::Option* t_max_flag = nullptr;
  int grid = 2048;
  CLI::Option* grid_flag = nullptr;
};

int cmd_hit(const CommonFlags& flags, const HitFlags& hf, std::ostream& out) {
  const io::ProblemFile problem = io::load_problem(flags.problem_path);
  const PhysicalConstants k = constants_for(flags, problem);
  const QuantumState& target = require_target(problem, "hit");
  const double level = pick(hf.level_flag, hf.level, problem.level).value_or(1.0);
  HittingOptions options;
  options.grid_points = pick(hf.grid_flag, hf.grid, problem.grid_points).value_or(options.grid_points);
  // inf{t : P_t = 0} can only be touched, never crossed.
  const HitMode mode = level == 0.0 ? HitMode::vanish : HitMode::reach_level;
  const HittingResult result = first_hitting_time(problem.hamiltonian, problem.initial_state, target, level, mode,
                                                  pick(hf.t_max_flag, hf.t_max, problem.t_max), k, options);
  out << io::to_json(result) << '\n';
  return kSuccess;
}

int cmd_eta(const CommonFlags& flags, const std::string& runs_path, const std::string& kind_name,
            std::ostream& out) {
  const io::ProblemFile problem = io::load_problem(flags.problem_path);
  const PhysicalConstants k = constants_for(flags, problem);
  const std::vector<io::RunEntry> entries = io::load_runs(runs_path);
  const Observable& h = problem.hamiltonian;
  const QuantumState& psi_i = problem.initial_state;
  const BoundKind kind = parse_bound_kind(kind_name).value();
  if (kind != BoundKind::orthogonal) require_target(problem, "this eta kind");

  std::function<EtaReport(const ControlRun&)> grade;
  switch (kind) {
    case BoundKind::bhattacharyya:
      grade = [&](const ControlRun& run) {
        return grade_run(h, psi_i, *problem.target_state, run, kDefaultFidelityThreshold, k);
      };
      break;
    case BoundKind::orthogonal:
      grade = [&](const ControlRun& run) { return eta_orthogonal(std_dev(h, psi_i), run, k); };
      break;
    case BoundKind::offset:
      grade = [&](const ControlRun& run) {
        return eta_offset(std_dev(h, psi_i), overlap_angle(psi_i, *problem.target_state), run, k);
      };
      break;
    case BoundKind::general:
      grade = [&](const ControlRun& run) {
        return eta_general(psi_i, *problem.target_state, std_dev(h, psi_i), run, k);
      };
      break;
  }

  int failed = 0;
  int converged = 0;
  double eta_sum = 0.0;
  for (const auto& entry : entries) {
    std::string error = entry.error;
    if (entry.record) {
      try {
        const EtaReport report = grade(entry.record->to_control_run());
        out << io::to_json(entry.label, report) << '\n';
        if (report.t_cqs) {
          ++converged;
          eta_sum += report.eta;
        }
        continue;
      } catch (const Error& e) {
        error = e.what();
      }
    }
    ++failed;
    out << io::JsonObject().text("label", entry.label).text("error", error).str() << '\n';
  }
  io::JsonObject summary;
  summary.integer("count", static_cast<long long>(entries.size()))
      .integer("converged", converged)
      .integer("failed", failed)
      .number("mean_eta", converged > 0 ? std::optional<double>(eta_sum / converged) : std::nullopt);
  out << summary.str() << '\n';
  return (!entries.empty() && failed == static_cast<int>(entries.size())) ? kUsageError : kSuccess;
}

}  // namespace

int report_checks(const std::vector<SuiteResult>& results, std::ostream& out) {
  int failed = 0;
  for (const auto& r : results) {
    out << r.name << ": " << r.passed << "/" << r.total << (r.ok() ? " passed" : " FAILED") << '\n';
    if (!r.ok()) {
      ++failed;
      if (r.failure) out << "  reproduce: " << *r.failure << '\n';
    }
  }
  if (failed == 0) {
    out << "all " << results.size() << " suites passed\n";
    return kSuccess;
  }
  out << failed << " of " << results.size() << " suites failed\n";
  return kCheckFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum speed limits and minimum-time performance measure"};
  app.name("qsl");
  app.require_subcommand(1);

  std::function<int()> action;

  CommonFlags bound_flags;
  std::string bound_kind = "bhattacharyya";
  double bound_level = 0.0;
  auto* bound = app.add_subcommand("bound", "Minimum transition time from the speed limit");
  add_common(bound, bound_flags);
  bound->add_option("--kind", bound_kind, "bhattacharyya | orthogonal | offset | general")
      ->check(CLI::IsMember(kKinds));
  auto* bound_level_flag = bound->add_option("--level", bound_level, "Target probability (bhattacharyya)");
  bound->callback([&] {
    action = [&] { return cmd_bound(bound_flags, bound_kind, bound_level_flag, bound_level, out); };
  });

  CommonFlags evolve_flags;
  EvolveFlags ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve the initial state or write a probability series");
  add_common(evolve_cmd, evolve_flags);
  ev.t_flag = evolve_cmd->add_option("--t", ev.t, "Evolution time")->check(CLI::NonNegativeNumber);
  ev.csv_flag = evolve_cmd->add_option("--csv", ev.csv_path, "Write t,p_target,p_survival,mt_envelope to PATH");
  ev.t_flag->excludes(ev.csv_flag);
  ev.t_max_flag = evolve_cmd->add_option("--t-max", ev.t_max, "Series end time")->check(CLI::PositiveNumber);
  ev.grid_flag = evolve_cmd->add_option("--grid", ev.grid, "Series grid points")->check(CLI::Range(2, 100'000'000));
  evolve_cmd->callback([&] { action = [&] { return cmd_evolve(evolve_flags, ev, out); }; });

  CommonFlags hit_flags;
  HitFlags hf;
  auto* hit = app.add_subcommand("hit", "First time the transition probability attains a level");
  add_common(hit, hit_flags);
  hf.level_flag = hit->add_option("--level", hf.level, "Probability level in [0, 1] (0 searches for a zero)");
  hf.t_max_flag = hit->add_option("--t-max", hf.t_max, "Search horizon")->check(CLI::PositiveNumber);
  hf.grid_flag = hit->add_option("--grid", hf.grid, "Coarse grid points")->check(CLI::Range(2, 100'000'000));
  hit->callback([&] { action = [&] { return cmd_hit(hit_flags, hf, out); }; });

  CommonFlags eta_flags;
  std::string runs_path;
  std::string eta_kind = "bhattacharyya";
  auto* eta_cmd = app.add_subcommand("eta", "Grade control runs with the minimum-time performance measure");
  add_common(eta_cmd, eta_flags);
  eta_cmd->add_option("--runs", runs_path, "Runs file (JSON array)")->required();
  eta_cmd->add_option("--kind", eta_kind, "bhattacharyya | orthogonal | offset | general")
      ->check(CLI::IsMember(kKinds));
  eta_cmd->callback([&] { action = [&] { return cmd_eta(eta_flags, runs_path, eta_kind, out); }; });

  double e_a = 0.0;
  double e_b = 0.0;
  double s = 0.0;
  double t_cqs = 0.0;
  double fg_hbar = 1.0;
  auto* fg = app.add_subcommand("fg", "Two-state analog search model: P_max, t_min and eta");
  fg->add_option("--e-a", e_a, "Energy E_a > 0")->required();
  fg->add_option("--e-b", e_b, "Energy E_b > 0")->required();
  fg->add_option("--s", s, "Overlap <a|b> in (0, 1]")->required();
  auto* t_cqs_flag = fg->add_option("--t-cqs", t_cqs, "Measured transition time of a control run");
  fg->add_option("--hbar", fg_hbar, "Reduced Planck constant");
  fg->callback([&] {
    action = [&] {
      const FgModel model = fg_model(e_a, e_b, s);
      const PhysicalConstants k(fg_hbar);
      std::optional<EtaReport> report;
      if (t_cqs_flag->count() > 0) report = eta_fg(model, ControlRun::completed(t_cqs), k);
      out << io::fg_report_json(model, k, report) << '\n';
      return static_cast<int>(kSuccess);
    };
  });

  std::uint64_t seed = 42;
  int cases = 50;
  auto* check = app.add_subcommand("check", "Run the randomized invariant suites");
  check->add_option("--seed", seed, "Random seed");
  check->add_option("--cases", cases, "Cases per suite (>= 1)");
  check->callback([&] {
    action = [&] {
      if (cases < 1) throw DomainError("--cases must be at least 1");
      CheckOptions options;
      options.seed = seed;
      options.cases = cases;
      return report_checks(run_checks(options), out);
    };
  });

  std::vector<const char*> argv{"qsl"};
  for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace qsl::cli
