#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/errors.hpp"
#include "qsl/farhi_gutmann.hpp"
#include "qsl/performance.hpp"
#include "qsl/propagation.hpp"
#include "qsl/quantum.hpp"

namespace qsl::io {

/// Malformed or invalid input document.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Problem description. Complex numbers are [re, im] pairs; optional keys are
/// omitted, never null, and unknown keys are rejected.
struct ProblemFile {
  Observable hamiltonian;
  QuantumState initial_state;
  std::optional<QuantumState> target_state;
  std::optional<double> hbar;
  std::optional<double> t_max;
  std::optional<int> grid_points;
  std::optional<double> level;
};

ProblemFile parse_problem(std::string_view json_text);
ProblemFile load_problem(const std::filesystem::path& path);
std::string problem_to_json(const ProblemFile& problem);

/// One entry of a runs file: {"label": text, "t_cqs": number|null,
/// "achieved_fidelity": number?}. A null t_cqs marks a non-converged run.
struct RunRecord {
  std::string label;
  std::optional<double> t_cqs;
  std::optional<double> achieved_fidelity;

  /// Converged records without a fidelity are taken to have reached the
  /// target exactly.
  [[nodiscard]] ControlRun to_control_run() const;
};

/// A record that parsed, or the reason it did not.
struct RunEntry {
  std::string label;
  std::optional<RunRecord> record;
  std::string error;
};

/// Throws InputError when the document is not a JSON array; individual
/// malformed records become RunEntry errors.
std::vector<RunEntry> parse_runs(std::string_view json_text);
std::vector<RunEntry> load_runs(const std::filesystem::path& path);

/// Fixed 17-significant-digit rendering ("%.17g"). Non-finite
/// values render as null.
std::string format_number(double value);

/// Flat JSON object writer with insertion-ordered keys.
class JsonObject {
 public:
  JsonObject& number(std::string_view key, double value);
  JsonObject& number(std::string_view key, std::optional<double> value);
  JsonObject& integer(std::string_view key, long long value);
  JsonObject& text(std::string_view key, std::string_view value);
  JsonObject& boolean(std::string_view key, bool value);
  JsonObject& raw(std::string_view key, std::string_view json);
  [[nodiscard]] std::string str() const;

 private:
  void key(std::string_view k);
  std::string body_;
};

std::string quote(std::string_view text);
std::string complex_array(const ComplexVector& v);
std::string complex_matrix(const ComplexMatrix& m);

std::string to_json(const BoundReport& report);
std::string to_json(const HittingResult& result);
std::string to_json(std::string_view label, const EtaReport& report);
std::string state_json(double t, const QuantumState& state);
std::string fg_report_json(const FgModel& model, const PhysicalConstants& k,
                           const std::optional<EtaReport>& eta);

inline constexpr std::string_view kSeriesCsvHeader = "t,p_target,p_survival,mt_envelope";

struct SeriesRow {
  double t;
  std::optional<double> p_target;
  double p_survival;
  std::optional<double> mt_envelope;
};

void write_series_csv(std::ostream& out, const std::vector<SeriesRow>& rows);

}  // namespace qsl::io
