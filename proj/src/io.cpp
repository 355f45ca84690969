#include "qsl/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qsl::io {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 7> kProblemKeys = {
    "hamiltonian", "initial_state", "target_state", "hbar", "t_max", "grid_points", "level"};
constexpr std::array<std::string_view, 3> kRunKeys = {"label", "t_cqs", "achieved_fidelity"};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

template <std::size_t N>
void reject_unknown_keys(const json& obj, const std::array<std::string_view, N>& allowed, const char* what) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw InputError(std::string("unknown key '") + item.key() + "' in " + what);
    }
    if (item.value().is_null()) {
      throw InputError(std::string("key '") + item.key() + "' in " + what + " must be omitted rather than null");
    }
  }
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw InputError("'" + field + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError("'" + field + "' must be finite");
  return x;
}

Complex as_complex(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) throw InputError("'" + field + "' entries must be [re, im] pairs");
  return {as_number(v[0], field), as_number(v[1], field)};
}

ComplexVector as_complex_vector(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) throw InputError("'" + field + "' must be a non-empty array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_complex(e, field));
  return ComplexVector(std::move(out));
}

QuantumState as_state(const json& v, const std::string& field, std::size_t dim) {
  ComplexVector amps = as_complex_vector(v, field);
  if (amps.size() != dim) {
    throw InputError("'" + field + "' has dimension " + std::to_string(amps.size()) + " but the Hamiltonian is " +
                     std::to_string(dim) + "x" + std::to_string(dim));
  }
  try {
    return QuantumState(std::move(amps), field);
  } catch (const DomainError& e) {
    throw InputError("'" + field + "': " + e.what());
  }
}

Observable as_hamiltonian(const json& v) {
  if (!v.is_array() || v.empty()) throw InputError("'hamiltonian' must be a non-empty array of rows");
  const std::size_t n = v.size();
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != n) throw InputError("'hamiltonian' must be square");
    for (const auto& e : row) entries.push_back(as_complex(e, "hamiltonian"));
  }
  try {
    return Observable(ComplexMatrix(n, n, std::move(entries)));
  } catch (const NotHermitianError&) {
    throw InputError("'hamiltonian' is not Hermitian");
  }
}

}  // namespace

ProblemFile parse_problem(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw InputError("problem file must be a JSON object");
  reject_unknown_keys(doc, kProblemKeys, "problem file");
  if (!doc.contains("hamiltonian")) throw InputError("missing required field 'hamiltonian'");
  if (!doc.contains("initial_state")) throw InputError("missing required field 'initial_state'");

  Observable h = as_hamiltonian(doc["hamiltonian"]);
  QuantumState initial = as_state(doc["initial_state"], "initial_state", h.dimension());
  ProblemFile p{std::move(h), std::move(initial), std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                std::nullopt};
  if (doc.contains("target_state")) {
    p.target_state = as_state(doc["target_state"], "target_state", p.hamiltonian.dimension());
  }
  if (doc.contains("hbar")) {
    p.hbar = as_number(doc["hbar"], "hbar");
    if (*p.hbar <= 0.0) throw InputError("'hbar' must be positive");
  }
  if (doc.contains("t_max")) {
    p.t_max = as_number(doc["t_max"], "t_max");
    if (*p.t_max <= 0.0) throw InputError("'t_max' must be positive");
  }
  if (doc.contains("grid_points")) {
    const json& g = doc["grid_points"];
    if (!g.is_number_integer()) throw InputError("'grid_points' must be an integer");
    const auto n = g.get<long long>();
    if (n < 2 || n > 100'000'000) throw InputError("'grid_points' must be at least 2");
    p.grid_points = static_cast<int>(n);
  }
  if (doc.contains("level")) {
    p.level = as_number(doc["level"], "level");
    if (*p.level < 0.0 || *p.level > 1.0) throw InputError("'level' must lie in [0, 1]");
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) { return parse_problem(read_file(path)); }

std::string problem_to_json(const ProblemFile& problem) {
  JsonObject obj;
  obj.raw("hamiltonian", complex_matrix(problem.hamiltonian.matrix()));
  obj.raw("initial_state", complex_array(problem.initial_state.amplitudes()));
  if (problem.target_state) obj.raw("target_state", complex_array(problem.target_state->amplitudes()));
  if (problem.hbar) obj.number("hbar", *problem.hbar);
  if (problem.t_max) obj.number("t_max", *problem.t_max);
  if (problem.grid_points) obj.integer("grid_points", *problem.grid_points);
  if (problem.level) obj.number("level", *problem.level);
  return obj.str();
}

ControlRun RunRecord::to_control_run() const {
  if (!t_cqs) return ControlRun::non_converged();
  if (achieved_fidelity) return ControlRun::with_fidelity(*t_cqs, *achieved_fidelity);
  return ControlRun::completed(*t_cqs);
}

std::vector<RunEntry> parse_runs(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_array()) throw InputError("runs file must be a JSON array");
  std::vector<RunEntry> entries;
  entries.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& item = doc[i];
    RunEntry entry;
    entry.label = "#" + std::to_string(i);
    try {
      if (!item.is_object()) throw InputError("run record must be an object");
      if (item.contains("label") && item["label"].is_string()) entry.label = item["label"].get<std::string>();
      for (const auto& kv : item.items()) {
        if (std::find(kRunKeys.begin(), kRunKeys.end(), kv.key()) == kRunKeys.end()) {
          throw InputError("unknown key '" + kv.key() + "' in run record");
        }
      }
      if (!item.contains("label") || !item["label"].is_string()) throw InputError("'label' must be a string");
      if (!item.contains("t_cqs")) throw InputError("missing field 't_cqs' (use null for a non-converged run)");
      RunRecord record;
      record.label = entry.label;
      if (!item["t_cqs"].is_null()) {
        record.t_cqs = as_number(item["t_cqs"], "t_cqs");
        if (*record.t_cqs <= 0.0) throw InputError("'t_cqs' must be positive");
      }
      if (item.contains("achieved_fidelity")) {
        record.achieved_fidelity = as_number(item["achieved_fidelity"], "achieved_fidelity");
        if (*record.achieved_fidelity < 0.0 || *record.achieved_fidelity > 1.0) {
          throw InputError("'achieved_fidelity' must lie in [0, 1]");
        }
      }
      entry.record = std::move(record);
    } catch (const InputError& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<RunEntry> load_runs(const std::filesystem::path& path) { return parse_runs(read_file(path)); }

// ---------------------------------------------------------------------------

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return buf.data();
}

std::string quote(std::string_view text) { return json(std::string(text)).dump(); }

void JsonObject::key(std::string_view k) {
  body_ += body_.empty() ? "{" : ", ";
  body_ += quote(k);
  body_ += ": ";
}

JsonObject& JsonObject::number(std::string_view k, double value) {
  key(k);
  body_ += format_number(value);
  return *this;
}

JsonObject& JsonObject::number(std::string_view k, std::optional<double> value) {
  key(k);
  body_ += value ? format_number(*value) : "null";
  return *this;
}

JsonObject& JsonObject::integer(std::string_view k, long long value) {
  key(k);
  body_ += std::to_string(value);
  return *this;
}

JsonObject& JsonObject::text(std::string_view k, std::string_view value) {
  key(k);
  body_ += quote(value);
  return *this;
}

JsonObject& JsonObject::boolean(std::string_view k, bool value) {
  key(k);
  body_ += value ? "true" : "false";
  return *this;
}

JsonObject& JsonObject::raw(std::string_view k, std::string_view json_text) {
  key(k);
  body_ += json_text;
  return *this;
}

std::string JsonObject::str() const { return body_.empty() ? "{}" : body_ + "}"; }

std::string complex_array(const ComplexVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += "[" + format_number(v[i].real()) + ", " + format_number(v[i].imag()) + "]";
  }
  return out + "]";
}

std::string complex_matrix(const ComplexMatrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += "[" + format_number(m(r, c).real()) + ", " + format_number(m(r, c).imag()) + "]";
    }
    out += "]";
  }
  return out + "]";
}

std::string to_json(const BoundReport& report) {
  return JsonObject()
      .text("kind", to_string(report.kind))
      .number("t_min", report.t_min)
      .number("delta_h", report.delta_h)
      .number("hbar", report.hbar)
      .str();
}

std::string to_json(const HittingResult& result) {
  return JsonObject()
      .number("time", result.time)
      .number("achieved", result.achieved)
      .boolean("converged", result.converged)
      .str();
}

std::string to_json(std::string_view label, const EtaReport& report) {
  return JsonObject()
      .text("label", label)
      .number("eta", report.eta)
      .number("t_min", report.t_min)
      .number("t_cqs", report.t_cqs)
      .text("kind", to_string(report.kind))
      .boolean("clamped", report.clamped)
      .str();
}

std::string state_json(double t, const QuantumState& state) {
  return JsonObject().number("t", t).raw("state", complex_array(state.amplitudes())).str();
}

std::string fg_report_json(const FgModel& model, const PhysicalConstants& k, const std::optional<EtaReport>& eta) {
  JsonObject obj;
  obj.number("e", model.e())
      .number("x", model.x())
      .number("mu", model.mu())
      .number("lambda", model.lambda())
      .number("p_max", fg_pmax(model))
      .number("t_min", fg_tmin(model, k));
  if (eta) obj.number("eta", eta->eta);
  return obj.str();
}

void write_series_csv(std::ostream& out, const std::vector<SeriesRow>& rows) {
  out << kSeriesCsvHeader << '\n';
  for (const auto& row : rows) {
    out << format_number(row.t) << ',' << (row.p_target ? format_number(*row.p_target) : "") << ','
        << format_number(row.p_survival) << ',' << (row.mt_envelope ? format_number(*row.mt_envelope) : "")
        << '\n';
  }
}

}  // namespace qsl::io
