// Copyright 2026 The qarch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qarch/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <regex>
#include <sstream>

#include "qarch/error.hpp"
#include "qarch/json_io.hpp"

namespace qarch {

namespace {

constexpr const char* kSweepHeader = "# qarch sweep v1";
constexpr const char* kReportHeader = "# qarch report v1";
constexpr const char* kCrossHeader = "# qarch cross-design v1";

std::string edge_list(const std::vector<Edge>& edges) {
  std::string out;
  for (const Edge& e : edges) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e.u) + '-' + std::to_string(e.v);
  }
  return out;
}

nlohmann::json metrics_json(const SweepRow& row) {
  return {{"depth", row.depth},
          {"swap_count", row.swap_count},
          {"duration_ns", row.report.duration_ns},
          {"g1", row.report.g1},
          {"native_2q", row.report.native_2q},
          {"mean_fg", row.report.mean_fg},
          {"total_idle_us", row.report.total_idle_us},
          {"fidelity", row.report.fidelity},
          {"fidelity_no_crosstalk", row.report.fidelity_no_crosstalk},
          {"improvement_pct", row.improvement_pct},
          {"clamped", row.report.clamped}};
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

Evaluation evaluate_result(const Circuit& circuit,
                           const ArchitectureSpace& space,
                           const SynthesisResult& result,
                           const EvaluationSettings& settings) {
  Evaluation ev;
  ev.lifetime = settings.lifetime.value_or(
      circuit.count(GateKind::Measure) > 0 ? LifetimeMode::UntilMeasurement
                                           : LifetimeMode::WholeCircuit);
  ev.placed = absorb_gates(make_placed_circuit(circuit, space, result,
                                               settings.append_measurements));
  ev.schedule = schedule(decompose(ev.placed, settings.table,
                                   settings.noise.durations));
  ev.report = evaluate_fidelity(ev.schedule, ev.placed.graph, settings.noise,
                                ev.lifetime);
  return ev;
}

OptimizeOutcome run_optimize(const Circuit& circuit,
                             const ArchitectureSpace& space,
                             const SynthesisOptions& options,
                             const EvaluationSettings& settings) {
  OptimizeOutcome out;
  Synthesizer synth(circuit, space, options);
  const DepthSearchResult stage1 = synth.minimize_depth();
  out.selection = synth.iterative_edge_selection(stage1);

  for (const EdgeSelectionEntry& entry : out.selection.entries) {
    out.evaluations.push_back(
        evaluate_result(circuit, space, entry.result, settings));
    SweepRow row;
    row.alpha = entry.alpha;
    row.has_result = true;
    row.timed_out = out.selection.timed_out_alpha == entry.alpha;
    row.depth = entry.result.depth;
    row.swap_count = entry.result.swap_count;
    row.used_flexible = entry.used_flexible;
    row.report = out.evaluations.back().report;
    out.rows.push_back(std::move(row));
  }
  if (out.selection.timed_out_alpha &&
      *out.selection.timed_out_alpha != out.rows.back().alpha) {
    SweepRow row;
    row.alpha = *out.selection.timed_out_alpha;
    row.timed_out = true;
    out.rows.push_back(std::move(row));
  }
  const double f0 = out.rows.front().report.fidelity;
  for (SweepRow& row : out.rows) {
    if (row.has_result && f0 > 0.0) {
      row.improvement_pct = (row.report.fidelity / f0 - 1.0) * 100.0;
    }
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader << '\n'
     << "alpha,status,depth,swap_count,used_flexible,duration_ns,g1,native_2q,"
        "mean_fg,total_idle_us,fidelity_crosstalk,fidelity_no_crosstalk,"
        "improvement_pct\n";
  for (const SweepRow& r : rows) {
    os << r.alpha << ',' << (r.timed_out ? "timeout" : "ok") << ',';
    if (!r.has_result) {
      os << ",,,,,,,,,,\n";
      continue;
    }
    os << r.depth << ',' << r.swap_count << ',' << edge_list(r.used_flexible)
       << ',' << format_number(r.report.duration_ns) << ',' << r.report.g1
       << ',' << r.report.native_2q << ',' << format_number(r.report.mean_fg)
       << ',' << format_number(r.report.total_idle_us) << ','
       << format_number(r.report.fidelity) << ','
       << format_number(r.report.fidelity_no_crosstalk) << ','
       << format_number(r.improvement_pct) << '\n';
  }
  return os.str();
}

std::filesystem::path result_path(const std::filesystem::path& dir, int alpha) {
  return dir / ("result_alpha" + std::to_string(alpha) + ".json");
}

void write_optimize_outputs(const OptimizeOutcome& outcome,
                            const Circuit& circuit,
                            const ArchitectureSpace& space,
                            const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
  save_circuit(circuit, dir / "circuit.json");
  save_space(space, dir / "space.json");
  for (std::size_t i = 0; i < outcome.selection.entries.size(); ++i) {
    const EdgeSelectionEntry& entry = outcome.selection.entries[i];
    nlohmann::json doc = {{"format", "qarch-result"},
                          {"version", 1},
                          {"alpha", entry.alpha},
                          {"result", result_to_json(entry.result)},
                          {"metrics", metrics_json(outcome.rows[i])}};
    write_json_file(doc, result_path(dir, entry.alpha));
    write_json_file(schedule_to_json(outcome.evaluations[i].schedule),
                    dir / ("schedule_alpha" + std::to_string(entry.alpha) + ".json"));
  }
  write_text_file(sweep_csv(outcome.rows), dir / "sweep.csv");
}

std::vector<StoredResult> load_results(const std::filesystem::path& dir,
                                       Circuit* circuit_out,
                                       ArchitectureSpace* space_out) {
  const Circuit circuit = load_circuit(dir / "circuit.json");
  const ArchitectureSpace space = load_space(dir / "space.json");
  const std::regex name("result_alpha([0-9]+)\\.json");
  std::vector<StoredResult> out;
  std::error_code ec;
  for (const auto& item : std::filesystem::directory_iterator(dir, ec)) {
    std::smatch m;
    const std::string file = item.path().filename().string();
    if (!std::regex_match(file, m, name)) continue;
    const nlohmann::json doc = read_json_file(item.path());
    StoredResult s;
    try {
      s.alpha = doc.at("alpha").get<int>();
      s.result = result_from_json(doc.at("result"));
      s.metrics = doc.value("metrics", nlohmann::json::object());
    } catch (const nlohmann::json::exception& e) {
      throw InputError(file + ": " + e.what());
    }
    if (std::to_string(s.alpha) != m[1].str()) {
      throw InputError(file + ": alpha field does not match the file name");
    }
    const ValidationVerdict v = validate_result(circuit, space, s.result, s.alpha);
    if (!v.ok()) {
      throw InvariantViolation(file + ": " + to_string(v.violation) + ": " +
                               v.witness);
    }
    out.push_back(std::move(s));
  }
  if (ec) throw InputError("cannot list " + dir.string() + ": " + ec.message());
  if (out.empty()) throw InputError("no result files in " + dir.string());
  std::sort(out.begin(), out.end(),
            [](const StoredResult& a, const StoredResult& b) { return a.alpha < b.alpha; });
  if (circuit_out) *circuit_out = circuit;
  if (space_out) *space_out = space;
  return out;
}

std::string write_report(const std::filesystem::path& dir) {
  Circuit circuit(1);
  ArchitectureSpace space;
  const std::vector<StoredResult> results = load_results(dir, &circuit, &space);
  std::ostringstream os;
  os << kReportHeader << '\n'
     << "alpha,used_flexible_count,swap_count,fidelity_crosstalk,"
        "fidelity_no_crosstalk,improvement_pct\n";
  for (const StoredResult& s : results) {
    auto metric = [&](const char* key) -> std::string {
      if (!s.metrics.contains(key)) return "";
      return format_number(s.metrics.at(key).get<double>());
    };
    os << s.alpha << ',' << s.result.used_flexible.size() << ','
       << s.result.swap_count << ',' << metric("fidelity") << ','
       << metric("fidelity_no_crosstalk") << ',' << metric("improvement_pct")
       << '\n';
    const CouplingGraph graph = activate(space, s.result.used_flexible);
    write_text_file(graph_to_dot(graph, s.result.used_flexible,
                                 "arch_alpha" + std::to_string(s.alpha)),
                    dir / ("arch_alpha" + std::to_string(s.alpha) + ".dot"));
  }
  write_text_file(os.str(), dir / "report.csv");
  return os.str();
}

std::vector<CrossDesignRow> run_cross_design(const ArchitectureSpace& space,
                                             const std::vector<Edge>& used,
                                             const std::vector<NamedCircuit>& circuits,
                                             const SynthesisOptions& options,
                                             const EvaluationSettings& settings) {
  activate(space, used);  // rejects unknown or colliding edges up front
  std::vector<CrossDesignRow> rows;
  for (const NamedCircuit& nc : circuits) {
    auto compile = [&](const std::vector<Edge>& edges) {
      SynthesisOptions o = options;
      o.fixed_architecture = edges;
      SynthesisResult r = Synthesizer(nc.circuit, space, o).compile_fixed();
      return std::pair{r.swap_count,
                       evaluate_result(nc.circuit, space, r, settings).report.fidelity};
    };
    CrossDesignRow row;
    row.name = nc.name;
    std::tie(row.base_swaps, row.base_fidelity) = compile({});
    std::tie(row.arch_swaps, row.arch_fidelity) = compile(used);
    if (row.base_fidelity > 0.0) {
      row.improvement_pct = (row.arch_fidelity / row.base_fidelity - 1.0) * 100.0;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string cross_design_csv(const std::vector<CrossDesignRow>& rows) {
  std::ostringstream os;
  os << kCrossHeader << '\n'
     << "circuit,base_swaps,base_fidelity,arch_swaps,arch_fidelity,"
        "improvement_pct\n";
  for (const CrossDesignRow& r : rows) {
    os << r.name << ',' << r.base_swaps << ',' << format_number(r.base_fidelity)
       << ',' << r.arch_swaps << ',' << format_number(r.arch_fidelity) << ','
       << format_number(r.improvement_pct) << '\n';
  }
  if (!rows.empty()) {
    double mean = 0.0;
    for (const CrossDesignRow& r : rows) mean += r.improvement_pct;
    mean /= static_cast<double>(rows.size());
    os << "mean,,,,," << format_number(mean) << '\n';
  }
  return os.str();
}

}  // namespace qarch
