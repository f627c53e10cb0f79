#include "qpulse/runconfig.hpp"

#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "qpulse/artifacts.hpp"
#include "qpulse/czgate.hpp"
#include "qpulse/leakage.hpp"

namespace qpulse {
namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

void expect_keys(const json& j, const char* section,
                 std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) {
      throw std::invalid_argument("config: unknown key '" + it.key() +
                                  "' in section " + section);
    }
  }
}

double ghz(const json& j, const char* key, double fallback_radns) {
  if (!j.contains(key)) return fallback_radns;
  return kTwoPi * j.at(key).get<double>();
}

struct EvalPoint {
  GatePoint gate;
  TomographyResult tomo;
};

PhysicalPulse make_point_pulse(const ControlTrajectory& traj, double td,
                               double amplitude, const TransmonPair& pair,
                               const FluxMapParams& flux,
                               const std::optional<HardwareSpec>& hw) {
  PhysicalPulse pulse = build_physical_pulse(traj, td, amplitude, pair, flux,
                                             td / 4000.0, hw.has_value());
  if (hw) pulse = apply_hardware(pulse, *hw, flux);
  return pulse;
}

EvalPoint evaluate_point(const ControlTrajectory& traj, double td,
                         double amplitude, const TransmonPair& pair,
                         const FluxMapParams& flux,
                         const std::optional<HardwareSpec>& hw) {
  const PhysicalPulse pulse = make_point_pulse(traj, td, amplitude, pair, flux, hw);
  EvalPoint out;
  out.gate = cz_simulate(pair, pulse);
  out.tomo = process_fidelity(pair, pulse);
  out.gate.fg = out.tomo.fg;
  out.gate.l1 = out.tomo.l1;
  return out;
}

}  // namespace

ScanGrids ScanConfig::grids() const {
  return ScanGrids{linspace_step(td_min, td_max, td_step),
                   linspace_step(a_min, a_max, a_step)};
}

double RunConfig::eps_ini_or_default() const {
  return eps_ini > 0.0 ? eps_ini : pair.eps_idle();
}

double RunConfig::delta_or_default() const {
  return delta > 0.0 ? delta : pair.coupling_gap();
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: parse error: " + std::string(e.what()));
  }
  expect_keys(j, "(root)",
              {"command", "trajectory", "system", "flux", "scan", "simulate",
               "hardware", "output", "workers", "figure", "table"});
  RunConfig cfg;
  if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
  if (j.contains("trajectory")) {
    const json& t = j.at("trajectory");
    expect_keys(t, "trajectory", {"family", "N", "NW", "gamma", "log10_pe_threshold"});
    if (t.contains("family")) cfg.trajectory.family = t.at("family").get<std::string>();
    if (t.contains("N")) cfg.trajectory.n = t.at("N").get<int>();
    if (t.contains("NW")) cfg.trajectory.nw = t.at("NW").get<double>();
    if (t.contains("gamma")) cfg.trajectory.gamma = t.at("gamma").get<double>();
    if (t.contains("log10_pe_threshold")) {
      // gamma^2 / 4 = 10^threshold
      cfg.trajectory.gamma =
          2.0 * std::pow(10.0, 0.5 * t.at("log10_pe_threshold").get<double>());
    }
  }
  if (j.contains("system")) {
    const json& s = j.at("system");
    expect_keys(s, "system",
                {"omega1_idle_GHz", "omega2_GHz", "alpha1_GHz", "alpha2_GHz",
                 "g_GHz", "eps_ini_GHz", "delta_GHz"});
    cfg.pair.omega1_idle = ghz(s, "omega1_idle_GHz", cfg.pair.omega1_idle);
    cfg.pair.omega2 = ghz(s, "omega2_GHz", cfg.pair.omega2);
    cfg.pair.alpha1 = ghz(s, "alpha1_GHz", cfg.pair.alpha1);
    cfg.pair.alpha2 = ghz(s, "alpha2_GHz", cfg.pair.alpha2);
    cfg.pair.g = ghz(s, "g_GHz", cfg.pair.g);
    cfg.eps_ini = ghz(s, "eps_ini_GHz", 0.0);
    cfg.delta = ghz(s, "delta_GHz", 0.0);
  }
  if (j.contains("flux")) {
    const json& f = j.at("flux");
    expect_keys(f, "flux", {"EJ", "EC", "d"});
    cfg.flux.ej = ghz(f, "EJ", cfg.flux.ej);
    cfg.flux.ec = ghz(f, "EC", cfg.flux.ec);
    if (f.contains("d")) cfg.flux.d = f.at("d").get<double>();
  }
  if (j.contains("scan")) {
    const json& s = j.at("scan");
    expect_keys(s, "scan",
                {"td_min_ns", "td_max_ns", "td_step_ns", "a_min", "a_max", "a_step"});
    if (s.contains("td_min_ns")) cfg.scan.td_min = s.at("td_min_ns").get<double>();
    if (s.contains("td_max_ns")) cfg.scan.td_max = s.at("td_max_ns").get<double>();
    if (s.contains("td_step_ns")) cfg.scan.td_step = s.at("td_step_ns").get<double>();
    if (s.contains("a_min")) cfg.scan.a_min = s.at("a_min").get<double>();
    if (s.contains("a_max")) cfg.scan.a_max = s.at("a_max").get<double>();
    if (s.contains("a_step")) cfg.scan.a_step = s.at("a_step").get<double>();
  }
  if (j.contains("simulate")) {
    const json& s = j.at("simulate");
    expect_keys(s, "simulate", {"td_ns", "A"});
    if (s.contains("td_ns")) cfg.simulate.td = s.at("td_ns").get<double>();
    if (s.contains("A")) cfg.simulate.amplitude = s.at("A").get<double>();
  }
  if (j.contains("hardware")) {
    for (const json& h : j.at("hardware")) {
      expect_keys(h, "hardware[]", {"fs_gsas", "bw_ghz", "k"});
      HardwareSpec hw;
      hw.fs = h.at("fs_gsas").get<double>();
      hw.bw = h.at("bw_ghz").get<double>();
      if (h.contains("k")) hw.k = h.at("k").get<double>();
      cfg.hardware.push_back(hw);
    }
  }
  if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  if (j.contains("figure")) cfg.figure = j.at("figure").get<int>();
  if (j.contains("table")) cfg.table = j.at("table").get<int>();
  return cfg;
}

TrajectoryDesign build_design(const TrajectoryConfig& cfg) {
  if (cfg.family == "slepian") {
    return design_slepian_trajectory(cfg.n, cfg.nw, cfg.gamma);
  }
  if (cfg.family == "chebyshev2") {
    return design_chebyshev2_trajectory(cfg.n, cfg.gamma);
  }
  throw std::invalid_argument("config: trajectory.family must be slepian or chebyshev2");
}

FamilyEvaluation evaluate_family(const TrajectoryDesign& design,
                                 const TransmonPair& pair,
                                 const FluxMapParams& flux,
                                 const ScanGrids& grids,
                                 const std::optional<HardwareSpec>& hw) {
  FamilyEvaluation ev;
  ev.design = design;
  const double th_ini = std::atan2(pair.coupling_gap(), pair.eps_idle());
  const ControlTrajectory traj =
      normalize_trajectory(design.pulse, th_ini, 0.5 * kPi);
  ScanOptions opt;
  opt.hardware = hw;
  ev.scan_result = scan(traj, pair, flux, grids, opt);
  ev.contour = pi_contour(ev.scan_result);
  ev.ops = operating_points(ev.contour);
  for (auto& op : ev.ops.points) {
    const EvalPoint pt = evaluate_point(traj, op.td, op.a, pair, flux, hw);
    op.fg = pt.tomo.fg;
  }
  return ev;
}

namespace {

void validate(const RunConfig& cfg) {
  const std::vector<std::string> commands = {"design",  "analyze",        "simulate",
                                             "scan",    "hardware-sweep", "reproduce"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    throw std::invalid_argument("config: unknown command '" + cfg.command + "'");
  }
  const auto& t = cfg.trajectory;
  if (t.family != "slepian" && t.family != "chebyshev2") {
    throw std::invalid_argument("config: trajectory.family invalid");
  }
  if (t.n < 3) throw std::invalid_argument("config: trajectory.N must be >= 3");
  if (t.family == "slepian" && !(t.nw > 0.0 && t.nw / t.n < 0.5)) {
    throw std::invalid_argument("config: trajectory.NW out of range");
  }
  if (!(t.gamma > 0.0 && t.gamma < 1.0)) {
    throw std::invalid_argument("config: trajectory.gamma must be in (0,1)");
  }
  if (!(cfg.scan.td_min > 0.0 && cfg.scan.td_max > cfg.scan.td_min &&
        cfg.scan.td_step > 0.0)) {
    throw std::invalid_argument("config: scan td grid invalid");
  }
  if (!(cfg.scan.a_min >= 0.0 && cfg.scan.a_max <= 1.0 &&
        cfg.scan.a_max > cfg.scan.a_min && cfg.scan.a_step > 0.0)) {
    throw std::invalid_argument("config: scan amplitude grid invalid");
  }
  if (!(cfg.simulate.td > 0.0)) {
    throw std::invalid_argument("config: simulate.td_ns must be positive");
  }
  if (cfg.simulate.amplitude < 0.0 || cfg.simulate.amplitude > 1.0) {
    throw std::invalid_argument("config: simulate.A must lie in [0,1]");
  }
  for (const auto& hw : cfg.hardware) {
    if (!(hw.fs > 0.0 && hw.bw > 0.0 && hw.k > 0.0)) {
      throw std::invalid_argument("config: hardware spec fields must be positive");
    }
  }
  if (cfg.workers < 0) throw std::invalid_argument("config: workers must be >= 0");
  if (cfg.command == "reproduce") {
    const bool fig_ok = cfg.figure == 3 || cfg.figure == 4 || cfg.figure == 5 ||
                        cfg.figure == 12;
    const bool tab_ok = cfg.table == 2 || cfg.table == 3;
    if (fig_ok == tab_ok) {
      throw std::invalid_argument(
          "config: reproduce needs exactly one of figure {3,4,5,12} or table {2,3}");
    }
  }
}

class Staging {
 public:
  explicit Staging(std::filesystem::path root) : root_(std::move(root)) {}
  void add(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }
  void flush() const {
    std::filesystem::create_directories(root_);
    for (const auto& [name, content] : files_) {
      atomic_write(root_ / name, content);
    }
  }

 private:
  std::filesystem::path root_;
  std::vector<std::pair<std::string, std::string>> files_;
};

json manifest_json(const RunConfig& cfg) {
  json m;
  m["version"] = kVersion;
  m["command"] = cfg.command;
  m["trajectory"] = {{"family", cfg.trajectory.family},
                     {"N", cfg.trajectory.n},
                     {"NW", cfg.trajectory.nw},
                     {"gamma", cfg.trajectory.gamma}};
  m["system"] = {{"omega1_idle_GHz", cfg.pair.omega1_idle / kTwoPi},
                 {"omega2_GHz", cfg.pair.omega2 / kTwoPi},
                 {"alpha1_GHz", cfg.pair.alpha1 / kTwoPi},
                 {"alpha2_GHz", cfg.pair.alpha2 / kTwoPi},
                 {"g_GHz", cfg.pair.g / kTwoPi},
                 {"eps_ini_GHz", cfg.eps_ini_or_default() / kTwoPi},
                 {"delta_GHz", cfg.delta_or_default() / kTwoPi}};
  m["flux"] = {{"EJ", cfg.flux.ej / kTwoPi},
               {"EC", cfg.flux.ec / kTwoPi},
               {"d", cfg.flux.d}};
  m["scan"] = {{"td_min_ns", cfg.scan.td_min}, {"td_max_ns", cfg.scan.td_max},
               {"td_step_ns", cfg.scan.td_step}, {"a_min", cfg.scan.a_min},
               {"a_max", cfg.scan.a_max},       {"a_step", cfg.scan.a_step}};
  if (!cfg.hardware.empty()) {
    m["hardware"] = json::array();
    for (const auto& hw : cfg.hardware) {
      m["hardware"].push_back(
          {{"fs_gsas", hw.fs}, {"bw_ghz", hw.bw}, {"k", hw.k}});
    }
  }
  if (cfg.figure) m["figure"] = cfg.figure;
  if (cfg.table) m["table"] = cfg.table;
  return m;
}

json op_json(const OperatingPoint& op) {
  json p;
  p["td_ns"] = op.td;
  p["A"] = op.a;
  p["pe"] = op.pe;
  p["log10_pe"] = std::log10(op.pe);
  if (op.fg) p["infidelity"] = 1.0 - *op.fg;
  p["is_best"] = op.is_best;
  return p;
}

void run_design(const RunConfig& cfg, Staging& out) {
  const TrajectoryDesign d = build_design(cfg.trajectory);
  const Pulse norm = half_sum_normalized(d.pulse);
  out.add(d.family + "_pulse.csv", pulse_csv(d.pulse));
  out.add(d.family + "_pulse.json", pulse_json(d.pulse));
  out.add(d.family + "_trajectory.csv", pulse_csv(norm));
  out.add(d.family + "_spectrum.csv", spectrum_csv(dtft(norm, 1 << 14)));
  json s;
  s["family"] = d.family;
  s["gamma"] = d.gamma;
  s["sidelobe_level"] = d.sidelobe_level;
  s["omega_star"] = d.omega_star;
  s["omega_star_x_n_over_2pi"] = d.omega_star * cfg.trajectory.n / kTwoPi;
  if (d.omega_s > 0.0) s["omega_s"] = d.omega_s;
  out.add("design_summary.json", s.dump(2) + "\n");
}

void run_analyze(const RunConfig& cfg, Staging& out) {
  const TrajectoryDesign d = build_design(cfg.trajectory);
  const double delta = cfg.delta_or_default();
  const double eps_ini = cfg.eps_ini_or_default();
  const double th_ini = std::atan2(delta, eps_ini);
  const ControlTrajectory traj = normalize_trajectory(d.pulse, th_ini, 0.5 * kPi);
  std::vector<PredictionRow> rows;
  for (double td = cfg.scan.td_min; td <= cfg.scan.td_max + 1e-9;
       td += cfg.scan.td_step) {
    rows.push_back(PredictionRow{td, analytic_leakage(traj, td, delta).pe, "fourier"});
  }
  out.add(d.family + "_analytic_pe.csv", predictions_csv(rows));
}

void run_simulate(const RunConfig& cfg, Staging& out) {
  const TrajectoryDesign d = build_design(cfg.trajectory);
  const double th_ini = std::atan2(cfg.pair.coupling_gap(), cfg.pair.eps_idle());
  const ControlTrajectory traj = normalize_trajectory(d.pulse, th_ini, 0.5 * kPi);
  const std::optional<HardwareSpec> hw =
      cfg.hardware.empty() ? std::nullopt
                           : std::optional<HardwareSpec>(cfg.hardware.front());
  PhysicalPulse designed = build_physical_pulse(
      traj, cfg.simulate.td, cfg.simulate.amplitude, cfg.pair, cfg.flux,
      cfg.simulate.td / 4000.0, true);
  out.add("waveform.csv", waveform_csv(designed));
  std::vector<GatePoint> points;
  {
    const EvalPoint pt = evaluate_point(traj, cfg.simulate.td,
                                        cfg.simulate.amplitude, cfg.pair,
                                        cfg.flux, std::nullopt);
    points.push_back(pt.gate);
  }
  if (hw) {
    const PhysicalPulse distorted = apply_hardware(designed, *hw, cfg.flux);
    out.add("waveform_hardware.csv", waveform_csv(distorted));
    const EvalPoint pt = evaluate_point(traj, cfg.simulate.td,
                                        cfg.simulate.amplitude, cfg.pair,
                                        cfg.flux, hw);
    points.push_back(pt.gate);
  }
  out.add("gate_points.csv", gate_points_csv(points));
}

void run_scan(const RunConfig& cfg, Staging& out) {
  const TrajectoryDesign d = build_design(cfg.trajectory);
  const std::optional<HardwareSpec> hw =
      cfg.hardware.empty() ? std::nullopt
                           : std::optional<HardwareSpec>(cfg.hardware.front());
  const FamilyEvaluation ev =
      evaluate_family(d, cfg.pair, cfg.flux, cfg.scan.grids(), hw);
  out.add(d.family + "_phase.csv", scan_matrix_csv(ev.scan_result, true));
  out.add(d.family + "_pe.csv", scan_matrix_csv(ev.scan_result, false));
  out.add(d.family + "_contour.csv", contour_csv(ev.contour));
  out.add(d.family + "_operating_points.json", operating_points_json(ev.ops));
}

void run_hardware_sweep(const RunConfig& cfg, Staging& out) {
  std::vector<HardwareSpec> specs = cfg.hardware;
  if (specs.empty()) {
    specs = {{1.0, 0.4, 1.0}, {2.0, 0.8, 1.0}, {5.0, 2.0, 1.0}, {10.0, 4.0, 1.0}};
  }
  const TrajectoryDesign d = build_design(cfg.trajectory);
  std::vector<SweepRow> rows;
  int index = 0;
  for (const auto& hw : specs) {
    const FamilyEvaluation ev =
        evaluate_family(d, cfg.pair, cfg.flux, cfg.scan.grids(), hw);
    out.add("hw_" + format_double(hw.fs) + "_" + format_double(hw.bw) + "_" +
                d.family + "_contour.csv",
            contour_csv(ev.contour));
    for (const auto& op : ev.ops.points) {
      if (!op.is_best) continue;
      rows.push_back(SweepRow{std::string(1, static_cast<char>('a' + index)),
                              d.family, hw.fs, hw.bw, op.td, std::log10(op.pe),
                              op.fg ? 1.0 - *op.fg : std::nan("")});
    }
    ++index;
  }
  out.add("sweep.csv", sweep_csv(rows));
}

void reproduce_figure3(const RunConfig& cfg, Staging& out) {
  const int n = cfg.trajectory.n;
  const double gamma = cfg.trajectory.gamma;
  const TrajectoryDesign sl = design_slepian_trajectory(n, cfg.trajectory.nw, gamma);
  const TrajectoryDesign ch = design_chebyshev2_trajectory(n, gamma);
  for (const auto& d : {sl, ch}) {
    const Pulse norm = half_sum_normalized(d.pulse);
    out.add(d.family + "_trajectory.csv", pulse_csv(norm));
    out.add(d.family + "_spectrum.csv", spectrum_csv(dtft(norm, 1 << 14)));
  }
  json s;
  s["gamma"] = gamma;
  s["log10_threshold"] = std::log10(gamma * gamma / 4.0);
  s["omega_star_slepian"] = sl.omega_star;
  s["omega_star_chebyshev2"] = ch.omega_star;
  s["crossover"] = ch.omega_star < sl.omega_star;
  out.add("summary.json", s.dump(2) + "\n");
}

void reproduce_figure4(const RunConfig& cfg, Staging& out) {
  const int n = cfg.trajectory.n;
  const double gamma = cfg.trajectory.gamma;
  const ScanGrids grids = cfg.scan.grids();
  json summary;
  for (const std::string family : {"slepian", "chebyshev2"}) {
    const TrajectoryDesign d =
        family == "slepian" ? design_slepian_trajectory(n, cfg.trajectory.nw, gamma)
                            : design_chebyshev2_trajectory(n, gamma);
    const FamilyEvaluation ev =
        evaluate_family(d, cfg.pair, cfg.flux, grids, std::nullopt);
    out.add(family + "_contour.csv", contour_csv(ev.contour));
    out.add(family + "_operating_points.json", operating_points_json(ev.ops));
    json ops = json::array();
    for (const auto& op : ev.ops.points) ops.push_back(op_json(op));
    summary[family] = ops;
  }
  out.add("summary.json", summary.dump(2) + "\n");
}

void reproduce_figure12(const RunConfig& cfg, Staging& out) {
  const int n = cfg.trajectory.n;
  const double delta = kTwoPi * 0.05;  // standalone validity check coupling
  const double eps_ini = cfg.eps_ini_or_default();
  const double th_ini = std::atan2(delta, eps_ini);
  for (const std::string family : {"slepian", "chebyshev2"}) {
    const TrajectoryDesign d =
        family == "slepian"
            ? design_slepian_trajectory(n, cfg.trajectory.nw, cfg.trajectory.gamma)
            : design_chebyshev2_trajectory(n, cfg.trajectory.gamma);
    const ControlTrajectory traj = normalize_trajectory(d.pulse, th_ini, 0.5 * kPi);
    std::vector<PredictionRow> rows;
    for (double td = 25.0; td <= 100.0 + 1e-9; td += 0.25) {
      rows.push_back(PredictionRow{td, analytic_leakage(traj, td, delta).pe, "fourier"});
    }
    for (double td = 25.0; td <= 100.0 + 1e-9; td += 0.25) {
      rows.push_back(PredictionRow{
          td, two_level_leakage_sim(traj, td, delta, eps_ini), "two_level_sim"});
    }
    out.add(family + "_validity.csv", predictions_csv(rows));
  }
}

void reproduce_table3(const RunConfig& cfg, Staging& out) {
  const std::vector<HardwareSpec> specs = {
      {1.0, 0.4, 1.0}, {2.0, 0.8, 1.0}, {5.0, 2.0, 1.0}, {10.0, 4.0, 1.0}};
  const int n = cfg.trajectory.n;
  const double gamma = cfg.trajectory.gamma;
  const TrajectoryDesign sl = design_slepian_trajectory(n, cfg.trajectory.nw, gamma);
  const TrajectoryDesign ch = design_chebyshev2_trajectory(n, gamma);
  ScanConfig window = cfg.scan;
  window.td_min = 44.0;
  window.td_max = 60.0;
  window.a_min = 0.94;
  std::vector<SweepRow> rows;
  json summary;
  summary["distortion"] = json::array();
  for (size_t i = 0; i < specs.size(); ++i) {
    const auto& hw = specs[i];
    for (const auto& d : {sl, ch}) {
      const FamilyEvaluation ev =
          evaluate_family(d, cfg.pair, cfg.flux, window.grids(), hw);
      out.add("hw_" + format_double(hw.fs) + "_" + format_double(hw.bw) + "_" +
                  d.family + "_contour.csv",
              contour_csv(ev.contour));
      json ops = json::array();
      for (const auto& op : ev.ops.points) {
        ops.push_back(op_json(op));
        if (op.is_best) {
          rows.push_back(SweepRow{std::string(1, static_cast<char>('a' + i)),
                                  d.family, hw.fs, hw.bw, op.td,
                                  std::log10(op.pe),
                                  op.fg ? 1.0 - *op.fg : std::nan("")});
        }
      }
      summary["ops_" + format_double(hw.fs) + "_" + d.family] = ops;
    }
    // Waveform distortion of the 50 ns slepian pulse under this spec.
    const double th_ini = std::atan2(cfg.pair.coupling_gap(), cfg.pair.eps_idle());
    const ControlTrajectory traj = normalize_trajectory(sl.pulse, th_ini, 0.5 * kPi);
    const PhysicalPulse designed =
        build_physical_pulse(traj, 50.0, 0.99, cfg.pair, cfg.flux, 50.0 / 4000.0);
    const PhysicalPulse distorted = apply_hardware(designed, hw, cfg.flux);
    summary["distortion"].push_back(
        {{"fs_gsas", hw.fs},
         {"bw_ghz", hw.bw},
         {"max_omega1_diff_radns", max_omega1_distortion(designed, distorted)}});
  }
  out.add("sweep.csv", sweep_csv(rows));
  out.add("summary.json", summary.dump(2) + "\n");
}

void reproduce_table2(const RunConfig& cfg, Staging& out) {
  // Per-row design parameters are unpublished; this ladder keeps the
  // reference pair's margin between the benchmark window's own sidelobe level
  // and the design threshold, with rows (g) and (h) placed at the pre-lobe
  // anomaly and at the reference pair.
  const std::vector<double> nw_ladder = {2.10, 2.20, 2.25, 2.30,
                                         2.35, 2.40, 3.25, 2.90};
  const int n = cfg.trajectory.n;
  const TrajectoryDesign ref = design_slepian_trajectory(n, 2.9, 0.0);
  const double margin = 2e-3 / ref.sidelobe_level;
  ScanConfig window = cfg.scan;
  window.td_min = 39.0;
  window.td_max = 62.0;
  window.a_min = 0.94;
  std::vector<SweepRow> rows;
  for (size_t i = 0; i < nw_ladder.size(); ++i) {
    const TrajectoryDesign sl = design_slepian_trajectory(n, nw_ladder[i], 0.0);
    const double gamma = margin * sl.sidelobe_level;
    const TrajectoryDesign ch = design_chebyshev2_trajectory(n, gamma);
    for (const auto& d : {sl, ch}) {
      const FamilyEvaluation ev =
          evaluate_family(d, cfg.pair, cfg.flux, window.grids(), std::nullopt);
      for (const auto& op : ev.ops.points) {
        if (!op.is_best) continue;
        rows.push_back(SweepRow{std::string(1, static_cast<char>('a' + i)),
                                d.family, 0.0, 0.0, op.td, std::log10(op.pe),
                                op.fg ? 1.0 - *op.fg : std::nan("")});
      }
    }
  }
  out.add("table2.csv", sweep_csv(rows));
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    validate(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
  Staging out(cfg.output);
  try {
    out.add("manifest.json", manifest_json(cfg).dump(2) + "\n");
    if (cfg.command == "design") {
      run_design(cfg, out);
    } else if (cfg.command == "analyze") {
      run_analyze(cfg, out);
    } else if (cfg.command == "simulate") {
      run_simulate(cfg, out);
    } else if (cfg.command == "scan") {
      run_scan(cfg, out);
    } else if (cfg.command == "hardware-sweep") {
      run_hardware_sweep(cfg, out);
    } else if (cfg.command == "reproduce") {
      if (cfg.figure == 3) reproduce_figure3(cfg, out);
      if (cfg.figure == 4) reproduce_figure4(cfg, out);
      if (cfg.figure == 5) reproduce_table3(cfg, out);
      if (cfg.figure == 12) reproduce_figure12(cfg, out);
      if (cfg.table == 2) reproduce_table2(cfg, out);
      if (cfg.table == 3) reproduce_table3(cfg, out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s (no artifacts written)\n", e.what());
    return 2;
  }
  try {
    out.flush();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

}  // namespace qpulse
