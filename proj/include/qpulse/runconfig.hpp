#ifndef QPULSE_RUNCONFIG_HPP
#define QPULSE_RUNCONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qpulse/calibrate.hpp"
#include "qpulse/design.hpp"
#include "qpulse/system.hpp"

namespace qpulse {

inline constexpr const char* kVersion = "qpulse 0.1.0";

struct TrajectoryConfig {
  std::string family = "slepian";  // slepian | chebyshev2
  int n = 1001;
  double nw = 2.9;        // slepian half-bandwidth parameter N*W
  double gamma = 2e-3;    // sidelobe threshold (gamma^2/4 = leakage budget)
};

struct ScanConfig {
  double td_min = 30.0, td_max = 80.0, td_step = 0.1;
  double a_min = 0.80, a_max = 1.00, a_step = 0.002;
  ScanGrids grids() const;
};

struct SimulateConfig {
  double td = 47.0;
  double amplitude = 0.99;
};

struct RunConfig {
  std::string command = "design";
  TrajectoryConfig trajectory;
  TransmonPair pair = default_pair();
  double eps_ini = 0.0;  // defaults to pair.eps_idle()
  double delta = 0.0;    // defaults to pair.coupling_gap()
  FluxMapParams flux = default_flux_params();
  ScanConfig scan;
  SimulateConfig simulate;
  std::vector<HardwareSpec> hardware;
  std::filesystem::path output = "out";
  int workers = 0;
  int figure = 0;  // reproduce presets
  int table = 0;

  double eps_ini_or_default() const;
  double delta_or_default() const;
};

// Reads the JSON config; unknown keys are rejected so typos fail loudly.
RunConfig load_config(const std::filesystem::path& path);

// Validates invariants, executes the command, writes artifacts plus a
// manifest into config.output. All files are staged and flushed only after
// the computation succeeds. Returns a process exit code.
int run(const RunConfig& config);

// Shared evaluation: scan + contour + operating points, with gate fidelity
// attached to the best operating point.
struct FamilyEvaluation {
  TrajectoryDesign design;
  ContourCurve contour;
  OperatingPointsResult ops;
  ScanResult scan_result;
};
FamilyEvaluation evaluate_family(const TrajectoryDesign& design,
                                 const TransmonPair& pair,
                                 const FluxMapParams& flux,
                                 const ScanGrids& grids,
                                 const std::optional<HardwareSpec>& hw);

TrajectoryDesign build_design(const TrajectoryConfig& cfg);

}  // namespace qpulse

#endif
