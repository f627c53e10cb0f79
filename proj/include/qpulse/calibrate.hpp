#ifndef QPULSE_CALIBRATE_HPP
#define QPULSE_CALIBRATE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qpulse/czgate.hpp"
#include "qpulse/hardware.hpp"

namespace qpulse {

struct ScanGrids {
  std::vector<double> td;  // ns, ascending
  std::vector<double> a;   // normalized amplitude, ascending
};

// td 30..80 ns step 0.1, A 0.80..1.00 step 0.002.
ScanGrids default_scan_grids();
std::vector<double> linspace_step(double lo, double hi, double step);

struct ScanOptions {
  std::optional<HardwareSpec> hardware;  // distort each pulse before simulating
  CzOptions cz;
  double dt_divisor = 4000.0;  // pulse build grid dt = td / dt_divisor
};

struct ScanResult {
  std::vector<double> td;
  std::vector<double> a;
  // Row-major [td index][A index].
  std::vector<std::vector<double>> phase;
  std::vector<std::vector<double>> pe;
};

// Fills the phase and leakage matrices with cz_simulate at every grid point.
// The parallel version distributes points over OpenMP threads; aggregation is
// by index, so both produce identical results.
ScanResult scan(const ControlTrajectory& traj, const TransmonPair& pair,
                const FluxMapParams& fm, const ScanGrids& grids,
                const ScanOptions& opt = {});
ScanResult scan_serial(const ControlTrajectory& traj, const TransmonPair& pair,
                       const FluxMapParams& fm, const ScanGrids& grids,
                       const ScanOptions& opt = {});

// One grid point; shared by both scan paths.
GatePoint scan_point(const ControlTrajectory& traj, const TransmonPair& pair,
                     const FluxMapParams& fm, double td, double amplitude,
                     const ScanOptions& opt = {});

struct ContourPoint {
  double td = 0.0;
  double a = 0.0;
  double pe = 0.0;
};

struct ContourCurve {
  std::vector<ContourPoint> points;
  std::vector<double> dropped_td;  // durations with no phi = pi crossing
};

// Per-duration root finding of phi'(A) = pi on the unwrapped phase, monotone
// cubic interpolation in A; pe interpolated the same way (on log pe).
// Throws on ambiguous (multiple) crossings, listing the offending durations.
ContourCurve pi_contour(const ScanResult& scan);

struct OperatingPoint {
  double td = 0.0;
  double a = 0.0;
  double pe = 0.0;
  std::optional<double> fg;
  bool is_best = false;
};

struct OperatingPointsResult {
  std::vector<OperatingPoint> points;  // ascending td; best flagged
  bool monotone = false;               // curve had no interior minimum
};

// Duration-insensitive points of pe(td) along the contour: the leakage lobe
// tops, where a deviation in either direction lowers the error. Three-point
// test with parabolic refinement on log pe; tops must rise above their
// flanking nulls by min_prominence to count (contour-edge ripples are not
// lobes). best = smallest-duration operating point.
OperatingPointsResult operating_points(const ContourCurve& curve,
                                       double min_prominence = 3.0);

}  // namespace qpulse

#endif
