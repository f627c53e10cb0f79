#ifndef QPULSE_ARTIFACTS_HPP
#define QPULSE_ARTIFACTS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "qpulse/calibrate.hpp"
#include "qpulse/leakage.hpp"
#include "qpulse/pipeline.hpp"
#include "qpulse/pulse.hpp"
#include "qpulse/spectrum.hpp"

namespace qpulse {

// Fixed-precision formatting shared by all artifact writers; identical inputs
// produce byte-identical files.
std::string format_double(double v);

// Writes via a temporary file in the same directory plus rename, so outputs
// appear only when complete.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string pulse_csv(const Pulse& p);
std::string pulse_json(const Pulse& p);
std::string spectrum_csv(const Spectrum& s);
std::string waveform_csv(const PhysicalPulse& p);

struct PredictionRow {
  double td = 0.0;
  double pe = 0.0;
  std::string method;
};
std::string predictions_csv(const std::vector<PredictionRow>& rows);

std::string gate_points_csv(const std::vector<GatePoint>& rows);
std::string scan_matrix_csv(const ScanResult& scan, bool phase);
std::string contour_csv(const ContourCurve& curve);
std::string operating_points_json(const OperatingPointsResult& ops);

struct SweepRow {
  std::string index;
  std::string family;
  double fs = 0.0;
  double bw = 0.0;
  double td = 0.0;
  double log10_pe = 0.0;
  double infidelity = 0.0;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qpulse

#endif
