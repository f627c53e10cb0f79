#include "qpulse/hardware.hpp"

#include <cmath>
#include <stdexcept>

#include "qpulse/interp.hpp"

namespace qpulse {

PhysicalPulse apply_hardware(const PhysicalPulse& pulse, const HardwareSpec& hw,
                             const FluxMapParams& fm, double fine_dt) {
  if (!(hw.fs > 0.0) || !(hw.bw > 0.0) || !(hw.k > 0.0)) {
    throw std::invalid_argument("apply_hardware: fs, bw, k must be positive");
  }
  if (pulse.flux_ext.size() != pulse.time.size()) {
    throw std::invalid_argument("apply_hardware: pulse carries no flux samples");
  }
  if (fine_dt == 0.0) {
    fine_dt = (1.0 / hw.fs) / std::ceil(20.0 * hw.bw / hw.fs);
  }
  if (fine_dt > 1.0 / (20.0 * hw.bw) * (1.0 + 1e-12)) {
    throw std::invalid_argument("apply_hardware: fine_dt must be <= 1/(20 bw)");
  }

  // Control waveform seen by the DAC.
  std::vector<double> control(pulse.flux_ext.size());
  for (size_t i = 0; i < control.size(); ++i) control[i] = pulse.flux_ext[i] / hw.k;
  PchipInterpolant control_of_t(pulse.time, control);

  const double t_wave = pulse.time.back();
  const double tau_filter = 1.0 / (kTwoPi * hw.bw);
  const double t_total = t_wave + 3.0 * tau_filter;
  const int fine_steps = static_cast<int>(std::ceil(t_total / fine_dt));
  const double ts = 1.0 / hw.fs;

  // Left-aligned zero-order hold; past the waveform end the final (idle)
  // value holds.
  auto held = [&](double t) {
    const double t_sample = std::floor(t / ts) * ts;
    return t_sample <= t_wave ? control_of_t(t_sample) : control.back();
  };

  const double pole = 1.0 - std::exp(-kTwoPi * hw.bw * fine_dt);
  PhysicalPulse out;
  out.duration = pulse.duration;
  out.amplitude = pulse.amplitude;
  out.time.resize(fine_steps + 1);
  out.flux_ext.resize(fine_steps + 1);
  out.omega1.resize(fine_steps + 1);
  out.epsilon.resize(fine_steps + 1);

  double y = control.front();  // filter state starts at the idle value
  const double crossing = pulse.omega1.front() - pulse.epsilon.front();
  for (int i = 0; i <= fine_steps; ++i) {
    const double t = i * fine_dt;
    if (i > 0) y += pole * (held((i - 1) * fine_dt) - y);
    out.time[i] = t;
    out.flux_ext[i] = hw.k * y;
    out.omega1[i] = flux_to_omega1(fm, out.flux_ext[i]);
    out.epsilon[i] = out.omega1[i] - crossing;
  }
  return out;
}

double max_omega1_distortion(const PhysicalPulse& designed,
                             const PhysicalPulse& distorted) {
  PchipInterpolant w1(distorted.time, distorted.omega1);
  double worst = 0.0;
  for (size_t i = 0; i < designed.time.size(); ++i) {
    worst = std::max(worst,
                     std::fabs(w1(designed.time[i]) - designed.omega1[i]));
  }
  return worst;
}

}  // namespace qpulse
