#ifndef QPULSE_HARDWARE_HPP
#define QPULSE_HARDWARE_HPP

#include "qpulse/pipeline.hpp"
#include "qpulse/system.hpp"

namespace qpulse {

// Waveform-generator limits: DAC sampling + first-order analog lowpass.
struct HardwareSpec {
  double fs = 0.0;  // sampling frequency, GSa/s
  double bw = 0.0;  // 3 dB bandwidth, GHz
  double k = 1.0;   // flux per control unit, Phi0 per unit
};

// Control P(t) = Phi_ext/k sampled at fs, zero-order held, filtered by a
// first-order lowpass realized as an exact exponential update, then mapped
// back through the flux-frequency relation. The waveform gains a settled tail
// of three filter time constants; `duration` keeps the designed td.
// fine_dt <= 1/(20 bw); pass 0 to pick 1/(fs ceil(20 bw / fs)), which aligns
// hold edges with the fine grid.
PhysicalPulse apply_hardware(const PhysicalPulse& pulse, const HardwareSpec& hw,
                             const FluxMapParams& fm, double fine_dt = 0.0);

// Largest |omega1_distorted - omega1_designed| over the designed window.
double max_omega1_distortion(const PhysicalPulse& designed,
                             const PhysicalPulse& distorted);

}  // namespace qpulse

#endif
