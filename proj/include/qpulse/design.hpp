#ifndef QPULSE_DESIGN_HPP
#define QPULSE_DESIGN_HPP

#include <string>

#include "qpulse/pulse.hpp"
#include "qpulse/spectrum.hpp"
#include "qpulse/wca.hpp"

namespace qpulse {

// Pulse rescaled so the first-half sum is +1 (the trajectory normalization);
// spectra of designs are always compared in this scale.
Pulse half_sum_normalized(const Pulse& p);

struct TrajectoryDesign {
  Pulse pulse;               // raw antisymmetric window
  std::string family;        // "slepian" or "chebyshev2"
  double gamma = 0.0;        // sidelobe threshold the design is held to
  double sidelobe_level = 0.0;  // measured peak sidelobe of the normalized G
  double omega_star = 0.0;   // cutoff of |G| <= gamma for the normalized G
  double omega_s = 0.0;      // chebyshev2 stopband edge (0 for slepian)
};

// Benchmark trajectory: second Slepian window, evaluated against the given
// sidelobe threshold (pass 0 to use the window's own peak sidelobe level).
TrajectoryDesign design_slepian_trajectory(int n, double nw, double gamma = 0.0,
                                           int spectrum_grid = 1 << 16);

struct Chebyshev2Options {
  int grid_density = 16;
  double accept_ratio = 0.97;  // stop once gamma_ch in [ratio*gamma, gamma]
  int max_bisections = 40;
  int spectrum_grid = 1 << 16;
};

// Case-3 WCA spec for an antisymmetric equiripple window: a unit point band
// at omega_s/2 and an equiweighted stopband from omega_s up to just below pi.
WcaSpec chebyshev2_wca_spec(int n, double omega_s, int grid_density = 16);

// Bisects the stopband edge until the normalized trajectory's sidelobe level
// gamma_ch satisfies gamma_ch <= gamma (as close as the tolerance allows).
TrajectoryDesign design_chebyshev2_trajectory(int n, double gamma,
                                              const Chebyshev2Options& opt = {});

// Peak |G| beyond the first zero following the mainlobe of the normalized
// trajectory's spectrum.
double trajectory_sidelobe_level(const Pulse& normalized, int spectrum_grid);

}  // namespace qpulse

#endif
