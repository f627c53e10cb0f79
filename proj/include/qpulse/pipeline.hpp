#ifndef QPULSE_PIPELINE_HPP
#define QPULSE_PIPELINE_HPP

#include <vector>

#include "qpulse/system.hpp"
#include "qpulse/trajectory.hpp"

namespace qpulse {

// Sampled physical control waveforms on a uniform time grid (ns).
struct PhysicalPulse {
  std::vector<double> time;
  std::vector<double> epsilon;   // E20 - E11 bare detuning, rad/ns
  std::vector<double> omega1;    // rad/ns
  std::vector<double> flux_ext;  // units of Phi0; empty unless requested
  double duration = 0.0;         // designed td (the grid may extend past it)
  double amplitude = 0.0;        // normalized amplitude A
};

// eps = Delta / tan(theta); requires theta in (0, pi) away from the poles.
std::vector<double> theta_to_epsilon(const std::vector<double>& theta,
                                     double delta);

// omega1 = (omega2 - alpha1) + eps, so eps = 0 lands on the |11>-|20>
// degeneracy point.
std::vector<double> epsilon_to_omega1(const std::vector<double>& eps,
                                      const TransmonPair& pair);

std::vector<double> omega1_to_flux_series(const std::vector<double>& omega1,
                                          const FluxMapParams& fm);

double theta_mid_for_amplitude(const TransmonPair& pair, double amplitude);

// Full chain g -> theta -> theta(t) -> eps(t) -> omega1(t) [-> Phi_ext(t)].
// The trajectory's theta profile is remapped to the amplitude A via
// eps_mid = eps_ini (1 - A); dt must divide td into >= 200 steps.
PhysicalPulse build_physical_pulse(const ControlTrajectory& traj, double td,
                                   double amplitude, const TransmonPair& pair,
                                   const FluxMapParams& fm, double dt,
                                   bool with_flux = true);

}  // namespace qpulse

#endif
