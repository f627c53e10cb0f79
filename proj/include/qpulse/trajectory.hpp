#ifndef QPULSE_TRAJECTORY_HPP
#define QPULSE_TRAJECTORY_HPP

#include <vector>

#include "qpulse/pulse.hpp"

namespace qpulse {

// Normalized antisymmetric control trajectory g[n] (half-sums +1/-1) with the
// integrated mixing-angle profile theta(tau) on tau_k = k/(N-1) over [0, 1].
struct ControlTrajectory {
  std::vector<double> g;
  std::vector<double> tau;
  std::vector<double> theta;
  double theta_ini = 0.0;
  double theta_mid = 0.0;

  int size() const { return static_cast<int>(g.size()); }
  // Trapezoidal mean of sin(theta) over tau; converts physical duration to
  // the nonlinear-frame duration td / mean_sin_theta().
  double mean_sin_theta() const;
};

// Scales the pulse so the half-sums are +1/-1 and integrates (left Riemann,
// second half mirrored) to theta(tau) running theta_ini -> theta_mid ->
// theta_ini. Throws on zero half-sum or theta outside (0, pi).
ControlTrajectory normalize_trajectory(const Pulse& pulse, double theta_ini,
                                       double theta_mid);

// Same shape, new theta endpoints (affine remap of the integrated profile).
ControlTrajectory rescale_trajectory(const ControlTrajectory& traj,
                                     double theta_ini, double theta_mid);

struct TimeFrameMap {
  std::vector<double> tau;
  std::vector<double> t;  // physical time, strictly increasing, t[0] = 0
  double omega_tau = 0.0;
};

// t(tau) = integral of sin(theta) rescaled so the total duration is td.
TimeFrameMap time_frame_invert(const ControlTrajectory& traj, double td,
                               double delta);

}  // namespace qpulse

#endif
