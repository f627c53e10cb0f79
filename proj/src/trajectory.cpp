#include "qpulse/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_theta_range(double theta_ini, double theta_mid) {
  if (!(theta_ini > 0.0 && theta_ini < kPi) ||
      !(theta_mid > 0.0 && theta_mid < kPi)) {
    throw std::domain_error("trajectory: theta endpoints must lie in (0, pi)");
  }
}

}  // namespace

double ControlTrajectory::mean_sin_theta() const {
  double acc = 0.0;
  for (size_t i = 0; i + 1 < theta.size(); ++i) {
    acc += 0.5 * (std::sin(theta[i]) + std::sin(theta[i + 1])) *
           (tau[i + 1] - tau[i]);
  }
  return acc;
}

ControlTrajectory normalize_trajectory(const Pulse& pulse, double theta_ini,
                                       double theta_mid) {
  validate_pulse(pulse);
  if (pulse.symmetry != Symmetry::kAntisymmetric) {
    throw std::invalid_argument("normalize_trajectory: pulse must be antisymmetric");
  }
  check_theta_range(theta_ini, theta_mid);
  const int n = pulse.size();
  const int half = (n % 2 == 1) ? (n - 1) / 2 : n / 2 - 1;

  double half_sum = 0.0;
  for (int i = 0; i <= half; ++i) half_sum += pulse.samples[i];
  double scale_ref = 0.0;
  for (double v : pulse.samples) scale_ref = std::max(scale_ref, std::fabs(v));
  if (std::fabs(half_sum) < 1e-12 * scale_ref * n || half_sum == 0.0) {
    throw std::invalid_argument(
        "normalize_trajectory: degenerate pulse, half-sum is zero");
  }

  ControlTrajectory traj;
  traj.theta_ini = theta_ini;
  traj.theta_mid = theta_mid;
  traj.g.resize(n);
  for (int i = 0; i < n; ++i) traj.g[i] = pulse.samples[i] / half_sum;

  traj.tau.resize(n);
  for (int i = 0; i < n; ++i) traj.tau[i] = static_cast<double>(i) / (n - 1);

  // Trapezoidal cumulative integral of g, renormalized so the sampled peak
  // hits theta_mid. The trapezoid rule keeps the profile exactly symmetric
  // for antisymmetric input; a one-sided sum would shift the second half by
  // a sample and move the spectral nulls by whole sidelobes.
  std::vector<double> cum(n, 0.0);
  for (int k = 1; k < n; ++k) {
    cum[k] = cum[k - 1] + 0.5 * (traj.g[k - 1] + traj.g[k]);
  }
  double peak = 0.0;
  for (double c : cum) {
    if (std::fabs(c) > std::fabs(peak)) peak = c;
  }
  if (peak == 0.0) {
    throw std::invalid_argument("normalize_trajectory: flat integrated profile");
  }
  traj.theta.assign(n, 0.0);
  const double swing = theta_mid - theta_ini;
  for (int k = 0; k <= half; ++k) {
    traj.theta[k] = theta_ini + swing * cum[k] / peak;
  }
  for (int k = half + 1; k < n; ++k) traj.theta[k] = traj.theta[n - 1 - k];

  for (double th : traj.theta) {
    if (!(th > 0.0 && th < kPi)) {
      throw std::domain_error("normalize_trajectory: theta leaves (0, pi)");
    }
  }
  return traj;
}

ControlTrajectory rescale_trajectory(const ControlTrajectory& traj,
                                     double theta_ini, double theta_mid) {
  check_theta_range(theta_ini, theta_mid);
  ControlTrajectory out = traj;
  const double old_swing = traj.theta_mid - traj.theta_ini;
  const double ratio = (theta_mid - theta_ini) / old_swing;
  for (size_t i = 0; i < out.theta.size(); ++i) {
    out.theta[i] = theta_ini + (traj.theta[i] - traj.theta_ini) * ratio;
  }
  out.theta_ini = theta_ini;
  out.theta_mid = theta_mid;
  for (double th : out.theta) {
    if (!(th > 0.0 && th < kPi)) {
      throw std::domain_error("rescale_trajectory: theta leaves (0, pi)");
    }
  }
  return out;
}

TimeFrameMap time_frame_invert(const ControlTrajectory& traj, double td,
                               double delta) {
  if (!(td > 0.0)) throw std::invalid_argument("time_frame_invert: td must be > 0");
  TimeFrameMap map;
  map.tau = traj.tau;
  map.omega_tau = delta;
  const int n = traj.size();
  map.t.assign(n, 0.0);
  for (int i = 1; i < n; ++i) {
    const double s0 = std::sin(traj.theta[i - 1]);
    const double s1 = std::sin(traj.theta[i]);
    if (s0 <= 0.0 || s1 <= 0.0) {
      throw std::domain_error("time_frame_invert: sin(theta) must stay positive");
    }
    map.t[i] = map.t[i - 1] + 0.5 * (s0 + s1) * (traj.tau[i] - traj.tau[i - 1]);
  }
  const double scale = td / map.t.back();
  for (double& v : map.t) v *= scale;
  return map;
}

}  // namespace qpulse
