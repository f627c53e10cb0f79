#include "qpulse/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "qpulse/interp.hpp"

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::vector<double> theta_to_epsilon(const std::vector<double>& theta,
                                     double delta) {
  std::vector<double> eps(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) {
    const double s = std::sin(theta[i]);
    if (!(theta[i] > 0.0 && theta[i] < kPi) || s < 1e-12) {
      throw std::domain_error("theta_to_epsilon: theta too close to 0 or pi");
    }
    eps[i] = delta * std::cos(theta[i]) / s;
  }
  return eps;
}

std::vector<double> epsilon_to_omega1(const std::vector<double>& eps,
                                      const TransmonPair& pair) {
  const double crossing = pair.omega2 - pair.alpha1;
  std::vector<double> w1(eps.size());
  for (size_t i = 0; i < eps.size(); ++i) w1[i] = crossing + eps[i];
  return w1;
}

std::vector<double> omega1_to_flux_series(const std::vector<double>& omega1,
                                          const FluxMapParams& fm) {
  std::vector<double> phi(omega1.size());
  for (size_t i = 0; i < omega1.size(); ++i) {
    phi[i] = omega1_to_flux(fm, omega1[i]);
  }
  return phi;
}

double theta_mid_for_amplitude(const TransmonPair& pair, double amplitude) {
  if (amplitude < 0.0 || amplitude > 1.0) {
    throw std::invalid_argument("amplitude must lie in [0, 1]");
  }
  const double eps_mid = pair.eps_idle() * (1.0 - amplitude);
  return std::atan2(pair.coupling_gap(), eps_mid);
}

PhysicalPulse build_physical_pulse(const ControlTrajectory& traj, double td,
                                   double amplitude, const TransmonPair& pair,
                                   const FluxMapParams& fm, double dt,
                                   bool with_flux) {
  if (!(td > 0.0) || !(dt > 0.0) || td / dt < 200.0) {
    throw std::invalid_argument(
        "build_physical_pulse: dt must divide td into >= 200 steps");
  }
  const double delta = pair.coupling_gap();
  const double theta_ini = std::atan2(delta, pair.eps_idle());
  const double theta_mid = theta_mid_for_amplitude(pair, amplitude);
  const ControlTrajectory scaled = rescale_trajectory(traj, theta_ini, theta_mid);
  const TimeFrameMap map = time_frame_invert(scaled, td, delta);

  PchipInterpolant theta_of_t(map.t, scaled.theta);
  const int steps = static_cast<int>(std::llround(td / dt));
  PhysicalPulse pulse;
  pulse.duration = td;
  pulse.amplitude = amplitude;
  pulse.time.resize(steps + 1);
  std::vector<double> theta(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    pulse.time[i] = td * i / steps;
    theta[i] = theta_of_t(pulse.time[i]);
  }
  // The map hits the endpoints exactly; interpolation must not drift there.
  theta.front() = scaled.theta.front();
  theta.back() = scaled.theta.back();

  pulse.epsilon = theta_to_epsilon(theta, delta);
  pulse.omega1 = epsilon_to_omega1(pulse.epsilon, pair);
  if (with_flux) pulse.flux_ext = omega1_to_flux_series(pulse.omega1, fm);
  return pulse;
}

}  // namespace qpulse
