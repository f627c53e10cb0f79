#include "qpulse/leakage.hpp"

#include <cmath>
#include <stdexcept>

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

LeakagePrediction analytic_leakage(const ControlTrajectory& traj, double td,
                                   double delta) {
  const int n = traj.size();
  const double tau_d = td / traj.mean_sin_theta();
  const double omega = delta * tau_d / (n - 1);
  const std::complex<double> step(std::cos(omega), -std::sin(omega));
  std::complex<double> acc(0.0, 0.0);
  for (int i = n - 1; i >= 0; --i) acc = acc * step + traj.g[i];
  LeakagePrediction out;
  out.method = LeakageMethod::kFourier;
  out.pe = 0.25 * std::norm(acc);
  return out;
}

LeakagePrediction chi_accumulate(const std::vector<double>& theta,
                                 const std::vector<double>& omega, double dt) {
  if (theta.size() != omega.size() || theta.size() < 2) {
    throw std::invalid_argument("chi_accumulate: grids must align");
  }
  LeakagePrediction out;
  out.method = LeakageMethod::kChiSum;
  std::complex<double> chi(0.0, 0.0);
  double phase = 0.0;
  out.chi_trace.reserve(theta.size() - 1);
  for (size_t j = 0; j + 1 < theta.size(); ++j) {
    const double dtheta = theta[j + 1] - theta[j];
    chi -= dtheta * std::complex<double>(std::cos(phase), -std::sin(phase));
    out.chi_trace.push_back(chi);
    phase += omega[j] * dt;
  }
  const double mag = std::abs(chi);
  if (mag > 1.0) {
    out.saturated = true;
    out.pe = 1.0;
    return out;
  }
  const double s = std::sin(0.5 * std::asin(mag));
  out.pe = s * s;
  return out;
}

double lz_probability(const LzParams& p) {
  if (!(p.alpha > 0.0) || p.delta < 0.0) {
    throw std::invalid_argument("lz: need alpha > 0 and delta >= 0");
  }
  return std::exp(-kPi * p.delta * p.delta / (2.0 * p.alpha));
}

double lz_formula_pe(const LzParams& p) {
  if (!(p.alpha > 0.0) || p.delta < 0.0) {
    throw std::invalid_argument("lz: need alpha > 0 and delta >= 0");
  }
  return 0.25 * kPi * kPi * std::exp(-2.0 * p.delta * p.delta / p.alpha);
}

double lz_relation_residual(const LzParams& p) {
  const double lhs = std::log(lz_probability(p));
  const double rhs =
      0.25 * kPi * (std::log(lz_formula_pe(p)) - std::log(0.25 * kPi * kPi));
  return lhs - rhs;
}

}  // namespace qpulse
