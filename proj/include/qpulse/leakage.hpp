#ifndef QPULSE_LEAKAGE_HPP
#define QPULSE_LEAKAGE_HPP

#include <complex>
#include <vector>

#include "qpulse/trajectory.hpp"

namespace qpulse {

enum class LeakageMethod { kFourier, kChiSum, kLandauZener };

struct LeakagePrediction {
  double pe = 0.0;
  LeakageMethod method = LeakageMethod::kFourier;
  bool saturated = false;  // |chi| exceeded 1, outside adiabatic validity
  std::vector<std::complex<double>> chi_trace;
};

// Frequency-domain prediction Pe = |G(i Delta tau_d')|^2 / 4 where G is the
// transform of the unit-duration shape and tau_d' = td / mean(sin theta) is
// the nonlinear-frame duration. Exact in the scaling law
// (traj, c td, Delta) == (traj, td, c Delta).
LeakagePrediction analytic_leakage(const ControlTrajectory& traj, double td,
                                   double delta);

// Geometric accumulation chi = sum_j -dtheta_j e^{-i phi_j} with phi_j the
// cumulative phase of omega(t) (exclusive of the current step);
// pe = sin(asin|chi| / 2)^2.
LeakagePrediction chi_accumulate(const std::vector<double>& theta,
                                 const std::vector<double>& omega, double dt);

struct LzParams {
  double delta = 0.0;  // rad/ns
  double alpha = 0.0;  // sweep rate, rad/ns^2
};

// Landau-Zener transition probability e^{-pi Delta^2 / (2 alpha)}.
double lz_probability(const LzParams& p);

// Linear-sweep evaluation of the leakage formula: (pi^2/4) e^{-2 Delta^2/alpha}.
double lz_formula_pe(const LzParams& p);

// Residual of log P_LZ = (pi/4)(log P_eLZ - log(pi^2/4)); zero by algebra.
double lz_relation_residual(const LzParams& p);

}  // namespace qpulse

#endif
