#include "qpulse/system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qpulse {

double TransmonPair::coupling_gap() const { return 2.0 * std::sqrt(2.0) * g; }

double TransmonPair::eps_idle() const { return omega1_idle - (omega2 - alpha1); }

TransmonPair default_pair() {
  TransmonPair p;
  p.omega1_idle = kTwoPi * 5.8;
  p.omega2 = kTwoPi * 4.7;
  p.alpha1 = kTwoPi * -0.3;
  p.alpha2 = kTwoPi * -0.3;
  p.g = kTwoPi * 0.01 * std::sqrt(2.0);
  return p;
}

FluxMapParams default_flux_params() {
  FluxMapParams fm;
  fm.ec = kTwoPi * 0.3;
  fm.d = 0.1;
  fm.phi0 = 1.0;
  // sqrt(8 EJ EC) = omega1(0) + EC with omega1(0)/2pi = 5.8 GHz.
  const double s = kTwoPi * 6.1;
  fm.ej = s * s / (8.0 * fm.ec);
  return fm;
}

double flux_to_omega1(const FluxMapParams& fm, double phi_ext) {
  const double c = std::cos(M_PI * phi_ext / fm.phi0);
  const double root =
      std::pow(fm.d * fm.d + (1.0 - fm.d * fm.d) * c * c, 0.25);
  return std::sqrt(8.0 * fm.ej * fm.ec) * root - fm.ec;
}

double omega1_to_flux(const FluxMapParams& fm, double omega1) {
  const double w_max = flux_to_omega1(fm, 0.0);
  const double w_min = flux_to_omega1(fm, 0.5 * fm.phi0);
  // Round-tripped trigonometry may land a few ulps past the band edges.
  const double slack = 1e-9 * (w_max - w_min);
  if (omega1 > w_max + slack || omega1 < w_min - slack) {
    throw std::range_error(
        "omega1_to_flux: requested frequency " + std::to_string(omega1) +
        " rad/ns outside achievable band [" + std::to_string(w_min) + ", " +
        std::to_string(w_max) + "]");
  }
  omega1 = std::clamp(omega1, w_min, w_max);
  double lo = 0.0, hi = 0.5 * fm.phi0;  // omega decreases with phi here
  while (hi - lo > 1e-12 * fm.phi0) {
    const double mid = 0.5 * (lo + hi);
    if (flux_to_omega1(fm, mid) >= omega1) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qpulse
