#ifndef QPULSE_SYSTEM_HPP
#define QPULSE_SYSTEM_HPP

namespace qpulse {

inline constexpr double kTwoPi = 6.28318530717958647692;

// Two coupled transmons; all frequencies are angular (rad/ns).
struct TransmonPair {
  double omega1_idle = 0.0;
  double omega2 = 0.0;
  double alpha1 = 0.0;  // anharmonicities, negative for transmons
  double alpha2 = 0.0;
  double g = 0.0;       // |01>-|10> coupling; |11>-|20>/|02> couple at sqrt(2) g

  // Avoided-crossing splitting between |11> and |20>: the two-level Delta.
  double coupling_gap() const;
  // Bare detuning eps = E20 - E11 = omega1 - (omega2 - alpha1) at idle.
  double eps_idle() const;
};

// omega2/2pi = 4.7 GHz, alpha/2pi = -300 MHz, g/2pi = 10 sqrt(2) MHz,
// omega1 idling at 2pi*5.8 GHz.
TransmonPair default_pair();

// SQUID flux-to-frequency map constants. Energies are E/hbar in rad/ns.
struct FluxMapParams {
  double ej = 0.0;
  double ec = 0.0;
  double d = 0.0;     // junction asymmetry in [0, 1)
  double phi0 = 1.0;  // flux quantum (normalized)
};

// EC/h = 0.3 GHz, d = 0.1, EJ solved so that omega1(0)/2pi = 5.8 GHz.
FluxMapParams default_flux_params();

// omega1(Phi) = sqrt(8 EJ EC) (d^2 + (1-d^2) cos^2(pi Phi/Phi0))^{1/4} - EC.
double flux_to_omega1(const FluxMapParams& fm, double phi_ext);

// Inverse on the monotone branch Phi in [0, Phi0/2], bisection to 1e-12 in
// Phi/Phi0. Throws std::range_error outside the achievable band.
double omega1_to_flux(const FluxMapParams& fm, double omega1);

}  // namespace qpulse

#endif
