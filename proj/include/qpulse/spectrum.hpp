#ifndef QPULSE_SPECTRUM_HPP
#define QPULSE_SPECTRUM_HPP

#include <complex>
#include <vector>

#include "qpulse/pulse.hpp"

namespace qpulse {

// DTFT samples on a uniform grid over [0, pi]. `amplitude` is the real
// linear-phase amplitude A(w): the phase factor e^{-iw(N-1)/2}, times i for
// antisymmetric pulses, divided out. For symmetry 'none' it carries |W(e^{iw})|.
struct Spectrum {
  std::vector<double> omega;
  std::vector<std::complex<double>> values;
  std::vector<double> amplitude;
};

Spectrum dtft(const Pulse& p, int grid_size);
Spectrum dtft_serial(const Pulse& p, int grid_size);

// Exact single-frequency evaluations.
std::complex<double> dtft_at(const Pulse& p, double omega);
double amplitude_at(const Pulse& p, double omega);

// Smallest w_c such that |A(w)| <= gamma for all w in [w_c, pi], refined by
// bisection between grid points. Returns 0 if the bound holds everywhere.
double omega_star(const Pulse& p, const Spectrum& s, double gamma);

// Local maxima of |A(w)| for w >= from_omega, as (omega, |A|) pairs.
std::vector<std::pair<double, double>> amplitude_peaks(const Spectrum& s,
                                                       double from_omega);

}  // namespace qpulse

#endif
