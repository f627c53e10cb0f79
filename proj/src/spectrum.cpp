#include "qpulse/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::complex<double> eval_dtft(const std::vector<double>& w, double omega) {
  // Horner-style accumulation with one complex rotation per sample keeps the
  // cost at one sincos per frequency instead of one per (frequency, sample).
  const std::complex<double> step(std::cos(omega), -std::sin(omega));
  std::complex<double> acc(0.0, 0.0);
  for (int n = static_cast<int>(w.size()) - 1; n >= 0; --n) {
    acc = acc * step + w[n];
  }
  return acc;
}

double dephase(const Pulse& p, double omega, std::complex<double> value) {
  const double half = 0.5 * (p.size() - 1);
  const std::complex<double> rot(std::cos(omega * half), std::sin(omega * half));
  switch (p.symmetry) {
    case Symmetry::kSymmetric:
      return (value * rot).real();
    case Symmetry::kAntisymmetric:
      return (value * rot * std::complex<double>(0.0, -1.0)).real();
    case Symmetry::kNone:
      return std::abs(value);
  }
  return std::abs(value);
}

template <bool Parallel>
Spectrum dtft_impl(const Pulse& p, int grid_size) {
  validate_pulse(p);
  if (grid_size < 2 * p.size()) {
    throw std::invalid_argument("dtft: grid size must be >= 2N");
  }
  Spectrum s;
  s.omega.resize(grid_size);
  s.values.resize(grid_size);
  s.amplitude.resize(grid_size);
#pragma omp parallel for schedule(static) if (Parallel)
  for (int j = 0; j < grid_size; ++j) {
    const double omega = kPi * j / (grid_size - 1);
    const std::complex<double> v = eval_dtft(p.samples, omega);
    s.omega[j] = omega;
    s.values[j] = v;
    s.amplitude[j] = dephase(p, omega, v);
  }
  return s;
}

}  // namespace

Spectrum dtft(const Pulse& p, int grid_size) {
  return dtft_impl<true>(p, grid_size);
}

Spectrum dtft_serial(const Pulse& p, int grid_size) {
  return dtft_impl<false>(p, grid_size);
}

std::complex<double> dtft_at(const Pulse& p, double omega) {
  return eval_dtft(p.samples, omega);
}

double amplitude_at(const Pulse& p, double omega) {
  return dephase(p, omega, eval_dtft(p.samples, omega));
}

double omega_star(const Pulse& p, const Spectrum& s, double gamma) {
  const int m = static_cast<int>(s.omega.size());
  int last = -1;
  for (int j = m - 1; j >= 0; --j) {
    if (std::fabs(s.amplitude[j]) > gamma) {
      last = j;
      break;
    }
  }
  if (last < 0) return 0.0;
  if (last == m - 1) return s.omega.back();
  // |A| crosses gamma somewhere in (omega[last], omega[last+1]).
  double lo = s.omega[last], hi = s.omega[last + 1];
  for (int it = 0; it < 80 && (hi - lo) > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::fabs(amplitude_at(p, mid)) > gamma) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

std::vector<std::pair<double, double>> amplitude_peaks(const Spectrum& s,
                                                       double from_omega) {
  std::vector<std::pair<double, double>> peaks;
  const int m = static_cast<int>(s.omega.size());
  for (int j = 1; j + 1 < m; ++j) {
    if (s.omega[j] < from_omega) continue;
    const double a = std::fabs(s.amplitude[j - 1]);
    const double b = std::fabs(s.amplitude[j]);
    const double c = std::fabs(s.amplitude[j + 1]);
    if (b >= a && b > c) peaks.emplace_back(s.omega[j], b);
  }
  return peaks;
}

}  // namespace qpulse
