#include "qpulse/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qpulse {

double chebyshev_poly(int n, double x) {
  if (n < 0) throw std::invalid_argument("chebyshev_poly: order must be >= 0");
  if (x >= 1.0) return std::cosh(n * std::acosh(x));
  if (x <= -1.0) {
    const double v = std::cosh(n * std::acosh(-x));
    return (n % 2 == 0) ? v : -v;
  }
  return std::cos(n * std::acos(x));
}

double chebyshev1_x0(int n, double r) {
  return std::cosh(std::acosh(1.0 / r) / (n - 1));
}

Pulse chebyshev1(const Chebyshev1Spec& spec) {
  const int n = spec.n;
  const double r = spec.sidelobe;
  if (n < 2) throw std::invalid_argument("chebyshev1: length must be >= 2");
  if (!(r > 0.0 && r < 1.0)) {
    throw std::invalid_argument("chebyshev1: sidelobe amplitude must be in (0, 1)");
  }
  const double x0 = chebyshev1_x0(n, r);
  const int ns = (n % 2 == 1) ? (n - 1) / 2 : n / 2 - 1;

  std::vector<double> w(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < n; ++i) {
    double acc = 1.0;
    for (int k = 1; k <= ns; ++k) {
      const double tk = chebyshev_poly(n - 1, x0 * std::cos(pi * k / n));
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      acc += 2.0 * r * sign * tk * std::cos(pi * k * (2.0 * i + 1.0) / n);
    }
    w[i] = acc / n;
  }
  return make_pulse(std::move(w), Symmetry::kSymmetric, "chebyshev1");
}

}  // namespace qpulse
