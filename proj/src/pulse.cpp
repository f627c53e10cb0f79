#include "qpulse/pulse.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qpulse {

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::kSymmetric: return "symmetric";
    case Symmetry::kAntisymmetric: return "antisymmetric";
    case Symmetry::kNone: return "none";
  }
  return "none";
}

Symmetry symmetry_from_string(const std::string& s) {
  if (s == "symmetric") return Symmetry::kSymmetric;
  if (s == "antisymmetric") return Symmetry::kAntisymmetric;
  if (s == "none") return Symmetry::kNone;
  throw std::invalid_argument("unknown symmetry: " + s);
}

double symmetry_residual(const Pulse& p) {
  if (p.symmetry == Symmetry::kNone) return 0.0;
  const int n = p.size();
  double scale = 0.0;
  for (double v : p.samples) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return 0.0;
  const double sign = (p.symmetry == Symmetry::kSymmetric) ? 1.0 : -1.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst,
                     std::fabs(p.samples[i] - sign * p.samples[n - 1 - i]));
  }
  return worst / scale;
}

void validate_pulse(const Pulse& p) {
  if (p.size() < 2) throw std::invalid_argument("pulse length must be >= 2");
  if (symmetry_residual(p) > 1e-12) {
    throw std::invalid_argument("pulse samples violate declared symmetry '" +
                                std::string(to_string(p.symmetry)) + "'");
  }
}

Pulse make_pulse(std::vector<double> samples, Symmetry symmetry,
                 std::string label) {
  Pulse p{std::move(samples), symmetry, std::move(label)};
  validate_pulse(p);
  return p;
}

}  // namespace qpulse
