#ifndef QPULSE_PULSE_HPP
#define QPULSE_PULSE_HPP

#include <string>
#include <vector>

namespace qpulse {

enum class Symmetry { kSymmetric, kAntisymmetric, kNone };

const char* to_string(Symmetry s);
Symmetry symmetry_from_string(const std::string& s);

// Finite-length discrete-time real sequence, zero outside [0, N-1].
struct Pulse {
  std::vector<double> samples;
  Symmetry symmetry = Symmetry::kNone;
  std::string label;

  int size() const { return static_cast<int>(samples.size()); }
};

// Largest deviation from the declared symmetry, relative to max|sample|.
double symmetry_residual(const Pulse& p);

// Throws std::invalid_argument on length < 2 or symmetry residual > 1e-12.
void validate_pulse(const Pulse& p);

Pulse make_pulse(std::vector<double> samples, Symmetry symmetry,
                 std::string label = "");

}  // namespace qpulse

#endif
