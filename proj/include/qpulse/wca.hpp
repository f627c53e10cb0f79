#ifndef QPULSE_WCA_HPP
#define QPULSE_WCA_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "qpulse/pulse.hpp"

namespace qpulse {

// Linear-phase parity cases. The amplitude factors as A(w) = Q(w) P(w) with
// P a cosine polynomial; Q is 1, cos(w/2), sin(w), sin(w/2) for cases 1-4.
enum class WcaCase { kCase1 = 1, kCase2 = 2, kCase3 = 3, kCase4 = 4 };

struct Band {
  double lo = 0.0;
  double hi = 0.0;  // lo == hi declares a single-point band
  std::function<double(double)> desired;
  std::function<double(double)> weight;
};

Band constant_band(double lo, double hi, double desired, double weight);

struct WcaSpec {
  int n = 0;
  WcaCase case_id = WcaCase::kCase1;
  std::vector<Band> bands;   // disjoint, ascending, within the case's domain
  int grid_density = 16;     // grid points per band = grid_density * n
  // Optional warm start: extremal frequencies of a nearby solved problem.
  // Ignored unless it has exactly the required m+1 in-band entries.
  std::vector<double> initial_reference;
};

struct RemezDiagnostics {
  std::vector<double> delta_history;      // |delta| per exchange iteration
  std::vector<double> max_error_history;  // max weighted grid error per iteration
  std::vector<double> extremal_omegas;
  double delta = 0.0;
  int iterations = 0;
};

class RemezNonConvergence : public std::runtime_error {
 public:
  RemezNonConvergence(const std::string& what, std::vector<double> extremals)
      : std::runtime_error(what), extremal_omegas(std::move(extremals)) {}
  std::vector<double> extremal_omegas;
};

struct WcaResult {
  Pulse pulse;
  RemezDiagnostics diag;
};

WcaResult wca_design_full(const WcaSpec& spec);
Pulse wca_design(const WcaSpec& spec);

// Dolph construction as a WCA problem: point passband {0} with a large weight
// plus an equiweighted stopband starting at the Dolph transition edge.
WcaSpec dolph_wca_spec(int n, double sidelobe);

}  // namespace qpulse

#endif
