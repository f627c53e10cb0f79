#ifndef QPULSE_CHEBYSHEV_HPP
#define QPULSE_CHEBYSHEV_HPP

#include "qpulse/pulse.hpp"

namespace qpulse {

// Chebyshev polynomial of the first kind, piecewise cos/cosh form.
// Stable for |x| slightly above 1; total function of (n >= 0, x).
double chebyshev_poly(int n, double x);

struct Chebyshev1Spec {
  int n = 0;               // pulse length
  double sidelobe = 0.0;   // equiripple sidelobe amplitude r in (0, 1)
};

// x0 > 1 such that T_{N-1}(x0) = 1/r, via the cosh branch.
double chebyshev1_x0(int n, double r);

// Dolph window from the explicit cosine-sum formula. A(0) = 1.
Pulse chebyshev1(const Chebyshev1Spec& spec);

}  // namespace qpulse

#endif
