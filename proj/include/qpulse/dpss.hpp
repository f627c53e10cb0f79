#ifndef QPULSE_DPSS_HPP
#define QPULSE_DPSS_HPP

#include <vector>

#include "qpulse/pulse.hpp"

namespace qpulse {

struct SlepianSpec {
  int n = 0;                  // length N
  double half_bandwidth = 0;  // W in cycles/sample, 0 < W < 1/2
  int order = 0;              // k, 0-based; k-th largest concentration
};

struct SlepianResult {
  Pulse pulse;
  double eigenvalue = 0.0;  // concentration ratio lambda_k in (0, 1)
};

// Slepian sequence of the given order from the dense sinc-kernel eigenproblem
//   sum_m sin(2 pi W (n-m)) / (pi (n-m)) v_m = lambda v_n   (diagonal 2W).
// Unit energy; even orders are symmetric, odd orders antisymmetric. Sign fixed
// so that sum(v) >= 0 (symmetric) or the first moment about the midpoint is
// >= 0 (antisymmetric).
SlepianResult dpss(const SlepianSpec& spec);

// All orders 0..max_order-1 for fixed (N, W); one eigendecomposition.
std::vector<SlepianResult> dpss_family(int n, double half_bandwidth,
                                       int max_order);

}  // namespace qpulse

#endif
