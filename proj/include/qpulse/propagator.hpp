#ifndef QPULSE_PROPAGATOR_HPP
#define QPULSE_PROPAGATOR_HPP

#include <Eigen/Dense>

#include <functional>

namespace qpulse {

using HamiltonianFn = std::function<Eigen::MatrixXcd(double)>;

struct PropagationResult {
  Eigen::MatrixXcd states;  // final column states
  double norm_drift = 0.0;  // max |norm(psi_k) - norm(psi_0)| over all steps
};

// Piecewise-constant midpoint exponential stepping,
//   psi_{k+1} = exp(-i H(t_k + dt/2) dt) psi_k,
// through an eigendecomposition of the Hermitian matrix at each step. Every
// column of psi0 is propagated. Norm drift is recorded, never corrected.
// Throws std::invalid_argument if H(t) is not exactly Hermitian.
PropagationResult propagate(const HamiltonianFn& hamiltonian,
                            const Eigen::MatrixXcd& psi0, double t0, double t1,
                            int steps);

}  // namespace qpulse

#endif
