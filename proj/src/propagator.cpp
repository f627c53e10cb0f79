#include "qpulse/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace qpulse {

PropagationResult propagate(const HamiltonianFn& hamiltonian,
                            const Eigen::MatrixXcd& psi0, double t0, double t1,
                            int steps) {
  if (steps < 1) throw std::invalid_argument("propagate: need >= 1 step");
  if (!(t1 > t0)) throw std::invalid_argument("propagate: need t1 > t0");
  const double dt = (t1 - t0) / steps;

  PropagationResult res;
  res.states = psi0;
  Eigen::VectorXd norm0(psi0.cols());
  for (int c = 0; c < psi0.cols(); ++c) norm0(c) = psi0.col(c).norm();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  for (int k = 0; k < steps; ++k) {
    const double t_mid = t0 + (k + 0.5) * dt;
    const Eigen::MatrixXcd h = hamiltonian(t_mid);
    if (h.rows() != h.cols() || h.rows() != psi0.rows()) {
      throw std::invalid_argument("propagate: Hamiltonian dimension mismatch");
    }
    for (int i = 0; i < h.rows(); ++i) {
      for (int j = 0; j <= i; ++j) {
        if (h(i, j) != std::conj(h(j, i))) {
          throw std::invalid_argument(
              "propagate: Hamiltonian is not Hermitian at t=" +
              std::to_string(t_mid));
        }
      }
    }
    solver.compute(h);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("propagate: eigendecomposition failed");
    }
    const auto& vecs = solver.eigenvectors();
    Eigen::VectorXcd phases(h.rows());
    for (int i = 0; i < h.rows(); ++i) {
      const double ang = solver.eigenvalues()(i) * dt;
      phases(i) = std::complex<double>(std::cos(ang), -std::sin(ang));
    }
    res.states = vecs * (phases.asDiagonal() * (vecs.adjoint() * res.states));
    for (int c = 0; c < res.states.cols(); ++c) {
      res.norm_drift = std::max(res.norm_drift,
                                std::fabs(res.states.col(c).norm() - norm0(c)));
    }
  }
  return res;
}

}  // namespace qpulse
