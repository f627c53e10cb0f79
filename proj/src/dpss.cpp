#include "qpulse/dpss.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(int n, double w, int max_order) {
  if (n < 2) throw std::invalid_argument("dpss: length must be >= 2");
  if (!(w > 0.0 && w < 0.5)) {
    throw std::invalid_argument("dpss: half-bandwidth must satisfy 0 < W < 1/2");
  }
  if (max_order < 1 || max_order > n) {
    throw std::invalid_argument("dpss: order out of range 0..N-1");
  }
}

}  // namespace

std::vector<SlepianResult> dpss_family(int n, double half_bandwidth,
                                       int max_order) {
  validate(n, half_bandwidth, max_order);

  Eigen::MatrixXd kernel(n, n);
  for (int i = 0; i < n; ++i) {
    kernel(i, i) = 2.0 * half_bandwidth;
    for (int j = 0; j < i; ++j) {
      const int lag = i - j;
      const double v = std::sin(2.0 * kPi * half_bandwidth * lag) / (kPi * lag);
      kernel(i, j) = v;
      kernel(j, i) = v;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error(
        "dpss: eigensolver failed to converge (N=" + std::to_string(n) +
        ", kernel norm=" + std::to_string(kernel.norm()) + ")");
  }

  // Eigen returns ascending eigenvalues; order k takes the (k+1)-th largest.
  std::vector<SlepianResult> out;
  out.reserve(max_order);
  for (int k = 0; k < max_order; ++k) {
    const int col = n - 1 - k;
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    const bool symmetric = (k % 2 == 0);
    double orient = 0.0;
    const double mid = 0.5 * (n - 1);
    for (int i = 0; i < n; ++i) {
      orient += symmetric ? v(i) : (i - mid) * v(i);
    }
    if (orient < 0.0) v = -v;

    Pulse p;
    p.samples.assign(v.data(), v.data() + n);
    p.symmetry = symmetric ? Symmetry::kSymmetric : Symmetry::kAntisymmetric;
    p.label = "slepian_k" + std::to_string(k);
    // Eigenvectors of a numerically symmetric matrix can carry tiny symmetry
    // violations; fold them out so downstream parity assumptions hold exactly.
    const double sign = symmetric ? 1.0 : -1.0;
    for (int i = 0; i < n / 2; ++i) {
      const double avg = 0.5 * (p.samples[i] + sign * p.samples[n - 1 - i]);
      p.samples[i] = avg;
      p.samples[n - 1 - i] = sign * avg;
    }
    if (!symmetric && n % 2 == 1) p.samples[(n - 1) / 2] = 0.0;
    double energy = 0.0;
    for (double x : p.samples) energy += x * x;
    const double scale = 1.0 / std::sqrt(energy);
    for (double& x : p.samples) x *= scale;
    validate_pulse(p);

    out.push_back(SlepianResult{std::move(p), solver.eigenvalues()(col)});
  }
  return out;
}

SlepianResult dpss(const SlepianSpec& spec) {
  auto family = dpss_family(spec.n, spec.half_bandwidth, spec.order + 1);
  return std::move(family.back());
}

}  // namespace qpulse
