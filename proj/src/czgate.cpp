#include "qpulse/czgate.hpp"

#include <cmath>
#include <stdexcept>

#include "qpulse/interp.hpp"
#include "qpulse/propagator.hpp"

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;
using Complex = std::complex<double>;

double wrap_phase(double x) {
  double r = std::remainder(x, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

// exp(-i H dt) for real symmetric H = [[a, c], [c, b]] applied to columns.
template <typename Mat>
void step2(double a, double b, double c, double dt, Mat& psi) {
  const double m = 0.5 * (a + b);
  const double w = 0.5 * (a - b);
  const double r = std::hypot(w, c);
  const Complex global(std::cos(m * dt), -std::sin(m * dt));
  if (r == 0.0) {
    psi *= global;
    return;
  }
  const double cs = std::cos(r * dt);
  const double sn = std::sin(r * dt) / r;
  for (int col = 0; col < psi.cols(); ++col) {
    const Complex u = psi(0, col), v = psi(1, col);
    psi(0, col) = global * (cs * u - Complex(0, 1) * sn * (w * u + c * v));
    psi(1, col) = global * (cs * v - Complex(0, 1) * sn * (c * u - w * v));
  }
}

// Trace shift keeps the closed-form 3x3 eigensolver's error proportional to
// the level spread instead of the absolute energies.
template <typename Mat>
void step3(const Eigen::Matrix3d& h, double dt, Mat& psi) {
  const double tr3 = h.trace() / 3.0;
  Eigen::Matrix3d hs = h;
  hs.diagonal().array() -= tr3;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  es.computeDirect(hs);
  const Eigen::Matrix3d& v = es.eigenvectors();
  Eigen::Vector3cd phases;
  for (int i = 0; i < 3; ++i) {
    const double ang = (es.eigenvalues()(i) + tr3) * dt;
    phases(i) = Complex(std::cos(ang), -std::sin(ang));
  }
  psi = v * (phases.asDiagonal() * (v.transpose() * psi).eval());
}

struct Block1 {
  double e01, e10, g;
  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d m;
    m << e01, g, g, e10;
    return m;
  }
};

struct Block2 {
  double e11, e02, e20, sg;
  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d m;
    m << e11, sg, sg, sg, e02, 0.0, sg, 0.0, e20;
    return m;
  }
};

Block1 block1_at(const TransmonPair& p, double omega1) {
  return Block1{p.omega2, omega1, p.g};
}

Block2 block2_at(const TransmonPair& p, double omega1) {
  return Block2{omega1 + p.omega2, 2.0 * p.omega2 + p.alpha2,
                2.0 * omega1 + p.alpha1, std::sqrt(2.0) * p.g};
}

// Eigenvectors matched to bare labels by maximum overlap, bare component
// made positive. Columns follow the bare ordering of the block.
template <typename Matrix>
Matrix dressed_basis(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const int n = static_cast<int>(h.rows());
  Matrix out = Matrix::Zero();
  std::vector<bool> used(n, false);
  for (int bare = 0; bare < n; ++bare) {
    int best = -1;
    double best_mag = -1.0;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double mag = std::fabs(es.eigenvectors()(bare, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = j;
      }
    }
    used[best] = true;
    const double sign = es.eigenvectors()(bare, best) >= 0.0 ? 1.0 : -1.0;
    out.col(bare) = sign * es.eigenvectors().col(best);
  }
  return out;
}

struct BlockOutputs {
  // Dressed-frame overlaps at the final sample.
  Eigen::Matrix2cd v1;      // columns: evolved |01>, |10>
  Complex v11, leak02, leak20;
  double norm_drift = 0.0;
};

BlockOutputs run_blocks(const TransmonPair& pair, const PhysicalPulse& pulse,
                        const CzOptions& opt) {
  if (pulse.time.size() < 2) {
    throw std::invalid_argument("cz_simulate: pulse grid too short");
  }
  PchipInterpolant w1(pulse.time, pulse.omega1);
  const double t_end = pulse.time.back();
  const int steps = std::max<int>(
      200, static_cast<int>(std::llround(opt.steps_per_td * t_end / pulse.duration)));
  const double dt = t_end / steps;

  const Eigen::Matrix2d d1_ini = dressed_basis(block1_at(pair, w1(0.0)).matrix());
  const Eigen::Matrix3d d2_ini = dressed_basis(block2_at(pair, w1(0.0)).matrix());

  Eigen::Matrix2cd psi1 = d1_ini.cast<Complex>();
  Eigen::Vector3cd psi2 = d2_ini.col(0).cast<Complex>();

  BlockOutputs out;
  for (int k = 0; k < steps; ++k) {
    const double w = w1((k + 0.5) * dt);
    const Block1 b1 = block1_at(pair, w);
    step2(b1.e01, b1.e10, b1.g, dt, psi1);
    step3(block2_at(pair, w).matrix(), dt, psi2);
    if ((k & 63) == 0 || k == steps - 1) {
      for (int c = 0; c < 2; ++c) {
        out.norm_drift =
            std::max(out.norm_drift, std::fabs(psi1.col(c).norm() - 1.0));
      }
      out.norm_drift = std::max(out.norm_drift, std::fabs(psi2.norm() - 1.0));
    }
  }

  const Eigen::Matrix2d d1_end = dressed_basis(block1_at(pair, w1(t_end)).matrix());
  const Eigen::Matrix3d d2_end = dressed_basis(block2_at(pair, w1(t_end)).matrix());
  out.v1 = d1_end.transpose().cast<Complex>() * psi1;
  const Eigen::Vector3cd overlaps = d2_end.transpose().cast<Complex>() * psi2;
  out.v11 = overlaps(0);
  out.leak02 = overlaps(1);
  out.leak20 = overlaps(2);
  return out;
}

CzDetail detail_from_outputs(const BlockOutputs& bo, const PhysicalPulse& pulse) {
  CzDetail d;
  d.point.td = pulse.duration;
  d.point.amplitude = pulse.amplitude;
  const double p01 = std::arg(bo.v1(0, 0));
  const double p10 = std::arg(bo.v1(1, 1));
  const double p11 = std::arg(bo.v11);
  d.point.cond_phase = wrap_phase(p11 - p01 - p10);
  d.point.pe = std::norm(bo.leak02) + std::norm(bo.leak20);
  d.swap_error = std::norm(bo.v1(1, 0));
  d.norm_drift = bo.norm_drift;
  return d;
}

}  // namespace

Eigen::MatrixXd cz_hamiltonian(const TransmonPair& pair, double omega1) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(6, 6);
  h(1, 1) = pair.omega2;
  h(2, 2) = omega1;
  h(3, 3) = omega1 + pair.omega2;
  h(4, 4) = 2.0 * pair.omega2 + pair.alpha2;
  h(5, 5) = 2.0 * omega1 + pair.alpha1;
  h(1, 2) = h(2, 1) = pair.g;
  const double sg = std::sqrt(2.0) * pair.g;
  h(3, 4) = h(4, 3) = sg;
  h(3, 5) = h(5, 3) = sg;
  return h;
}

CzDetail cz_simulate_detail(const TransmonPair& pair, const PhysicalPulse& pulse,
                            const CzOptions& opt) {
  return detail_from_outputs(run_blocks(pair, pulse, opt), pulse);
}

GatePoint cz_simulate(const TransmonPair& pair, const PhysicalPulse& pulse,
                      const CzOptions& opt) {
  return cz_simulate_detail(pair, pulse, opt).point;
}

CzDetail cz_simulate_reference(const TransmonPair& pair,
                               const PhysicalPulse& pulse,
                               const CzOptions& opt) {
  PchipInterpolant w1(pulse.time, pulse.omega1);
  const double t_end = pulse.time.back();
  const int steps = std::max<int>(
      200, static_cast<int>(std::llround(opt.steps_per_td * t_end / pulse.duration)));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cz_hamiltonian(pair, w1(0.0)));
  Eigen::MatrixXcd psi0(6, 3);
  // Dressed initial states for bare |01>, |10>, |11>.
  const int bare[3] = {1, 2, 3};
  Eigen::MatrixXd dressed_ini(6, 6);
  {
    std::vector<bool> used(6, false);
    for (int b = 0; b < 6; ++b) {
      int best = -1;
      double best_mag = -1.0;
      for (int j = 0; j < 6; ++j) {
        if (used[j]) continue;
        const double mag = std::fabs(es.eigenvectors()(b, j));
        if (mag > best_mag) {
          best_mag = mag;
          best = j;
        }
      }
      used[best] = true;
      const double sign = es.eigenvectors()(b, best) >= 0.0 ? 1.0 : -1.0;
      dressed_ini.col(b) = sign * es.eigenvectors().col(best);
    }
  }
  for (int c = 0; c < 3; ++c) psi0.col(c) = dressed_ini.col(bare[c]).cast<Complex>();

  const HamiltonianFn h_of_t = [&](double t) -> Eigen::MatrixXcd {
    return cz_hamiltonian(pair, w1(t)).cast<Complex>();
  };
  const PropagationResult res = propagate(h_of_t, psi0, 0.0, t_end, steps);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_end(
      cz_hamiltonian(pair, w1(t_end)));
  Eigen::MatrixXd dressed_end(6, 6);
  {
    std::vector<bool> used(6, false);
    for (int b = 0; b < 6; ++b) {
      int best = -1;
      double best_mag = -1.0;
      for (int j = 0; j < 6; ++j) {
        if (used[j]) continue;
        const double mag = std::fabs(es_end.eigenvectors()(b, j));
        if (mag > best_mag) {
          best_mag = mag;
          best = j;
        }
      }
      used[best] = true;
      const double sign = es_end.eigenvectors()(b, best) >= 0.0 ? 1.0 : -1.0;
      dressed_end.col(b) = sign * es_end.eigenvectors().col(best);
    }
  }

  BlockOutputs bo;
  bo.v1(0, 0) = dressed_end.col(1).cast<Complex>().dot(res.states.col(0));
  bo.v1(1, 0) = dressed_end.col(2).cast<Complex>().dot(res.states.col(0));
  bo.v1(0, 1) = dressed_end.col(1).cast<Complex>().dot(res.states.col(1));
  bo.v1(1, 1) = dressed_end.col(2).cast<Complex>().dot(res.states.col(1));
  bo.v11 = dressed_end.col(3).cast<Complex>().dot(res.states.col(2));
  bo.leak02 = dressed_end.col(4).cast<Complex>().dot(res.states.col(2));
  bo.leak20 = dressed_end.col(5).cast<Complex>().dot(res.states.col(2));
  bo.norm_drift = res.norm_drift;
  return detail_from_outputs(bo, pulse);
}

Eigen::MatrixXcd chi_matrix_of_unitary(const Eigen::Matrix4cd& u) {
  // Pauli basis sigma_a (x) sigma_b, index m = 4a + b; chi_mn = c_m conj(c_n)
  // with c_m = Tr(P_m U) / 4.
  static const Eigen::Matrix2cd paulis[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished()};
  Eigen::VectorXcd c(16);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      Eigen::Matrix4cd p;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          p.block<2, 2>(2 * i, 2 * j) = paulis[a](i, j) * paulis[b];
        }
      }
      c(4 * a + b) = (p * u).trace() / 4.0;
    }
  }
  return c * c.adjoint();
}

TomographyResult tomography_of_channel(const Eigen::Matrix4cd& v) {
  TomographyResult out;
  out.chi = chi_matrix_of_unitary(v);
  Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
  cz(3, 3) = -1.0;
  const Eigen::MatrixXcd chi_ideal = chi_matrix_of_unitary(cz);
  const Complex fp = (chi_ideal * out.chi).trace();
  if (std::fabs(fp.imag()) > 1e-9) {
    throw std::runtime_error("tomography: chi trace product has imaginary residue");
  }
  out.fp = fp.real();

  // 16 product inputs {|0>,|1>,|+>,|->}^2. The population missing from the
  // computational block of each output is exactly what leaked.
  const Eigen::Vector2cd kets[4] = {
      Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1),
      Eigen::Vector2cd(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)),
      Eigen::Vector2cd(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0))};
  double l1_sum = 0.0;
  for (int q1 = 0; q1 < 4; ++q1) {
    for (int q2 = 0; q2 < 4; ++q2) {
      Eigen::Vector4cd in;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) in(2 * i + j) = kets[q1](i) * kets[q2](j);
      }
      const Eigen::Vector4cd comp = v * in;
      l1_sum += 1.0 - comp.squaredNorm();
    }
  }
  out.l1 = l1_sum / 16.0;
  out.fg = (4.0 * out.fp + 1.0 - out.l1) / 5.0;
  return out;
}

TomographyResult process_fidelity(const TransmonPair& pair,
                                  const PhysicalPulse& pulse,
                                  const CzOptions& opt) {
  const BlockOutputs bo = run_blocks(pair, pulse, opt);
  Eigen::Matrix4cd v = Eigen::Matrix4cd::Zero();
  v(0, 0) = 1.0;
  v(1, 1) = bo.v1(0, 0);
  v(2, 1) = bo.v1(1, 0);
  v(1, 2) = bo.v1(0, 1);
  v(2, 2) = bo.v1(1, 1);
  v(3, 3) = bo.v11;
  const double phi01 = std::arg(v(1, 1));
  const double phi10 = std::arg(v(2, 2));
  Eigen::Vector4cd corr;
  corr << 1.0, std::polar(1.0, -phi01), std::polar(1.0, -phi10),
      std::polar(1.0, -(phi01 + phi10));
  v = corr.asDiagonal() * v;
  return tomography_of_channel(v);
}

double two_level_leakage_sim(const ControlTrajectory& traj, double td,
                             double delta, double eps_ini, int steps,
                             double theta_mid) {
  const double theta_ini = std::atan2(delta, eps_ini);
  const ControlTrajectory scaled = rescale_trajectory(traj, theta_ini, theta_mid);
  const TimeFrameMap map = time_frame_invert(scaled, td, delta);
  PchipInterpolant theta_of_t(map.t, scaled.theta);
  if (steps <= 0) steps = std::max(8000, static_cast<int>(80.0 * td));
  const double dt = td / steps;

  Eigen::Matrix<Complex, 2, 1> psi;
  psi << -std::sin(0.5 * theta_ini), std::cos(0.5 * theta_ini);
  for (int k = 0; k < steps; ++k) {
    const double th = theta_of_t((k + 0.5) * dt);
    const double eps = delta * std::cos(th) / std::sin(th);
    step2(0.5 * eps, -0.5 * eps, 0.5 * delta, dt, psi);
  }
  const double th_end = scaled.theta.back();
  const Complex excited =
      std::cos(0.5 * th_end) * psi(0) + std::sin(0.5 * th_end) * psi(1);
  return std::norm(excited);
}

double two_level_linear_sweep(const LzParams& p, double span_in_delta,
                              int steps) {
  if (!(p.alpha > 0.0) || !(p.delta > 0.0)) {
    throw std::invalid_argument("two_level_linear_sweep: need alpha, delta > 0");
  }
  const double span = span_in_delta * p.delta;
  const double t_max = span / p.alpha;
  const double omega_max = std::hypot(span, p.delta);
  if (steps <= 0) {
    steps = static_cast<int>(std::ceil(2.0 * t_max * omega_max / 0.05));
    steps = std::max(steps, 20000);
  }
  const double dt = 2.0 * t_max / steps;

  const double theta0 = std::atan2(p.delta, -span);
  Eigen::Matrix<Complex, 2, 1> psi;
  psi << -std::sin(0.5 * theta0), std::cos(0.5 * theta0);
  for (int k = 0; k < steps; ++k) {
    const double eps = p.alpha * (-t_max + (k + 0.5) * dt);
    step2(0.5 * eps, -0.5 * eps, 0.5 * p.delta, dt, psi);
  }
  const double theta1 = std::atan2(p.delta, span);
  const Complex excited =
      std::cos(0.5 * theta1) * psi(0) + std::sin(0.5 * theta1) * psi(1);
  return std::norm(excited);
}

}  // namespace qpulse
