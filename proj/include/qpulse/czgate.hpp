#ifndef QPULSE_CZGATE_HPP
#define QPULSE_CZGATE_HPP

#include <Eigen/Dense>

#include <optional>

#include "qpulse/leakage.hpp"
#include "qpulse/pipeline.hpp"
#include "qpulse/system.hpp"

namespace qpulse {

// Six-level two-transmon Hamiltonian in the ordered basis
// {|00>, |01>, |10>, |11>, |02>, |20>}; real symmetric.
Eigen::MatrixXd cz_hamiltonian(const TransmonPair& pair, double omega1);

struct GatePoint {
  double td = 0.0;
  double amplitude = 0.0;
  double cond_phase = 0.0;  // phi' = phi11 - phi01 - phi10 in (-pi, pi]
  double pe = 0.0;          // |02> + |20> population from the |11> run
  std::optional<double> fg;
  std::optional<double> l1;
};

struct CzDetail {
  GatePoint point;
  double swap_error = 0.0;  // |01> -> |10> population transfer
  double norm_drift = 0.0;
};

struct CzOptions {
  int steps_per_td = 4000;  // propagation steps per designed duration
};

// Propagates |01>, |10>, |11> (dressed at the waveform start, matched to bare
// labels by maximum overlap) under omega1(t) interpolated from the pulse;
// extracts the conditional phase and leakage at the final sample.
CzDetail cz_simulate_detail(const TransmonPair& pair, const PhysicalPulse& pulse,
                            const CzOptions& opt = {});
GatePoint cz_simulate(const TransmonPair& pair, const PhysicalPulse& pulse,
                      const CzOptions& opt = {});

// Same contract through the generic dense propagator; kept as the slow
// reference for the block-structured fast path.
CzDetail cz_simulate_reference(const TransmonPair& pair,
                               const PhysicalPulse& pulse,
                               const CzOptions& opt = {});

struct TomographyResult {
  double fp = 0.0;  // process fidelity Tr(chi_ideal chi)
  double fg = 0.0;  // average gate fidelity (d1 Fp + 1 - L1)/(d1 + 1)
  double l1 = 0.0;  // state leakage averaged over the 16 product inputs
  Eigen::MatrixXcd chi;  // 16x16 process matrix in the two-qubit Pauli basis
};

// Process tomography on the 16 inputs {|0>,|1>,|+>,|->}^2 with virtual
// Rz(-phi01), Rz(-phi10) corrections, compared against the ideal CZ.
TomographyResult process_fidelity(const TransmonPair& pair,
                                  const PhysicalPulse& pulse,
                                  const CzOptions& opt = {});

// chi-matrix fidelity helpers, exposed for direct channel checks. The channel
// matrix v is the computational block of the evolution; sub-unit column norms
// account for leakage.
Eigen::MatrixXcd chi_matrix_of_unitary(const Eigen::Matrix4cd& u);
TomographyResult tomography_of_channel(const Eigen::Matrix4cd& v);

// Two-level leakage run (Appendix-style validity check): builds eps(t) from
// the pipeline, propagates from the instantaneous ground state, returns the
// final excited-state population. theta_mid defaults to the full swing to the
// degeneracy point (eps_mid = 0).
double two_level_leakage_sim(const ControlTrajectory& traj, double td,
                             double delta, double eps_ini, int steps = 0,
                             double theta_mid = 1.5707963267948966);

// Linear sweep eps = alpha t across +-span_in_delta * Delta; returns the
// final population in the instantaneous excited state.
double two_level_linear_sweep(const LzParams& p, double span_in_delta = 20.0,
                              int steps = 0);

}  // namespace qpulse

#endif
