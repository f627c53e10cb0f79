// Times the OpenMP scan kernel against the serial reference on a small grid
// and checks that both produce identical results.
#include <chrono>
#include <cstdio>
#include <cstring>

#include <omp.h>

#include "qpulse/calibrate.hpp"
#include "qpulse/design.hpp"

using namespace qpulse;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n = 201;
  double td_step = 0.5;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full") == 0) {
      n = 1001;
      td_step = 0.25;
    }
  }
  const TransmonPair pair = default_pair();
  const FluxMapParams fm = default_flux_params();
  const auto design = design_slepian_trajectory(n, 2.9);
  const double th_ini = std::atan2(pair.coupling_gap(), pair.eps_idle());
  const auto traj =
      normalize_trajectory(design.pulse, th_ini, 1.5707963267948966);
  const ScanGrids grids{linspace_step(42.0, 52.0, td_step),
                        linspace_step(0.96, 1.0, 0.004)};
  const int points = static_cast<int>(grids.td.size() * grids.a.size());

  const auto t0 = Clock::now();
  const ScanResult serial = scan_serial(traj, pair, fm, grids);
  const auto t1 = Clock::now();
  const ScanResult parallel = scan(traj, pair, fm, grids);
  const auto t2 = Clock::now();

  bool identical = true;
  for (size_t i = 0; i < serial.td.size(); ++i) {
    for (size_t j = 0; j < serial.a.size(); ++j) {
      identical = identical && serial.phase[i][j] == parallel.phase[i][j] &&
                  serial.pe[i][j] == parallel.pe[i][j];
    }
  }
  const double ts = seconds(t0, t1);
  const double tp = seconds(t1, t2);
  std::printf("scan grid %zu x %zu (%d points), N=%d\n", grids.td.size(),
              grids.a.size(), points, n);
  std::printf("serial:   %.2f s  (%.2f ms/point)\n", ts, 1e3 * ts / points);
  std::printf("parallel: %.2f s  (%.2f ms/point, %d threads)\n", tp,
              1e3 * tp / points, omp_get_max_threads());
  std::printf("speedup:  %.2fx\n", ts / tp);
  std::printf("results:  %s\n", identical ? "bitwise identical" : "MISMATCH");
  return identical ? 0 : 1;
}
