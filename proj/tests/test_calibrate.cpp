#include <doctest.h>

#include <cmath>

#include "qpulse/calibrate.hpp"
#include "qpulse/design.hpp"
#include "qpulse/dpss.hpp"

using namespace qpulse;

namespace {
constexpr double kPi = 3.14159265358979323846;

ControlTrajectory small_trajectory() {
  const TransmonPair pair = default_pair();
  const auto res = dpss(SlepianSpec{201, 2.9 / 201, 1});
  const double th_ini = std::atan2(pair.coupling_gap(), pair.eps_idle());
  return normalize_trajectory(res.pulse, th_ini, 0.5 * kPi);
}

ScanResult synthetic_scan(const std::function<double(double, double)>& phase,
                          const std::function<double(double, double)>& pe,
                          const std::vector<double>& td,
                          const std::vector<double>& a) {
  ScanResult s;
  s.td = td;
  s.a = a;
  s.phase.assign(td.size(), std::vector<double>(a.size()));
  s.pe.assign(td.size(), std::vector<double>(a.size()));
  for (size_t i = 0; i < td.size(); ++i) {
    for (size_t j = 0; j < a.size(); ++j) {
      s.phase[i][j] = phase(td[i], a[j]);
      s.pe[i][j] = pe(td[i], a[j]);
    }
  }
  return s;
}
}  // namespace

TEST_SUITE("pi_contour") {
  TEST_CASE("linear synthetic surface crosses at A = 1") {
    const auto s = synthetic_scan([](double, double a) { return a * kPi; },
                                  [](double, double) { return 1e-5; },
                                  linspace_step(40, 42, 1.0),
                                  linspace_step(0.8, 1.0, 0.01));
    const auto curve = pi_contour(s);
    REQUIRE(curve.points.size() == 3);
    for (const auto& p : curve.points) {
      CHECK(p.a == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(p.pe == doctest::Approx(1e-5).epsilon(1e-9));
    }
  }

  TEST_CASE("offset surface shifts the contour down") {
    const auto base = synthetic_scan(
        [](double, double a) { return 3.5 * a; },
        [](double, double) { return 1e-5; }, linspace_step(40, 41, 1.0),
        linspace_step(0.8, 1.0, 0.002));
    const auto shifted = synthetic_scan(
        [](double, double a) { return 3.5 * a + 0.1 * kPi; },
        [](double, double) { return 1e-5; }, linspace_step(40, 41, 1.0),
        linspace_step(0.8, 1.0, 0.002));
    const double a0 = pi_contour(base).points.front().a;
    const double a1 = pi_contour(shifted).points.front().a;
    CHECK(a1 < a0);
    CHECK(a0 == doctest::Approx(kPi / 3.5).epsilon(1e-6));
    CHECK(a1 == doctest::Approx(0.9 * kPi / 3.5).epsilon(1e-6));
  }

  TEST_CASE("no crossing is dropped with a record") {
    const auto s = synthetic_scan([](double, double a) { return 0.5 * a; },
                                  [](double, double) { return 1e-5; },
                                  linspace_step(40, 42, 1.0),
                                  linspace_step(0.8, 1.0, 0.01));
    const auto curve = pi_contour(s);
    CHECK(curve.points.empty());
    CHECK(curve.dropped_td.size() == 3);
  }

  TEST_CASE("ambiguous double crossing throws") {
    const auto s = synthetic_scan(
        [](double, double a) {
          // rises through pi then folds back below it
          return kPi * (1.0 + 0.4 * std::sin((a - 0.8) / 0.2 * 2.0 * kPi));
        },
        [](double, double) { return 1e-5; }, linspace_step(40, 40.5, 0.5),
        linspace_step(0.8, 1.0, 0.002));
    CHECK_THROWS_AS(pi_contour(s), std::runtime_error);
  }
}

TEST_SUITE("operating_points") {
  TEST_CASE("decaying sinusoid tops near the crests") {
    // pe(td) = e^{-td/50} (1 + cos td)/2 + 1e-6; oracle by dense sampling.
    auto pe_of = [](double td) {
      return std::exp(-td / 50.0) * 0.5 * (1.0 + std::cos(td)) + 1e-6;
    };
    ContourCurve curve;
    for (double td = 30.0; td <= 80.0; td += 0.05) {
      curve.points.push_back(ContourPoint{td, 0.9, pe_of(td)});
    }
    const auto ops = operating_points(curve);
    REQUIRE(ops.points.size() >= 7);
    for (const auto& op : ops.points) {
      double oracle = op.td;
      double best = 0.0;
      for (double t = op.td - 1.0; t <= op.td + 1.0; t += 1e-4) {
        if (pe_of(t) > best) {
          best = pe_of(t);
          oracle = t;
        }
      }
      CHECK(op.td == doctest::Approx(oracle).epsilon(2e-3));
      CHECK(op.pe == doctest::Approx(best).epsilon(1e-2));
    }
    CHECK(ops.points.front().is_best);
  }

  TEST_CASE("strictly decreasing curve yields no operating points") {
    ContourCurve curve;
    for (double td = 30.0; td <= 50.0; td += 0.5) {
      curve.points.push_back(ContourPoint{td, 0.9, std::exp(-td / 10.0)});
    }
    const auto ops = operating_points(curve);
    CHECK(ops.points.empty());
    CHECK(ops.monotone);
  }

  TEST_CASE("low prominence ripples filtered") {
    ContourCurve curve;
    for (double td = 30.0; td <= 50.0; td += 0.1) {
      const double ripple = 1.0 + 0.05 * std::cos(3.0 * td);
      curve.points.push_back(ContourPoint{td, 0.9, 1e-4 * ripple});
    }
    const auto ops = operating_points(curve);
    CHECK(ops.points.empty());
  }
}

TEST_SUITE("scan") {
  TEST_CASE("serial and parallel agree bitwise") {
    const TransmonPair pair = default_pair();
    const FluxMapParams fm = default_flux_params();
    const auto traj = small_trajectory();
    const ScanGrids grids{linspace_step(46.0, 48.0, 0.5),
                          linspace_step(0.98, 1.0, 0.005)};
    const ScanResult a = scan(traj, pair, fm, grids);
    const ScanResult b = scan_serial(traj, pair, fm, grids);
    for (size_t i = 0; i < grids.td.size(); ++i) {
      for (size_t j = 0; j < grids.a.size(); ++j) {
        CHECK(a.phase[i][j] == b.phase[i][j]);
        CHECK(a.pe[i][j] == b.pe[i][j]);
      }
    }
  }

  TEST_CASE("single point grid wraps one gate point") {
    const TransmonPair pair = default_pair();
    const FluxMapParams fm = default_flux_params();
    const auto traj = small_trajectory();
    const ScanGrids grids{{47.0}, {0.99}};
    const ScanResult s = scan(traj, pair, fm, grids);
    const GatePoint gp = scan_point(traj, pair, fm, 47.0, 0.99);
    CHECK(s.phase[0][0] == gp.cond_phase);
    CHECK(s.pe[0][0] == gp.pe);
  }

  TEST_CASE("contour consistency and refinement stability") {
    const TransmonPair pair = default_pair();
    const FluxMapParams fm = default_flux_params();
    const auto traj = small_trajectory();
    const ScanGrids fine{linspace_step(46.0, 48.0, 0.5),
                         linspace_step(0.97, 1.0, 0.001)};
    const ScanGrids coarse{fine.td, linspace_step(0.97, 1.0, 0.002)};
    const auto curve_f = pi_contour(scan(traj, pair, fm, fine));
    const auto curve_c = pi_contour(scan(traj, pair, fm, coarse));
    REQUIRE(curve_f.points.size() == curve_c.points.size());
    for (size_t i = 0; i < curve_f.points.size(); ++i) {
      // Doubling the amplitude grid density moves the contour < 1e-4.
      CHECK(std::fabs(curve_f.points[i].a - curve_c.points[i].a) < 1e-4);
      // Re-simulating at the contour point lands on phi = pi.
      const GatePoint gp = scan_point(traj, pair, fm, curve_f.points[i].td,
                                      curve_f.points[i].a);
      CHECK(std::fabs(std::fabs(gp.cond_phase) - kPi) < 1e-3);
    }
  }

  TEST_CASE("grid validation") {
    const TransmonPair pair = default_pair();
    const FluxMapParams fm = default_flux_params();
    const auto traj = small_trajectory();
    CHECK_THROWS_AS(scan(traj, pair, fm, ScanGrids{{}, {0.9}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(scan(traj, pair, fm, ScanGrids{{50.0, 49.0}, {0.9}}),
                    std::invalid_argument);
  }
}
