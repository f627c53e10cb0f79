#include "qpulse/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpulse/interp.hpp"

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_delta(double x) {
  double r = std::remainder(x, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

template <bool Parallel>
ScanResult scan_impl(const ControlTrajectory& traj, const TransmonPair& pair,
                     const FluxMapParams& fm, const ScanGrids& grids,
                     const ScanOptions& opt) {
  if (grids.td.empty() || grids.a.empty()) {
    throw std::invalid_argument("scan: empty grid");
  }
  for (size_t i = 1; i < grids.td.size(); ++i) {
    if (grids.td[i] <= grids.td[i - 1]) {
      throw std::invalid_argument("scan: td grid must ascend");
    }
  }
  for (size_t j = 1; j < grids.a.size(); ++j) {
    if (grids.a[j] <= grids.a[j - 1]) {
      throw std::invalid_argument("scan: amplitude grid must ascend");
    }
  }
  const int nt = static_cast<int>(grids.td.size());
  const int na = static_cast<int>(grids.a.size());
  ScanResult res;
  res.td = grids.td;
  res.a = grids.a;
  res.phase.assign(nt, std::vector<double>(na, 0.0));
  res.pe.assign(nt, std::vector<double>(na, 0.0));

  std::vector<std::string> failures(static_cast<size_t>(nt) * na);
  bool failed = false;
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (int idx = 0; idx < nt * na; ++idx) {
    const int i = idx / na;
    const int j = idx % na;
    try {
      const GatePoint gp =
          scan_point(traj, pair, fm, grids.td[i], grids.a[j], opt);
      res.phase[i][j] = gp.cond_phase;
      res.pe[i][j] = gp.pe;
    } catch (const std::exception& e) {
      failures[idx] = e.what();
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) {
    for (int idx = 0; idx < nt * na; ++idx) {
      if (!failures[idx].empty()) {
        throw std::runtime_error(
            "scan: point (td=" + std::to_string(grids.td[idx / na]) +
            ", A=" + std::to_string(grids.a[idx % na]) +
            ") failed: " + failures[idx]);
      }
    }
  }
  return res;
}

}  // namespace

std::vector<double> linspace_step(double lo, double hi, double step) {
  const int count = static_cast<int>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k) v[k] = lo + k * step;
  return v;
}

ScanGrids default_scan_grids() {
  return ScanGrids{linspace_step(30.0, 80.0, 0.1),
                   linspace_step(0.80, 1.00, 0.002)};
}

GatePoint scan_point(const ControlTrajectory& traj, const TransmonPair& pair,
                     const FluxMapParams& fm, double td, double amplitude,
                     const ScanOptions& opt) {
  const bool with_flux = opt.hardware.has_value();
  PhysicalPulse pulse = build_physical_pulse(traj, td, amplitude, pair, fm,
                                             td / opt.dt_divisor, with_flux);
  if (opt.hardware) pulse = apply_hardware(pulse, *opt.hardware, fm);
  return cz_simulate(pair, pulse, opt.cz);
}

ScanResult scan(const ControlTrajectory& traj, const TransmonPair& pair,
                const FluxMapParams& fm, const ScanGrids& grids,
                const ScanOptions& opt) {
  return scan_impl<true>(traj, pair, fm, grids, opt);
}

ScanResult scan_serial(const ControlTrajectory& traj, const TransmonPair& pair,
                       const FluxMapParams& fm, const ScanGrids& grids,
                       const ScanOptions& opt) {
  return scan_impl<false>(traj, pair, fm, grids, opt);
}

ContourCurve pi_contour(const ScanResult& scan) {
  const int nt = static_cast<int>(scan.td.size());
  const int na = static_cast<int>(scan.a.size());
  ContourCurve curve;
  std::vector<double> ambiguous;

  for (int i = 0; i < nt; ++i) {
    // Unwrap along A; the grid is dense enough that true steps stay below pi.
    std::vector<double> u(na);
    u[0] = scan.phase[i][0];
    for (int j = 1; j < na; ++j) {
      u[j] = u[j - 1] + wrap_delta(scan.phase[i][j] - u[j - 1]);
    }
    int crossing = -1;
    int crossings = 0;
    for (int j = 0; j + 1 < na; ++j) {
      if ((u[j] - kPi) * (u[j + 1] - kPi) <= 0.0 && u[j] != u[j + 1]) {
        if (crossing < 0) crossing = j;
        ++crossings;
      }
    }
    if (crossings == 0) {
      curve.dropped_td.push_back(scan.td[i]);
      continue;
    }
    if (crossings > 1) {
      ambiguous.push_back(scan.td[i]);
      continue;
    }

    // Monotone cubic of the local window, inverted by bisection.
    const int lo = std::max(0, crossing - 2);
    const int hi = std::min(na - 1, crossing + 3);
    std::vector<double> ax(scan.a.begin() + lo, scan.a.begin() + hi + 1);
    std::vector<double> uy(u.begin() + lo, u.begin() + hi + 1);
    PchipInterpolant phase_of_a(ax, uy);
    double a_lo = scan.a[crossing], a_hi = scan.a[crossing + 1];
    const bool rising = u[crossing + 1] > u[crossing];
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (a_lo + a_hi);
      const bool below = phase_of_a(mid) < kPi;
      if (below == rising) {
        a_lo = mid;
      } else {
        a_hi = mid;
      }
    }
    const double a_star = 0.5 * (a_lo + a_hi);

    std::vector<double> ly(hi - lo + 1);
    for (int j = lo; j <= hi; ++j) {
      ly[j - lo] = std::log(std::max(scan.pe[i][j], 1e-300));
    }
    PchipInterpolant logpe_of_a(ax, ly);
    curve.points.push_back(
        ContourPoint{scan.td[i], a_star, std::exp(logpe_of_a(a_star))});
  }

  if (!ambiguous.empty()) {
    std::string msg = "pi_contour: non-monotone phi crossing at td =";
    for (double td : ambiguous) msg += " " + std::to_string(td);
    throw std::runtime_error(msg);
  }
  return curve;
}

OperatingPointsResult operating_points(const ContourCurve& curve,
                                       double min_prominence) {
  const auto& pts = curve.points;
  if (pts.size() < 3) {
    throw std::invalid_argument("operating_points: need >= 3 contour points");
  }
  OperatingPointsResult out;
  const int n = static_cast<int>(pts.size());
  for (int i = 1; i + 1 < n; ++i) {
    if (!(pts[i].pe > pts[i - 1].pe && pts[i].pe > pts[i + 1].pe)) continue;
    // Topographic prominence: reference level on each side is the lowest
    // point between this top and the next higher one (or the curve end).
    // Contour-edge ripples lack the deep flanking nulls of a true leakage
    // lobe and are filtered out here.
    double left_ref = pts[i].pe;
    for (int j = i - 1; j >= 0 && pts[j].pe <= pts[i].pe; --j) {
      left_ref = std::min(left_ref, pts[j].pe);
    }
    double right_ref = pts[i].pe;
    for (int j = i + 1; j < n && pts[j].pe <= pts[i].pe; ++j) {
      right_ref = std::min(right_ref, pts[j].pe);
    }
    const double prominence =
        pts[i].pe / std::max(std::max(left_ref, right_ref), 1e-300);
    if (prominence < min_prominence) continue;

    const double l0 = std::log(std::max(pts[i - 1].pe, 1e-300));
    const double l1 = std::log(std::max(pts[i].pe, 1e-300));
    const double l2 = std::log(std::max(pts[i + 1].pe, 1e-300));
    const double t0 = pts[i - 1].td, t1 = pts[i].td, t2 = pts[i + 1].td;
    const double d01 = (l1 - l0) / (t1 - t0);
    const double d12 = (l2 - l1) / (t2 - t1);
    const double c = (d12 - d01) / (t2 - t0);  // divided-difference parabola
    OperatingPoint op;
    if (c < 0.0) {
      op.td = std::clamp(0.5 * (t0 + t1) - 0.5 * d01 / c, t0, t2);
      op.pe = std::exp(l0 + d01 * (op.td - t0) + c * (op.td - t0) * (op.td - t1));
    } else {
      op.td = t1;
      op.pe = pts[i].pe;
    }
    const double frac = (op.td - t1) / (op.td >= t1 ? (t2 - t1) : (t1 - t0));
    op.a = pts[i].a + frac * (op.td >= t1 ? (pts[i + 1].a - pts[i].a)
                                          : (pts[i].a - pts[i - 1].a));
    out.points.push_back(op);
  }
  if (out.points.empty()) {
    out.monotone = true;
    return out;
  }
  size_t best = 0;
  for (size_t k = 1; k < out.points.size(); ++k) {
    if (out.points[k].td < out.points[best].td) best = k;
  }
  out.points[best].is_best = true;
  return out;
}

}  // namespace qpulse
