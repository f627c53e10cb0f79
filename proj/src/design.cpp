#include "qpulse/design.hpp"

#include <cmath>
#include <stdexcept>

#include "qpulse/dpss.hpp"
#include "qpulse/system.hpp"

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

Pulse half_sum_normalized(const Pulse& p) {
  validate_pulse(p);
  if (p.symmetry != Symmetry::kAntisymmetric) {
    throw std::invalid_argument("half_sum_normalized: pulse must be antisymmetric");
  }
  const int n = p.size();
  const int half = (n % 2 == 1) ? (n - 1) / 2 : n / 2 - 1;
  double half_sum = 0.0;
  for (int i = 0; i <= half; ++i) half_sum += p.samples[i];
  if (half_sum == 0.0) {
    throw std::invalid_argument("half_sum_normalized: zero half-sum");
  }
  Pulse out = p;
  for (double& v : out.samples) v /= half_sum;
  return out;
}

double trajectory_sidelobe_level(const Pulse& normalized, int spectrum_grid) {
  const Spectrum s = dtft(normalized, spectrum_grid);
  const int m = static_cast<int>(s.omega.size());
  int peak = 0;
  for (int j = 1; j < m; ++j) {
    if (std::fabs(s.amplitude[j]) > std::fabs(s.amplitude[peak])) peak = j;
  }
  int zero = -1;
  for (int j = peak; j + 1 < m; ++j) {
    if (s.amplitude[j] == 0.0 || (s.amplitude[j] > 0) != (s.amplitude[j + 1] > 0)) {
      zero = j + 1;
      break;
    }
  }
  if (zero < 0) return 0.0;
  double level = 0.0;
  for (int j = zero; j < m; ++j) {
    level = std::max(level, std::fabs(s.amplitude[j]));
  }
  return level;
}

TrajectoryDesign design_slepian_trajectory(int n, double nw, double gamma,
                                           int spectrum_grid) {
  TrajectoryDesign d;
  d.family = "slepian";
  d.pulse = dpss(SlepianSpec{n, nw / n, 1}).pulse;
  const Pulse norm = half_sum_normalized(d.pulse);
  d.sidelobe_level = trajectory_sidelobe_level(norm, spectrum_grid);
  d.gamma = (gamma > 0.0) ? gamma : d.sidelobe_level;
  d.omega_star = omega_star(norm, dtft(norm, spectrum_grid), d.gamma);
  return d;
}

WcaSpec chebyshev2_wca_spec(int n, double omega_s, int grid_density) {
  if (!(omega_s > 0.0 && omega_s < kPi)) {
    throw std::invalid_argument("chebyshev2_wca_spec: omega_s must be in (0, pi)");
  }
  WcaSpec spec;
  spec.n = n;
  spec.case_id = (n % 2 == 1) ? WcaCase::kCase3 : WcaCase::kCase4;
  spec.grid_density = grid_density;
  spec.bands.push_back(constant_band(0.5 * omega_s, 0.5 * omega_s, 1.0, 1.0));
  const double hi = (spec.case_id == WcaCase::kCase3) ? kPi * (1.0 - 0.25 / n) : kPi;
  spec.bands.push_back(constant_band(omega_s, hi, 0.0, 1.0));
  return spec;
}

TrajectoryDesign design_chebyshev2_trajectory(int n, double gamma,
                                              const Chebyshev2Options& opt) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("design_chebyshev2_trajectory: gamma in (0,1)");
  }
  // Each solve seeds the next with its extremal set mapped onto the new
  // bands; deep equiripple designs do not converge from a cold start.
  std::vector<double> seed_extremals;
  double seed_omega_s = 0.0;
  auto level_at = [&](double omega_s, Pulse* keep) {
    WcaSpec spec = chebyshev2_wca_spec(n, omega_s, opt.grid_density);
    if (!seed_extremals.empty()) {
      const double hi_band = spec.bands.back().hi;
      std::vector<double> mapped;
      mapped.reserve(seed_extremals.size());
      const double old_lo = seed_omega_s;
      for (double w : seed_extremals) {
        if (w < old_lo) {
          mapped.push_back(0.5 * omega_s);  // the point band
        } else {
          mapped.push_back(omega_s + (w - old_lo) / (hi_band - old_lo) *
                                         (hi_band - omega_s));
        }
      }
      spec.initial_reference = std::move(mapped);
    }
    const WcaResult res = wca_design_full(spec);
    seed_extremals = res.diag.extremal_omegas;
    seed_omega_s = omega_s;
    const Pulse norm = half_sum_normalized(res.pulse);
    if (keep) *keep = res.pulse;
    return trajectory_sidelobe_level(norm, opt.spectrum_grid);
  };

  // Grow the stopband edge from a shallow design until gamma is met.
  double lo = kTwoPi * 1.2 / n;
  double hi = lo;
  Pulse best;
  double level_hi = level_at(hi, &best);
  if (level_hi <= gamma) {
    throw std::invalid_argument(
        "design_chebyshev2_trajectory: gamma too loose for this length");
  }
  for (int guard = 0;; ++guard) {
    if (guard >= 40) {
      throw std::runtime_error("design_chebyshev2_trajectory: bracket not found");
    }
    const double next = hi * 1.35;
    Pulse candidate;
    const double level = level_at(next, &candidate);
    if (level <= gamma) {
      lo = hi;
      hi = next;
      best = std::move(candidate);
      level_hi = level;
      break;
    }
    lo = next;
    hi = next;
  }

  TrajectoryDesign d;
  d.family = "chebyshev2";
  d.gamma = gamma;
  double best_omega = hi;
  double best_level = level_hi;

  for (int it = 0; it < opt.max_bisections; ++it) {
    if (best_level >= opt.accept_ratio * gamma) break;
    if (hi - lo < 1e-3 * kTwoPi / n) break;
    const double mid = 0.5 * (lo + hi);
    Pulse candidate;
    const double level = level_at(mid, &candidate);
    if (level <= gamma) {
      hi = mid;
      best = std::move(candidate);
      best_omega = mid;
      best_level = level;
    } else {
      lo = mid;
    }
  }

  d.pulse = std::move(best);
  d.omega_s = best_omega;
  d.sidelobe_level = best_level;
  const Pulse norm = half_sum_normalized(d.pulse);
  d.omega_star = omega_star(norm, dtft(norm, opt.spectrum_grid), gamma);
  return d;
}

}  // namespace qpulse
