#include "qpulse/wca.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <cstdio>
#include <cstdlib>

#include "qpulse/chebyshev.hpp"

namespace qpulse {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpreadTol = 1e-10;
constexpr int kMaxIterations = 60;

double q_factor(WcaCase c, double omega) {
  switch (c) {
    case WcaCase::kCase1: return 1.0;
    case WcaCase::kCase2: return std::cos(0.5 * omega);
    case WcaCase::kCase3: return std::sin(omega);
    case WcaCase::kCase4: return std::sin(0.5 * omega);
  }
  return 1.0;
}

int coefficient_count(WcaCase c, int n) {
  switch (c) {
    case WcaCase::kCase1: return (n + 1) / 2;
    case WcaCase::kCase2: return n / 2;
    case WcaCase::kCase3: return (n - 1) / 2;
    case WcaCase::kCase4: return n / 2;
  }
  return 0;
}

void validate_spec(const WcaSpec& spec) {
  const int n = spec.n;
  if (n < 3) throw std::invalid_argument("wca: length must be >= 3");
  const bool odd = (n % 2 == 1);
  const bool needs_odd =
      spec.case_id == WcaCase::kCase1 || spec.case_id == WcaCase::kCase3;
  if (odd != needs_odd) {
    throw std::invalid_argument("wca: case parity does not match pulse length");
  }
  if (spec.bands.empty()) throw std::invalid_argument("wca: no bands given");
  double prev_hi = -1.0;
  for (const auto& b : spec.bands) {
    if (!(b.lo <= b.hi) || b.lo < 0.0 || b.hi > kPi) {
      throw std::invalid_argument("wca: bands must be ascending within [0, pi]");
    }
    if (b.lo <= prev_hi) throw std::invalid_argument("wca: bands must be disjoint");
    prev_hi = b.hi;
    if (!b.desired || !b.weight) {
      throw std::invalid_argument("wca: band desired/weight functions unset");
    }
  }
  const double lo = spec.bands.front().lo;
  const double hi = spec.bands.back().hi;
  switch (spec.case_id) {
    case WcaCase::kCase1: break;
    case WcaCase::kCase2:
      if (hi >= kPi) throw std::invalid_argument("wca: case 2 requires bands below pi");
      break;
    case WcaCase::kCase3:
      if (lo <= 0.0 || hi >= kPi) {
        throw std::invalid_argument("wca: case 3 requires bands inside (0, pi)");
      }
      break;
    case WcaCase::kCase4:
      if (lo <= 0.0) throw std::invalid_argument("wca: case 4 requires bands above 0");
      break;
  }
}

struct DenseGrid {
  std::vector<double> omega;
  std::vector<double> x;        // cos(omega)
  std::vector<double> desired;  // D/Q
  std::vector<double> weight;   // W*Q
  std::vector<int> band_begin;  // per band, index of first grid point
  std::vector<int> band_end;    // one past last
};

DenseGrid build_grid(const WcaSpec& spec) {
  DenseGrid g;
  const int per_band = spec.grid_density * spec.n;
  for (const auto& b : spec.bands) {
    g.band_begin.push_back(static_cast<int>(g.omega.size()));
    const int count = (b.hi > b.lo) ? per_band : 1;
    for (int i = 0; i < count; ++i) {
      const double w =
          (count == 1) ? b.lo : b.lo + (b.hi - b.lo) * i / (count - 1);
      const double q = q_factor(spec.case_id, w);
      const double wt = b.weight(w);
      if (!(wt > 0.0)) {
        throw std::invalid_argument("wca: weight must be positive on bands");
      }
      g.omega.push_back(w);
      g.x.push_back(std::cos(w));
      g.desired.push_back(b.desired(w) / q);
      g.weight.push_back(wt * q);
    }
    g.band_end.push_back(static_cast<int>(g.omega.size()));
  }
  return g;
}

// Reference-set solve and barycentric evaluation of the transformed problem
// E(w) = What(w) (Dhat(w) - P(w)) on x = cos(w).
class ReferenceSolution {
 public:
  ReferenceSolution(const WcaSpec& spec, const std::vector<double>& omegas)
      : case_(spec.case_id), omegas_(omegas) {
    const int m1 = static_cast<int>(omegas.size());
    x_.resize(m1);
    dhat_.resize(m1);
    what_.resize(m1);
    for (int i = 0; i < m1; ++i) {
      const double w = omegas[i];
      const double q = q_factor(case_, w);
      x_[i] = std::cos(w);
      const Band& b = find_band(spec, w);
      dhat_[i] = b.desired(w) / q;
      what_[i] = b.weight(w) * q;
    }
    // Barycentric weights in log scale; only ratios matter downstream.
    std::vector<double> logw(m1, 0.0);
    sign_.assign(m1, 1.0);
    for (int i = 0; i < m1; ++i) {
      for (int j = 0; j < m1; ++j) {
        if (j == i) continue;
        const double d = x_[i] - x_[j];
        logw[i] -= std::log(std::fabs(d));
        if (d < 0.0) sign_[i] = -sign_[i];
      }
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    bary_.resize(m1);
    for (int i = 0; i < m1; ++i) bary_[i] = sign_[i] * std::exp(logw[i] - top);
    if (std::getenv("QPULSE_WCA_DEBUG")) {
      const double bottom = *std::min_element(logw.begin(), logw.end());
      std::fprintf(stderr, "[wca]   logw spread=%.1f  min gap=%.3e\n",
                   top - bottom,
                   [&] {
                     double g = 1e300;
                     for (int i = 1; i < m1; ++i) {
                       g = std::min(g, std::fabs(x_[i] - x_[i - 1]));
                     }
                     return g;
                   }());
    }

    double num = 0.0, den = 0.0;
    for (int i = 0; i < m1; ++i) {
      num += bary_[i] * dhat_[i];
      den += bary_[i] * ((i % 2 == 0) ? 1.0 : -1.0) / what_[i];
    }
    delta_ = num / den;
    node_values_.resize(m1);
    for (int i = 0; i < m1; ++i) {
      node_values_[i] = dhat_[i] - ((i % 2 == 0) ? 1.0 : -1.0) * delta_ / what_[i];
    }
    // Interpolation weights for the m-node subset differ from the reference
    // weights by the factor (x_i - x_m) of the dropped node.
    bary_eval_.resize(m1 - 1);
    for (int i = 0; i + 1 < m1; ++i) {
      bary_eval_[i] = bary_[i] * (x_[i] - x_[m1 - 1]);
    }
  }

  double delta() const { return delta_; }
  const std::vector<double>& node_omegas() const { return omegas_; }
  double node_error(size_t i) const {
    return ((i % 2 == 0) ? 1.0 : -1.0) * delta_;
  }

  // P at arbitrary x through the first m nodes (the last is consistent by
  // construction of delta).
  double eval_p(double x) const {
    const int m = static_cast<int>(bary_eval_.size());
    double num = 0.0, den = 0.0;
    for (int i = 0; i < m; ++i) {
      const double d = x - x_[i];
      if (d == 0.0) return node_values_[i];
      const double c = bary_eval_[i] / d;
      num += c * node_values_[i];
      den += c;
    }
    return num / den;
  }

  double error_at(double omega, const WcaSpec& spec) const {
    const double x = std::cos(omega);
    // At a reference node the error is the alternation value by construction;
    // evaluating W (D - P) there would cancel catastrophically for heavily
    // weighted point bands.
    for (size_t i = 0; i < x_.size(); ++i) {
      if (x == x_[i]) return ((i % 2 == 0) ? 1.0 : -1.0) * delta_;
    }
    const double q = q_factor(case_, omega);
    const Band& b = find_band(spec, omega);
    return b.weight(omega) * q * (b.desired(omega) / q - eval_p(x));
  }

  double amplitude(double omega) const {
    return q_factor(case_, omega) * eval_p(std::cos(omega));
  }

 private:
  static const Band& find_band(const WcaSpec& spec, double w) {
    for (const auto& b : spec.bands) {
      if (w >= b.lo - 1e-15 && w <= b.hi + 1e-15) return b;
    }
    throw std::logic_error("wca: frequency outside all bands");
  }

  WcaCase case_;
  std::vector<double> omegas_;
  double delta_ = 0.0;
  std::vector<double> x_, dhat_, what_, bary_, bary_eval_, sign_, node_values_;
};

struct Candidate {
  double omega;
  double error;
  bool movable;        // interior grid extremum; band edges and points stay put
  bool pinned = false; // zero-width band: carries the only nonzero desired
                       // value in window designs, so trimming never drops it
};

// Iterated three-point parabolic refinement of an interior extremum.
Candidate refine_extremum(const WcaSpec& spec, const ReferenceSolution& ref,
                          double lo, double hi, double omega, double h) {
  double e0 = ref.error_at(omega, spec);
  for (int pass = 0; pass < 3; ++pass) {
    const double a = std::max(lo, omega - h);
    const double b = std::min(hi, omega + h);
    const double ea = ref.error_at(a, spec);
    const double eb = ref.error_at(b, spec);
    const double denom = ea - 2.0 * e0 + eb;
    if (denom == 0.0) break;
    double step = 0.5 * (ea - eb) / denom * h;
    step = std::clamp(step, -h, h);
    const double cand = std::clamp(omega + step, lo, hi);
    const double ec = ref.error_at(cand, spec);
    if (std::fabs(ec) >= std::fabs(e0)) {
      omega = cand;
      e0 = ec;
    }
    h *= 0.25;
  }
  return Candidate{omega, e0, true};
}

std::vector<Candidate> pick_extrema(const WcaSpec& spec, const DenseGrid& grid,
                                    const ReferenceSolution& ref,
                                    const std::vector<double>& reference,
                                    std::vector<double>& error_scratch) {
  const int total = static_cast<int>(grid.omega.size());
  error_scratch.resize(total);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < total; ++j) {
    error_scratch[j] = grid.weight[j] * (grid.desired[j] - ref.eval_p(grid.x[j]));
  }
  // Grid points that coincide with reference nodes take their alternation
  // value directly; the weighted difference cancels badly at point bands.
  for (size_t i = 0; i < ref.node_omegas().size(); ++i) {
    const auto it = std::lower_bound(grid.omega.begin(), grid.omega.end(),
                                     ref.node_omegas()[i]);
    if (it != grid.omega.end() && *it == ref.node_omegas()[i]) {
      error_scratch[it - grid.omega.begin()] = ref.node_error(i);
    }
  }

  std::vector<Candidate> cands;
  std::vector<double> point_bands;
  for (size_t b = 0; b < grid.band_begin.size(); ++b) {
    const int lo = grid.band_begin[b];
    const int hi = grid.band_end[b];
    if (hi - lo == 1) {
      point_bands.push_back(grid.omega[lo]);
      cands.push_back(Candidate{grid.omega[lo], error_scratch[lo], false, true});
      continue;
    }
    const double h = grid.omega[lo + 1] - grid.omega[lo];
    for (int j = lo; j < hi; ++j) {
      const double e = std::fabs(error_scratch[j]);
      const bool left_ok = (j == lo) || e >= std::fabs(error_scratch[j - 1]);
      const bool right_ok = (j == hi - 1) || e > std::fabs(error_scratch[j + 1]);
      if (!(left_ok && right_ok)) continue;
      if (j == lo || j == hi - 1) {
        cands.push_back(Candidate{grid.omega[j], error_scratch[j], false});
      } else {
        cands.push_back(refine_extremum(spec, ref, grid.omega[lo],
                                        grid.omega[hi - 1], grid.omega[j], h));
      }
    }
  }
  // The current reference carries exact alternating +-delta values, so the
  // merged candidate set can never fall below m+1 alternations.
  for (double w : reference) {
    const bool pinned =
        std::find(point_bands.begin(), point_bands.end(), w) != point_bands.end();
    cands.push_back(Candidate{w, ref.error_at(w, spec), false, pinned});
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.omega < b.omega; });

  // Collapse same-sign runs, keeping the largest magnitude in each run
  // (pins win their run regardless of magnitude).
  std::vector<Candidate> alt;
  for (const auto& c : cands) {
    if (!alt.empty() && (alt.back().error > 0) == (c.error > 0)) {
      if (!alt.back().pinned &&
          (c.pinned || std::fabs(c.error) > std::fabs(alt.back().error))) {
        alt.back() = c;
      }
    } else {
      alt.push_back(c);
    }
  }
  return alt;
}

void trim_to_size(std::vector<Candidate>& alt, int target) {
  while (static_cast<int>(alt.size()) > target) {
    const int excess = static_cast<int>(alt.size()) - target;
    if (excess == 1) {
      const bool drop_front =
          alt.back().pinned ||
          (!alt.front().pinned &&
           std::fabs(alt.front().error) < std::fabs(alt.back().error));
      if (drop_front && !alt.front().pinned) {
        alt.erase(alt.begin());
        continue;
      }
      if (!alt.back().pinned) {
        alt.pop_back();
        continue;
      }
      throw std::logic_error("wca: both endpoint extrema pinned");
    }
    int best = -1;
    double best_mag = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < alt.size(); ++i) {
      if (alt[i].pinned || alt[i + 1].pinned) continue;
      const double mag =
          std::max(std::fabs(alt[i].error), std::fabs(alt[i + 1].error));
      if (mag < best_mag) {
        best_mag = mag;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) {
      throw std::logic_error("wca: cannot trim reference without breaking pins");
    }
    alt.erase(alt.begin() + best, alt.begin() + best + 2);
  }
}

// Exact reconstruction by sampling A(w) = Q(w) P(w) at the N DFT frequencies.
Pulse synthesize_pulse(const WcaSpec& spec, const ReferenceSolution& ref) {
  const int n = spec.n;
  const bool antisym =
      spec.case_id == WcaCase::kCase3 || spec.case_id == WcaCase::kCase4;
  // Mirror parity of A(2 pi - w) relative to A(w).
  const double mirror =
      (spec.case_id == WcaCase::kCase1 || spec.case_id == WcaCase::kCase4)
          ? 1.0
          : -1.0;
  std::vector<double> amp(n);
  for (int k = 0; k <= n / 2; ++k) {
    amp[k] = ref.amplitude(2.0 * kPi * k / n);
  }
  for (int k = n / 2 + 1; k < n; ++k) amp[k] = mirror * amp[n - k];

  const std::complex<double> phase_c =
      antisym ? std::complex<double>(0.0, 1.0) : std::complex<double>(1.0, 0.0);
  std::vector<double> h(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    std::complex<double> acc(0.0, 0.0);
    const double shift = i - 0.5 * (n - 1);
    for (int k = 0; k < n; ++k) {
      const double ang = 2.0 * kPi * k * shift / n;
      acc += amp[k] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    h[i] = (phase_c * acc).real() / n;
  }

  Pulse p;
  p.samples = std::move(h);
  p.symmetry = antisym ? Symmetry::kAntisymmetric : Symmetry::kSymmetric;
  p.label = "wca_case" + std::to_string(static_cast<int>(spec.case_id));
  const double sign = antisym ? -1.0 : 1.0;
  for (int i = 0; i < n / 2; ++i) {
    const double avg = 0.5 * (p.samples[i] + sign * p.samples[n - 1 - i]);
    p.samples[i] = avg;
    p.samples[n - 1 - i] = sign * avg;
  }
  if (antisym && n % 2 == 1) p.samples[(n - 1) / 2] = 0.0;
  validate_pulse(p);
  return p;
}

}  // namespace

Band constant_band(double lo, double hi, double desired, double weight) {
  return Band{lo, hi, [desired](double) { return desired; },
              [weight](double) { return weight; }};
}

WcaResult wca_design_full(const WcaSpec& spec) {
  validate_spec(spec);
  const DenseGrid grid = build_grid(spec);
  const int m = coefficient_count(spec.case_id, spec.n);
  const int total = static_cast<int>(grid.omega.size());
  if (total < m + 2) {
    throw std::invalid_argument(
        "wca: degenerate bands, grid supplies fewer than " +
        std::to_string(m + 2) + " extremal candidates");
  }

  // Initial reference: a supplied warm start if it is usable, otherwise
  // uniform by grid index with point bands forced in.
  std::vector<double> reference;
  if (static_cast<int>(spec.initial_reference.size()) == m + 1) {
    reference = spec.initial_reference;
    std::sort(reference.begin(), reference.end());
    bool ok = true;
    for (double& w : reference) {
      bool inside = false;
      for (const auto& b : spec.bands) {
        if (w >= b.lo && w <= b.hi) {
          inside = true;
          break;
        }
      }
      ok = ok && inside;
    }
    for (size_t i = 1; ok && i < reference.size(); ++i) {
      ok = reference[i] > reference[i - 1];
    }
    if (!ok) reference.clear();
  }
  if (reference.empty()) {
    reference.resize(m + 1);
    for (int i = 0; i <= m; ++i) {
      reference[i] = grid.omega[static_cast<size_t>(i) * (total - 1) / m];
    }
    for (size_t b = 0; b < grid.band_begin.size(); ++b) {
      if (grid.band_end[b] - grid.band_begin[b] == 1) {
        const double w = grid.omega[grid.band_begin[b]];
        const auto nearest =
            std::min_element(reference.begin(), reference.end(),
                             [w](double a, double c) {
                               return std::fabs(a - w) < std::fabs(c - w);
                             });
        *nearest = w;
      }
    }
    std::sort(reference.begin(), reference.end());
  }

  const bool debug = std::getenv("QPULSE_WCA_DEBUG") != nullptr;
  RemezDiagnostics diag;
  std::vector<double> error_scratch;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    ReferenceSolution ref(spec, reference);
    diag.delta_history.push_back(std::fabs(ref.delta()));

    auto extrema = pick_extrema(spec, grid, ref, reference, error_scratch);
    double grid_max = 0.0;
    for (const auto& c : extrema) grid_max = std::max(grid_max, std::fabs(c.error));
    diag.max_error_history.push_back(grid_max);
    if (debug) {
      std::fprintf(stderr, "[wca] iter=%d delta=%.6e extrema=%zu gridmax=%.6e\n",
                   iter, ref.delta(), extrema.size(), grid_max);
    }

    if (static_cast<int>(extrema.size()) < m + 1) {
      std::vector<double> omegas;
      for (const auto& c : extrema) omegas.push_back(c.omega);
      throw RemezNonConvergence(
          "wca: degenerate problem, only " + std::to_string(extrema.size()) +
              " alternating extrema for " + std::to_string(m + 1) + " needed",
          std::move(omegas));
    }
    trim_to_size(extrema, m + 1);

    double emax = 0.0, emin = std::numeric_limits<double>::infinity();
    reference.clear();
    for (const auto& c : extrema) {
      reference.push_back(c.omega);
      emax = std::max(emax, std::fabs(c.error));
      emin = std::min(emin, std::fabs(c.error));
    }
    diag.iterations = iter + 1;
    if ((emax - emin) / emax < kSpreadTol) {
      ReferenceSolution final_ref(spec, reference);
      diag.delta = final_ref.delta();
      diag.extremal_omegas = reference;
      return WcaResult{synthesize_pulse(spec, final_ref), std::move(diag)};
    }
  }
  throw RemezNonConvergence(
      "wca: Remez exchange failed to converge in " +
          std::to_string(kMaxIterations) + " iterations",
      std::move(reference));
}

Pulse wca_design(const WcaSpec& spec) { return wca_design_full(spec).pulse; }

WcaSpec dolph_wca_spec(int n, double sidelobe) {
  if (!(sidelobe > 0.0 && sidelobe < 1.0)) {
    throw std::invalid_argument("dolph_wca_spec: sidelobe must be in (0, 1)");
  }
  const double x0 = chebyshev1_x0(n, sidelobe);
  const double omega_s = 2.0 * std::acos(1.0 / x0);
  WcaSpec spec;
  spec.n = n;
  spec.case_id = (n % 2 == 1) ? WcaCase::kCase1 : WcaCase::kCase2;
  spec.bands.push_back(constant_band(0.0, 0.0, 1.0, 1e8));
  spec.bands.push_back(constant_band(omega_s, kPi, 0.0, 1.0));
  if (spec.case_id == WcaCase::kCase2) spec.bands.back().hi = kPi * (1.0 - 0.25 / n);
  return spec;
}

}  // namespace qpulse
