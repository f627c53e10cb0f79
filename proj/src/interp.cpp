#include "qpulse/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpulse {

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != x_.size()) {
    throw std::invalid_argument("pchip: need >= 2 nodes with matching sizes");
  }
  for (int i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("pchip: abscissae must be strictly increasing");
    }
  }
  std::vector<double> h(n - 1), d(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  slope_.assign(n, 0.0);
  if (n == 2) {
    slope_[0] = slope_[1] = d[0];
    return;
  }
  for (int i = 1; i < n - 1; ++i) {
    if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0) != (d[i] > 0)) {
      slope_[i] = 0.0;
    } else {
      // Weighted harmonic mean (Fritsch-Carlson region-of-monotonicity rule).
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if ((s > 0) != (d0 > 0) || d0 == 0.0) {
      s = 0.0;
    } else if ((d0 > 0) != (d1 > 0) && std::fabs(s) > 3.0 * std::fabs(d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  slope_[0] = endpoint(h[0], h[1], d[0], d[1]);
  slope_[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

double PchipInterpolant::operator()(double x) const {
  const int n = static_cast<int>(x_.size());
  if (x <= x_.front()) x = x_.front();
  if (x >= x_.back()) x = x_.back();
  const int hi = static_cast<int>(
      std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
  const int i = std::clamp(hi - 1, 0, n - 2);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] +
         h11 * h * slope_[i + 1];
}

}  // namespace qpulse
