#ifndef QPULSE_INTERP_HPP
#define QPULSE_INTERP_HPP

#include <vector>

namespace qpulse {

// Shape-preserving piecewise cubic (Fritsch-Carlson). Local monotonicity of
// the data is preserved, so interpolated values never overshoot neighboring
// samples.
class PchipInterpolant {
 public:
  PchipInterpolant(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace qpulse

#endif
