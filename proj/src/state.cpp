#include "frontlab/state.hpp"

#include <cmath>

namespace frontlab {

double RoadFieldState::roadMass() const { return dx * u.sum(); }

double RoadFieldState::fieldMass() const {
  // Trapezoid in y with the half weight at the Robin node j = 0; this is the
  // functional the boundary flux bookkeeping conserves exactly.
  double s = 0.0;
  for (int i = 0; i < v.cols(); ++i) {
    s += 0.5 * v(0, i);
    s += v.col(i).segment(1, v.rows() - 1).sum();
  }
  return dx * dy * s;
}

double RoadFieldState::roadAsymmetry() const {
  const int n = nx();
  double m = 0.0;
  for (int i = 1; i < n; ++i) m = std::max(m, std::abs(u(i) - u(n - i)));
  return m;
}

double RoadFieldState::fieldAsymmetry() const {
  const int n = static_cast<int>(v.cols());
  double m = 0.0;
  for (int i = 1; i < n; ++i)
    m = std::max(m, (v.col(i) - v.col(n - i)).abs().maxCoeff());
  return m;
}

}  // namespace frontlab
