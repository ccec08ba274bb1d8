#ifndef FRONTLAB_STATE_HPP
#define FRONTLAB_STATE_HPP

#include <Eigen/Core>

namespace frontlab {

/** Discrete road-field pair at one time.
 *
 * u(i) lives at x_i = -X + i*dx on the periodic road grid.
 * v(j,i) lives at (x_i, y_j = j*dy); column i = 0 is the wall seam at x = -X
 * (identified with +X by road periodicity) and is pinned to zero, so the strip
 * carries homogeneous Dirichlet walls at x = -X and x = +X exactly.
 */
struct RoadFieldState {
  double t = 0.0;
  Eigen::ArrayXd u;    // nx
  Eigen::ArrayXXd v;   // ny x nx, column-major: columns are y-profiles
  double dx = 0.0;
  double dy = 0.0;

  int nx() const { return static_cast<int>(u.size()); }
  int ny() const { return static_cast<int>(v.rows()); }

  double roadMass() const;   // dx * sum(u)
  double fieldMass() const;  // dx * dy * sum over columns of (v0/2 + v1 + ...)
  double totalMass() const { return roadMass() + fieldMass(); }

  // max_i |u(x_i) - u(-x_i)| under the periodic pairing i <-> nx - i.
  double roadAsymmetry() const;
  double fieldAsymmetry() const;
};

}  // namespace frontlab

#endif
