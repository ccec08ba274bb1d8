#ifndef FRONTLAB_STRIP_HPP
#define FRONTLAB_STRIP_HPP

#include <Eigen/Core>

#include "frontlab/nonlinearity.hpp"

namespace frontlab {

enum class BottomBC { robin, dirichlet_zero };
// Top and lateral walls. Dirichlet-zero is the production choice (the
// truncation margins keep the solution away from them); Neumann exists for
// equilibrium and conservation test harnesses.
enum class WallBC { dirichlet_zero, neumann };

/** Reaction source for the strip. linear is f(v) = a v (linearized runs),
 * kpp is f(v) = a v - g(v). */
struct ReactionTerm {
  enum class Kind { none, linear, kpp };
  Kind kind = Kind::kpp;
  double a = 1.0;        // linear kind
  Nonlinearity nl;       // kpp kind

  double flow(double v, double tau) const;
  static ReactionTerm none();
  static ReactionTerm linear(double a);
  static ReactionTerm kpp(const Nonlinearity& nl);
};

/** Strang-split reaction + Peaceman-Rachford ADI step for
 *     v_t - Delta v = f(v)   on the strip,
 * second order in space and in the split. Bottom boundary is either the Robin
 * exchange  -d_y v = mu u - nu v  (ghost elimination, the nu part handled at
 * the Crank-Nicolson level so dt is not tied to dy through the boundary), or
 * homogeneous Dirichlet.
 *
 * Column 0 of the field is the wall seam and stays pinned to zero; sweeps act
 * on columns 1..nx-1.
 */
class StripScheme {
 public:
  struct Config {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double dt = 0.0;
    double mu = 1.0;
    double nu = 1.0;
    BottomBC bottom = BottomBC::robin;
    WallBC walls = WallBC::dirichlet_zero;
  };

  explicit StripScheme(const Config& cfg);

  const Config& config() const { return cfg_; }

  /** Advances v by one dt. u_boundary supplies the Robin source per column
   * (ignored for a Dirichlet bottom; column 0 never exchanges).
   *
   * If exchange_out is non-null it receives, per column,
   *     E_i = mu u_i - nu (v_bottom_pre + v_bottom_post)/2,
   * which is exactly the discrete mass rate the boundary injects into the
   * field over this step; a road update that subtracts dt*E_i conserves the
   * exchanged mass to rounding.
   *
   * Throws on NaN or on negative values below -1e-12 * max(1, max v)
   * (anything smaller is clipped to zero as rounding noise).
   */
  void step(Eigen::ArrayXXd& v, const Eigen::ArrayXd& u_boundary,
            const ReactionTerm& reaction, Eigen::ArrayXd* exchange_out = nullptr) const;

 private:
  Config cfg_;
  // Precomputed Thomas elimination coefficients (constant-coefficient systems).
  Eigen::ArrayXd cpx_, mx_;  // x-direction, unknowns i = 1..nx-1
  Eigen::ArrayXd cpy_, my_;  // y-direction, rows j = 0..ny-1 (or 1..ny-1 for Dirichlet bottom)
  double betax_ = 0.0, betay_ = 0.0;

  void applyLy(const Eigen::ArrayXd& col, double u_src, Eigen::ArrayXd& out) const;
  void solveX(Eigen::ArrayXXd& v) const;
  void solveYColumn(Eigen::ArrayXd& col) const;
  friend class DirichletColumn1D;
};

/** One-dimensional Dirichlet problem on [0, Y]:
 *     v_t - v_yy = f(v),  v(t,0) = v(t,Y) = 0,
 * the same Crank-Nicolson y-sweep the strip uses, with optional Rannacher
 * (backward Euler) startup substeps to damp rough initial data.
 */
class DirichletColumn1D {
 public:
  DirichletColumn1D(int ny, double dy, double dt);

  int ny() const { return ny_; }
  double dy() const { return dy_; }
  double dt() const { return dt_; }

  // One step of size dt (or tau if tau > 0 is given, re-factorizing on the fly).
  void step(Eigen::ArrayXd& v, const ReactionTerm& reaction) const;
  void stepBackwardEuler(Eigen::ArrayXd& v, const ReactionTerm& reaction) const;

 private:
  int ny_;
  double dy_, dt_;
  Eigen::ArrayXd cp_, m_;    // Crank-Nicolson factorization
  Eigen::ArrayXd cpbe_, mbe_;  // backward-Euler factorization
};

}  // namespace frontlab

#endif
