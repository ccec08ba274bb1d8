#ifndef FRONTLAB_KPP1D_HPP
#define FRONTLAB_KPP1D_HPP

#include <Eigen/Core>
#include <vector>

#include "frontlab/nonlinearity.hpp"

namespace frontlab {

// Mass at y of the half-line Dirichlet heat kernel started from 1_[a,b],
//   (1/2)[erf((y-a)/2sqrt(t)) - erf((y-b)/2sqrt(t))
//         + erf((y+a)/2sqrt(t)) - erf((y+b)/2sqrt(t))],
// i.e. the odd-image (difference of Gaussians) kernel integrated over [a,b].
double dirichletHeatInterval(double t, double y, double a, double b);

// Free-line Gaussian mass: 1_[a,b] evolved by the heat kernel, evaluated at x.
double gaussianInterval(double t, double x, double a, double b);

// Exact linear Dirichlet transient: eps e^t * dirichletHeatInterval(t,y,1/2,1),
// the closed form of the sub-theta regime with datum eps 1_[1/2,1].
// Throws for t <= 0.
double linearDirichletExact(double t, double y, double eps);

struct EnvelopeReport {
  double z0 = 0.0;         // argmax of z e^{-z^2/5}, sqrt(5/2)
  double m0 = 0.0;         // its maximum, z0 e^{-1/2}
  double C_min = 0.0;      // smallest C with exact <= C eps (e^t/t)(y/sqrt t) e^{-y^2/5t}
  double argmax_y = 0.0;   // argmax over y of the exact solution
  double argmax_pred = 0.0;  // z0 sqrt(t)
  bool holds_pointwise = false;
};

// Envelope audit for the exact solution at a fixed t >= 2, swept over
// y in [y_lo, 20 sqrt(t)].
EnvelopeReport envelopeBoundCheck(double t, double eps, double y_lo = 1.0);

// Solves e^T / T = theta / (m0 C eps) for the branch T >= 2 by bisection to
// 1e-10. Throws when the right-hand side is below e^2/2 (no such branch).
double solveT1(double eps, double theta, double C, double m0);

double eigenLambda1(double L);  // pi^2/(L-1)^2

// Measured c_L of the eigenfunction seeding: min over y in [1,L] of
// linearDirichletExact(T1, y) sqrt(T1) / eps.
double measureCL(double T1, double eps, double L);

// Eigenfunction subsolution (eps c_L / sqrt(T1)) e^{(1-lambda1)(t-T1)} sin(pi (y-1)/(L-1)).
// Requires t >= T1 and y in [1, L].
double eigenSubsolution(double L, double t, double y, double eps, double T1, double c_L);

struct SteadyStateProfile {
  Eigen::ArrayXd y, w, wp;
  double v0 = 0.0;        // plateau value f(v0) = 0
  double slope0 = 0.0;    // w'(0) > 0
  double residual = 0.0;  // max |w'' + f(w)| on the fine integration grid
};

// Steady state of -w'' = f(w), w(0) = 0, w(+inf) = v0, by bisection shooting
// on w'(0). The separatrix is exponentially unstable, so the profile is grafted
// onto the linearized tail v0 - c e^{-sqrt(-f'(v0)) y} once |w - v0| < 1e-6 v0.
SteadyStateProfile steadyState(const Nonlinearity& nl, double Y, double dy_out = 0.01);

struct TransientResult {
  double epsilon = 0.0;
  double lambda_target = 0.0;
  double T_eps = 0.0;    // first time v(t,1) = lambda (interpolated)
  double T1_eps = 0.0;   // Eq-(2.10)-style reference time for the same eps
  double ratio = 0.0;    // eps e^{T_eps} / T_eps^{3/2}
  bool crossed = false;
  double last_value = 0.0;  // v(horizon, 1) when not crossed
  std::vector<double> trace_t, trace_v;  // v(t,1) time series
};

struct TransientGrid {
  double Y = 0.0;     // 0: auto-sized from the expected crossing time
  double dy = 0.02;
  double dt = 0.005;
  double horizon = 0.0;  // 0: auto
};

/** Integrates v_t - v_yy = f(v) on [0,Y], v(0,y) = eps 1_[1/2,1], Dirichlet
 * ends, until v(t,1) >= lambda. The last step is redone at dt/10 and the
 * crossing interpolated linearly in t. Requires eps < theta < lambda < v_inf(1)
 * for the threshold family. */
TransientResult measureTEps(double eps, double lambda, const Nonlinearity& nl,
                            const TransientGrid& grid = {});

struct TransientLawFit {
  double slope = 0.0;      // of T_eps - ln(1/eps) against ln ln(1/eps)
  double stderr_slope = 0.0;
  double intercept = 0.0;
  int n = 0;
  bool consistent = false;  // slope significantly positive
};

// Requires results spanning >= 5 decades of eps.
TransientLawFit transientLawFit(const std::vector<TransientResult>& sweep);

}  // namespace frontlab

#endif
