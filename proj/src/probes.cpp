#include "frontlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontlab {

namespace {

struct Box {
  int i_lo = 0, i_hi = 0;  // column range, inclusive
  double min_v = 1e300;
  double min_u = 1e300;
};

int columnOf(double x, const ModelParams& p) {
  int i = static_cast<int>(std::lround((x + p.X) / p.dx()));
  return std::clamp(i, 1, p.nx - 1);
}

std::vector<ProbeResult> runProbe(const ModelParams& p, double t0,
                                  const std::vector<double>& x0s, double L, bool field_to_road) {
  if (t0 < 1.0) throw std::invalid_argument("probe: need t0 >= 1");
  if (t0 + 2.0 > p.t_final) throw std::invalid_argument("probe: horizon must reach t0 + 2");
  const double box_half = field_to_road ? 2.0 * L : L;
  const int j1 = static_cast<int>(std::lround(1.0 / p.dy()));
  if (std::abs(j1 * p.dy() - 1.0) > 1e-9)
    throw std::invalid_argument("probe: dy must divide y = 1");

  CoupledStepper stepper(p, SimMode::nonlinear);
  RoadFieldState s = stepper.initialState();
  long n0 = std::lround(t0 / p.dt);
  long n1 = std::lround((t0 + 1.0) / p.dt);
  long n2 = std::lround((t0 + 2.0) / p.dt);

  std::vector<ProbeResult> results(x0s.size());
  std::vector<Box> boxes(x0s.size());
  for (size_t q = 0; q < x0s.size(); ++q) {
    boxes[q].i_lo = columnOf(x0s[q] - box_half, p);
    boxes[q].i_hi = columnOf(x0s[q] + box_half, p);
    results[q].x0 = x0s[q];
    results[q].t0 = t0;
  }

  for (long n = 1; n <= n2; ++n) {
    stepper.step(s);
    if (n == n0) {
      for (size_t q = 0; q < x0s.size(); ++q) {
        if (field_to_road) {
          double val = s.v(j1, columnOf(x0s[q], p));
          if (val <= 1e-14)
            throw std::invalid_argument("probe precondition failed: v(t0,x0,1) is not positive");
          results[q].eps = val;
        } else {
          double eps = 1e300;
          for (int i = boxes[q].i_lo; i <= boxes[q].i_hi; ++i) eps = std::min(eps, s.u(i));
          if (eps <= 1e-14)
            throw std::invalid_argument(
                "probe precondition failed: u(t0,.) is not positive on the interval");
          results[q].eps = eps;
        }
      }
    }
    if (n >= n1 && n <= n2) {
      for (auto& b : boxes) {
        for (int i = b.i_lo; i <= b.i_hi; ++i) {
          b.min_v = std::min(b.min_v, s.v.col(i).head(j1 + 1).minCoeff());
          b.min_u = std::min(b.min_u, s.u(i));
        }
      }
    }
  }
  for (size_t q = 0; q < x0s.size(); ++q) {
    double m = field_to_road ? std::min(boxes[q].min_v, boxes[q].min_u) : boxes[q].min_v;
    results[q].measured = m / results[q].eps;
    results[q].ok = true;
  }
  return results;
}

}  // namespace

std::vector<ProbeResult> probeRoadToField(const ModelParams& p, double t0,
                                          const std::vector<double>& x0s, double L) {
  return runProbe(p, t0, x0s, L, false);
}

std::vector<ProbeResult> probeFieldToRoad(const ModelParams& p, double t0,
                                          const std::vector<double>& x0s, double L) {
  return runProbe(p, t0, x0s, L, true);
}

std::vector<Lemma41Result> probeLemma41(double alpha, const std::vector<double>& x0s,
                                        const Nonlinearity& nl, double theta_ref, double C_ref,
                                        double m0_ref, double c_amp) {
  std::vector<Lemma41Result> out;
  for (double x0 : x0s) {
    Lemma41Result r;
    r.x0 = x0;
    r.eps = 1.0 / (1.0 + std::pow(x0, 1.0 + 2.0 * alpha));
    r.T1 = solveT1(r.eps, theta_ref, C_ref, m0_ref);

    double half = std::sqrt(x0);
    double Lx = half + 8.0 * std::sqrt(r.T1) + 10.0;
    double dx_target = 0.25;
    int nx = 2 * static_cast<int>(std::ceil(Lx / dx_target));
    double dx = 2.0 * Lx / nx;
    double dy = 0.25;
    double Y = 2.0 * std::sqrt(nl.a) * r.T1 + 10.0;
    int ny = static_cast<int>(std::ceil(Y / dy));
    double dt = 0.02;

    StripScheme::Config cfg;
    cfg.nx = nx;
    cfg.ny = ny;
    cfg.dx = dx;
    cfg.dy = dy;
    cfg.dt = dt;
    cfg.bottom = BottomBC::dirichlet_zero;
    cfg.walls = WallBC::dirichlet_zero;
    StripScheme strip(cfg);
    ReactionTerm rt = ReactionTerm::kpp(nl);

    // cell-averaged datum c_amp eps on [-sqrt(x0), sqrt(x0)] x [0, 1]
    Eigen::ArrayXXd v = Eigen::ArrayXXd::Zero(ny, nx);
    for (int i = 1; i < nx; ++i) {
      double x = -Lx + i * dx;
      double xfrac = std::max(0.0, std::min(x + dx / 2, half) - std::max(x - dx / 2, -half)) / dx;
      if (xfrac <= 0.0) continue;
      for (int j = 1; j < ny; ++j) {
        double ylo = (j - 0.5) * dy, yhi = (j + 0.5) * dy;
        double yfrac = std::max(0.0, std::min(yhi, 1.0) - std::max(ylo, 0.0)) / dy;
        v(j, i) = c_amp * r.eps * xfrac * yfrac;
      }
    }

    Eigen::ArrayXd u_dummy;  // Dirichlet bottom ignores the road source
    long n_steps = std::lround(r.T1 / dt);
    for (long n = 0; n < n_steps; ++n) strip.step(v, u_dummy, rt);

    int i_mid = nx / 2;
    int j1 = static_cast<int>(std::lround(1.0 / dy));
    r.v_at = v(j1, i_mid);
    r.ratio = r.v_at * std::sqrt(r.T1);
    r.linear_ref = c_amp * r.eps * std::exp(r.T1) * dirichletHeatInterval(r.T1, 1.0, 0.0, 1.0) *
                   gaussianInterval(r.T1, 0.0, -half, half) * std::sqrt(r.T1);
    out.push_back(r);
  }
  return out;
}

}  // namespace frontlab
