#include "frontlab/kpp1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "frontlab/strip.hpp"

namespace frontlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double gaussianInterval(double t, double x, double a, double b) {
  double s = 2.0 * std::sqrt(t);
  return 0.5 * (std::erf((x - a) / s) - std::erf((x - b) / s));
}

double dirichletHeatInterval(double t, double y, double a, double b) {
  double s = 2.0 * std::sqrt(t);
  return 0.5 * (std::erf((y - a) / s) - std::erf((y - b) / s) +
                std::erf((y + a) / s) - std::erf((y + b) / s));
}

double linearDirichletExact(double t, double y, double eps) {
  if (!(t > 0.0)) throw std::invalid_argument("linearDirichletExact: need t > 0");
  return eps * std::exp(t) * dirichletHeatInterval(t, y, 0.5, 1.0);
}

EnvelopeReport envelopeBoundCheck(double t, double eps, double y_lo) {
  if (!(t >= 2.0)) throw std::invalid_argument("envelopeBoundCheck: need t >= 2");
  EnvelopeReport rep;
  rep.z0 = std::sqrt(2.5);
  rep.m0 = rep.z0 * std::exp(-0.5);
  rep.argmax_pred = rep.z0 * std::sqrt(t);

  auto shape = [&](double y) {
    return eps * (std::exp(t) / t) * (y / std::sqrt(t)) * std::exp(-y * y / (5.0 * t));
  };
  const double y_hi = 20.0 * std::sqrt(t);
  const int N = 8000;
  double cmin = 0.0, vmax = -1.0, ymax = y_lo;
  for (int i = 0; i <= N; ++i) {
    double y = y_lo + (y_hi - y_lo) * i / N;
    double ex = linearDirichletExact(t, y, eps);
    cmin = std::max(cmin, ex / shape(y));
    if (ex > vmax) {
      vmax = ex;
      ymax = y;
    }
  }
  rep.C_min = cmin;
  rep.argmax_y = ymax;
  // confirm the reported C on an offset grid
  rep.holds_pointwise = true;
  const int M = 10007;
  for (int i = 0; i <= M; ++i) {
    double y = y_lo + (y_hi - y_lo) * i / M;
    if (linearDirichletExact(t, y, eps) > rep.C_min * shape(y) * (1.0 + 1e-9)) {
      rep.holds_pointwise = false;
      break;
    }
  }
  return rep;
}

double solveT1(double eps, double theta, double C, double m0) {
  double rhs = theta / (m0 * C * eps);
  double e2half = std::exp(2.0) / 2.0;
  if (rhs < e2half)
    throw std::invalid_argument("solveT1: right-hand side below e^2/2, no branch T >= 2");
  auto h = [](double T) { return std::exp(T) / T; };
  double lo = 2.0, hi = 4.0;
  while (h(hi) < rhs) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    (h(mid) < rhs ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double eigenLambda1(double L) {
  if (!(L > 1.0)) throw std::invalid_argument("eigenLambda1: need L > 1");
  return kPi * kPi / ((L - 1.0) * (L - 1.0));
}

double measureCL(double T1, double eps, double L) {
  double cl = 1e300;
  const int N = 4000;
  for (int i = 0; i <= N; ++i) {
    double y = 1.0 + (L - 1.0) * i / N;
    cl = std::min(cl, linearDirichletExact(T1, y, eps) * std::sqrt(T1) / eps);
  }
  return cl;
}

double eigenSubsolution(double L, double t, double y, double eps, double T1, double c_L) {
  if (!(L > 1.0)) throw std::invalid_argument("eigenSubsolution: need L > 1");
  if (y < 1.0 || y > L) throw std::invalid_argument("eigenSubsolution: y outside [1, L]");
  if (t < T1) throw std::invalid_argument("eigenSubsolution: t below T1");
  double lam1 = eigenLambda1(L);
  return (eps * c_L / std::sqrt(T1)) * std::exp((1.0 - lam1) * (t - T1)) *
         std::sin(kPi * (y - 1.0) / (L - 1.0));
}

namespace {

struct ShootPoint {
  double w, p;
};

// One RK4 step of w' = p, p' = -f(w).
inline ShootPoint rk4(const Nonlinearity& nl, ShootPoint s, double h) {
  auto acc = [&](double w) { return -nl.reaction(w); };
  double k1w = s.p, k1p = acc(s.w);
  double k2w = s.p + 0.5 * h * k1p, k2p = acc(s.w + 0.5 * h * k1w);
  double k3w = s.p + 0.5 * h * k2p, k3p = acc(s.w + 0.5 * h * k2w);
  double k4w = s.p + h * k3p, k4p = acc(s.w + h * k3w);
  return {s.w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
          s.p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)};
}

// true: overshoots above v0; false: turns around below it.
bool shootClassify(const Nonlinearity& nl, double slope, double v0, double ymax, double h) {
  ShootPoint s{0.0, slope};
  long nsteps = static_cast<long>(ymax / h) + 1;
  for (long i = 0; i < nsteps; ++i) {
    s = rk4(nl, s, h);
    if (s.w > v0 * (1.0 + 1e-12)) return true;
    if (s.p <= 0.0 || s.w < 0.0) return false;
  }
  // still climbing at ymax: treat as overshoot (slope too large for the window)
  return true;
}

}  // namespace

SteadyStateProfile steadyState(const Nonlinearity& nl, double Y, double dy_out) {
  if (Y < 30.0) throw std::invalid_argument("steadyState: need Y >= 30");
  const double v0 = nl.positiveZero();
  const double h = 5e-4;
  const double ymax_int = 40.0;

  double lo = 1e-8, hi = 1.0;
  while (!shootClassify(nl, hi, v0, ymax_int, h)) hi *= 2.0;
  if (shootClassify(nl, lo, v0, ymax_int, h))
    throw std::runtime_error("steadyState: shooting bracket failure");
  for (int it = 0; it < 120; ++it) {
    double mid = 0.5 * (lo + hi);
    (shootClassify(nl, mid, v0, ymax_int, h) ? hi : lo) = mid;
  }
  double slope0 = 0.5 * (lo + hi);

  // Rebuild the orbit, then graft the linearized tail once within 1e-5 of v0;
  // the shot trajectory cannot be trusted much past that (separatrix).
  const double kappa = std::sqrt(std::max(nl.gPrime(v0) - nl.a, 1e-300));
  const int n_out = static_cast<int>(std::floor(Y / dy_out)) + 1;
  SteadyStateProfile prof;
  prof.v0 = v0;
  prof.slope0 = slope0;
  prof.y.resize(n_out);
  prof.w.resize(n_out);
  prof.wp.resize(n_out);

  const long per_out = std::lround(dy_out / h);
  if (per_out < 1 || std::abs(per_out * h - dy_out) > 1e-12)
    throw std::invalid_argument("steadyState: dy_out must be a multiple of 5e-4");

  // integrate on the fine grid, grafting once within 1e-5 of v0
  double residual = 0.0;
  const long n_fine = std::lround(Y / h) + 1;
  std::vector<double> wf(n_fine), pf(n_fine);
  ShootPoint s{0.0, slope0};
  wf[0] = 0.0;
  pf[0] = slope0;
  long q_graft = -1;
  double y_graft = 0.0, delta_graft = 0.0;
  for (long q = 1; q < n_fine; ++q) {
    double y = q * h;
    if (q_graft < 0) {
      s = rk4(nl, s, h);
      wf[q] = s.w;
      pf[q] = s.p;
      if (v0 - s.w <= 1e-5 * v0) {
        q_graft = q;
        y_graft = y;
        delta_graft = v0 - s.w;
      }
    } else {
      double d = delta_graft * std::exp(-kappa * (y - y_graft));
      wf[q] = v0 - d;
      pf[q] = kappa * d;
    }
  }
  if (q_graft < 0) throw std::runtime_error("steadyState: orbit failed to approach v0");
  for (int i = 0; i < n_out; ++i) {
    prof.y(i) = i * dy_out;
    prof.w(i) = wf[i * per_out];
    prof.wp(i) = pf[i * per_out];
  }

  // direct ODE residual on the fine grid with a 4th-order second difference,
  // stencil spacing near 5e-3 so rounding noise in the node values is not
  // amplified above the target accuracy; the graft junction is skipped, and
  // for the threshold family so are windows crossing the w = theta seam,
  // where the profile is only C^4
  const long stride = std::lround(5e-3 / h);
  const double dfd = stride * h;
  for (long i = 2 * stride; i < n_fine - 2 * stride; ++i) {
    if (std::labs(i - q_graft) <= 2 * stride) continue;
    if (nl.kind == NonlinearityKind::threshold &&
        (wf[i - 2 * stride] - nl.theta) * (wf[i + 2 * stride] - nl.theta) <= 0.0)
      continue;
    double wpp = (-wf[i - 2 * stride] + 16.0 * wf[i - stride] - 30.0 * wf[i] +
                  16.0 * wf[i + stride] - wf[i + 2 * stride]) /
                 (12.0 * dfd * dfd);
    residual = std::max(residual, std::abs(wpp + nl.reaction(wf[i])));
  }
  prof.residual = residual;
  return prof;
}

TransientResult measureTEps(double eps, double lambda, const Nonlinearity& nl,
                            const TransientGrid& grid) {
  if (nl.kind != NonlinearityKind::threshold)
    throw std::invalid_argument("measureTEps: threshold nonlinearity required");
  if (!(eps < nl.theta))
    throw std::invalid_argument("measureTEps: need eps < theta");
  if (!(lambda > nl.theta))
    throw std::invalid_argument("measureTEps: need lambda > theta");
  double vinf1 = steadyState(nl, 30.0, 0.01).w(100);  // w at y = 1
  if (!(lambda < vinf1)) {
    std::ostringstream os;
    os << "measureTEps: lambda = " << lambda << " must lie below v_inf(1) = " << vinf1;
    throw std::invalid_argument(os.str());
  }

  // expected crossing time from the Remark expansion, for auto-sizing
  double L = std::log(1.0 / eps);
  double T_expect = L + 1.5 * std::log(std::max(2.0, L)) + 2.0;
  double horizon = grid.horizon > 0.0 ? grid.horizon : T_expect + 12.0;
  double z0 = std::sqrt(2.5);
  double Y = grid.Y > 0.0 ? grid.Y
                          : 2.0 * std::sqrt(nl.a) * T_expect + z0 * std::sqrt(T_expect) + 15.0;
  double dy = grid.dy, dt = grid.dt;
  int ny = static_cast<int>(std::ceil(Y / dy));
  Y = ny * dy;

  DirichletColumn1D solver(ny, dy, dt);
  ReactionTerm rt = ReactionTerm::kpp(nl);

  // cell-averaged indicator datum eps 1_[1/2,1]
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(ny);
  for (int j = 1; j < ny; ++j) {
    double clo = (j - 0.5) * dy, chi = (j + 0.5) * dy;
    double overlap = std::max(0.0, std::min(chi, 1.0) - std::max(clo, 0.5));
    v(j) = eps * overlap / dy;
  }

  auto probe = [&](const Eigen::ArrayXd& w) {
    double jf = 1.0 / dy;
    int j0 = static_cast<int>(jf);
    double f = jf - j0;
    return (j0 + 1 < ny) ? w(j0) * (1.0 - f) + w(j0 + 1) * f : w(j0);
  };

  TransientResult res;
  res.epsilon = eps;
  res.lambda_target = lambda;
  {
    double m0 = z0 * std::exp(-0.5);
    double C = 0.0;
    for (double tq = 2.0; tq <= 30.0; tq += 2.0)
      C = std::max(C, envelopeBoundCheck(tq, 1e-4).C_min);
    res.T1_eps = solveT1(eps, nl.theta, C, m0);
  }

  // Rannacher startup: two backward-Euler half steps
  solver.stepBackwardEuler(v, rt);
  solver.stepBackwardEuler(v, rt);
  double t = dt;
  res.trace_t.push_back(t);
  res.trace_v.push_back(probe(v));

  Eigen::ArrayXd v_prev = v;
  while (t < horizon) {
    v_prev = v;
    solver.step(v, rt);
    t += dt;
    double val = probe(v);
    res.trace_t.push_back(t);
    res.trace_v.push_back(val);
    if (val >= lambda) {
      // redo the bracketing step at dt/10 and interpolate the crossing
      DirichletColumn1D fine(ny, dy, dt / 10.0);
      Eigen::ArrayXd w = v_prev;
      double tf = t - dt;
      double prev_val = probe(w);
      for (int q = 0; q < 10; ++q) {
        fine.step(w, rt);
        tf += dt / 10.0;
        double cur = probe(w);
        if (cur >= lambda) {
          double frac = (lambda - prev_val) / (cur - prev_val);
          res.T_eps = tf - dt / 10.0 + frac * dt / 10.0;
          res.crossed = true;
          break;
        }
        prev_val = cur;
      }
      if (!res.crossed) {
        res.T_eps = t;  // crossing sat exactly on the full step
        res.crossed = true;
      }
      break;
    }
  }
  if (res.crossed) {
    res.ratio = eps * std::exp(res.T_eps) / std::pow(res.T_eps, 1.5);
  } else {
    res.last_value = probe(v);
  }
  return res;
}

TransientLawFit transientLawFit(const std::vector<TransientResult>& sweep) {
  std::vector<double> xs, ys;
  double emin = 1e300, emax = 0.0;
  for (const auto& r : sweep) {
    if (!r.crossed) continue;
    emin = std::min(emin, r.epsilon);
    emax = std::max(emax, r.epsilon);
    double Linv = std::log(1.0 / r.epsilon);
    xs.push_back(std::log(Linv));
    ys.push_back(r.T_eps - Linv);
  }
  if (xs.size() < 5 || std::log10(emax / emin) < 5.0 - 1e-9)
    throw std::invalid_argument("transientLawFit: need >= 5 decades of eps");
  const int n = static_cast<int>(xs.size());
  double xbar = 0.0, ybar = 0.0;
  for (int i = 0; i < n; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= n;
  ybar /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  TransientLawFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = ys[i] - fit.slope * xs[i] - fit.intercept;
    ssr += r * r;
  }
  fit.stderr_slope = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  fit.consistent = fit.slope > 0.3 && (fit.stderr_slope == 0.0 || fit.slope > 3.0 * fit.stderr_slope);
  return fit;
}

}  // namespace frontlab
