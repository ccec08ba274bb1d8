#include "frontlab/strip.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace frontlab {

double ReactionTerm::flow(double v, double tau) const {
  switch (kind) {
    case Kind::none: return v;
    case Kind::linear: return v * std::exp(a * tau);
    case Kind::kpp: return nl.flow(v, tau);
  }
  return v;
}

ReactionTerm ReactionTerm::none() {
  ReactionTerm r;
  r.kind = Kind::none;
  return r;
}

ReactionTerm ReactionTerm::linear(double a) {
  ReactionTerm r;
  r.kind = Kind::linear;
  r.a = a;
  return r;
}

ReactionTerm ReactionTerm::kpp(const Nonlinearity& nl) {
  ReactionTerm r;
  r.kind = Kind::kpp;
  r.nl = nl;
  r.a = nl.a;
  return r;
}

namespace {

void flowBlock(Eigen::ArrayXXd& v, const ReactionTerm& rt, double tau) {
  switch (rt.kind) {
    case ReactionTerm::Kind::none:
      return;
    case ReactionTerm::Kind::linear:
      v *= std::exp(rt.a * tau);
      return;
    case ReactionTerm::Kind::kpp:
      if (rt.nl.kind == NonlinearityKind::logistic) {
        double a = rt.nl.a;
        if (a == 0.0) {
          v = v / (1.0 + v * tau);
        } else {
          double e = std::exp(a * tau);
          v = a * v * e / (a + v * (e - 1.0));
        }
      } else {
        double* d = v.data();
        const long n = v.size();
        const double growth = std::exp(rt.nl.a * tau);
        const double cutoff = rt.nl.theta / growth;
        for (long i = 0; i < n; ++i)
          d[i] = (d[i] <= cutoff) ? d[i] * growth : rt.nl.flow(d[i], tau);
      }
      return;
  }
}

void flowColumn(Eigen::ArrayXd& v, const ReactionTerm& rt, double tau) {
  switch (rt.kind) {
    case ReactionTerm::Kind::none:
      return;
    case ReactionTerm::Kind::linear:
      v *= std::exp(rt.a * tau);
      return;
    case ReactionTerm::Kind::kpp:
      for (long i = 0; i < v.size(); ++i) v(i) = rt.nl.flow(v(i), tau);
      return;
  }
}

// Constant-coefficient Thomas factorization: rows with lower coefficient a,
// diagonal diag(j) and upper c(j).
void factorize(const Eigen::ArrayXd& diag, const Eigen::ArrayXd& upper, double lower,
               Eigen::ArrayXd& cp, Eigen::ArrayXd& m) {
  const int n = static_cast<int>(diag.size());
  cp.resize(n);
  m.resize(n);
  m(0) = 1.0 / diag(0);
  cp(0) = upper(0) * m(0);
  for (int j = 1; j < n; ++j) {
    double denom = diag(j) - lower * cp(j - 1);
    m(j) = 1.0 / denom;
    cp(j) = upper(j) * m(j);
  }
}

}  // namespace

StripScheme::StripScheme(const Config& cfg) : cfg_(cfg) {
  if (cfg.nx < 8 || cfg.ny < 8) throw std::invalid_argument("strip: grid too small");
  if (!(cfg.dx > 0 && cfg.dy > 0 && cfg.dt > 0)) throw std::invalid_argument("strip: bad spacings");
  if (cfg.dt > cfg.dy + 1e-12)
    throw std::invalid_argument("strip: stability requires dt <= dy (dt = " +
                                std::to_string(cfg.dt) + ", dy = " + std::to_string(cfg.dy) + ")");
  const double r = 0.5 * cfg.dt;
  betax_ = r / (cfg.dx * cfg.dx);
  betay_ = r / (cfg.dy * cfg.dy);

  // x systems: unknown columns 1..nx-1, walls are Dirichlet zero (column 0 and
  // its periodic image) unless the Neumann harness is requested.
  const int N = cfg.nx - 1;
  Eigen::ArrayXd diag = Eigen::ArrayXd::Constant(N, 1.0 + 2.0 * betax_);
  Eigen::ArrayXd upper = Eigen::ArrayXd::Constant(N, -betax_);
  if (cfg.walls == WallBC::neumann) {
    diag(0) = 1.0 + betax_;
    diag(N - 1) = 1.0 + betax_;
  }
  factorize(diag, upper, -betax_, cpx_, mx_);

  // y systems: rows 0..ny-1 (Robin bottom) or 1..ny-1 (Dirichlet bottom).
  const int jb = (cfg.bottom == BottomBC::robin) ? 0 : 1;
  const int M = cfg.ny - jb;
  Eigen::ArrayXd diagy = Eigen::ArrayXd::Constant(M, 1.0 + 2.0 * betay_);
  Eigen::ArrayXd uppery = Eigen::ArrayXd::Constant(M, -betay_);
  if (cfg.bottom == BottomBC::robin) {
    diagy(0) = 1.0 + 2.0 * betay_ + r * 2.0 * cfg.nu / cfg.dy;
    uppery(0) = -2.0 * betay_;
  }
  if (cfg.walls == WallBC::neumann) diagy(M - 1) = 1.0 + betay_;
  factorize(diagy, uppery, -betay_, cpy_, my_);
}

void StripScheme::applyLy(const Eigen::ArrayXd& col, double u_src, Eigen::ArrayXd& out) const {
  const int ny = cfg_.ny;
  const double idy2 = 1.0 / (cfg_.dy * cfg_.dy);
  if (cfg_.bottom == BottomBC::robin) {
    out(0) = 2.0 * (col(1) - col(0)) * idy2 -
             (2.0 * cfg_.nu / cfg_.dy) * col(0) + (2.0 * cfg_.mu / cfg_.dy) * u_src;
  } else {
    out(0) = 0.0;
  }
  for (int j = 1; j < ny - 1; ++j)
    out(j) = (col(j - 1) - 2.0 * col(j) + col(j + 1)) * idy2;
  if (cfg_.walls == WallBC::neumann)
    out(ny - 1) = (col(ny - 2) - col(ny - 1)) * idy2;
  else
    out(ny - 1) = (col(ny - 2) - 2.0 * col(ny - 1)) * idy2;
}

void StripScheme::solveX(Eigen::ArrayXXd& v) const {
  const int N = cfg_.nx - 1;
  v.col(1) *= mx_(0);
  for (int t = 1; t < N; ++t) {
    int i = t + 1;
    v.col(i) = (v.col(i) + betax_ * v.col(i - 1)) * mx_(t);
  }
  for (int t = N - 2; t >= 0; --t) {
    int i = t + 1;
    v.col(i) -= cpx_(t) * v.col(i + 1);
  }
}

void StripScheme::solveYColumn(Eigen::ArrayXd& col) const {
  const int jb = (cfg_.bottom == BottomBC::robin) ? 0 : 1;
  const int M = cfg_.ny - jb;
  col(jb) *= my_(0);
  for (int t = 1; t < M; ++t) {
    int j = jb + t;
    col(j) = (col(j) + betay_ * col(j - 1)) * my_(t);
  }
  for (int t = M - 2; t >= 0; --t) {
    int j = jb + t;
    col(j) -= cpy_(t) * col(j + 1);
  }
}

void StripScheme::step(Eigen::ArrayXXd& v, const Eigen::ArrayXd& u_boundary,
                       const ReactionTerm& reaction, Eigen::ArrayXd* exchange_out) const {
  const int nx = cfg_.nx, ny = cfg_.ny;
  if (v.rows() != ny || v.cols() != nx) throw std::invalid_argument("strip: field shape mismatch");
  const bool robin = cfg_.bottom == BottomBC::robin;
  if (robin && u_boundary.size() != nx)
    throw std::invalid_argument("strip: u_boundary not aligned with the x grid");
  const double r = 0.5 * cfg_.dt;
  const double idx2 = 1.0 / (cfg_.dx * cfg_.dx);
  const double src_coeff = robin ? 2.0 * cfg_.mu / cfg_.dy : 0.0;

  flowBlock(v, reaction, 0.5 * cfg_.dt);

  Eigen::ArrayXd v0_pre;
  if (robin) v0_pre = v.row(0).transpose();

  // Stage 1: rhs = v + r (L_y v + c(u)), column by column.
  Eigen::ArrayXd ly(ny);
  for (int i = 1; i < nx; ++i) {
    applyLy(v.col(i), robin ? u_boundary(i) : 0.0, ly);
    v.col(i) += r * ly;
  }
  // Stage 2: (I - r L_x) v* = rhs.
  solveX(v);
  // Stage 3: rhs2 = v* + r L_x v* + r c(u), rolling the previous original column.
  Eigen::ArrayXd prev(ny), cur(ny);
  if (cfg_.walls == WallBC::neumann)
    prev = v.col(1);
  else
    prev.setZero();
  for (int i = 1; i < nx; ++i) {
    cur = v.col(i);
    if (i + 1 < nx) {
      v.col(i) = cur + (r * idx2) * (prev - 2.0 * cur + v.col(i + 1));
    } else {
      if (cfg_.walls == WallBC::neumann)
        v.col(i) = cur + (r * idx2) * (prev - cur);
      else
        v.col(i) = cur + (r * idx2) * (prev - 2.0 * cur);
    }
    if (robin) v(0, i) += r * src_coeff * u_boundary(i);
    prev.swap(cur);
  }
  // Stage 4: (I - r L_y) v^{n+1} = rhs2, per column.
  Eigen::ArrayXd colbuf(ny);
  for (int i = 1; i < nx; ++i) {
    colbuf = v.col(i);
    solveYColumn(colbuf);
    v.col(i) = colbuf;
  }

  if (robin && exchange_out) {
    exchange_out->resize(nx);
    *exchange_out = cfg_.mu * u_boundary - 0.5 * cfg_.nu * (v0_pre + v.row(0).transpose());
    (*exchange_out)(0) = 0.0;  // wall seam never exchanges
  }

  flowBlock(v, reaction, 0.5 * cfg_.dt);

  // Police NaN and negativity in one pass.
  double mn = 0.0, mx = 0.0;
  const double* d = v.data();
  const long n = v.size();
  bool bad = false;
  for (long t = 0; t < n; ++t) {
    double x = d[t];
    if (std::isnan(x)) { bad = true; break; }
    if (x < mn) mn = x;
    if (x > mx) mx = x;
  }
  double tol = 1e-12 * std::max(1.0, mx);
  if (bad || mn < -tol) {
    std::ostringstream os;
    os << "strip step unstable: " << (bad ? "NaN detected" : "negative value beyond tolerance")
       << " (min = " << mn << ", tol = " << -tol << ", dt = " << cfg_.dt << ", dx = " << cfg_.dx
       << ", dy = " << cfg_.dy << ", grid = " << nx << "x" << ny << ")";
    throw std::runtime_error(os.str());
  }
  if (mn < 0.0) v = v.max(0.0);
}

DirichletColumn1D::DirichletColumn1D(int ny, double dy, double dt) : ny_(ny), dy_(dy), dt_(dt) {
  if (ny < 8) throw std::invalid_argument("column1d: ny too small");
  const int M = ny - 1;  // unknowns j = 1..ny-1; node 0 and the ghost at ny are pinned
  auto build = [&](double r, Eigen::ArrayXd& cp, Eigen::ArrayXd& m) {
    double beta = r / (dy * dy);
    Eigen::ArrayXd diag = Eigen::ArrayXd::Constant(M, 1.0 + 2.0 * beta);
    Eigen::ArrayXd upper = Eigen::ArrayXd::Constant(M, -beta);
    factorize(diag, upper, -beta, cp, m);
  };
  build(0.5 * dt, cp_, m_);
  build(0.5 * dt, cpbe_, mbe_);  // backward Euler over dt/2 has the same matrix
}

namespace {

void thomasColumn(Eigen::ArrayXd& v, const Eigen::ArrayXd& cp, const Eigen::ArrayXd& m,
                  double beta) {
  const int M = static_cast<int>(cp.size());
  v(1) *= m(0);
  for (int t = 1; t < M; ++t) v(t + 1) = (v(t + 1) + beta * v(t)) * m(t);
  for (int t = M - 2; t >= 0; --t) v(t + 1) -= cp(t) * v(t + 2);
}

}  // namespace

void DirichletColumn1D::step(Eigen::ArrayXd& v, const ReactionTerm& reaction) const {
  if (v.size() != ny_) throw std::invalid_argument("column1d: length mismatch");
  const double r = 0.5 * dt_;
  const double beta = r / (dy_ * dy_);
  flowColumn(v, reaction, 0.5 * dt_);
  v(0) = 0.0;
  Eigen::ArrayXd rhs = v;
  for (int j = 1; j < ny_ - 1; ++j)
    rhs(j) += r * (v(j - 1) - 2.0 * v(j) + v(j + 1)) / (dy_ * dy_);
  rhs(ny_ - 1) += r * (v(ny_ - 2) - 2.0 * v(ny_ - 1)) / (dy_ * dy_);
  thomasColumn(rhs, cp_, m_, beta);
  v = rhs;
  v(0) = 0.0;
  flowColumn(v, reaction, 0.5 * dt_);
}

void DirichletColumn1D::stepBackwardEuler(Eigen::ArrayXd& v, const ReactionTerm& reaction) const {
  // One backward-Euler substep of size dt/2 (Rannacher startup for rough data).
  if (v.size() != ny_) throw std::invalid_argument("column1d: length mismatch");
  const double beta = 0.5 * dt_ / (dy_ * dy_);
  flowColumn(v, reaction, 0.25 * dt_);
  v(0) = 0.0;
  thomasColumn(v, cpbe_, mbe_, beta);
  v(0) = 0.0;
  flowColumn(v, reaction, 0.25 * dt_);
}

}  // namespace frontlab
