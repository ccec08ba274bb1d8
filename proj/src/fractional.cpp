#include "frontlab/fractional.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace frontlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::mutex& plannerMutex() {
  static std::mutex m;
  return m;
}

struct FftwBuf {
  double* re = nullptr;
  fftw_complex* cx = nullptr;
  FftwBuf(int n, int nc) {
    re = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    cx = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nc));
    if (!re || !cx) throw std::bad_alloc();
  }
  ~FftwBuf() {
    fftw_free(re);
    fftw_free(cx);
  }
  FftwBuf(const FftwBuf&) = delete;
  FftwBuf& operator=(const FftwBuf&) = delete;
};

}  // namespace

struct FracOperator::Impl {
  // spectral
  Eigen::ArrayXd symbol;  // |xi_k|^{2 alpha}, k = 0..nx/2
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  // multiplier cache for repeated heat steps with one (dt, r)
  mutable std::mutex cache_mutex;
  mutable Eigen::ArrayXd cached_factor;
  mutable double cached_dt = 0.0, cached_r = 0.0;
  mutable bool cache_valid = false;
  // quadrature
  Eigen::ArrayXd far_kernel;  // dx / (d dx)^{1+2alpha}, d = 1..nx-1
  double window_moment = 0.0;
  double calpha = 0.0;
  int halo = 4;

  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
  }
};

FracOperator::FracOperator(double alpha, FracMethod method, double domain_half_width, int nx)
    : alpha_(alpha), method_(method), X_(domain_half_width), nx_(nx),
      impl_(std::make_unique<Impl>()) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha out of range");
  if (nx < 8) throw std::invalid_argument("nx too small");
  if (!(domain_half_width > 0.0)) throw std::invalid_argument("domain half width must be > 0");

  if (method_ == FracMethod::spectral) {
    const int nc = nx_ / 2 + 1;
    impl_->symbol.resize(nc);
    for (int k = 0; k < nc; ++k) {
      double xi = kPi * k / X_;
      impl_->symbol(k) = std::pow(std::abs(xi), 2.0 * alpha_);
    }
    FftwBuf plan_buf(nx_, nc);
    std::lock_guard lock(plannerMutex());
    impl_->fwd = fftw_plan_dft_r2c_1d(nx_, plan_buf.re, plan_buf.cx, FFTW_ESTIMATE);
    impl_->inv = fftw_plan_dft_c2r_1d(nx_, plan_buf.cx, plan_buf.re, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->inv) throw std::runtime_error("fftw plan creation failed");
  } else {
    const double dx = 2.0 * X_ / nx_;
    impl_->calpha = couplingConstant(alpha_);
    impl_->far_kernel.resize(nx_);
    impl_->far_kernel(0) = 0.0;
    for (int d = 1; d < nx_; ++d)
      impl_->far_kernel(d) = dx / std::pow(d * dx, 1.0 + 2.0 * alpha_);
    double W = (impl_->halo + 0.5) * dx;
    impl_->window_moment = std::pow(W, 2.0 - 2.0 * alpha_) / (2.0 - 2.0 * alpha_);
  }
}

FracOperator::~FracOperator() = default;
FracOperator::FracOperator(FracOperator&&) noexcept = default;
FracOperator& FracOperator::operator=(FracOperator&&) noexcept = default;

double FracOperator::couplingConstant(double alpha) {
  // |Gamma(-alpha)| = pi / (sin(pi alpha) Gamma(1+alpha)) by reflection.
  double abs_gamma_neg = kPi / (std::sin(kPi * alpha) * std::tgamma(1.0 + alpha));
  return std::pow(4.0, alpha) * std::tgamma(0.5 + alpha) / (std::sqrt(kPi) * abs_gamma_neg);
}

namespace {

// Scales the half spectrum in place by a real multiplier table.
void applyMultiplier(fftw_complex* cx, const Eigen::ArrayXd& m, int nc) {
  for (int k = 0; k < nc; ++k) {
    cx[k][0] *= m(k);
    cx[k][1] *= m(k);
  }
}

}  // namespace

Eigen::ArrayXd FracOperator::apply(const Eigen::ArrayXd& field) const {
  if (field.size() != nx_)
    throw std::invalid_argument("apply: field length " + std::to_string(field.size()) +
                                " does not match nx = " + std::to_string(nx_));
  if (method_ == FracMethod::spectral) {
    const int nc = nx_ / 2 + 1;
    FftwBuf buf(nx_, nc);
    std::copy_n(field.data(), nx_, buf.re);
    fftw_execute_dft_r2c(impl_->fwd, buf.re, buf.cx);
    applyMultiplier(buf.cx, impl_->symbol, nc);
    fftw_execute_dft_c2r(impl_->inv, buf.cx, buf.re);
    Eigen::ArrayXd out(nx_);
    const double inv_n = 1.0 / nx_;
    for (int i = 0; i < nx_; ++i) out(i) = buf.re[i] * inv_n;
    return out;
  }

  // Quadrature route. Split the principal value at W = (halo+1/2) dx: inside,
  // the cubic Taylor remainder is summed by midpoint rule (odd Taylor terms
  // cancel, the u'' moment is exact); outside, midpoint cells out to the grid
  // edge; beyond the grid the field is continued by its edge value.
  const double dx = 2.0 * X_ / nx_;
  const double twoa = 2.0 * alpha_;
  const int halo = impl_->halo;
  const int n = nx_;
  const auto& u = field;
  Eigen::ArrayXd out(n);
  auto at = [&](int j) { return u(std::clamp(j, 0, n - 1)); };
  for (int i = 0; i < n; ++i) {
    const double ui = u(i);
    // 4th order centred derivatives, edge-clamped stencil.
    double up = (8.0 * (at(i + 1) - at(i - 1)) - (at(i + 2) - at(i - 2))) / (12.0 * dx);
    double upp = (16.0 * (at(i + 1) + at(i - 1)) - (at(i + 2) + at(i - 2)) - 30.0 * ui) /
                 (12.0 * dx * dx);
    double uppp = ((at(i + 2) - at(i - 2)) - 2.0 * (at(i + 1) - at(i - 1))) /
                  (2.0 * dx * dx * dx);
    double acc = upp * impl_->window_moment;
    for (int d = 1; d <= halo; ++d) {
      double r = d * dx;
      double taylor_even = upp * 0.5 * r * r;
      double taylor_odd = up * r + uppp * r * r * r / 6.0;
      double rp = at(i + d) - ui - taylor_odd - taylor_even;
      double rm = at(i - d) - ui + taylor_odd - taylor_even;
      acc += (rp + rm) * impl_->far_kernel(d);
    }
    int dr = n - 1 - i;
    for (int d = halo + 1; d <= std::max(i, dr); ++d) {
      double s = 0.0;
      if (d <= i) s += u(i - d) - ui;
      if (d <= dr) s += u(i + d) - ui;
      acc += s * impl_->far_kernel(d);
    }
    double rl = (i + 0.5) * dx, rr = (dr + 0.5) * dx;
    acc += (u(0) - ui) * std::pow(rl, -twoa) / twoa;
    acc += (u(n - 1) - ui) * std::pow(rr, -twoa) / twoa;
    out(i) = -impl_->calpha * acc;
  }
  return out;
}

Eigen::ArrayXd FracOperator::heatStep(const Eigen::ArrayXd& field, double dt, double r) const {
  if (method_ != FracMethod::spectral)
    throw std::logic_error("heatStep requires the spectral method");
  if (field.size() != nx_)
    throw std::invalid_argument("heatStep: field length mismatch");
  const int nc = nx_ / 2 + 1;
  Eigen::ArrayXd factor;
  {
    std::lock_guard lock(impl_->cache_mutex);
    if (!impl_->cache_valid || impl_->cached_dt != dt || impl_->cached_r != r) {
      impl_->cached_factor = ((r - impl_->symbol) * dt).exp();
      impl_->cached_dt = dt;
      impl_->cached_r = r;
      impl_->cache_valid = true;
    }
    factor = impl_->cached_factor;
  }
  FftwBuf buf(nx_, nc);
  std::copy_n(field.data(), nx_, buf.re);
  fftw_execute_dft_r2c(impl_->fwd, buf.re, buf.cx);
  applyMultiplier(buf.cx, factor, nc);
  fftw_execute_dft_c2r(impl_->inv, buf.cx, buf.re);
  Eigen::ArrayXd out(nx_);
  const double inv_n = 1.0 / nx_;
  for (int i = 0; i < nx_; ++i) out(i) = buf.re[i] * inv_n;
  return out;
}

Eigen::ArrayXd fracHeatKernel(double alpha, double t, double domain_half_width, int nx) {
  FracOperator op(alpha, FracMethod::spectral, domain_half_width, nx);
  Eigen::ArrayXd spike = Eigen::ArrayXd::Zero(nx);
  double dx = 2.0 * domain_half_width / nx;
  spike(nx / 2) = 1.0 / dx;  // unit mass at x = 0
  return op.heatStep(spike, t, 0.0);
}

double cauchyKernel(double t, double x) { return t / (kPi * (t * t + x * x)); }

TailCheckReport kernelTailCheck(double alpha, double t, const std::vector<double>& x_samples,
                                double domain_half_width, int nx) {
  if (x_samples.empty()) throw std::invalid_argument("kernelTailCheck: no samples");
  if (t < 1.0) throw std::invalid_argument("kernelTailCheck: need t >= 1");
  double xmax = *std::max_element(x_samples.begin(), x_samples.end());
  double xmin = *std::min_element(x_samples.begin(), x_samples.end());
  if (xmin <= 0.0) throw std::invalid_argument("kernelTailCheck: samples must be positive");
  double X = domain_half_width > 0.0 ? domain_half_width : 4.0 * xmax;
  double core = std::pow(t, 1.0 / (2.0 * alpha));
  if (nx <= 0) {
    double dx_target = std::min({core / 50.0, xmin / 20.0, X / 4096.0});
    long need = static_cast<long>(2.0 * X / dx_target);
    nx = 1 << 12;
    while (nx < need && nx < (1 << 21)) nx <<= 1;
  }
  double dx = 2.0 * X / nx;
  Eigen::ArrayXd g = fracHeatKernel(alpha, t, X, nx);

  TailCheckReport rep;
  rep.bounded = true;
  double exponent = 1.0 + 2.0 * alpha;
  for (double x : x_samples) {
    if (x > 0.8 * X || x < 10.0 * dx)
      throw std::invalid_argument("kernelTailCheck: sample x outside resolved domain");
    // log-log interpolation on the right half
    double fi = (x + X) / dx;
    int i = static_cast<int>(fi);
    TailCheckRow row;
    row.x = x;
    double g0 = g(i), g1 = g(i + 1);
    if (g0 > 0.0 && g1 > 0.0 && i > nx / 2) {
      double x0 = -X + i * dx, x1 = x0 + dx;
      double lng = std::log(g0) + (std::log(x) - std::log(x0)) /
                                      (std::log(x1) - std::log(x0)) *
                                      (std::log(g1) - std::log(g0));
      row.kernel = std::exp(lng);
    } else {
      row.kernel = g0 + (fi - i) * (g1 - g0);
    }
    row.far_field = x >= 10.0 * core;
    row.ratio = row.kernel * std::pow(x, exponent) / t;
    if (row.far_field && !(std::isfinite(row.ratio) && row.ratio > 0.0)) rep.bounded = false;
    rep.rows.push_back(row);
  }
  double lo = 1e300, hi = -1e300;
  for (const auto& r : rep.rows) {
    if (r.x >= xmax / 10.0 && r.far_field) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
    }
  }
  rep.last_decade_variation = (lo < hi && lo > 0.0) ? hi / lo - 1.0 : 0.0;
  return rep;
}

}  // namespace frontlab
