#ifndef FRONTLAB_FRACTIONAL_HPP
#define FRONTLAB_FRACTIONAL_HPP

#include <Eigen/Core>
#include <memory>
#include <vector>

namespace frontlab {

enum class FracMethod { spectral, quadrature };

/** Discrete fractional Laplacian (-d_xx)^alpha on the periodic road grid
 * [-X, X) with nx nodes.
 *
 * spectral: Fourier multiplier |xi_k|^{2 alpha}, xi_k = pi k / X. This is the
 * convention in which the singular kernel carries exponent 1+2alpha; it
 * reproduces the spreading rate a/(1+2alpha).
 *
 * quadrature: truncated principal-value sum, used as a slow independent
 * cross-check. Near the diagonal the cubic Taylor remainder is integrated
 * (odd terms vanish, the u'' moment has a closed form); beyond the grid the
 * field is continued by its edge value, so constants are annihilated exactly
 * while rapidly decaying fields get the correct analytic tail closure.
 */
class FracOperator {
 public:
  FracOperator(double alpha, FracMethod method, double domain_half_width, int nx);
  ~FracOperator();
  FracOperator(FracOperator&&) noexcept;
  FracOperator& operator=(FracOperator&&) noexcept;
  FracOperator(const FracOperator&) = delete;
  FracOperator& operator=(const FracOperator&) = delete;

  double alpha() const { return alpha_; }
  FracMethod method() const { return method_; }
  int size() const { return nx_; }
  double domainHalfWidth() const { return X_; }

  // (-d_xx)^alpha applied to a real field of length nx.
  Eigen::ArrayXd apply(const Eigen::ArrayXd& field) const;

  // Exact-in-time integration of  w_t = -(-d_xx)^alpha w + r w  over dt:
  // Fourier modes scaled by exp((r - |xi|^{2 alpha}) dt). Spectral method only.
  Eigen::ArrayXd heatStep(const Eigen::ArrayXd& field, double dt, double r = 0.0) const;

  // 1D normalization constant c_alpha = 4^alpha Gamma(1/2+alpha) / (sqrt(pi) |Gamma(-alpha)|).
  static double couplingConstant(double alpha);

 private:
  double alpha_;
  FracMethod method_;
  double X_;
  int nx_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Periodized fractional heat kernel exp(-t (-d_xx)^alpha) delta_0 on the grid,
// evaluated by direct Fourier synthesis (unit mass).
Eigen::ArrayXd fracHeatKernel(double alpha, double t, double domain_half_width, int nx);

// alpha = 1/2 closed form: the Cauchy kernel t / (pi (t^2 + x^2)).
double cauchyKernel(double t, double x);

struct TailCheckRow {
  double x = 0.0;
  double kernel = 0.0;
  double ratio = 0.0;      // G_alpha(t,x) |x|^{1+2alpha} / t
  bool far_field = false;  // x beyond the kernel core scale t^{1/(2 alpha)}
};

struct TailCheckReport {
  std::vector<TailCheckRow> rows;
  bool bounded = false;         // all far-field ratios finite and positive
  double last_decade_variation = 0.0;  // max/min - 1 over the top decade in x
};

// Tail law audit: G_alpha(t,x) ~ t / |x|^{1+2alpha} for large t, x.
// Samples must sit inside the resolved domain (throws otherwise).
TailCheckReport kernelTailCheck(double alpha, double t, const std::vector<double>& x_samples,
                                double domain_half_width = 0.0, int nx = 0);

}  // namespace frontlab

#endif
