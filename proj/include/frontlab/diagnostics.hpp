#ifndef FRONTLAB_DIAGNOSTICS_HPP
#define FRONTLAB_DIAGNOSTICS_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace frontlab {

struct LevelReading {
  double x = 0.0;
  bool valid = false;
};

/** Rightmost downcrossing of level lambda on the road profile (even data, so
 * the right half is scanned). The crossing is located by interpolation linear
 * in (ln x, ln u), exact on algebraic tails.
 *
 * Invalid when lambda >= max u, or the crossing sits within guard_cells of the
 * domain edge, or beyond (1 - edge_margin) * X.
 */
LevelReading trackLevelSet(const Eigen::ArrayXd& u, double lambda, double domain_half_width,
                           int guard_cells = 5, double edge_margin = 0.02);

struct LevelSetTrace {
  double lambda = 0.0;
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<bool> valid;

  void push(double t, const LevelReading& r) {
    times.push_back(t);
    positions.push_back(r.x);
    valid.push_back(r.valid);
  }
};

struct DriftFit {
  double m_hat = 0.0;     // slope of ln x_lambda(t) - lambda* t against ln t
  double stderr_m = 0.0;
  double intercept = 0.0;
  int n_used = 0;
};

/** Least-squares drift exponent from a level-set trace. Uses valid samples
 * with t in [t_min, t_max] (defaults: all). Requires at least min_samples
 * valid points spanning a factor >= min_span_ratio in t. */
DriftFit fitDriftExponent(const LevelSetTrace& trace, double lambda_star,
                          double t_min = 0.0, double t_max = 1e300,
                          int min_samples = 10, double min_span_ratio = 3.0);

// Samples an even road profile at position x > 0 by (ln x, ln u) interpolation.
// Returns nullopt outside the resolved right half.
std::optional<double> sampleRoadLogLog(const Eigen::ArrayXd& u, double domain_half_width,
                                       double x);

struct RenormTable {
  double m = 0.0;             // renormalization exponent
  std::vector<double> s;      // scale grid
  std::vector<double> times;
  Eigen::ArrayXXd values;     // times x s, NaN where flagged out of domain
};

struct RoadSnapshot {
  double t = 0.0;
  Eigen::ArrayXd u;
};

/** Figure-1 renormalization: samples u(t, s * t^{-m} e^{lambda* t}) on a
 * log-spaced scale grid s in [s_lo, s_hi]. */
RenormTable renormalizedSamples(const std::vector<RoadSnapshot>& snaps, double m,
                                double lambda_star, double domain_half_width,
                                double s_lo = 0.25, double s_hi = 4.0, int ns = 33);

/** Late-window stabilization score: the largest over s of the sup-variation of
 * u across the snapshot times with t >= late_t_min (scales with any flagged
 * entry in the window are skipped). Small iff the renormalized profile froze. */
double stabilizationScore(const RenormTable& table, double late_t_min);

// Leading far-field constant of the linearized road-field system (a = 1):
//   8 alpha mu sin(alpha pi) Gamma(2 alpha) Gamma(3/2) / pi.
double kernelAsymptoteConstant(double alpha, double mu);

// Leading term  const * e^t / (t^{3/2} |x|^{1+2 alpha}).
double kernelAsymptoteLeading(double t, double x, double alpha, double mu);

// Remainder envelope C (e^{-delta t} + e^t/|x|^{min(1+4a,3)} + e^t/(|x|^{1+2a} t^{5/2})).
double kernelAsymptoteRemainder(double t, double x, double alpha, double C, double delta);

struct FanSample {
  double t = 0.0;
  double x = 0.0;
  double u = 0.0;
};

struct AsymptoteReport {
  double constant_theory = 0.0;
  std::vector<FanSample> samples;       // kept samples (above noise floor)
  std::vector<double> ratios;           // u t^{3/2} |x|^{1+2alpha} e^{-t}
  std::vector<double> times;            // distinct sample times, increasing
  std::vector<double> ratio_median_by_time;
  double final_max_rel_dev = 0.0;       // max |ratio/const - 1| at the latest time
  bool trend_increasing = false;        // medians increase toward the constant
  double fitted_C = 0.0, fitted_delta = 0.0;
  bool inside_envelope = false;
  bool inconclusive = false;            // nothing above the noise floor
};

AsymptoteReport validateLinearizedFarField(const std::vector<FanSample>& samples,
                                           double alpha, double mu,
                                           double noise_floor = 1e-14);

}  // namespace frontlab

#endif
