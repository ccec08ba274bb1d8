#ifndef FRONTLAB_NONLINEARITY_HPP
#define FRONTLAB_NONLINEARITY_HPP

#include <string>

namespace frontlab {

enum class NonlinearityKind { logistic, threshold };

/** KPP reaction f(v) = a*v - g(v), with g >= 0 convex and g(0)=g'(0)=0.
 *
 * Two concrete families:
 *   logistic   g(v) = v^2                                  (positive zero v0 = a)
 *   threshold  g(v) = ((v-theta)_+ / (1-theta))^3          (g vanishes on [0,theta])
 */
struct Nonlinearity {
  NonlinearityKind kind = NonlinearityKind::logistic;
  double a = 1.0;
  double theta = 0.3;  // threshold kind only, in (0,1)

  double g(double v) const;
  double gPrime(double v) const;
  double reaction(double v) const { return a * v - g(v); }

  // Unique positive zero of f, located by bracketed bisection, |f(v0)| <= 1e-12.
  double positiveZero() const;

  // Integrates dv/dt = f(v) over tau starting from v >= 0.
  // Exact closed form for the logistic family; for the threshold family the
  // exponential is exact while v stays below theta, RK2 substeps otherwise.
  double flow(double v, double tau) const;

  std::string name() const;
};

Nonlinearity makeNonlinearity(const std::string& kind, double a, double theta);

}  // namespace frontlab

#endif
