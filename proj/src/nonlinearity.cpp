#include "frontlab/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

namespace frontlab {

double Nonlinearity::g(double v) const {
  if (kind == NonlinearityKind::logistic) return v * v;
  if (v <= theta) return 0.0;
  double z = (v - theta) / (1.0 - theta);
  return z * z * z;
}

double Nonlinearity::gPrime(double v) const {
  if (kind == NonlinearityKind::logistic) return 2.0 * v;
  if (v <= theta) return 0.0;
  double z = (v - theta) / (1.0 - theta);
  return 3.0 * z * z / (1.0 - theta);
}

double Nonlinearity::positiveZero() const {
  if (kind == NonlinearityKind::logistic) return a;
  // f(theta) = a theta > 0, g grows cubically so a zero exists beyond theta.
  double lo = theta, hi = std::max(1.0, theta + 0.5);
  while (reaction(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e6) throw std::runtime_error("positiveZero: bracket failure, f stays positive");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = reaction(mid);
    if (std::abs(fm) <= 1e-13 && hi - lo < 1e-13 * hi) return mid;
    (fm > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double Nonlinearity::flow(double v, double tau) const {
  if (v <= 0.0 || tau == 0.0) return std::max(v, 0.0);
  if (kind == NonlinearityKind::logistic) {
    // dv/dt = a v - v^2, closed form.
    if (a == 0.0) return v / (1.0 + v * tau);
    double e = std::exp(a * tau);
    return a * v * e / (a + v * (e - 1.0));
  }
  // threshold: pure exponential below theta, RK2 substeps once g switches on.
  double growth = std::exp(a * tau);
  if (v * growth <= theta) return v * growth;
  int nsub = std::max(1, static_cast<int>(std::ceil(std::abs(a) * tau / 0.05)));
  double h = tau / nsub;
  for (int s = 0; s < nsub; ++s) {
    double k1 = reaction(v);
    double k2 = reaction(std::max(v + h * k1, 0.0));
    v = std::max(v + 0.5 * h * (k1 + k2), 0.0);
  }
  return v;
}

std::string Nonlinearity::name() const {
  return kind == NonlinearityKind::logistic ? "logistic" : "threshold";
}

Nonlinearity makeNonlinearity(const std::string& kind, double a, double theta) {
  Nonlinearity nl;
  nl.a = a;
  nl.theta = theta;
  if (kind == "logistic") {
    nl.kind = NonlinearityKind::logistic;
  } else if (kind == "threshold") {
    nl.kind = NonlinearityKind::threshold;
    if (!(theta > 0.0 && theta < 1.0))
      throw std::invalid_argument("nonlinearity: theta must lie in (0,1), got " +
                                  std::to_string(theta));
  } else {
    throw std::invalid_argument("nonlinearity: unknown kind '" + kind +
                                "' (expected logistic or threshold)");
  }
  return nl;
}

}  // namespace frontlab
