#include "doctest.h"

#include <functional>
#include <cmath>
#include <stdexcept>

#include "frontlab/diagnostics.hpp"

using namespace frontlab;

namespace {
constexpr double kPi = 3.14159265358979323846;

Eigen::ArrayXd profileFrom(double X, int nx, const std::function<double(double)>& f) {
  Eigen::ArrayXd u(nx);
  for (int i = 0; i < nx; ++i) u(i) = f(-X + i * (2.0 * X / nx));
  return u;
}
}  // namespace

TEST_CASE("level-set tracking") {
  SUBCASE("piecewise linear tent") {
    // u = max(0, 1 - |x|/10), lambda = 0.5: crossing exactly at x = 5 (a node)
    const double X = 20.0;
    const int nx = 160;  // dx = 0.25, x = 5 on the grid
    auto u = profileFrom(X, nx, [](double x) { return std::max(0.0, 1.0 - std::abs(x) / 10.0); });
    auto r = trackLevelSet(u, 0.5, X);
    REQUIRE(r.valid);
    CHECK(r.x == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("algebraic tail is inverted exactly") {
    const double X = 40.0;
    const int nx = 512;
    auto u = profileFrom(X, nx, [](double x) { return std::abs(x) < 0.5 ? 4.0 : std::pow(std::abs(x), -2.0); });
    auto r = trackLevelSet(u, 0.01, X);
    REQUIRE(r.valid);
    CHECK(std::abs(r.x - 10.0) <= 1e-6);
  }
  SUBCASE("guards") {
    const double X = 20.0;
    auto u = profileFrom(X, 128, [](double x) { return std::exp(-x * x); });
    CHECK_FALSE(trackLevelSet(u, 2.0, X).valid);   // above the maximum
    CHECK_FALSE(trackLevelSet(u, -0.1, X).valid);
    // crossing hugging the boundary is invalidated
    auto w = profileFrom(X, 128, [](double x) { return 1.0 / (1.0 + std::exp(x - 19.0)); });
    CHECK_FALSE(trackLevelSet(w, 0.5, X).valid);
  }
}

TEST_CASE("drift exponent fit") {
  SUBCASE("recovers a planted law exactly") {
    LevelSetTrace tr;
    tr.lambda = 0.1;
    for (double t = 4.0; t <= 16.0; t += 0.5)
      tr.push(t, {std::exp(0.5 * t) * std::pow(t, -0.75), true});
    auto fit = fitDriftExponent(tr, 0.5);
    CHECK(fit.m_hat == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(fit.stderr_m <= 1e-12);
    CHECK(fit.n_used == 25);
  }
  SUBCASE("exponent targets from the drift law") {
    // m* = 3/(2(1+2alpha)): 0.75 at alpha = 1/2, 0.6 at alpha = 3/4
    CHECK(3.0 / (2.0 * (1.0 + 2.0 * 0.5)) == doctest::Approx(0.75));
    CHECK(3.0 / (2.0 * (1.0 + 2.0 * 0.75)) == doctest::Approx(0.6));
  }
  SUBCASE("insufficient span is rejected") {
    LevelSetTrace tr;
    tr.lambda = 0.1;
    for (double t = 10.0; t <= 12.0; t += 0.1) tr.push(t, {std::exp(0.5 * t), true});
    CHECK_THROWS_AS(fitDriftExponent(tr, 0.5), std::invalid_argument);
    // an explicit window override admits the spec'd [10, 25]-style windows
    LevelSetTrace tr2;
    tr2.lambda = 0.1;
    for (double t = 10.0; t <= 25.0; t += 0.5)
      tr2.push(t, {std::exp(0.5 * t) * std::pow(t, -0.75), true});
    auto fit = fitDriftExponent(tr2, 0.5, 0.0, 1e300, 10, 2.0);
    CHECK(fit.m_hat == doctest::Approx(-0.75).epsilon(1e-10));
  }
}

TEST_CASE("renormalized samples and stabilization score") {
  const double lam_star = 0.4, m_star = 0.6, X = 6000.0;
  const int nx = 1 << 15;
  // synthetic self-similar family u(t,x) = phi(x e^{-lam t} t^{m})
  auto phi = [](double z) { return 1.0 / (1.0 + std::pow(std::abs(z), 2.5)); };
  std::vector<RoadSnapshot> snaps;
  for (double t = 10.0; t <= 20.0; t += 1.0) {
    RoadSnapshot s;
    s.t = t;
    s.u = profileFrom(X, nx, [&](double x) {
      return phi(x * std::exp(-lam_star * t) * std::pow(t, m_star));
    });
    snaps.push_back(s);
  }
  auto tab_star = renormalizedSamples(snaps, m_star, lam_star, X);
  auto tab_zero = renormalizedSamples(snaps, 0.0, lam_star, X);
  double sc_star = stabilizationScore(tab_star, 14.0);
  double sc_zero = stabilizationScore(tab_zero, 14.0);
  CHECK(sc_star <= 1e-4);          // exact self-similarity up to interpolation
  CHECK(sc_zero >= 100.0 * sc_star);  // mis-renormalization drifts
  CHECK(tab_star.s.size() == 33);
  CHECK(tab_star.s.front() == doctest::Approx(0.25));
  CHECK(tab_star.s.back() == doctest::Approx(4.0));
}

TEST_CASE("far-field asymptote constant") {
  // alpha = 1/2, mu = 1: 8 (1/2) sin(pi/2) Gamma(1) Gamma(3/2) / pi = 2/sqrt(pi)
  CHECK(kernelAsymptoteConstant(0.5, 1.0) == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-14));
  CHECK(kernelAsymptoteConstant(0.5, 1.0) == doctest::Approx(1.12838).epsilon(1e-5));
  // alpha = 1/4, mu = 2: 4 sin(pi/4) Gamma(1/2) Gamma(3/2) / pi = sqrt(2)
  CHECK(kernelAsymptoteConstant(0.25, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // linear in mu
  CHECK(kernelAsymptoteConstant(0.7, 3.0) ==
        doctest::Approx(3.0 * kernelAsymptoteConstant(0.7, 1.0)).epsilon(1e-14));
  CHECK(kernelAsymptoteLeading(10.0, 100.0, 0.5, 2.0) ==
        doctest::Approx(2.0 * kernelAsymptoteLeading(10.0, 100.0, 0.5, 1.0)).epsilon(1e-14));
  for (double alpha : {0.1, 0.3, 0.5, 0.75, 0.9})
    CHECK(kernelAsymptoteConstant(alpha, 1.0) > 0.0);
}

TEST_CASE("linearized far-field report") {
  const double alpha = 0.5, mu = 1.0;
  double K = kernelAsymptoteConstant(alpha, mu);
  SUBCASE("synthetic samples converging from below") {
    std::vector<FanSample> samples;
    for (double t : {10.0, 15.0, 20.0, 25.0}) {
      for (double xf : {3.0, 5.0, 8.0}) {
        double x = xf * std::exp(0.5 * t) / std::pow(t, 0.75);
        double u = K * (1.0 - 1.0 / t) * std::exp(t) / (std::pow(t, 1.5) * x * x);
        samples.push_back({t, x, u});
      }
    }
    auto rep = validateLinearizedFarField(samples, alpha, mu);
    CHECK_FALSE(rep.inconclusive);
    CHECK(rep.trend_increasing);
    CHECK(rep.final_max_rel_dev == doctest::Approx(1.0 / 25.0).epsilon(1e-9));
    CHECK(rep.inside_envelope);
    CHECK(rep.ratio_median_by_time.back() == doctest::Approx(K * (1.0 - 1.0 / 25.0)).epsilon(1e-12));
  }
  SUBCASE("noise floor yields the inconclusive flag") {
    std::vector<FanSample> samples{{10.0, 1e6, 1e-16}};
    CHECK(validateLinearizedFarField(samples, alpha, mu).inconclusive);
  }
}

TEST_CASE("log-log road sampler") {
  const double X = 100.0;
  const int nx = 2048;
  auto u = profileFrom(X, nx, [](double x) { return std::abs(x) < 1 ? 1.0 : std::pow(std::abs(x), -2.5); });
  auto v = sampleRoadLogLog(u, X, 20.0);
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx(std::pow(20.0, -2.5)).epsilon(1e-9));
  CHECK_FALSE(sampleRoadLogLog(u, X, 120.0).has_value());
}
