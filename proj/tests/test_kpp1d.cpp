#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "frontlab/kpp1d.hpp"
#include "frontlab/strip.hpp"
#include "test_util.hpp"

using namespace frontlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("exact linear Dirichlet transient") {
  SUBCASE("vanishes on the boundary") {
    for (double t : {0.1, 1.0, 7.0})
      for (double eps : {1e-6, 1e-2}) CHECK(linearDirichletExact(t, 0.0, eps) == 0.0);
  }
  SUBCASE("recovers the datum as t -> 0+ inside the support") {
    CHECK(linearDirichletExact(1e-10, 0.75, 0.01) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(linearDirichletExact(1e-10, 0.25, 0.01) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("matches adaptive quadrature of the image-kernel integral to 1e-10") {
    // independent oracle: integrate the odd-image heat kernel over [1/2, 1]
    for (double t : {0.5, 2.0, 5.0}) {
      for (double y : {0.3, 1.0, 3.7}) {
        auto integrand = [&](double yp) {
          return (std::exp(-(y - yp) * (y - yp) / (4.0 * t)) -
                  std::exp(-(y + yp) * (y + yp) / (4.0 * t))) /
                 std::sqrt(4.0 * kPi * t);
        };
        double eps = 1e-4;
        double oracle = eps * std::exp(t) * testutil::integrate(integrand, 0.5, 1.0, 1e-15);
        CHECK(linearDirichletExact(t, y, eps) == doctest::Approx(oracle).epsilon(1e-10));
      }
    }
  }
  SUBCASE("rejects t <= 0") {
    CHECK_THROWS_AS(linearDirichletExact(0.0, 1.0, 1e-4), std::invalid_argument);
  }
}

TEST_CASE("envelope of the transient") {
  // golden-section oracle for the maximum of z e^{-z^2/5}
  double z0_oracle = testutil::argmax([](double z) { return z * std::exp(-z * z / 5.0); }, 0.0, 5.0);
  double m0_oracle = z0_oracle * std::exp(-z0_oracle * z0_oracle / 5.0);
  CHECK(z0_oracle == doctest::Approx(std::sqrt(2.5)).epsilon(1e-9));

  auto rep = envelopeBoundCheck(2.0, 1e-4);
  CHECK(rep.z0 == doctest::Approx(z0_oracle).epsilon(1e-6));
  CHECK(rep.m0 == doctest::Approx(m0_oracle).epsilon(1e-9));
  CHECK(rep.z0 == doctest::Approx(1.58114).epsilon(1e-5));
  CHECK(rep.holds_pointwise);
  CHECK(rep.C_min > 0.0);

  // argmax of the exact solution sits within 15% of z0 sqrt(t) at t = 9
  auto rep9 = envelopeBoundCheck(9.0, 1e-6);
  CHECK(rep9.argmax_pred == doctest::Approx(4.7434).epsilon(1e-4));
  CHECK(std::abs(rep9.argmax_y - rep9.argmax_pred) <= 0.15 * rep9.argmax_pred);
  // dense-grid oracle for the argmax
  double ym = testutil::argmax([&](double y) { return linearDirichletExact(9.0, y, 1e-6); }, 1.0, 20.0);
  CHECK(rep9.argmax_y == doctest::Approx(ym).epsilon(1e-2));
}

TEST_CASE("reference time T1") {
  // boundary of the branch: RHS = e^2/2 gives exactly T = 2
  double m0 = std::sqrt(2.5) * std::exp(-0.5);
  double rhs_boundary = std::exp(2.0) / 2.0;
  // choose eps so the RHS lands on the boundary: theta/(m0 C eps) = e^2/2
  double theta = 0.3, C = 1.7;
  double eps_b = theta / (m0 * C * rhs_boundary);
  CHECK(solveT1(eps_b, theta, C, m0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(solveT1(eps_b * 1.5, theta, C, m0), std::invalid_argument);

  // RHS = 100: independent bisection oracle on e^T/T = 100
  double eps_100 = theta / (m0 * C * 100.0);
  double T_oracle = testutil::bisect([](double T) { return std::exp(T) / T - 100.0; }, 2.0, 10.0);
  double T = solveT1(eps_100, theta, C, m0);
  CHECK(T == doctest::Approx(T_oracle).epsilon(1e-10));
  CHECK(T == doctest::Approx(6.473).epsilon(1e-4));

  // halving eps increases T1, across a decade sweep
  double prev = 0.0;
  for (double eps = 1e-3; eps >= 1e-8; eps /= 2.0) {
    double Tc = solveT1(eps, theta, C, m0);
    CHECK(Tc > prev);
    prev = Tc;
  }
}

TEST_CASE("eigenfunction subsolution") {
  CHECK(eigenLambda1(5.0) == doctest::Approx(kPi * kPi / 16.0).epsilon(1e-14));
  CHECK(eigenLambda1(5.0) == doctest::Approx(0.61685).epsilon(1e-4));
  double T1 = 10.0, eps = 1e-5, cl = 0.3;
  CHECK(eigenSubsolution(10.0, T1, 1.0, eps, T1, cl) == 0.0);
  CHECK(std::abs(eigenSubsolution(10.0, T1, 10.0, eps, T1, cl)) <= 1e-20);
  CHECK_THROWS_AS(eigenSubsolution(10.0, T1, 11.0, eps, T1, cl), std::invalid_argument);
  CHECK_THROWS_AS(eigenSubsolution(10.0, T1 - 1.0, 5.0, eps, T1, cl), std::invalid_argument);
}

TEST_CASE("numerical solution dominates the eigenfunction subsolution") {
  const double eps = 1e-5, theta = 0.3, L = 10.0;
  auto nl = makeNonlinearity("threshold", 1.0, theta);
  double m0 = std::sqrt(2.5) * std::exp(-0.5);
  double C = 0.0;
  for (double tq = 2.0; tq <= 30.0; tq += 2.0) C = std::max(C, envelopeBoundCheck(tq, 1e-4).C_min);
  double T1 = solveT1(eps, theta, C, m0);
  double cl = measureCL(T1, eps, L);
  CHECK(cl > 0.0);

  // integrate Eq-(2.1)-style dynamics to T1 and through the validity window
  const double dy = 0.02, dt = 0.005;
  const double Y = 2.0 * T1 + 20.0;
  const int ny = static_cast<int>(Y / dy);
  DirichletColumn1D col(ny, dy, dt);
  auto rt = ReactionTerm::kpp(nl);
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(ny);
  for (int j = 1; j < ny; ++j) {
    double yl = (j - 0.5) * dy, yh = (j + 0.5) * dy;
    v(j) = eps * std::max(0.0, std::min(yh, 1.0) - std::max(yl, 0.5)) / dy;
  }
  col.stepBackwardEuler(v, rt);
  col.stepBackwardEuler(v, rt);
  double t = dt;
  double window = std::log(theta * theta * T1) / (2.0 * (1.0 - eigenLambda1(L)));
  double t_end = T1 + std::max(window, 0.0);
  bool dominated = true;
  while (t < t_end - 1e-9) {
    col.step(v, rt);
    t += dt;
    if (t >= T1) {
      for (double y = 1.0; y <= L; y += 0.25) {
        int j = static_cast<int>(std::lround(y / dy));
        double sub = eigenSubsolution(L, t, y, eps, T1, cl);
        if (v(j) < sub - 1e-12) dominated = false;
      }
    }
  }
  CHECK(dominated);
  CHECK(t >= T1);
}

TEST_CASE("steady state of -w'' = f(w)") {
  SUBCASE("logistic") {
    auto nl = makeNonlinearity("logistic", 1.0, 0.0);
    auto prof = steadyState(nl, 30.0, 0.01);
    CHECK(prof.v0 == doctest::Approx(1.0));
    CHECK(prof.slope0 > 0.0);
    // first-integral oracle: w'(0) = sqrt(2 F(v0)), F = v^2/2 - v^3/3
    CHECK(prof.slope0 == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-10));
    CHECK(std::abs(prof.w(prof.w.size() - 1) - 1.0) <= 1e-4);
    CHECK(prof.residual <= 1e-9);
    // Hamiltonian constant along the orbit
    double E0 = 0.5 * prof.slope0 * prof.slope0;
    double drift = 0.0;
    for (int j = 0; j < prof.y.size(); ++j) {
      double w = prof.w(j), p = prof.wp(j);
      double F = 0.5 * w * w - w * w * w / 3.0;
      drift = std::max(drift, std::abs(0.5 * p * p + F - E0));
    }
    CHECK(drift <= 1e-8);
  }
  SUBCASE("threshold") {
    auto nl = makeNonlinearity("threshold", 1.0, 0.3);
    auto prof = steadyState(nl, 30.0, 0.01);
    // F(1) = 1/2 - (1-theta)/4 = 0.325
    CHECK(prof.slope0 == doctest::Approx(std::sqrt(0.65)).epsilon(1e-9));
    CHECK(std::abs(prof.w(prof.w.size() - 1) - 1.0) <= 1e-4);
    CHECK(prof.residual <= 1e-9);
  }
}

TEST_CASE("first crossing time T_eps") {
  auto nl = makeNonlinearity("threshold", 1.0, 0.3);
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(measureTEps(0.4, 0.5, nl, {}), std::invalid_argument);   // eps >= theta
    CHECK_THROWS_AS(measureTEps(1e-4, 0.2, nl, {}), std::invalid_argument);  // lambda <= theta
    CHECK_THROWS_AS(measureTEps(1e-4, 0.9, nl, {}), std::invalid_argument);  // lambda >= v_inf(1)
    CHECK_THROWS_AS(measureTEps(1e-3, 0.5, makeNonlinearity("logistic", 1.0, 0.0), {}),
                    std::invalid_argument);
  }
  SUBCASE("bracketed by the linear crossing and monotone in eps") {
    TransientGrid grid;
    grid.dy = 0.02;
    grid.dt = 0.005;
    double prev_T = 0.0;
    for (double eps : {1e-3, 1e-4}) {
      auto res = measureTEps(eps, 0.5, nl, grid);
      REQUIRE(res.crossed);
      // f(v) <= v: the nonlinear solution sits below the linear one, so the
      // crossing cannot happen before the linear crossing (sharper converse)
      double T_lin = testutil::bisect(
          [&](double t) { return linearDirichletExact(t, 1.0, eps) - 0.5; }, 1.0, 40.0);
      CHECK(res.T_eps >= T_lin - 0.01);
      CHECK(res.T_eps > res.T1_eps);
      CHECK(res.T_eps > prev_T);  // T grows as eps shrinks
      CHECK(res.ratio > 0.0);
      prev_T = res.T_eps;
    }
  }
  SUBCASE("horizon exhaustion reports the last value") {
    TransientGrid grid;
    grid.horizon = 2.0;
    auto res = measureTEps(1e-4, 0.5, nl, grid);
    CHECK_FALSE(res.crossed);
    CHECK(res.last_value > 0.0);
    CHECK(res.last_value < 0.5);
  }
}

TEST_CASE("transient law regression") {
  SUBCASE("recovers the planted slope exactly") {
    std::vector<TransientResult> sweep;
    for (double eps = 1e-3; eps >= 1e-9; eps /= 10.0) {
      TransientResult r;
      r.epsilon = eps;
      r.crossed = true;
      double L = std::log(1.0 / eps);
      r.T_eps = L + 1.5 * std::log(L);
      sweep.push_back(r);
    }
    auto fit = transientLawFit(sweep);
    CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fit.consistent);
  }
  SUBCASE("flat T is flagged inconsistent") {
    std::vector<TransientResult> sweep;
    for (double eps = 1e-3; eps >= 1e-9; eps /= 10.0) {
      TransientResult r;
      r.epsilon = eps;
      r.crossed = true;
      r.T_eps = std::log(1.0 / eps);  // slope 0 against lnln
      sweep.push_back(r);
    }
    auto fit = transientLawFit(sweep);
    CHECK(std::abs(fit.slope) <= 1e-12);
    CHECK_FALSE(fit.consistent);
  }
  SUBCASE("insufficient sweep is rejected") {
    std::vector<TransientResult> sweep;
    for (double eps = 1e-3; eps >= 1e-5; eps /= 10.0) {
      TransientResult r;
      r.epsilon = eps;
      r.crossed = true;
      r.T_eps = std::log(1.0 / eps);
      sweep.push_back(r);
    }
    CHECK_THROWS_AS(transientLawFit(sweep), std::invalid_argument);
  }
}
