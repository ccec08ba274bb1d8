#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "frontlab/params.hpp"
#include "test_util.hpp"

using namespace frontlab;

namespace {
std::map<std::string, std::string> baseConfig() {
  return {{"alpha", "0.5"}, {"a", "1"},   {"mu", "1"},      {"nu", "1"},
          {"t_final", "10"}, {"X", "600"}, {"Y", "40"},      {"nx", "4096"},
          {"ny", "128"},     {"dt", "0.05"}};
}
}  // namespace

TEST_CASE("derived quantities") {
  auto p = makeParams(baseConfig());
  CHECK(p.lambdaStar() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.dx() == doctest::Approx(2.0 * 600 / 4096));
  CHECK(p.dy() == doctest::Approx(40.0 / 128));

  auto cfg = baseConfig();
  cfg["alpha"] = "0.75";
  auto q = makeParams(cfg);
  CHECK(q.lambdaStar() == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(q.driftExponent() == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("validation rejects out-of-range parameters") {
  auto cfg = baseConfig();
  cfg["alpha"] = "1.5";
  CHECK_THROWS_WITH_AS(makeParams(cfg), doctest::Contains("alpha out of range"),
                       std::invalid_argument);
  cfg = baseConfig();
  cfg["mu"] = "0";
  CHECK_THROWS_AS(makeParams(cfg), std::invalid_argument);
  cfg = baseConfig();
  cfg["Y"] = "12";  // violates Y >= 2 sqrt(a) t_final + 10 = 30
  CHECK_THROWS_WITH_AS(makeParams(cfg), doctest::Contains("2*sqrt(a)*t_final"),
                       std::invalid_argument);
  cfg = baseConfig();
  cfg["X"] = "100";  // nonlinear mode needs X >= 4 e^5 = 593.65
  CHECK_THROWS_WITH_AS(makeParams(cfg, SimMode::nonlinear),
                       doctest::Contains("4*exp(a*t_final"), std::invalid_argument);
  // the same X passes in linearized mode
  cfg["k"] = "0.5";
  CHECK_NOTHROW(makeParams(cfg, SimMode::linearized));
  cfg = baseConfig();
  cfg["k"] = "0.5";
  CHECK_THROWS_AS(makeParams(cfg, SimMode::nonlinear), std::invalid_argument);
  cfg = baseConfig();
  cfg["bogus_key"] = "1";
  CHECK_THROWS_AS(makeParams(cfg), std::invalid_argument);
}

TEST_CASE("config text parser") {
  auto kv = parseConfigText("alpha 0.5 # fractional order\n\n a = 1\nnx 512\n");
  CHECK(kv.at("alpha") == "0.5");
  CHECK(kv.at("a") == "1");
  CHECK(kv.at("nx") == "512");
  CHECK_THROWS_AS(parseConfigText("alpha 0.5 oops"), std::invalid_argument);
}

TEST_CASE("reaction values") {
  auto log1 = makeNonlinearity("logistic", 1.0, 0.0);
  CHECK(log1.reaction(0.0) == 0.0);
  CHECK(log1.reaction(1.0) == 0.0);  // v0 = a
  auto thr = makeNonlinearity("threshold", 1.0, 0.3);
  CHECK(thr.reaction(0.2) == doctest::Approx(0.2).epsilon(1e-15));  // g vanishes below theta
  CHECK(thr.g(0.3) == 0.0);
  CHECK(thr.g(1.0) == doctest::Approx(1.0).epsilon(1e-14));  // g(1) = 1 by construction
}

TEST_CASE("positive zero of f") {
  CHECK(makeNonlinearity("logistic", 1.0, 0.0).positiveZero() == doctest::Approx(1.0));
  CHECK(makeNonlinearity("logistic", 2.0, 0.0).positiveZero() == doctest::Approx(2.0));

  // independent bisection oracle on 0.8 v = ((v-theta)/(1-theta))^3
  auto thr = makeNonlinearity("threshold", 0.8, 0.3);
  double v0_oracle = testutil::bisect(
      [](double v) {
        double z = (v - 0.3) / 0.7;
        return 0.8 * v - z * z * z;
      },
      0.9, 2.0);
  double v0 = thr.positiveZero();
  CHECK(v0 == doctest::Approx(v0_oracle).epsilon(1e-10));
  CHECK(std::abs(thr.reaction(v0)) <= 1e-12);

  // a = 1 makes v0 = 1 exactly since g(1) = 1
  CHECK(makeNonlinearity("threshold", 1.0, 0.3).positiveZero() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("structural properties of f and g") {
  for (auto nl : {makeNonlinearity("logistic", 1.0, 0.0), makeNonlinearity("threshold", 1.0, 0.3),
                  makeNonlinearity("threshold", 0.8, 0.45)}) {
    double v0 = nl.positiveZero();
    CHECK(std::abs(nl.reaction(v0)) <= 1e-10);
    // f(v) <= a v on [0, v0], 10^4 point sample
    bool below = true;
    for (int i = 0; i <= 10000; ++i) {
      double v = v0 * i / 10000.0;
      below = below && nl.reaction(v) <= nl.a * v + 1e-14;
    }
    CHECK(below);
    // finite-difference convexity of g on [0,1]
    double h = 1e-4;
    bool convex = true;
    for (int i = 1; i < 100; ++i) {
      double v = i / 100.0;
      double d2 = (nl.g(v + h) - 2.0 * nl.g(v) + nl.g(v - h)) / (h * h);
      convex = convex && d2 >= -1e-8;
    }
    CHECK(convex);
    CHECK(nl.g(0.0) == 0.0);
    CHECK(nl.gPrime(0.0) == 0.0);
  }
}

TEST_CASE("reaction flow integrates dv/dt = f(v)") {
  // logistic closed form vs tiny-step RK4 oracle
  auto nl = makeNonlinearity("logistic", 1.0, 0.0);
  double vref = 0.2;
  double h = 1e-5;
  for (int i = 0; i < 50000; ++i) {
    double k1 = nl.reaction(vref);
    double k2 = nl.reaction(vref + 0.5 * h * k1);
    double k3 = nl.reaction(vref + 0.5 * h * k2);
    double k4 = nl.reaction(vref + h * k3);
    vref += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  CHECK(nl.flow(0.2, 0.5) == doctest::Approx(vref).epsilon(1e-10));
  // equilibria are fixed points
  CHECK(nl.flow(1.0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
  auto thr = makeNonlinearity("threshold", 1.0, 0.3);
  CHECK(thr.flow(1.0, 0.3) == doctest::Approx(1.0).epsilon(1e-9));
  // below theta the flow is exactly exponential
  CHECK(thr.flow(0.1, 0.5) == doctest::Approx(0.1 * std::exp(0.5)).epsilon(1e-15));
}
