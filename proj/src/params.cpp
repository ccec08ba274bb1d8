#include "frontlab/params.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace frontlab {

std::string simModeName(SimMode mode) {
  switch (mode) {
    case SimMode::nonlinear: return "nonlinear";
    case SimMode::linearized: return "linearized";
    case SimMode::fractional_kpp: return "fractional_kpp";
  }
  return "?";
}

SimMode simModeFromName(const std::string& name) {
  if (name == "nonlinear") return SimMode::nonlinear;
  if (name == "linearized") return SimMode::linearized;
  if (name == "fractional_kpp") return SimMode::fractional_kpp;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

std::map<std::string, std::string> parseConfigText(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (auto& c : line)
      if (c == '=' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::string key, value, extra;
    if (!(ls >> key)) continue;  // blank
    if (!(ls >> value) || (ls >> extra))
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key value'");
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> parseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseConfigText(ss.str());
}

namespace {

double toDouble(const std::string& key, const std::string& s) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (...) {
    throw std::invalid_argument("config key '" + key + "': not a number: " + s);
  }
  if (pos != s.size())
    throw std::invalid_argument("config key '" + key + "': not a number: " + s);
  return v;
}

int toInt(const std::string& key, const std::string& s) {
  double v = toDouble(key, s);
  if (v != std::floor(v))
    throw std::invalid_argument("config key '" + key + "': not an integer: " + s);
  return static_cast<int>(v);
}

}  // namespace

ModelParams makeParams(const std::map<std::string, std::string>& raw, SimMode mode) {
  static const std::set<std::string> known = {
      "alpha", "a", "mu", "nu", "k", "delta0", "x0_init", "X", "Y",
      "nx", "ny", "dt", "t_final", "nonlinearity", "theta"};
  for (const auto& [key, _] : raw)
    if (!known.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");

  ModelParams p;
  auto get = [&](const char* key, double dflt) {
    auto it = raw.find(key);
    return it == raw.end() ? dflt : toDouble(key, it->second);
  };
  p.alpha = get("alpha", p.alpha);
  p.a = get("a", p.a);
  p.mu = get("mu", p.mu);
  p.nu = get("nu", p.nu);
  p.k = get("k", p.k);
  p.delta0 = get("delta0", p.delta0);
  p.x0_init = get("x0_init", p.x0_init);
  p.X = get("X", p.X);
  p.Y = get("Y", p.Y);
  if (auto it = raw.find("nx"); it != raw.end()) p.nx = toInt("nx", it->second);
  if (auto it = raw.find("ny"); it != raw.end()) p.ny = toInt("ny", it->second);
  p.dt = get("dt", p.dt);
  p.t_final = get("t_final", p.t_final);

  std::string kind = "logistic";
  if (auto it = raw.find("nonlinearity"); it != raw.end()) kind = it->second;
  double theta = get("theta", 0.3);
  p.nl = makeNonlinearity(kind, p.a, theta);

  validateParams(p, mode);
  return p;
}

void validateParams(const ModelParams& p, SimMode mode) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) fail("alpha out of range: need 0 < alpha < 1");
  // a = 0 is admitted for the exchange-conservation audit regime.
  if (p.a < 0.0) fail("a must be >= 0");
  if (!(p.mu > 0.0)) fail("mu must be > 0");
  if (!(p.nu > 0.0)) fail("nu must be > 0");
  if (p.k < 0.0) fail("k must be >= 0");
  if (!(p.delta0 > 0.0)) fail("delta0 must be > 0");
  if (!(p.x0_init > 0.0)) fail("x0_init must be > 0");
  if (!(p.dt > 0.0)) fail("dt must be > 0");
  if (p.nx < 8 || p.ny < 8) fail("nx and ny must be >= 8");
  if (p.nl.a != p.a) fail("nonlinearity growth rate must equal a");
  if (mode != SimMode::fractional_kpp) {
    double ymin = 2.0 * std::sqrt(p.a) * p.t_final + 10.0;
    if (p.Y < ymin) {
      std::ostringstream os;
      os << "strip height violates Y >= 2*sqrt(a)*t_final + 10 = " << ymin
         << " (got Y = " << p.Y << ")";
      fail(os.str());
    }
  }
  if (mode == SimMode::nonlinear || mode == SimMode::fractional_kpp) {
    double xmin = 4.0 * std::exp(p.a * p.t_final / (1.0 + 2.0 * p.alpha));
    if (p.X < xmin) {
      std::ostringstream os;
      os << "road truncation violates X >= 4*exp(a*t_final/(1+2*alpha)) = " << xmin
         << " (got X = " << p.X << ")";
      fail(os.str());
    }
  }
  if (mode == SimMode::nonlinear && p.k != 0.0)
    fail("k only enters linearized runs; set k = 0 for the nonlinear system");
}

std::map<std::string, std::string> paramsToMap(const ModelParams& p) {
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  std::map<std::string, std::string> kv;
  kv["alpha"] = fmt(p.alpha);
  kv["a"] = fmt(p.a);
  kv["mu"] = fmt(p.mu);
  kv["nu"] = fmt(p.nu);
  kv["k"] = fmt(p.k);
  kv["delta0"] = fmt(p.delta0);
  kv["x0_init"] = fmt(p.x0_init);
  kv["X"] = fmt(p.X);
  kv["Y"] = fmt(p.Y);
  kv["nx"] = std::to_string(p.nx);
  kv["ny"] = std::to_string(p.ny);
  kv["dt"] = fmt(p.dt);
  kv["t_final"] = fmt(p.t_final);
  kv["nonlinearity"] = p.nl.name();
  kv["theta"] = fmt(p.nl.theta);
  kv["lambda_star"] = fmt(p.lambdaStar());
  kv["drift_exponent"] = fmt(p.driftExponent());
  kv["dx"] = fmt(p.dx());
  kv["dy"] = fmt(p.dy());
  return kv;
}

}  // namespace frontlab
