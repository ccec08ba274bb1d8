#ifndef FRONTLAB_PARAMS_HPP
#define FRONTLAB_PARAMS_HPP

#include <map>
#include <string>

#include "frontlab/nonlinearity.hpp"

namespace frontlab {

enum class SimMode { nonlinear, linearized, fractional_kpp };

std::string simModeName(SimMode mode);
SimMode simModeFromName(const std::string& name);

/** Physical and numerical parameters, in the units of the paper (a = 1 time scale).
 *
 * Road domain is the periodic interval [-X, X) with nx nodes; the strip is
 * [-X, X] x [0, Y] with lateral and top walls outside the reaction zone.
 */
struct ModelParams {
  double alpha = 0.5;   // fractional order, in (0,1)
  double a = 1.0;       // linear growth rate
  double mu = 1.0;      // road -> field desorption rate
  double nu = 1.0;      // field -> road absorption rate
  double k = 0.0;       // extra road damping, linearized runs only
  double delta0 = 0.1;  // initial datum height
  double x0_init = 1.0; // initial datum half width
  double X = 600.0;     // road truncation half width
  double Y = 40.0;      // strip truncation height
  int nx = 4096;
  int ny = 128;
  double dt = 0.05;
  double t_final = 10.0;
  Nonlinearity nl;

  double dx() const { return 2.0 * X / nx; }
  double dy() const { return Y / ny; }
  double lambdaStar() const { return a / (1.0 + 2.0 * alpha); }
  // Algebraic correction exponent m* = 3/(2(1+2alpha)); level sets sit near
  // e^{lambda* t} / t^{m*}.
  double driftExponent() const { return 3.0 / (2.0 * (1.0 + 2.0 * alpha)); }
};

// Parses a flat key-value config ("key value" or "key = value", one per line,
// '#' starts a comment).
std::map<std::string, std::string> parseConfigText(const std::string& text);
std::map<std::string, std::string> parseConfigFile(const std::string& path);

// Builds and validates ModelParams from a raw key-value map. Unknown keys are
// rejected. Throws std::invalid_argument naming the violated constraint.
ModelParams makeParams(const std::map<std::string, std::string>& raw,
                       SimMode mode = SimMode::nonlinear);

// Validation alone (same checks makeParams applies).
void validateParams(const ModelParams& p, SimMode mode);

std::map<std::string, std::string> paramsToMap(const ModelParams& p);

}  // namespace frontlab

#endif
