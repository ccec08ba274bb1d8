#ifndef FRONTLAB_PROBES_HPP
#define FRONTLAB_PROBES_HPP

#include <vector>

#include "frontlab/coupled.hpp"
#include "frontlab/kpp1d.hpp"

namespace frontlab {

struct ProbeResult {
  double eps = 0.0;
  double x0 = 0.0;
  double t0 = 0.0;
  double measured = 0.0;  // min over the probe box divided by eps
  bool ok = false;
};

/** Road-to-field communication probe: with u(t0,.) >= eps on [x0-L, x0+L],
 * reports min v over [t0+1, t0+2] x [x0-L, x0+L] x [0,1] divided by eps.
 * field-to-road mirrors it: with v(t0,x0,1) >= eps, the min of both u and v
 * over [t0+1, t0+2] x [x0-2L, x0+2L] x [0,1] divided by eps.
 *
 * Each call runs one nonlinear simulation with an observer that watches the
 * requested boxes; several probe points share the run. Throws when the
 * precondition fails on the t0 snapshot. */
std::vector<ProbeResult> probeRoadToField(const ModelParams& p, double t0,
                                          const std::vector<double>& x0s, double L);
std::vector<ProbeResult> probeFieldToRoad(const ModelParams& p, double t0,
                                          const std::vector<double>& x0s, double L);

struct Lemma41Result {
  double x0 = 0.0;
  double eps = 0.0;        // 1/(1 + x0^{1+2alpha})
  double T1 = 0.0;
  double v_at = 0.0;       // v(T1, 0, 1)
  double ratio = 0.0;      // v(T1, 0, 1) sqrt(T1)
  double linear_ref = 0.0; // g = 0 closed-form product upper reference
};

/** Dirichlet-bottom comparison runs: datum c_amp * eps on [-sqrt(x0), sqrt(x0)] x [0,1]
 * with eps tied to x0, integrated to the Eq-(2.10) time T1; returns
 * v(T1,0,1) sqrt(T1) per x0. theta_ref, C_ref, m0_ref feed solveT1. */
std::vector<Lemma41Result> probeLemma41(double alpha, const std::vector<double>& x0s,
                                        const Nonlinearity& nl, double theta_ref,
                                        double C_ref, double m0_ref, double c_amp = 1.0);

}  // namespace frontlab

#endif
