#ifndef FRONTLAB_COUPLED_HPP
#define FRONTLAB_COUPLED_HPP

#include <functional>
#include <string>
#include <vector>

#include "frontlab/diagnostics.hpp"
#include "frontlab/fractional.hpp"
#include "frontlab/params.hpp"
#include "frontlab/state.hpp"
#include "frontlab/strip.hpp"

namespace frontlab {

/** IMEX stepper for the road-field system and its linearization.
 *
 * One step of size dt:
 *   u_mid = exact road flow over dt/2 (spectral multiplier, r = -k),
 *   field: Strang reaction + ADI diffusion with Robin source u_mid, capturing
 *          the conservative exchange flux E,
 *   u     = exact road flow over dt/2 applied to (u_mid - dt E).
 *
 * Freezing the road source at the midpoint keeps the exchange coupling second
 * order while the flux bookkeeping stays exactly conservative: what leaves the
 * road enters the field.
 */
class CoupledStepper {
 public:
  CoupledStepper(const ModelParams& p, SimMode mode,
                 WallBC walls = WallBC::dirichlet_zero);

  const ModelParams& params() const { return p_; }
  SimMode mode() const { return mode_; }

  // Mollified indicator datum: u = delta0 on (-x0, x0) smoothed over
  // mollifyRadius() in x, v = 0.
  RoadFieldState initialState() const;
  double mollifyRadius() const { return 4.0 * p_.dx(); }

  void step(RoadFieldState& s) const;

  // Largest admissible u and v values (equilibrium / initial bounds with the
  // spec tolerance); checked in nonlinear mode.
  double roadBound() const;
  double fieldBound() const;

 private:
  ModelParams p_;
  SimMode mode_;
  FracOperator road_;
  StripScheme strip_;
  ReactionTerm reaction_;
  double road_r_ = 0.0;  // growth rate folded into the road multiplier (-k)

  void checkState(const RoadFieldState& s) const;
};

struct SimulationRun {
  ModelParams params;
  SimMode mode = SimMode::nonlinear;
  std::vector<double> snapshot_times;  // strictly increasing, <= t_final
  std::string out_dir;                 // empty: nothing persisted
  int field_dump_stride = 0;           // full-field dump every k-th snapshot (0: none)
  WallBC walls = WallBC::dirichlet_zero;
};

struct RunSummary {
  long steps = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;   // persisted files (relative to out_dir)
  std::vector<double> snapshot_times_actual;
  bool truncated = false;             // stopped early on a numerical failure
  std::string truncation_reason;
  double edge_level_max = 0.0;        // max u at the domain seam over snapshots
};

using StateObserver = std::function<void(const RoadFieldState&)>;

/** Steps the system from t = 0 to t_final, persisting road profiles (CSV) and
 * field slices y in {0,1} at the snapshot times, plus full field dumps at the
 * configured cadence. The observer runs at every snapshot before persistence.
 * Snapshot times are rounded to the step grid; actual times are reported.
 * On a numerical failure, everything already written is kept and the summary
 * carries the truncation marker. */
RunSummary runSimulation(const SimulationRun& run, const StateObserver& observer = {});

/** Pure fractional KPP contrast experiment u_t + (-d_xx)^alpha u = f(u) on the
 * road alone; returns the lambda level-set trace at the sample times.
 * A null reaction (f = 0) is allowed for kernel-law checks. */
using RoadObserver = std::function<void(double, const Eigen::ArrayXd&)>;
LevelSetTrace runFractionalKpp(const ModelParams& p, double lambda,
                               const std::vector<double>& sample_times,
                               bool reaction_off = false,
                               const RoadObserver& observer = {},
                               const Eigen::ArrayXd* initial_override = nullptr);

}  // namespace frontlab

#endif
