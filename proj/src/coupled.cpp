#include "frontlab/coupled.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "frontlab/io.hpp"

namespace fs = std::filesystem;

namespace frontlab {

CoupledStepper::CoupledStepper(const ModelParams& p, SimMode mode, WallBC walls)
    : p_(p),
      mode_(mode),
      road_(p.alpha, FracMethod::spectral, p.X, p.nx),
      strip_([&] {
        StripScheme::Config c;
        c.nx = p.nx;
        c.ny = p.ny;
        c.dx = p.dx();
        c.dy = p.dy();
        c.dt = p.dt;
        c.mu = p.mu;
        c.nu = p.nu;
        c.bottom = BottomBC::robin;
        c.walls = walls;
        return c;
      }()) {
  if (mode == SimMode::fractional_kpp)
    throw std::invalid_argument("CoupledStepper: use runFractionalKpp for the road-only model");
  validateParams(p, mode);
  if (p.dt * p.a > 0.25)
    throw std::invalid_argument("reaction stability requires dt*a <= 0.25");
  if (p.dt * (p.mu + p.nu) > 0.2)
    throw std::invalid_argument("exchange stability requires dt*(mu+nu) <= 0.2");
  reaction_ = (mode == SimMode::linearized) ? ReactionTerm::linear(p.a)
                                            : ReactionTerm::kpp(p.nl);
  road_r_ = -p.k;
}

RoadFieldState CoupledStepper::initialState() const {
  RoadFieldState s;
  s.t = 0.0;
  s.dx = p_.dx();
  s.dy = p_.dy();
  s.u.resize(p_.nx);
  const double rm = mollifyRadius();
  for (int i = 0; i < p_.nx; ++i) {
    double x = -p_.X + i * s.dx;
    s.u(i) = p_.delta0 * 0.5 *
             (std::erf((x + p_.x0_init) / rm) - std::erf((x - p_.x0_init) / rm));
  }
  s.v = Eigen::ArrayXXd::Zero(p_.ny, p_.nx);
  return s;
}

double CoupledStepper::roadBound() const {
  double v0 = p_.nl.positiveZero();
  return std::max(p_.delta0, p_.nu * v0 / p_.mu) * (1.0 + 1e-6);
}

double CoupledStepper::fieldBound() const {
  double v0 = p_.nl.positiveZero();
  return std::max(p_.delta0, v0) * (1.0 + 1e-6);
}

void CoupledStepper::checkState(const RoadFieldState& s) const {
  const double* d = s.u.data();
  double mn = 0.0, mx = 0.0;
  bool bad = false;
  for (int i = 0; i < p_.nx; ++i) {
    double x = d[i];
    if (std::isnan(x)) { bad = true; break; }
    if (x < mn) mn = x;
    if (x > mx) mx = x;
  }
  double tol = 1e-12 * std::max(1.0, mx);
  if (bad || mn < -tol) {
    std::ostringstream os;
    os << "road step unstable: " << (bad ? "NaN" : "negative value beyond tolerance")
       << " (min = " << mn << ", dt = " << p_.dt << ", dx = " << p_.dx() << ")";
    throw std::runtime_error(os.str());
  }
  if (mode_ == SimMode::nonlinear) {
    if (mx > roadBound() || s.v.maxCoeff() > fieldBound()) {
      std::ostringstream os;
      os << "state bound violated: max u = " << mx << " (bound " << roadBound()
         << "), max v = " << s.v.maxCoeff() << " (bound " << fieldBound() << ") at t = " << s.t;
      throw std::runtime_error(os.str());
    }
  }
}

void CoupledStepper::step(RoadFieldState& s) const {
  const double dt = p_.dt;
  // half road flow, field step sourced at the midpoint, half road flow.
  Eigen::ArrayXd u_mid = road_.heatStep(s.u, 0.5 * dt, road_r_);
  Eigen::ArrayXd exchange;
  strip_.step(s.v, u_mid, reaction_, &exchange);
  u_mid -= dt * exchange;
  s.u = road_.heatStep(u_mid, 0.5 * dt, road_r_);
  s.t += dt;
  checkState(s);
  if (s.u.minCoeff() < 0.0) s.u = s.u.max(0.0);
}

namespace {

std::string timeTag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%012.5f", t);
  return buf;
}

}  // namespace

RunSummary runSimulation(const SimulationRun& run, const StateObserver& observer) {
  const ModelParams& p = run.params;
  CoupledStepper stepper(p, run.mode, run.walls);
  auto t_start = std::chrono::steady_clock::now();

  long n_steps = std::lround(p.t_final / p.dt);
  std::vector<long> snap_idx;
  for (double ts : run.snapshot_times) {
    if (ts < -1e-12 || ts > p.t_final + 1e-9)
      throw std::invalid_argument("snapshot time outside [0, t_final]");
    long idx = std::lround(ts / p.dt);
    if (!snap_idx.empty() && idx <= snap_idx.back())
      throw std::invalid_argument("snapshot times must be strictly increasing on the step grid");
    snap_idx.push_back(idx);
  }

  RunSummary summary;
  RunManifest manifest;
  bool persist = !run.out_dir.empty();
  if (persist) fs::create_directories(run.out_dir);

  RoadFieldState s = stepper.initialState();
  int j1 = static_cast<int>(std::lround(1.0 / p.dy()));
  j1 = std::min(std::max(j1, 0), p.ny - 1);

  size_t snap_pos = 0;
  int dumps = 0;
  auto handleSnapshot = [&](long step_index) {
    double t_actual = step_index * p.dt;
    summary.snapshot_times_actual.push_back(t_actual);
    // edge monitor: road level at the wall seam
    double edge = 0.0;
    for (int i = 0; i < 6; ++i)
      edge = std::max({edge, std::abs(s.u(i)), std::abs(s.u(p.nx - 1 - i))});
    summary.edge_level_max = std::max(summary.edge_level_max, edge);
    if (observer) observer(s);
    if (!persist) return;
    std::string tag = timeTag(t_actual);
    {
      std::vector<std::vector<double>> rows;
      rows.reserve(p.nx);
      for (int i = 0; i < p.nx; ++i)
        rows.push_back({t_actual, -p.X + i * s.dx, s.u(i)});
      std::string rel = "road_t" + tag + ".csv";
      writeCsv(run.out_dir + "/" + rel, {"t", "x", "u"}, rows);
      summary.outputs.push_back(rel);
    }
    {
      std::vector<std::vector<double>> rows;
      rows.reserve(p.nx);
      for (int i = 0; i < p.nx; ++i)
        rows.push_back({t_actual, -p.X + i * s.dx, s.v(0, i), s.v(j1, i)});
      std::string rel = "field_slices_t" + tag + ".csv";
      writeCsv(run.out_dir + "/" + rel, {"t", "x", "v_y0", "v_y1"}, rows);
      summary.outputs.push_back(rel);
    }
    bool want_dump = run.field_dump_stride > 0 &&
                     (static_cast<int>(snap_pos) % run.field_dump_stride == 0);
    if (want_dump) {
      FieldDumpInfo info;
      info.rows = p.ny;
      info.cols = p.nx;
      info.dx = s.dx;
      info.dy = s.dy;
      info.origin_x = -p.X;
      info.origin_y = 0.0;
      info.time = t_actual;
      std::string rel = "field_t" + tag;
      writeFieldDump(run.out_dir + "/" + rel, s.v, info);
      summary.outputs.push_back(rel + ".bin");
      summary.outputs.push_back(rel + ".json");
      ++dumps;
    }
  };

  try {
    if (snap_pos < snap_idx.size() && snap_idx[snap_pos] == 0) {
      handleSnapshot(0);
      ++snap_pos;
    }
    for (long n = 1; n <= n_steps; ++n) {
      stepper.step(s);
      s.t = n * p.dt;  // keep snapshot times on the exact step grid
      if (snap_pos < snap_idx.size() && snap_idx[snap_pos] == n) {
        handleSnapshot(n);
        ++snap_pos;
      }
    }
  } catch (const std::exception& e) {
    summary.truncated = true;
    summary.truncation_reason = e.what();
    if (persist) {
      std::ofstream marker(run.out_dir + "/TRUNCATED.txt");
      marker << e.what() << "\n";
    }
  }

  summary.steps = n_steps;
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  if (persist) {
    manifest.set("kind", std::string("simulation"));
    manifest.set("mode", simModeName(run.mode));
    manifest.setParams(paramsToMap(p));
    manifest.set("scheme_road", std::string("spectral multiplier exp((r-|xi|^{2a})dt), exact in time"));
    manifest.set("scheme_field",
                 std::string("Strang reaction + Peaceman-Rachford ADI, Robin bottom via ghost"));
    manifest.set("scheme_exchange",
                 std::string("explicit conservative, road source frozen at midpoint"));
    manifest.set("walls", run.walls == WallBC::neumann ? std::string("neumann")
                                                       : std::string("dirichlet_zero"));
    manifest.set("mollify_radius", stepper.mollifyRadius());
    manifest.setTolerance("negativity_clip_rel", 1e-12);
    manifest.setTolerance("state_bound_rel", 1e-6);
    manifest.setTolerance("exchange_stability_dt_mu_nu", 0.2);
    manifest.setTolerance("reaction_stability_dt_a", 0.25);
    manifest.setTolerance("symmetry_rel", 1e-10);
    manifest.setTolerance("mass_audit_per_unit_time", 1e-8);
    manifest.set("steps", summary.steps);
    manifest.set("wall_seconds", summary.wall_seconds);
    manifest.set("edge_level_max", summary.edge_level_max);
    manifest.set("field_dumps", static_cast<long>(dumps));
    manifest.set("truncated", summary.truncated ? std::string("yes") : std::string("no"));
    if (summary.truncated) manifest.set("truncation_reason", summary.truncation_reason);
    manifest.set("version", std::string("frontlab 1.0"));
    for (const auto& rel : summary.outputs)
      manifest.addOutput(rel, fnv1aFile(run.out_dir + "/" + rel));
    manifest.write(run.out_dir + "/manifest.json");
  }
  if (summary.truncated) throw std::runtime_error("simulation truncated: " + summary.truncation_reason);
  return summary;
}

LevelSetTrace runFractionalKpp(const ModelParams& p, double lambda,
                               const std::vector<double>& sample_times, bool reaction_off,
                               const RoadObserver& observer,
                               const Eigen::ArrayXd* initial_override) {
  validateParams(p, SimMode::fractional_kpp);
  if (p.dt * p.a > 0.25)
    throw std::invalid_argument("reaction stability requires dt*a <= 0.25");
  FracOperator road(p.alpha, FracMethod::spectral, p.X, p.nx);
  const double dx = p.dx();
  const double rm = 4.0 * dx;
  Eigen::ArrayXd u(p.nx);
  if (initial_override) {
    if (initial_override->size() != p.nx)
      throw std::invalid_argument("runFractionalKpp: initial override length mismatch");
    u = *initial_override;
  } else {
    for (int i = 0; i < p.nx; ++i) {
      double x = -p.X + i * dx;
      u(i) = p.delta0 * 0.5 * (std::erf((x + p.x0_init) / rm) - std::erf((x - p.x0_init) / rm));
    }
  }

  long n_steps = std::lround(p.t_final / p.dt);
  std::vector<long> snap_idx;
  for (double ts : sample_times) snap_idx.push_back(std::lround(ts / p.dt));

  LevelSetTrace trace;
  trace.lambda = lambda;
  size_t pos = 0;
  auto snapshot = [&](long n) {
    double t = n * p.dt;
    trace.push(t, trackLevelSet(u, lambda, p.X));
    if (observer) observer(t, u);
  };
  if (pos < snap_idx.size() && snap_idx[pos] == 0) { snapshot(0); ++pos; }
  for (long n = 1; n <= n_steps; ++n) {
    if (!reaction_off)
      for (int i = 0; i < p.nx; ++i) u(i) = p.nl.flow(u(i), 0.5 * p.dt);
    u = road.heatStep(u, p.dt, 0.0);
    if (!reaction_off)
      for (int i = 0; i < p.nx; ++i) u(i) = p.nl.flow(u(i), 0.5 * p.dt);
    double mn = u.minCoeff();
    if (std::isnan(mn) || mn < -1e-12 * std::max(1.0, u.maxCoeff()))
      throw std::runtime_error("fractional KPP step unstable at t = " + std::to_string(n * p.dt));
    if (mn < 0.0) u = u.max(0.0);
    if (pos < snap_idx.size() && snap_idx[pos] == n) { snapshot(n); ++pos; }
  }
  return trace;
}

}  // namespace frontlab
