// frontlab command line: reproducible experiments for the road-field
// propagation laboratory. Subcommands: simulate, linearized, kpp1d,
// fracop-check, kernel-asymptote, fit, figure1, probes.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frontlab/coupled.hpp"
#include "frontlab/io.hpp"
#include "frontlab/kpp1d.hpp"
#include "frontlab/probes.hpp"

using namespace frontlab;

namespace {

struct ParamFlags {
  std::string config_path;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key-value config file");
    for (const char* key : {"alpha", "a", "mu", "nu", "k", "delta0", "x0_init", "X", "Y",
                            "nx", "ny", "dt", "t_final", "nonlinearity", "theta"}) {
      std::string k = key;
      cmd->add_option_function<std::string>(
          "--" + k, [this, k](const std::string& v) { overrides[k] = v; },
          "override config key " + k);
    }
  }

  ModelParams build(SimMode mode, const std::map<std::string, std::string>& defaults) const {
    std::map<std::string, std::string> kv = defaults;
    if (!config_path.empty())
      for (auto& [k, v] : parseConfigFile(config_path)) kv[k] = v;
    for (auto& [k, v] : overrides) kv[k] = v;
    return makeParams(kv, mode);
  }
};

uint64_t hashConfig(const ModelParams& p, const std::string& salt) {
  std::string blob = salt;
  for (auto& [k, v] : paramsToMap(p)) blob += k + "=" + v + ";";
  return fnv1a(blob.data(), blob.size());
}

std::vector<double> linspaceTimes(double t0, double t1, double step) {
  std::vector<double> ts;
  for (double t = t0; t <= t1 + 1e-9; t += step) ts.push_back(t);
  return ts;
}

void writeTraceOutputs(const std::string& dir, const LevelSetTrace& tr, RunManifest& man) {
  std::vector<std::vector<double>> rows;
  SvgSeries series;
  series.label = "x_lambda(t)";
  for (size_t i = 0; i < tr.times.size(); ++i) {
    if (!tr.valid[i]) continue;
    rows.push_back({tr.times[i], tr.positions[i], std::log(tr.positions[i])});
    series.x.push_back(tr.times[i]);
    series.y.push_back(std::log(tr.positions[i]));
  }
  writeCsv(dir + "/levelset.csv", {"t", "x_lambda", "ln_x_lambda"}, rows);
  man.addOutput("levelset.csv", fnv1aFile(dir + "/levelset.csv"));
  writeSvgLines(dir + "/levelset.svg", "level-set trace", "t", "ln x_lambda", {series});
  man.addOutput("levelset.svg", fnv1aFile(dir + "/levelset.svg"));
}

std::string gradientColor(double f) {
  // blue (early) to red (late)
  int r = static_cast<int>(30 + 200 * f);
  int b = static_cast<int>(230 - 200 * f);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x30%02x", r, b);
  return buf;
}

int cmdSimulate(const ParamFlags& pf, const std::string& out_root, double lambda,
                double snap_every, int dump_stride) {
  auto p = pf.build(SimMode::nonlinear, {});
  std::string dir = makeRunDir(out_root, hashConfig(p, "simulate"));
  SimulationRun run;
  run.params = p;
  run.mode = SimMode::nonlinear;
  run.snapshot_times = linspaceTimes(0.0, p.t_final, snap_every);
  run.out_dir = dir;
  run.field_dump_stride = dump_stride;
  LevelSetTrace tr;
  tr.lambda = lambda;
  auto summary = runSimulation(run, [&](const RoadFieldState& s) {
    tr.push(s.t, trackLevelSet(s.u, lambda, p.X));
  });
  RunManifest man;
  man.set("kind", std::string("simulate"));
  man.setParams(paramsToMap(p));
  man.set("lambda", lambda);
  writeTraceOutputs(dir, tr, man);
  man.write(dir + "/diagnostics.json");
  std::string fitnote = "insufficient span for a drift fit";
  int tail = 0;
  for (size_t i = 0; i < tr.times.size(); ++i)
    if (tr.valid[i] && tr.times[i] >= p.t_final / 2.5) ++tail;
  if (tail >= 10) {
    try {
      auto fit = fitDriftExponent(tr, p.lambdaStar(), p.t_final / 2.5, p.t_final, 10, 1.5);
      std::ostringstream os;
      os.precision(4);
      os << "fitted m_hat = " << fit.m_hat << " +- " << fit.stderr_m << " (target -"
         << p.driftExponent() << ")";
      fitnote = os.str();
    } catch (const std::exception&) {
    }
  }
  std::printf("simulate: t_final=%g steps=%ld wall=%.1fs %s -> %s\n", p.t_final, summary.steps,
              summary.wall_seconds, fitnote.c_str(), dir.c_str());
  return 0;
}

int cmdLinearized(const ParamFlags& pf, const std::string& out_root, double snap_every) {
  // fundamental-solution normalization: the far-field prediction is stated for
  // a road datum of mass 2 pi; delta0 defaults to pi with x0 = 1.
  std::map<std::string, std::string> defaults = {
      {"delta0", "3.14159265358979324"}, {"x0_init", "1"}, {"k", "0"}};
  auto p = pf.build(SimMode::linearized, defaults);
  std::string dir = makeRunDir(out_root, hashConfig(p, "linearized"));
  SimulationRun run;
  run.params = p;
  run.mode = SimMode::linearized;
  run.snapshot_times = linspaceTimes(snap_every, p.t_final, snap_every);
  run.out_dir.clear();  // fan samples only; full road profiles are large
  std::vector<FanSample> fan;
  runSimulation(run, [&](const RoadFieldState& s) {
    if (s.t < 5.0) return;
    double xf = std::exp(p.lambdaStar() * s.t) / std::pow(s.t, p.driftExponent());
    for (double f : {3.0, 4.0, 5.0, 6.5, 8.0, 10.0}) {
      auto u = sampleRoadLogLog(s.u, p.X, f * xf);
      if (u) fan.push_back({s.t, f * xf, *u});
    }
  });
  auto rep = validateLinearizedFarField(fan, p.alpha, p.mu);
  RunManifest man;
  man.set("kind", std::string("linearized"));
  man.setParams(paramsToMap(p));
  man.set("constant_theory", rep.constant_theory);
  man.set("normalization", std::string("road datum mass 2*pi (fundamental solution)"));
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < rep.samples.size(); ++i)
    rows.push_back({rep.samples[i].t, rep.samples[i].x, rep.samples[i].u, rep.ratios[i]});
  writeCsv(dir + "/farfield_fan.csv", {"t", "x", "u", "ratio"}, rows);
  man.addOutput("farfield_fan.csv", fnv1aFile(dir + "/farfield_fan.csv"));
  SvgSeries series;
  series.label = "median ratio";
  series.x = rep.times;
  series.y = rep.ratio_median_by_time;
  writeSvgLines(dir + "/ratio_trend.svg", "far-field ratio toward the constant", "t",
                "u t^1.5 |x|^(1+2a) e^-t", {series});
  man.addOutput("ratio_trend.svg", fnv1aFile(dir + "/ratio_trend.svg"));
  man.write(dir + "/diagnostics.json");
  std::printf(
      "linearized: constant=%.5f final median ratio=%.5f max rel dev=%.3f trend_increasing=%d "
      "-> %s\n",
      rep.constant_theory, rep.ratio_median_by_time.empty() ? 0.0 : rep.ratio_median_by_time.back(),
      rep.final_max_rel_dev, rep.trend_increasing ? 1 : 0, dir.c_str());
  return 0;
}

int cmdKpp1d(const std::string& out_root, double eps_hi, double eps_lo, double theta,
             double lambda, double dy, double dt) {
  auto nl = makeNonlinearity("threshold", 1.0, theta);
  std::string dir = makeRunDir(out_root, fnv1a(&eps_lo, sizeof eps_lo));
  std::vector<TransientResult> sweep;
  TransientGrid grid;
  grid.dy = dy;
  grid.dt = dt;
  for (double eps = eps_hi; eps >= eps_lo * (1.0 - 1e-12); eps /= 10.0)
    sweep.push_back(measureTEps(eps, lambda, nl, grid));
  std::vector<std::vector<double>> rows;
  for (auto& r : sweep) rows.push_back({r.epsilon, r.T_eps, r.T1_eps, r.ratio});
  writeCsv(dir + "/transients.csv", {"eps", "T_eps", "T1_eps", "ratio"}, rows);
  RunManifest man;
  man.set("kind", std::string("kpp1d"));
  man.set("theta", theta);
  man.set("lambda", lambda);
  man.addOutput("transients.csv", fnv1aFile(dir + "/transients.csv"));
  double rmin = 1e300, rmax = 0.0;
  for (auto& r : sweep) {
    rmin = std::min(rmin, r.ratio);
    rmax = std::max(rmax, r.ratio);
  }
  std::string verdict;
  try {
    auto fit = transientLawFit(sweep);
    std::ostringstream js;
    js.precision(12);
    js << "{\n  \"slope\": " << fit.slope << ",\n  \"stderr\": " << fit.stderr_slope
       << ",\n  \"intercept\": " << fit.intercept << ",\n  \"n\": " << fit.n
       << ",\n  \"consistent\": " << (fit.consistent ? "true" : "false")
       << ",\n  \"ratio_spread\": " << rmax / rmin << "\n}\n";
    std::ofstream(dir + "/regression.json") << js.str();
    man.addOutput("regression.json", fnv1aFile(dir + "/regression.json"));
    std::ostringstream os;
    os.precision(4);
    os << "slope=" << fit.slope << "+-" << fit.stderr_slope << " ratio spread x" << rmax / rmin;
    verdict = os.str();
  } catch (const std::exception& e) {
    verdict = std::string("no regression (") + e.what() + ")";
  }
  man.write(dir + "/diagnostics.json");
  std::printf("kpp1d: %zu transients, %s -> %s\n", sweep.size(), verdict.c_str(), dir.c_str());
  return 0;
}

int cmdFracopCheck(const std::string& out_root, double alpha) {
  std::string dir = makeRunDir(out_root, fnv1a(&alpha, sizeof alpha));
  const double kPi = 3.14159265358979323846;
  std::vector<std::vector<double>> rows;
  // eigenfunction exactness on sin(kx)
  {
    const int nx = 256;
    FracOperator op(alpha, FracMethod::spectral, kPi, nx);
    for (int k = 1; k <= 8; ++k) {
      Eigen::ArrayXd f(nx);
      for (int i = 0; i < nx; ++i) f(i) = std::sin(k * (-kPi + i * 2.0 * kPi / nx));
      double err = (op.apply(f) - std::pow(k, 2.0 * alpha) * f).abs().maxCoeff();
      rows.push_back({static_cast<double>(k), std::pow(k, 2.0 * alpha), err});
    }
  }
  writeCsv(dir + "/eigenfunction_errors.csv", {"mode", "symbol", "max_error"}, rows);
  // spectral vs quadrature on a Gaussian
  double agree_err = 0.0;
  {
    const int nx = 4096;
    const double X = 60.0;
    FracOperator spec(alpha, FracMethod::spectral, X, nx);
    FracOperator quad(alpha, FracMethod::quadrature, X, nx);
    Eigen::ArrayXd f(nx);
    for (int i = 0; i < nx; ++i) {
      double x = -X + i * 2.0 * X / nx;
      f(i) = std::exp(-x * x);
    }
    Eigen::ArrayXd gs = spec.apply(f), gq = quad.apply(f);
    double scale = gs.abs().maxCoeff();
    for (int i = nx / 4; i < 3 * nx / 4; ++i)
      agree_err = std::max(agree_err, std::abs(gs(i) - gq(i)) / scale);
  }
  // kernel tail flattening
  std::vector<double> xs;
  for (double x = 100.0; x <= 1000.0; x *= 1.25) xs.push_back(x);
  auto tail = kernelTailCheck(alpha, 5.0, xs);
  std::vector<std::vector<double>> trows;
  for (auto& r : tail.rows) trows.push_back({r.x, r.kernel, r.ratio, r.far_field ? 1.0 : 0.0});
  writeCsv(dir + "/kernel_tail.csv", {"x", "kernel", "ratio", "far_field"}, trows);
  RunManifest man;
  man.set("kind", std::string("fracop-check"));
  man.set("alpha", alpha);
  man.addOutput("eigenfunction_errors.csv", fnv1aFile(dir + "/eigenfunction_errors.csv"));
  man.addOutput("kernel_tail.csv", fnv1aFile(dir + "/kernel_tail.csv"));
  man.write(dir + "/diagnostics.json");
  double eig_worst = 0.0;
  for (auto& r : rows) eig_worst = std::max(eig_worst, r[2]);
  std::printf(
      "fracop-check alpha=%g: eigenfunction max err=%.2e, spectral/quadrature rel err=%.2e, "
      "tail variation=%.1f%% -> %s\n",
      alpha, eig_worst, agree_err, 100.0 * tail.last_decade_variation, dir.c_str());
  return (eig_worst <= 1e-10 && agree_err <= 1e-3 && tail.bounded) ? 0 : 1;
}

int cmdKernelAsymptote(double alpha, double mu, double t, double x, double C, double delta) {
  double constant = kernelAsymptoteConstant(alpha, mu);
  double lead = kernelAsymptoteLeading(t, x, alpha, mu);
  double rem = kernelAsymptoteRemainder(t, x, alpha, C, delta);
  std::printf(
      "kernel-asymptote alpha=%g mu=%g: constant=%.5f leading(t=%g, x=%g)=%.6e remainder<=%.3e "
      "(C=%g, delta=%g; road datum mass 2*pi)\n",
      alpha, mu, constant, t, x, lead, rem, C, delta);
  return 0;
}

int cmdFit(const std::string& trace_path, double lambda_star, double t_min, double t_max) {
  std::ifstream in(trace_path);
  if (!in) throw std::runtime_error("cannot open trace file: " + trace_path);
  std::string header;
  std::getline(in, header);
  LevelSetTrace tr;
  std::string line;
  while (std::getline(in, line)) {
    double t, x;
    if (std::sscanf(line.c_str(), "%lf,%lf", &t, &x) == 2) tr.push(t, {x, x > 0.0});
  }
  auto fit = fitDriftExponent(tr, lambda_star, t_min, t_max, 10, 1.5);
  std::printf("fit: m_hat = %.5f +- %.5f over %d samples (lambda_star=%g)\n", fit.m_hat,
              fit.stderr_m, fit.n_used, lambda_star);
  return 0;
}

int cmdFigure1(const ParamFlags& pf, const std::string& out_root) {
  std::map<std::string, std::string> defaults = {
      {"alpha", "0.75"}, {"t_final", "25"}, {"X", "98304"}, {"nx", "524288"},
      {"Y", "60"},       {"ny", "128"},     {"dt", "0.05"}, {"delta0", "0.1"},
      {"x0_init", "1"},  {"nonlinearity", "logistic"}};
  auto p = pf.build(SimMode::nonlinear, defaults);
  std::string dir = makeRunDir(out_root, hashConfig(p, "figure1"));
  SimulationRun run;
  run.params = p;
  run.mode = SimMode::nonlinear;
  double t0 = std::max(2.0, p.t_final / 2.5);
  run.snapshot_times = linspaceTimes(t0, p.t_final, 0.5);
  std::vector<RoadSnapshot> snaps;
  runSimulation(run, [&](const RoadFieldState& s) {
    RoadSnapshot snap;
    snap.t = s.t;
    snap.u = s.u;
    snaps.push_back(std::move(snap));
  });
  double mstar = p.driftExponent();
  double late = t0 + 0.6 * (p.t_final - t0);
  RunManifest man;
  man.set("kind", std::string("figure1"));
  man.setParams(paramsToMap(p));
  man.set("scale_grid", std::string("33 points, log spaced in [0.25, 4]"));
  man.set("late_window_start", late);
  std::vector<double> scores;
  std::vector<std::string> names = {"m0", "mstar", "m2star"};
  std::vector<double> ms = {0.0, mstar, 2.0 * mstar};
  for (size_t q = 0; q < ms.size(); ++q) {
    auto tab = renormalizedSamples(snaps, ms[q], p.lambdaStar(), p.X);
    scores.push_back(stabilizationScore(tab, late));
    std::vector<std::string> cols = {"t"};
    for (double s : tab.s) {
      std::ostringstream os;
      os.precision(6);
      os << "s_" << s;
      cols.push_back(os.str());
    }
    std::vector<std::vector<double>> rows;
    std::vector<SvgSeries> series;
    for (size_t i = 0; i < tab.times.size(); ++i) {
      std::vector<double> row = {tab.times[i]};
      SvgSeries sv;
      sv.color = gradientColor(static_cast<double>(i) / std::max<size_t>(1, tab.times.size() - 1));
      for (int k = 0; k < static_cast<int>(tab.s.size()); ++k) {
        double v = tab.values(static_cast<long>(i), k);
        row.push_back(std::isnan(v) ? -1.0 : v);
        if (!std::isnan(v)) {
          sv.x.push_back(std::log(tab.s[k]));
          sv.y.push_back(v);
        }
      }
      rows.push_back(row);
      series.push_back(sv);
    }
    std::string base = "renorm_" + names[q];
    writeCsv(dir + "/" + base + ".csv", cols, rows);
    man.addOutput(base + ".csv", fnv1aFile(dir + "/" + base + ".csv"));
    std::ostringstream title;
    title << "u(t, s t^-m e^(lambda* t)), m = " << ms[q] << " (blue early, red late)";
    writeSvgLines(dir + "/" + base + ".svg", title.str(), "ln s", "u", series);
    man.addOutput(base + ".svg", fnv1aFile(dir + "/" + base + ".svg"));
  }
  for (size_t q = 0; q < ms.size(); ++q) man.set("score_" + names[q], scores[q]);
  man.write(dir + "/diagnostics.json");
  bool ordered = scores[1] < scores[0] && scores[1] < scores[2];
  std::printf(
      "figure1 alpha=%g: score(0)=%.4f score(m*=%.2f)=%.4f score(2m*)=%.4f ordering %s -> %s\n",
      p.alpha, scores[0], mstar, scores[1], scores[2], ordered ? "ok" : "VIOLATED", dir.c_str());
  return ordered ? 0 : 1;
}

int cmdProbes(const std::string& out_root, double alpha) {
  std::string dir = makeRunDir(out_root, fnv1a(&alpha, sizeof alpha));
  std::map<std::string, std::string> kv = {
      {"alpha", std::to_string(alpha)}, {"a", "1"}, {"mu", "1"}, {"nu", "1"},
      {"t_final", "6.5"}, {"X", "1200"}, {"Y", "24"}, {"nx", "8192"}, {"ny", "96"},
      {"dt", "0.02"}, {"delta0", "0.1"}, {"x0_init", "1"}};
  auto p = makeParams(kv, SimMode::nonlinear);
  auto r2f = probeRoadToField(p, 4.0, {26.0, 88.0, 300.0}, 2.0);
  auto f2r = probeFieldToRoad(p, 4.0, {26.0, 88.0, 300.0}, 2.0);
  double m0 = std::sqrt(2.5) * std::exp(-0.5);
  double C = 0.0;
  for (double tq = 2.0; tq <= 30.0; tq += 2.0) C = std::max(C, envelopeBoundCheck(tq, 1e-4).C_min);
  auto l41 =
      probeLemma41(alpha, {1e3, 1e4, 1e5}, makeNonlinearity("logistic", 1.0, 0.0), 0.3, C, m0);
  std::vector<std::vector<double>> rows;
  for (auto& r : r2f) rows.push_back({1.0, r.x0, r.eps, r.measured});
  for (auto& r : f2r) rows.push_back({2.0, r.x0, r.eps, r.measured});
  writeCsv(dir + "/communication_probes.csv", {"lemma", "x0", "eps", "c_measured"}, rows);
  std::vector<std::vector<double>> rows41;
  for (auto& r : l41) rows41.push_back({r.x0, r.eps, r.T1, r.v_at, r.ratio, r.linear_ref});
  writeCsv(dir + "/lemma41.csv", {"x0", "eps", "T1", "v_T1_0_1", "ratio", "linear_ref"}, rows41);
  RunManifest man;
  man.set("kind", std::string("probes"));
  man.set("alpha", alpha);
  man.addOutput("communication_probes.csv", fnv1aFile(dir + "/communication_probes.csv"));
  man.addOutput("lemma41.csv", fnv1aFile(dir + "/lemma41.csv"));
  man.write(dir + "/diagnostics.json");
  auto spread = [](const std::vector<ProbeResult>& v) {
    double lo = 1e300, hi = 0.0;
    for (auto& r : v) {
      lo = std::min(lo, r.measured);
      hi = std::max(hi, r.measured);
    }
    return std::pair(lo, hi);
  };
  auto [lo1, hi1] = spread(r2f);
  auto [lo2, hi2] = spread(f2r);
  double qlo = 1e300, qhi = 0.0;
  for (auto& r : l41) {
    qlo = std::min(qlo, r.ratio);
    qhi = std::max(qhi, r.ratio);
  }
  std::printf(
      "probes: road->field c in [%.3f, %.3f] (x%.2f), field->road c in [%.3f, %.3f] (x%.2f), "
      "lemma-4.1 q in [%.4f, %.4f] (x%.2f) -> %s\n",
      lo1, hi1, hi1 / lo1, lo2, hi2, hi2 / lo2, qlo, qhi, qhi / qlo, dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frontlab: fractional road-field propagation laboratory"};
  app.require_subcommand(1);
  std::string out_root = "runs";
  app.add_option("--out", out_root, "output root directory")->capture_default_str();

  ParamFlags sim_pf, lin_pf, fig_pf;
  double sim_lambda = 0.1, sim_snap = 0.5;
  int sim_dump = 0;
  auto* sim = app.add_subcommand("simulate", "nonlinear road-field run with level-set tracking");
  sim_pf.attach(sim);
  sim->add_option("--lambda", sim_lambda, "tracked level")->capture_default_str();
  sim->add_option("--snap-every", sim_snap, "snapshot cadence")->capture_default_str();
  sim->add_option("--field-dump-stride", sim_dump, "full field dump every k-th snapshot");

  double lin_snap = 2.5;
  auto* lin = app.add_subcommand("linearized", "linearized run with far-field validation");
  lin_pf.attach(lin);
  lin->add_option("--snap-every", lin_snap, "fan sampling cadence")->capture_default_str();

  double k_eps_hi = 1e-3, k_eps_lo = 1e-8, k_theta = 0.3, k_lambda = 0.5, k_dy = 0.02,
         k_dt = 0.005;
  auto* kpp = app.add_subcommand("kpp1d", "Dirichlet transient timing sweep");
  kpp->add_option("--eps-hi", k_eps_hi)->capture_default_str();
  kpp->add_option("--eps-lo", k_eps_lo)->capture_default_str();
  kpp->add_option("--theta", k_theta)->capture_default_str();
  kpp->add_option("--lambda", k_lambda)->capture_default_str();
  kpp->add_option("--dy", k_dy)->capture_default_str();
  kpp->add_option("--dt", k_dt)->capture_default_str();

  double f_alpha = 0.5;
  auto* frc = app.add_subcommand("fracop-check", "fractional operator validation tables");
  frc->add_option("--alpha", f_alpha)->capture_default_str();

  double ka_alpha = 0.5, ka_mu = 1.0, ka_t = 20.0, ka_x = 1e4, ka_C = 1.0, ka_delta = 0.5;
  auto* ka = app.add_subcommand("kernel-asymptote", "far-field prediction evaluator");
  ka->add_option("--alpha", ka_alpha)->capture_default_str();
  ka->add_option("--mu", ka_mu)->capture_default_str();
  ka->add_option("--t", ka_t)->capture_default_str();
  ka->add_option("--x", ka_x)->capture_default_str();
  ka->add_option("--C", ka_C)->capture_default_str();
  ka->add_option("--delta", ka_delta)->capture_default_str();

  std::string fit_trace;
  double fit_ls = 0.5, fit_tmin = 0.0, fit_tmax = 1e300;
  auto* fit = app.add_subcommand("fit", "drift-exponent fit of a level-set trace CSV");
  fit->add_option("--trace", fit_trace, "CSV with t,x columns")->required();
  fit->add_option("--lambda-star", fit_ls)->capture_default_str();
  fit->add_option("--t-min", fit_tmin);
  fit->add_option("--t-max", fit_tmax);

  auto* fig = app.add_subcommand("figure1", "three-panel renormalization reproduction");
  fig_pf.attach(fig);

  double pr_alpha = 0.5;
  auto* prb = app.add_subcommand("probes", "road-field communication probes");
  prb->add_option("--alpha", pr_alpha)->capture_default_str();

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (sim->parsed()) return cmdSimulate(sim_pf, out_root, sim_lambda, sim_snap, sim_dump);
    if (lin->parsed()) return cmdLinearized(lin_pf, out_root, lin_snap);
    if (kpp->parsed()) return cmdKpp1d(out_root, k_eps_hi, k_eps_lo, k_theta, k_lambda, k_dy, k_dt);
    if (frc->parsed()) return cmdFracopCheck(out_root, f_alpha);
    if (ka->parsed()) return cmdKernelAsymptote(ka_alpha, ka_mu, ka_t, ka_x, ka_C, ka_delta);
    if (fit->parsed()) return cmdFit(fit_trace, fit_ls, fit_tmin, fit_tmax);
    if (fig->parsed()) return cmdFigure1(fig_pf, out_root);
    if (prb->parsed()) return cmdProbes(out_root, pr_alpha);
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
