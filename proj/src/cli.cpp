#include "cohspeed/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "cohspeed/avgdist.hpp"
#include "cohspeed/battery.hpp"
#include "cohspeed/channels.hpp"
#include "cohspeed/coherence.hpp"
#include "cohspeed/config.hpp"
#include "cohspeed/dynamics.hpp"
#include "cohspeed/metrics.hpp"
#include "cohspeed/report.hpp"
#include "cohspeed/suites.hpp"

namespace cohspeed {

namespace {

constexpr std::uint64_t kDefaultSeed = 7;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> dim;
  std::optional<int> trials;
  std::optional<int> jobs;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> tol;
};

/// Flags merged with the config file and environment.
struct Run {
  Json config = Json::object();
  std::uint64_t seed = kDefaultSeed;
  std::string seed_source = "default";
  int dim = 0;
  int trials = 0;
  int jobs = 0;
  double tol = 0.0;
  std::string out;
  ReportFormat format = ReportFormat::Csv;

  double tol_or(double fallback) const { return tol > 0.0 ? tol : fallback; }
  Json section(const char* key) const { return config.value(key, Json::object()); }
};

Run resolve(const Flags& f) {
  Run r;
  if (!f.config.empty()) r.config = load_config(f.config);
  const Json& c = r.config;
  if (f.seed) {
    r.seed = *f.seed;
    r.seed_source = "flag";
  } else if (c.contains("seed")) {
    r.seed = c["seed"].get<std::uint64_t>();
    r.seed_source = "config";
  } else if (const char* env = std::getenv("COHERENCE_SPEED_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      r.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadConfig, std::string("COHERENCE_SPEED_SEED is not an unsigned integer: ") + env);
    }
    r.seed_source = "env";
  }
  r.dim = f.dim.value_or(c.value("dim", 0));
  r.trials = f.trials.value_or(c.value("trials", 0));
  r.jobs = f.jobs.value_or(c.value("jobs", 0));
  r.tol = f.tol.value_or(c.value("tol", 0.0));
  r.out = f.out.value_or(c.value("out", std::string()));
  const std::string fmt = f.format.value_or(c.value("format", std::string("csv")));
  if (fmt == "csv")
    r.format = ReportFormat::Csv;
  else if (fmt == "json")
    r.format = ReportFormat::Json;
  else
    throw Error(ErrorCode::BadConfig, "--format must be csv or json, got " + fmt);
  if (r.dim != 0 && (r.dim < 2 || r.dim > 16)) throw Error(ErrorCode::BadConfig, "--dim must be in [2, 16]");
  if (r.trials < 0) throw Error(ErrorCode::BadConfig, "--trials must be positive");
  if (r.tol < 0.0) throw Error(ErrorCode::BadConfig, "--tol must be positive");
  return r;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_real(v[i]);
  return s + "]";
}

void common_meta(Report& rep, const std::string& command, const Run& run) {
  rep.meta("command", command);
  rep.meta("seed", std::to_string(run.seed));
  rep.meta("seed_source", run.seed_source);
  rep.meta("units", "hbar = 1; energies and times dimensionless");
}

void tolerance_meta(Report& rep) {
  rep.meta("tol_herm", kDefaultTol.herm);
  rep.meta("tol_psd", kDefaultTol.psd);
  rep.meta("tol_degen", kDefaultTol.degen);
  rep.meta("tol_recon", kDefaultTol.recon);
}

void emit(const Report& rep, const Run& run, std::ostream& out) {
  if (run.out.empty() || run.out == "-") {
    write_report(rep, run.format, out);
    return;
  }
  std::ofstream f(run.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadConfig, "cannot write " + run.out);
  write_report(rep, run.format, f);
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, const Run& run, std::ostream& out, std::ostream& err) {
  SuiteOptions o;
  o.seed = run.seed;
  o.dim = run.dim;
  o.trials = run.trials;
  o.jobs = run.jobs;
  o.tol = run.tol;
  const SuiteResult res = run_suite(suite, o);

  Report rep;
  common_meta(rep, "verify " + suite, run);
  tolerance_meta(rep);
  rep.meta("dim", run.dim > 0 ? std::to_string(run.dim) : "suite range");
  rep.meta("trials", run.trials > 0 ? std::to_string(run.trials) : "suite default");
  rep.meta("tol", run.tol > 0 ? format_real(run.tol) : "suite default");
  std::vector<std::string> checks;
  for (const auto& r : res.rows)
    if (std::find(checks.begin(), checks.end(), r.check) == checks.end()) checks.push_back(r.check);
  for (const auto& c : checks) rep.meta("max " + c, res.max_value(c));
  rep.meta("checks", std::to_string(res.rows.size()));
  rep.meta("failures", std::to_string(res.failures()));
  rep.meta("status", res.passed() ? "pass" : "fail");
  rep.columns = {{"check"}, {"trial"}, {"dim"}, {"value"}, {"limit"}, {"passed"}};
  for (const auto& r : res.rows)
    rep.add_row({r.check, r.trial, static_cast<std::int64_t>(r.dim), r.value, r.limit, r.passed});
  emit(rep, run, out);

  if (!res.passed()) {
    err << "verify " << suite << ": " << res.failures() << " of " << res.rows.size() << " checks failed\n";
    std::size_t shown = 0;
    for (const auto& r : res.rows) {
      if (r.passed) continue;
      if (++shown > 20) {
        err << "  ...\n";
        break;
      }
      err << "  FAIL " << r.check << " trial=" << r.trial << " value=" << format_real(r.value)
          << " limit=" << format_real(r.limit) << '\n';
    }
    return kExitCheckFailed;
  }
  return kExitPass;
}

Matrix basis_from(const Json& sec, int d, std::uint64_t seed, const std::string& path) {
  if (!sec.contains("basis") || sec["basis"] == "computational") return Matrix::Identity(d, d);
  if (sec["basis"] == "random") return haar_random_unitary(d, seed);
  const Matrix b = to_matrix(sec["basis"], path + "/basis");
  if (b.rows() != d || b.cols() != d || !is_unitary(b))
    throw Error(ErrorCode::BadConfig, path + "/basis: must be a " + std::to_string(d) + "x" + std::to_string(d) +
                                          " unitary");
  return b;
}

int cmd_sweep(const Run& run, std::ostream& out) {
  Json sec = run.section("sweep");
  if (!sec.contains("spectrum")) sec["spectrum"] = {0.0, 1.0};
  const auto lam = sec["spectrum"].get<std::vector<double>>();
  const int d = static_cast<int>(lam.size());
  const Matrix basis = basis_from(sec, d, run.seed, "/sweep");
  const auto h = spectral_from(lam, basis);
  DensityMatrix rho = PureState::normalized(basis * Vector::Ones(d)).density();
  if (sec.contains("state")) rho = to_density(sec["state"], d, run.seed, "/sweep/state");
  const auto grid = sec.contains("grid") ? to_grid(sec["grid"], "/sweep/grid", 200)
                                         : uniform_grid(0.0, 2.0 * std::numbers::pi, 200);
  const std::size_t cap = sec.value("brute_force_cap", kBruteForceCap);
  const double tol = run.tol_or(1e-9);

  Report rep;
  common_meta(rep, "sweep", run);
  tolerance_meta(rep);
  rep.meta("dim", std::to_string(d));
  rep.meta("spectrum", join_reals(lam));
  rep.meta("levels", std::to_string(h.level_count()));
  rep.meta("brute_force_cap", std::to_string(cap));
  rep.meta("tol", tol);
  rep.columns = {{"t"}, {"brute"}, {"closed"}, {"coefficient"}, {"c_half"}, {"gap"}};
  bool ok = true;
  const bool brute = h.level_count() <= cap;
  if (!brute) rep.meta("note", "brute force omitted: level count exceeds the cap");
  for (double t : grid) {
    const auto r = avg_distance_closed(rho, h, t, cap, run.jobs);
    Cell b, gap;
    if (r.brute_force) {
      b = *r.brute_force;
      const double g = std::abs(*r.brute_force - r.closed_form);
      gap = g;
      ok = ok && g <= tol;
    }
    rep.add_row({t, b, r.closed_form, r.coefficient, r.coherence, gap});
  }
  emit(rep, run, out);
  return ok ? kExitPass : kExitCheckFailed;
}

BatteryConfig battery_from(const Json& sec) {
  BatteryConfig c;
  c.epsilon = sec.value("epsilon", 1.0);
  c.tau = sec.value("tau", 1.0);
  c.dt = sec.value("dt", 1e-3);
  c.work_window = sec.value("window", 0.0);
  const Json pulse = sec.value("pulse", Json{{"shape", "sin2"}});
  const std::string shape = pulse.value("shape", std::string("sin2"));
  const double eta_max = pulse.value("eta_max", 1.0);
  c.pulse = shape == "sin2" ? sine_squared_pulse(eta_max, c.tau)
            : shape == "sin" ? sine_pulse(eta_max, c.tau)
                             : parabolic_pulse(eta_max, c.tau);
  c.pulse_name = shape + "(eta_max=" + format_real(eta_max) + ")";
  const Json axis = sec.value("axis", Json{{"kind", "fixed"}});
  if (axis.value("kind", std::string("fixed")) == "fixed") {
    const auto n = axis.value("n", std::vector<double>{1.0, 0.0, 0.0});
    const double r = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (!(r > 0.0)) throw Error(ErrorCode::BadConfig, "/battery/axis/n: must be nonzero");
    c.drive_axis = fixed_axis({n[0] / r, n[1] / r, n[2] / r});
    c.axis_name = "fixed" + join_reals({n[0] / r, n[1] / r, n[2] / r});
  } else {
    const double omega = axis.value("omega", 2.0 * std::numbers::pi / c.tau);
    c.drive_axis = rotating_axis(omega);
    c.axis_name = "rotating(omega=" + format_real(omega) + ")";
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::BadConfig, std::string("/battery: ") + e.what());
  }
  return c;
}

int cmd_battery(const Run& run, std::ostream& out) {
  const Json sec = run.section("battery");
  const BatteryConfig cfg = battery_from(sec);
  PureState psi0{Vector::Unit(2, 0)};
  if (sec.contains("state")) psi0 = to_pure_state(sec["state"], 2, run.seed, "/battery/state");
  const auto res = simulate_battery(cfg, psi0);
  const double tol = run.tol_or(1e-9);

  Report rep;
  common_meta(rep, "battery", run);
  tolerance_meta(rep);
  rep.meta("epsilon", cfg.epsilon);
  rep.meta("tau", cfg.tau);
  rep.meta("dt", cfg.dt);
  rep.meta("window", cfg.window());
  rep.meta("pulse", cfg.pulse_name);
  rep.meta("axis", cfg.axis_name);
  rep.meta("tol", tol);
  for (std::size_t i = 0; i < res.warnings.size(); ++i) rep.meta("warning." + std::to_string(i + 1), res.warnings[i]);
  rep.columns = {{"t"}, {"eta"}, {"avg_work"}, {"bound"}, {"coherence"}, {"cumulative_work"}};
  bool ok = true;
  for (const auto& r : res.records) {
    ok = ok && std::abs(r.avg_work) <= r.bound + tol;
    rep.add_row({r.t, r.eta, r.avg_work, r.bound, r.coherence, r.cumulative_work});
  }
  rep.meta("status", ok ? "pass" : "fail");
  emit(rep, run, out);
  return ok ? kExitPass : kExitCheckFailed;
}

KrausChannel channel_from(const Json& sec) {
  if (sec.contains("kraus")) {
    KrausChannel ch{{}, "custom"};
    for (std::size_t j = 0; j < sec["kraus"].size(); ++j)
      ch.operators.push_back(to_matrix(sec["kraus"][j], "/channel/kraus/" + std::to_string(j)));
    try {
      ch.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::BadConfig, std::string("/channel/kraus: ") + e.what());
    }
    return ch;
  }
  const std::string name = sec.value("builtin", std::string("orthogonalizing-qutrit"));
  const int dim = sec.value("dim", 2);
  if (name == "amplitude-damping") return amplitude_damping_channel(sec.value("gamma", 0.5));
  if (name == "identity") return identity_channel(dim);
  if (name == "dephasing") return dephasing_channel(Matrix::Identity(dim, dim));
  return orthogonalizing_qutrit_channel();
}

int cmd_channel(const Run& run, std::ostream& out) {
  const Json sec = run.section("channel");
  const KrausChannel ch = channel_from(sec);
  const int d = static_cast<int>(ch.dim_in());
  const double tol = run.tol_or(1e-9);
  std::optional<PureState> psi;
  DensityMatrix rho = PureState{Vector::Unit(d, 0)}.density();
  if (sec.contains("state")) {
    rho = to_density(sec["state"], d, run.seed, "/channel/state");
    if (sec["state"].contains("amplitudes")) psi = to_pure_state(sec["state"], d, run.seed, "/channel/state");
  } else {
    psi = PureState{Vector::Unit(d, 0)};
  }
  const StinespringDilation dl = dilate(ch, sec.value("env_dim", 0));

  Report rep;
  common_meta(rep, "channel", run);
  tolerance_meta(rep);
  rep.meta("channel", ch.label);
  rep.meta("kraus_count", std::to_string(ch.operators.size()));
  rep.meta("dim", std::to_string(d));
  rep.meta("env_dim", std::to_string(dl.env_dim));
  rep.meta("total_levels", std::to_string(dl.total_hamiltonian.level_count()));
  rep.meta("tol", tol);
  rep.columns = {{"quantity"}, {"value", ColumnKind::Complex}};

  const DensityMatrix phi = apply_kraus(ch, rho);
  rep.add_row({std::string("completeness_residual"), ch.completeness_residual()});
  rep.add_row({std::string("system_distance"), hellinger(phi, rho)});
  rep.add_row({std::string("unitary_channel"), is_unitary_channel(ch)});
  if (psi) {
    const auto gap = equality_gap_analysis(ch, *psi);
    rep.add_row({std::string("dilated_distance"), gap.dilated_distance});
    rep.add_row({std::string("dilation_gap"), gap.gap});
    rep.add_row({std::string("witness"), gap.witness});
    rep.add_row({std::string("equality_admissible"), gap.equality_admissible});
  }
  bool ok = true;
  if (dl.total_hamiltonian.level_count() <= kBruteForceCap) {
    const auto b = channel_average_bound(dl, rho, kBruteForceCap, run.jobs);
    rep.add_row({std::string("average_distance"), b.lhs});
    rep.add_row({std::string("bound"), b.rhs});
    ok = b.lhs <= b.rhs + tol;
  } else {
    rep.meta("note", "permutation average skipped: total Hamiltonian has more levels than the brute-force cap");
  }
  for (Eigen::Index i = 0; i < phi.dim(); ++i)
    for (Eigen::Index j = 0; j < phi.dim(); ++j)
      rep.add_row({"output(" + std::to_string(i) + "," + std::to_string(j) + ")", phi.matrix()(i, j)});
  rep.meta("status", ok ? "pass" : "fail");
  emit(rep, run, out);
  return ok ? kExitPass : kExitCheckFailed;
}

Matrix hamiltonian_from(const Json& sec, const std::string& path) {
  if (sec.contains("hamiltonian")) {
    const Matrix h = to_matrix(sec["hamiltonian"], path + "/hamiltonian");
    if (h.rows() != h.cols() || !is_hermitian(h))
      throw Error(ErrorCode::BadConfig, path + "/hamiltonian: must be square and Hermitian");
    return h;
  }
  const auto lam = sec.value("spectrum", std::vector<double>{0.0, 1.0});
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(lam.data(), static_cast<Eigen::Index>(lam.size()));
  return Matrix(v.cast<Complex>().asDiagonal());
}

int cmd_qsl(const Run& run, std::ostream& out) {
  const Json sec = run.section("qsl");
  const Matrix hm = hamiltonian_from(sec, "/qsl");
  const int d = static_cast<int>(hm.rows());
  const auto h = spectral_projectors(hm);
  PureState psi0 = PureState::normalized(Vector::Ones(d));
  if (sec.contains("state")) psi0 = to_pure_state(sec["state"], d, run.seed, "/qsl/state");
  const auto grid = sec.contains("grid") ? to_grid(sec["grid"], "/qsl/grid", 100)
                                         : uniform_grid(0.0, std::numbers::pi, 100);
  const double tol = run.tol_or(1e-9);

  Report rep;
  common_meta(rep, "qsl", run);
  tolerance_meta(rep);
  rep.meta("dim", std::to_string(d));
  rep.meta("spectrum", join_reals(std::vector<double>(h.eigenvalues.data(), h.eigenvalues.data() + d)));
  rep.meta("tol", tol);
  rep.columns = {{"t"}, {"bures_angle"}, {"mt_time"}, {"ml_time"}, {"mean_energy"}, {"energy_stddev"}, {"mt_ok"},
                 {"ml_ok"}};
  bool ok = true;
  std::optional<double> t_orth;
  for (double t : grid) {
    const PureState psi = PureState::normalized(unitary_exp(h, t) * psi0.amplitudes());
    const auto q = qsl_bounds(psi0, h, psi);
    Cell mt, ml, mt_ok, ml_ok;
    if (q.mt_time) {
      mt = *q.mt_time;
      mt_ok = t + tol >= *q.mt_time;
      ok = ok && std::get<bool>(mt_ok);
    }
    if (q.ml_time) {
      ml = *q.ml_time;
      ml_ok = t + tol >= *q.ml_time;
      ok = ok && std::get<bool>(ml_ok);
    }
    if (!t_orth && q.bures_angle >= std::numbers::pi / 2 - 1e-6) t_orth = t;
    rep.add_row({t, q.bures_angle, mt, ml, q.mean_energy, q.energy_stddev, mt_ok, ml_ok});
  }
  rep.meta("orthogonality_time", t_orth ? format_real(*t_orth) : std::string("not reached"));
  rep.meta("status", ok ? "pass" : "fail");
  emit(rep, run, out);
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_evolve(const Run& run, std::ostream& out) {
  const Json sec = run.section("evolve");
  const Json path = sec.value("path", Json{{"kind", "battery"}});
  const std::string kind = path.value("kind", std::string("battery"));
  std::function<Matrix(double)> sampler;
  double t1 = 1.0;
  if (kind == "constant") {
    if (!path.contains("hamiltonian")) throw Error(ErrorCode::BadConfig, "/evolve/path: missing hamiltonian");
    const Matrix h = hamiltonian_from(path, "/evolve/path");
    sampler = [h](double) { return h; };
  } else if (kind == "linear") {
    if (!path.contains("h0") || !path.contains("h1")) throw Error(ErrorCode::BadConfig, "/evolve/path: needs h0 and h1");
    const Matrix h0 = to_matrix(path["h0"], "/evolve/path/h0");
    const Matrix h1 = to_matrix(path["h1"], "/evolve/path/h1");
    const double a = sec.contains("grid") ? sec["grid"].value("t0", 0.0) : 0.0;
    const double b = sec.contains("grid") ? sec["grid"]["t1"].get<double>() : 1.0;
    try {
      sampler = linear_path(h0, h1, a, b, {}).sampler;
    } catch (const Error& e) {
      throw Error(ErrorCode::BadConfig, std::string("/evolve/path: ") + e.what());
    }
  } else {
    const BatteryConfig cfg = battery_from(path.value("battery", Json::object()));
    const Matrix h0 = battery_bare_hamiltonian(cfg.epsilon);
    sampler = [cfg, h0](double t) { return Matrix(h0 + cfg.pulse(t) * spin_operator(cfg.drive_axis(t))); };
    t1 = cfg.tau;
  }
  const int d = static_cast<int>(sampler(0.0).rows());
  PureState psi0{Vector::Unit(d, 0)};
  if (sec.contains("state")) psi0 = to_pure_state(sec["state"], d, run.seed, "/evolve/state");
  const auto grid = sec.contains("grid") ? to_grid(sec["grid"], "/evolve/grid", 1000) : default_grid(sampler, 0.0, t1);
  const Trajectory tr = evolve(psi0, {sampler, grid}, run.jobs);
  const double tol = run.tol_or(1e-10);

  Report rep;
  common_meta(rep, "evolve", run);
  tolerance_meta(rep);
  rep.meta("path", kind);
  rep.meta("dim", std::to_string(d));
  rep.meta("steps", std::to_string(grid.size() - 1));
  rep.meta("tol", tol);
  for (std::size_t i = 0; i < tr.warnings.size(); ++i) rep.meta("warning." + std::to_string(i + 1), tr.warnings[i]);
  rep.columns = {{"t"}, {"speed"}, {"sqrt2_energy_uncertainty"}, {"finite_difference_speed"}};
  bool ok = true;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double s2 = std::sqrt(2.0) * tr.uncertainties[k];
    ok = ok && std::abs(tr.speeds[k] - s2) <= tol;
    Cell fd;
    if (k + 1 < tr.times.size()) fd = finite_difference_speed(tr, k);
    rep.add_row({tr.times[k], tr.speeds[k], s2, fd});
  }
  rep.meta("status", ok ? "pass" : "fail");
  emit(rep, run, out);
  return ok ? kExitPass : kExitCheckFailed;
}

void add_common_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", f.seed, "base RNG seed (fallback: COHERENCE_SPEED_SEED, then 7)");
  app.add_option("--dim", f.dim, "Hilbert-space dimension for verify suites");
  app.add_option("--trials", f.trials, "number of random trials");
  app.add_option("--jobs", f.jobs, "worker threads (0 = all available)");
  app.add_option("--out", f.out, "report path (default: stdout)");
  app.add_option("--format", f.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", f.tol, "override the check tolerance");
}

std::string suite_list() {
  std::string s;
  for (const auto& n : suite_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation-averaged evolution distance, coherence bounds and speed limits"};
  app.name("cohspeed");
  app.require_subcommand(1);
  Flags flags;
  add_common_flags(app, flags);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite (" + suite_list() + ")");
  verify->add_option("suite", suite, "suite name")->required();
  auto* sweep = app.add_subcommand("sweep", "average distance over a time grid");
  auto* battery = app.add_subcommand("battery", "driven-qubit battery work series");
  auto* channel = app.add_subcommand("channel", "channel bound audit");
  auto* qsl = app.add_subcommand("qsl", "speed-limit times along an evolution");
  auto* evolve_cmd = app.add_subcommand("evolve", "instantaneous speeds along a Hamiltonian path");
  for (auto* sub : {verify, sweep, battery, channel, qsl, evolve_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        err << "unknown suite '" << suite << "'; expected one of: " << suite_list() << "\n\n" << verify->help();
        return kExitUsage;
      }
    }
    const Run run = resolve(flags);
    if (verify->parsed()) return cmd_verify(suite, run, out, err);
    if (sweep->parsed()) return cmd_sweep(run, out);
    if (battery->parsed()) return cmd_battery(run, out);
    if (channel->parsed()) return cmd_channel(run, out);
    if (qsl->parsed()) return cmd_qsl(run, out);
    return cmd_evolve(run, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: BadConfig: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cohspeed
