#include "cohspeed/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cohspeed/avgdist.hpp"
#include "cohspeed/battery.hpp"
#include "cohspeed/channels.hpp"
#include "cohspeed/coherence.hpp"
#include "cohspeed/dynamics.hpp"
#include "cohspeed/metrics.hpp"

namespace cohspeed {

bool SuiteResult::passed() const { return failures() == 0; }

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.passed; }));
}

double SuiteResult::max_value(const std::string& check) const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : rows)
    if (r.check == check) m = std::max(m, r.value);
  return m;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm1",           "thm2",          "thm3", "coherence-lemmas",
                                              "speed-identity", "battery-bound", "qsl"};
  return names;
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (trial + 1) + 0xD1B54A32D192ED03ULL * stream;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using Rows = std::vector<CheckRow>;
using TrialFn = std::function<Rows(std::int64_t trial, std::uint64_t seed)>;

CheckRow row(std::string check, std::int64_t trial, int dim, double value, double limit) {
  return {std::move(check), trial, dim, value, limit, value <= limit};
}

Rows fan_out(int trials, const SuiteOptions& opts, const TrialFn& fn) {
  std::vector<Rows> per(static_cast<std::size_t>(trials));
  std::exception_ptr failure;
#ifdef _OPENMP
  const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (int k = 0; k < trials; ++k) {
    try {
      per[static_cast<std::size_t>(k)] = fn(k, trial_seed(opts.seed, static_cast<std::uint64_t>(k)));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(cohspeed_suite_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Rows out;
  for (auto& r : per) out.insert(out.end(), r.begin(), r.end());
  return out;
}

int pick(int fixed, int lo, int hi, std::int64_t trial) {
  if (fixed > 0) return fixed;
  return lo + static_cast<int>(trial % (hi - lo + 1));
}

double tol_or(const SuiteOptions& o, double fallback) { return o.tol > 0.0 ? o.tol : fallback; }

/// k distinct values in [-3, 3] with pairwise gaps >= 0.05, ascending.
std::vector<double> spread_levels(std::mt19937_64& g, int k) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> l;
  while (static_cast<int>(l.size()) < k) {
    const double x = u(g);
    if (std::all_of(l.begin(), l.end(), [x](double y) { return std::abs(x - y) >= 0.05; })) l.push_back(x);
  }
  std::sort(l.begin(), l.end());
  return l;
}

Rows trial_thm1(std::int64_t trial, std::uint64_t seed, const SuiteOptions& o) {
  const int d = pick(o.dim, 2, 6, trial);
  std::mt19937_64 g(seed);
  const auto lam = spread_levels(g, d);
  const auto h = spectral_from(lam, haar_random_unitary(d, seed ^ 1));
  const int rank = 1 + static_cast<int>(g() % static_cast<std::uint64_t>(d));
  const DensityMatrix rho = random_density(d, rank, seed ^ 2);
  const double t = std::uniform_real_distribution<double>(0.0, 10.0)(g);
  const double brute = avg_distance_bruteforce(rho, h, t, kBruteForceCap, 1);
  const double closed = 2.0 * (1.0 - a_coefficient(lam, t)) * c_half(rho, h.projectors);
  return {row("gap", trial, d, std::abs(brute - closed), tol_or(o, 1e-9))};
}

Rows trial_thm2(std::int64_t trial, std::uint64_t seed, const SuiteOptions& o) {
  const int d = pick(o.dim, 3, 6, trial);
  std::mt19937_64 g(seed);
  const int m = 2 + static_cast<int>(g() % static_cast<std::uint64_t>(std::min(5, d - 1) - 1));
  const auto levels = spread_levels(g, m);
  std::vector<double> lam(levels);
  while (static_cast<int>(lam.size()) < d) lam.push_back(levels[g() % static_cast<std::uint64_t>(m)]);
  const auto h = spectral_from(lam, haar_random_unitary(d, seed ^ 1));
  const int rank = 1 + static_cast<int>(g() % static_cast<std::uint64_t>(d));
  const DensityMatrix rho = random_density(d, rank, seed ^ 2);
  const double t = std::uniform_real_distribution<double>(0.0, 10.0)(g);
  const auto r = avg_distance_closed(rho, h, t, kBruteForceCap, 1);
  return {row("gap", trial, d, std::abs(*r.brute_force - r.closed_form), tol_or(o, 1e-9))};
}

Rows trial_thm3(std::int64_t trial, std::uint64_t seed, const SuiteOptions& o) {
  const double tol = tol_or(o, 1e-9);
  const DensityMatrix rho = random_density(2, 1 + static_cast<int>(seed % 2), seed ^ 3);
  const auto dl = dilation_from_unitary(haar_random_unitary(4, seed ^ 4), 2, 2);
  const auto b = channel_average_bound(dl, rho, kBruteForceCap, 1);
  const auto prod = dilation_from_unitary(tensor(haar_random_unitary(2, seed ^ 5), Matrix(Matrix::Identity(2, 2))), 2, 2);
  const auto e = channel_average_bound(prod, rho, kBruteForceCap, 1);
  return {row("bound", trial, 4, b.lhs - b.rhs, tol), row("product_equality", trial, 4, std::abs(e.lhs - e.rhs), tol)};
}

std::vector<int> random_blocks(std::mt19937_64& g, int d) {
  std::vector<int> dims;
  int left = d;
  while (left > 0) {
    const int k = 1 + static_cast<int>(g() % static_cast<std::uint64_t>(left));
    dims.push_back(k);
    left -= k;
  }
  return dims;
}

Matrix block_unitary(const Matrix& basis, const std::vector<int>& dims, std::uint64_t seed) {
  const auto d = basis.rows();
  Matrix u = Matrix::Zero(d, d);
  Eigen::Index off = 0;
  for (std::size_t m = 0; m < dims.size(); ++m) {
    u.block(off, off, dims[m], dims[m]) = haar_random_unitary(dims[m], seed + m);
    off += dims[m];
  }
  return basis * u * basis.adjoint();
}

Rows trial_lemmas(std::int64_t trial, std::uint64_t seed, const SuiteOptions& o) {
  const int d = pick(o.dim, 2, 6, trial);
  const double tol = tol_or(o, 1e-10);
  std::mt19937_64 g(seed);
  const Matrix basis = haar_random_unitary(d, seed ^ 1);
  const auto dims = random_blocks(g, d);
  const auto p = OrthogonalDecomposition::from_blocks(basis, dims);
  DensityMatrix rho = random_density(d, 1 + static_cast<int>(g() % static_cast<std::uint64_t>(d)), seed ^ 2);
  if (trial % 4 == 3) rho = dephase(rho, p);
  Rows out;

  // Faithfulness: zero coherence exactly when rho is block diagonal.
  const double c = c_half(rho, p);
  const double off = (rho.matrix() - dephase(rho, p).matrix()).norm();
  out.push_back(row("faithfulness", trial, d, ((c < 1e-12) == (off < 1e-8)) ? 0.0 : 1.0, 0.0));

  // Variational identity at the closest incoherent state.
  if (p.size() > 1 || c > 0.0)
    out.push_back(row("variational", trial, d, std::abs(c - d_affinity_half(rho, closest_incoherent(rho, p))), tol));

  // Invariance under block-diagonal unitaries.
  const Matrix u = block_unitary(basis, dims, seed ^ 3);
  const DensityMatrix rotated = DensityMatrix::trusted(u * rho.matrix() * u.adjoint());
  out.push_back(row("block_unitary", trial, d, std::abs(c_half(rotated, p) - c), tol));

  // Additivity on a direct sum.
  {
    const int d2 = 2 + static_cast<int>(g() % 2);
    const Matrix basis2 = haar_random_unitary(d2, seed ^ 4);
    const auto dims2 = random_blocks(g, d2);
    const auto q = OrthogonalDecomposition::from_blocks(basis2, dims2);
    const DensityMatrix sigma = random_density(d2, d2, seed ^ 5);
    const double w = std::uniform_real_distribution<double>(0.05, 0.95)(g);
    Matrix sum = Matrix::Zero(d + d2, d + d2);
    sum.topLeftCorner(d, d) = w * rho.matrix();
    sum.bottomRightCorner(d2, d2) = (1.0 - w) * sigma.matrix();
    Matrix big_basis = Matrix::Zero(d + d2, d + d2);
    big_basis.topLeftCorner(d, d) = basis;
    big_basis.bottomRightCorner(d2, d2) = basis2;
    std::vector<int> big_dims(dims);
    big_dims.insert(big_dims.end(), dims2.begin(), dims2.end());
    const auto pq = OrthogonalDecomposition::from_blocks(big_basis, big_dims);
    const double lhs = c_half(DensityMatrix::trusted(sum), pq);
    out.push_back(row("additivity", trial, d, std::abs(lhs - (w * c + (1.0 - w) * c_half(sigma, q))), tol));
  }

  // Order preserving: splitting every block cannot lower the coherence.
  {
    std::vector<int> fine;
    for (int k : dims) {
      const auto sub = random_blocks(g, k);
      fine.insert(fine.end(), sub.begin(), sub.end());
    }
    const auto q = OrthogonalDecomposition::from_blocks(basis, fine);
    out.push_back(row("refinement_detected", trial, d, is_refinement(q, p) ? 0.0 : 1.0, 0.0));
    out.push_back(row("order_preserving", trial, d, c - c_half(rho, q), tol));
  }

  // l1 bound in a rank-one basis.
  const auto rank_one = OrthogonalDecomposition::from_basis(basis);
  out.push_back(row("l1_bound", trial, d, c_half(rho, rank_one) - 2.0 / (d - 1) * c_l1(rho, basis), tol));
  return out;
}

Rows trial_speed(std::int64_t trial, std::uint64_t seed, const SuiteOptions& o) {
  const int d = pick(o.dim, 2, 8, trial);
  Matrix h = random_hermitian(d, seed ^ 1);
  if (trial % 2 == 1) {
    std::mt19937_64 g(seed);
    Eigen::VectorXd lam(d);
    for (int i = 0; i < d; ++i) lam[i] = static_cast<double>(g() % 3);
    const Matrix q = haar_random_unitary(d, seed ^ 2);
    h = q * lam.cast<Complex>().asDiagonal() * q.adjoint();
    h = 0.5 * (h + h.adjoint());
  }
  const auto sh = spectral_projectors(h);
  const PureState psi = haar_random_state(d, seed ^ 3);
  const double gap = std::abs(instantaneous_speed(psi, sh) - std::sqrt(2.0) * energy_uncertainty(psi, sh));
  return {row("speed_identity", trial, d, gap, tol_or(o, 1e-10))};
}

Rows trial_qsl(std::int64_t trial, std::uint64_t seed, const SuiteOptions& o) {
  const int d = pick(o.dim, 2, 6, trial);
  const double tol = tol_or(o, 1e-9);
  std::mt19937_64 g(seed);
  const auto sh = spectral_projectors(random_hermitian(d, seed ^ 1));
  const PureState psi0 = haar_random_state(d, seed ^ 2);
  const double t = std::uniform_real_distribution<double>(0.01, 3.0)(g);
  const PureState psi1 = PureState::normalized(unitary_exp(sh, t) * psi0.amplitudes());
  const auto q = qsl_bounds(psi0, sh, psi1);
  Rows out;
  if (q.mt_time) out.push_back(row("mandelstam_tamm", trial, d, *q.mt_time - t, tol));
  if (q.ml_time) out.push_back(row("margolus_levitin", trial, d, *q.ml_time - t, tol));
  return out;
}

struct BatteryScenario {
  std::string pulse;
  std::string axis;
  std::string state;
};

}  // namespace

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  SuiteResult res;
  res.name = name;
  auto bind = [&opts](Rows (*f)(std::int64_t, std::uint64_t, const SuiteOptions&)) -> TrialFn {
    return [f, &opts](std::int64_t t, std::uint64_t s) { return f(t, s, opts); };
  };
  auto trials = [&opts](int fallback) { return opts.trials > 0 ? opts.trials : fallback; };

  if (name == "thm1") {
    res.rows = fan_out(trials(300), opts, bind(trial_thm1));
  } else if (name == "thm2") {
    res.rows = fan_out(trials(300), opts, bind(trial_thm2));
  } else if (name == "thm3") {
    res.rows = fan_out(trials(100), opts, bind(trial_thm3));
  } else if (name == "coherence-lemmas") {
    res.rows = fan_out(trials(500), opts, bind(trial_lemmas));
    // Fixed block-structured state: three weighted |+><+| blocks in d = 6.
    Matrix triple = Matrix::Zero(6, 6);
    for (int b = 0; b < 3; ++b) triple.block(2 * b, 2 * b, 2, 2).setConstant(1.0 / 6.0);
    const DensityMatrix rho{triple};
    const Matrix id = Matrix::Identity(6, 6);
    res.rows.push_back(row("l1_bound_block_state", -1, 6,
                           c_half(rho, OrthogonalDecomposition::from_basis(id)) - 0.4 * c_l1(rho, id),
                           tol_or(opts, 1e-10)));
  } else if (name == "speed-identity") {
    res.rows = fan_out(trials(500), opts, bind(trial_speed));
  } else if (name == "qsl") {
    res.rows = fan_out(trials(200), opts, bind(trial_qsl));
  } else if (name == "battery-bound") {
    const double tol = tol_or(opts, 1e-9);
    const std::vector<std::string> pulses{"sin2", "sin", "parabola"};
    const std::vector<std::string> axes{"fixed", "rotating"};
    const std::vector<std::string> states{"ground", "plus", "tilted"};
    std::vector<BatteryScenario> scen;
    for (const auto& p : pulses)
      for (const auto& a : axes)
        for (const auto& s : states) scen.push_back({p, a, s});
    res.rows = fan_out(static_cast<int>(scen.size()), opts, [&](std::int64_t k, std::uint64_t) {
      const auto& sc = scen[static_cast<std::size_t>(k)];
      BatteryConfig cfg;
      cfg.pulse = sc.pulse == "sin2" ? sine_squared_pulse(1.0, 1.0)
                  : sc.pulse == "sin" ? sine_pulse(1.0, 1.0)
                                      : parabolic_pulse(1.0, 1.0);
      cfg.drive_axis = sc.axis == "fixed" ? fixed_axis({1.0, 0.0, 0.0}) : rotating_axis(2.0 * std::numbers::pi);
      Vector a(2);
      if (sc.state == "ground")
        a << 1.0, 0.0;
      else if (sc.state == "plus")
        a << 1.0, 1.0;
      else
        a << std::cos(std::numbers::pi / 8), std::polar(std::sin(std::numbers::pi / 8), std::numbers::pi / 3);
      const auto run = simulate_battery(cfg, PureState::normalized(a));
      double excess = -std::numeric_limits<double>::infinity();
      double zero_work = 0.0;
      for (const auto& r : run.records) {
        excess = std::max(excess, std::abs(r.avg_work) - r.bound);
        if (r.eta == 0.0 || r.coherence < 1e-16) zero_work = std::max(zero_work, std::abs(r.avg_work));
      }
      return Rows{row("bound:" + sc.pulse + "/" + sc.axis + "/" + sc.state, k, 2, excess, tol),
                  row("zero_coherence:" + sc.pulse + "/" + sc.axis + "/" + sc.state, k, 2, zero_work, 1e-10)};
    });
  } else {
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");
  }
  return res;
}

}  // namespace cohspeed
