#include "cohspeed/battery.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cohspeed/avgdist.hpp"
#include "cohspeed/coherence.hpp"
#include "cohspeed/dynamics.hpp"

namespace cohspeed {

namespace {

constexpr double kEndpointTol = 1e-12;

Matrix frozen_propagator(const Matrix& h, double window) {
  return unitary_exp(spectral_projectors(h), window);
}

double energy_drop(const Matrix& h0, const Matrix& rho, const Matrix& u) {
  const Matrix after = u * rho * u.adjoint();
  return (h0 * (rho - after)).trace().real();
}

}  // namespace

void BatteryConfig::validate() const {
  if (!(epsilon > 0.0) || !(tau > 0.0) || !(dt > 0.0))
    throw Error(ErrorCode::BadConfig, "epsilon, tau and dt must be positive");
  if (!pulse || !drive_axis) throw Error(ErrorCode::BadConfig, "pulse and drive axis must be set");
  if (std::abs(pulse(0.0)) > kEndpointTol || std::abs(pulse(tau)) > kEndpointTol)
    throw Error(ErrorCode::BadConfig, "pulse must vanish at t = 0 and t = tau");
  for (double t : {0.0, 0.5 * tau, tau}) {
    const Axis n = drive_axis(t);
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(norm - 1.0) > kDefaultTol.norm) throw Error(ErrorCode::BadConfig, "drive axis is not a unit vector");
  }
}

std::function<double(double)> sine_squared_pulse(double eta_max, double tau) {
  return [=](double t) {
    const double s = std::sin(std::numbers::pi * t / tau);
    return eta_max * s * s;
  };
}

std::function<double(double)> sine_pulse(double eta_max, double tau) {
  // sin(pi) is ~1.2e-16, not zero; clamp the endpoints.
  return [=](double t) { return (t <= 0.0 || t >= tau) ? 0.0 : eta_max * std::sin(std::numbers::pi * t / tau); };
}

std::function<double(double)> parabolic_pulse(double eta_max, double tau) {
  return [=](double t) {
    const double u = t / tau;
    return 4.0 * eta_max * u * (1.0 - u);
  };
}

std::function<Axis(double)> fixed_axis(Axis n) {
  return [n](double) { return n; };
}

std::function<Axis(double)> rotating_axis(double omega) {
  return [omega](double t) { return Axis{std::cos(omega * t), std::sin(omega * t), 0.0}; };
}

Matrix spin_operator(const Axis& n) {
  const Complex i(0.0, 1.0);
  Matrix v(2, 2);
  v << n[2], n[0] - i * n[1], n[0] + i * n[1], -n[2];
  return v;
}

Matrix battery_bare_hamiltonian(double epsilon) {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = epsilon;
  return h;
}

BranchWork branch_work(const DensityMatrix& rho, double epsilon, double eta, const Matrix& v, double window,
                       WorkPicture picture) {
  if (rho.dim() != 2 || v.rows() != 2) throw Error(ErrorCode::DimensionMismatch, "battery is a qubit");
  const Matrix h0 = battery_bare_hamiltonian(epsilon);
  BranchWork w;
  if (window == 0.0) return w;
  const Matrix base = picture == WorkPicture::Full ? h0 : Matrix(Matrix::Zero(2, 2));
  w.plus = energy_drop(h0, rho.matrix(), frozen_propagator(base + eta * v, window));
  w.minus = energy_drop(h0, rho.matrix(), frozen_propagator(base - eta * v, window));
  return w;
}

double avg_extracted_work(const DensityMatrix& rho, double epsilon, double eta, const Matrix& v, double window,
                          WorkPicture picture) {
  return branch_work(rho, epsilon, eta, v, window, picture).average();
}

double work_bound(const DensityMatrix& rho, double epsilon, double eta, const Matrix& v, double window) {
  const double phase = eta * window;
  if (phase > std::numbers::pi / 2) throw Error(ErrorCode::WindowTooWide, "eta * window exceeds pi/2");
  const double c = c_half(rho, spectral_projectors(v).projectors);
  return 2.0 * epsilon * std::sin(phase) * std::sqrt(c);
}

BatteryRun simulate_battery(const BatteryConfig& cfg, const PureState& psi0) {
  cfg.validate();
  if (psi0.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "battery is a qubit");
  const auto steps = static_cast<std::size_t>(std::llround(cfg.tau / cfg.dt));
  const Matrix h0 = battery_bare_hamiltonian(cfg.epsilon);
  HamiltonianPath path{[&cfg, h0](double t) { return Matrix(h0 + cfg.pulse(t) * spin_operator(cfg.drive_axis(t))); },
                       uniform_grid(0.0, cfg.tau, std::max<std::size_t>(steps, 1))};
  const Trajectory tr = evolve(psi0, path, 1);

  BatteryRun run;
  run.warnings = tr.warnings;
  run.records.reserve(tr.times.size());
  const double window = cfg.window();
  double cumulative = 0.0;
  double widest = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double t = tr.times[k];
    const double eta = cfg.pulse(t);
    const Matrix v = spin_operator(cfg.drive_axis(t));
    const DensityMatrix rho = tr.states[k].density();
    WorkRecord r;
    r.t = t;
    r.eta = eta;
    r.avg_work = avg_extracted_work(rho, cfg.epsilon, eta, v, window);
    r.coherence = c_half(rho, spectral_projectors(v).projectors);
    r.bound = work_bound(rho, cfg.epsilon, eta, v, window);
    cumulative += r.avg_work;
    r.cumulative_work = cumulative;
    widest = std::max(widest, 2.0 * eta * window);
    run.records.push_back(r);
  }
  if (widest > 0.1) {
    std::ostringstream msg;
    msg << "wide work window: 2 eta dt reaches " << widest;
    run.warnings.push_back(msg.str());
  }
  return run;
}

namespace {

struct QuditWorkTerm {
  const Matrix& h0;
  const Matrix& rho;
  const SpectralHamiltonian& drive;
  double window;
  WorkPicture picture;

  double operator()(std::span<const int> s) const {
    const SpectralHamiltonian vs = permuted_hamiltonian(drive, s);
    if (picture == WorkPicture::Interaction) return energy_drop(h0, rho, unitary_exp(vs, window));
    return energy_drop(h0, rho, frozen_propagator(h0 + vs.matrix(), window));
  }
};

}  // namespace

QuditWork qudit_battery_bound(const DensityMatrix& rho, const Matrix& h0, const Matrix& v, double window,
                              WorkPicture picture, std::size_t cap) {
  if (!is_hermitian(h0) || !is_hermitian(v)) throw Error(ErrorCode::NotHermitian, "H0 and V must be Hermitian");
  if (h0.rows() != rho.dim() || v.rows() != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "H0, V and rho must share a dimension");
  const SpectralHamiltonian drive = spectral_projectors(v);
  const std::size_t m = drive.level_count();
  QuditWork w;
  if (m < 2 || window == 0.0) return w;
  require_within_cap(m, cap);
  w.avg_work = permutation_average_serial(m, QuditWorkTerm{h0, rho.matrix(), drive, window, picture});
  const double c = c_half(rho, drive.projectors);
  const double k = std::abs(rho.purity() - 1.0) < kDefaultTol.trace ? 1.0 : 2.0;
  w.bound = k * h0.norm() * std::sqrt(std::max(0.0, 2.0 * (1.0 - b_coefficient(drive.levels, window)) * c));
  return w;
}

}  // namespace cohspeed
