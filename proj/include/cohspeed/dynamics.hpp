#pragma once

// Time-dependent pure-state evolution and instantaneous speed.
//
// The integrator propagates exactly over each grid step with the Hamiltonian
// frozen at the left endpoint: psi_{k+1} = exp(-i H(t_k) dt_k) psi_k.

#include <functional>
#include <string>
#include <vector>

#include "cohspeed/linalg.hpp"

namespace cohspeed {

struct HamiltonianPath {
  std::function<Matrix(double)> sampler;
  std::vector<double> grid;  // strictly increasing
};

HamiltonianPath constant_path(const Matrix& h, std::vector<double> grid);
/// H(t) = (1 - u) H0 + u H1 with u = (t - t0) / (t1 - t0).
HamiltonianPath linear_path(const Matrix& h0, const Matrix& h1, double t0, double t1, std::vector<double> grid);

/// n + 1 equally spaced points on [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

/// Uniform grid with max|lambda| * dt <= target_phase, where max|lambda| is
/// probed at `probes` equally spaced times.
std::vector<double> default_grid(const std::function<Matrix(double)>& sampler, double t0, double t1,
                                 double target_phase = 0.01, std::size_t probes = 64);

struct Trajectory {
  std::vector<double> times;
  std::vector<PureState> states;
  std::vector<double> speeds;         // v(t_k) from the coherence-vector quadratic form
  std::vector<double> uncertainties;  // Delta H at t_k
  std::vector<SpectralHamiltonian> spectra;
  std::vector<std::string> warnings;
};

/// Throws GridTooCoarse if max|lambda| dt > 1 on any step; records a warning above 0.1.
Trajectory evolve(const PureState& psi0, const HamiltonianPath& path, int jobs = 0);

/// ((lambda_p - lambda_q)^2)_{p,q} over the distinct levels.
Eigen::MatrixXd speed_matrix(const SpectralHamiltonian& h);

/// sqrt(r^T A r) with r the grouped coherence vector.
double instantaneous_speed(const PureState& psi, const SpectralHamiltonian& h);

double energy_uncertainty(const PureState& psi, const SpectralHamiltonian& h);

/// ||rho_{k+stride} - rho_k||_F / (t_{k+stride} - t_k).
double finite_difference_speed(const Trajectory& traj, std::size_t k, std::size_t stride = 1);

/// 2 * (2|alpha|^2 |beta|^2) * (1 - cos((lambda - gamma) t)): the Hellinger
/// distance travelled by alpha|0> + beta|1> under diag(lambda, gamma).
double qubit_closed_form(Complex alpha, Complex beta, double lambda, double gamma, double t);

}  // namespace cohspeed
