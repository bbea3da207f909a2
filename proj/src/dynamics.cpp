#include "cohspeed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cohspeed/coherence.hpp"
#include "cohspeed/metrics.hpp"

namespace cohspeed {

HamiltonianPath constant_path(const Matrix& h, std::vector<double> grid) {
  if (!is_hermitian(h)) throw Error(ErrorCode::NotHermitian, "path Hamiltonian is not Hermitian");
  return {[h](double) { return h; }, std::move(grid)};
}

HamiltonianPath linear_path(const Matrix& h0, const Matrix& h1, double t0, double t1, std::vector<double> grid) {
  if (h0.rows() != h1.rows() || h0.cols() != h1.cols())
    throw Error(ErrorCode::DimensionMismatch, "endpoint Hamiltonians differ in shape");
  if (!is_hermitian(h0) || !is_hermitian(h1)) throw Error(ErrorCode::NotHermitian, "endpoint is not Hermitian");
  if (!(t1 > t0)) throw Error(ErrorCode::DegenerateInput, "interpolation interval is empty");
  return {[h0, h1, t0, t1](double t) {
            const double u = (t - t0) / (t1 - t0);
            return Matrix((1.0 - u) * h0 + u * h1);
          },
          std::move(grid)};
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  if (n == 0 || !(t1 > t0)) throw Error(ErrorCode::DegenerateInput, "grid needs n >= 1 and t1 > t0");
  std::vector<double> g(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n);
  return g;
}

std::vector<double> default_grid(const std::function<Matrix(double)>& sampler, double t0, double t1,
                                 double target_phase, std::size_t probes) {
  double scale = 0.0;
  for (std::size_t k = 0; k <= probes; ++k) {
    const double t = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(probes);
    scale = std::max(scale, hermitian_eig(sampler(t)).values.cwiseAbs().maxCoeff());
  }
  const double dt_max = scale > 0.0 ? target_phase / scale : (t1 - t0);
  const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / dt_max));
  return uniform_grid(t0, t1, std::max<std::size_t>(n, 1));
}

Eigen::MatrixXd speed_matrix(const SpectralHamiltonian& h) {
  const auto m = static_cast<Eigen::Index>(h.level_count());
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index p = 0; p < m; ++p)
    for (Eigen::Index q = 0; q < m; ++q) {
      const double gap = h.levels[static_cast<std::size_t>(p)] - h.levels[static_cast<std::size_t>(q)];
      a(p, q) = gap * gap;
    }
  return a;
}

double instantaneous_speed(const PureState& psi, const SpectralHamiltonian& h) {
  const RealVector r = coherence_vector(psi, h);
  return std::sqrt(std::max(0.0, r.dot(speed_matrix(h) * r)));
}

double energy_uncertainty(const PureState& psi, const SpectralHamiltonian& h) { return energy_stddev(psi, h); }

Trajectory evolve(const PureState& psi0, const HamiltonianPath& path, int jobs) {
  const auto& grid = path.grid;
  if (grid.empty()) throw Error(ErrorCode::DegenerateInput, "empty time grid");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw Error(ErrorCode::DegenerateInput, "time grid is not strictly increasing");

  Trajectory tr;
  tr.times = grid;
  tr.states.reserve(grid.size());
  tr.spectra.reserve(grid.size());
  tr.states.push_back(psi0);
  double worst_phase = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Matrix hk = path.sampler(grid[k]);
    if (hk.rows() != psi0.dim()) throw Error(ErrorCode::DimensionMismatch, "path Hamiltonian does not match state");
    tr.spectra.push_back(spectral_projectors(hk));
    if (k + 1 == grid.size()) break;
    const double dt = grid[k + 1] - grid[k];
    const auto& spec = tr.spectra.back();
    const double phase = spec.eigenvalues.cwiseAbs().maxCoeff() * dt;
    worst_phase = std::max(worst_phase, phase);
    if (phase > 1.0) {
      std::ostringstream msg;
      msg << "max|lambda| * dt = " << phase << " at t = " << grid[k];
      throw Error(ErrorCode::GridTooCoarse, msg.str());
    }
    Vector next = unitary_exp(spec, dt) * tr.states.back().amplitudes();
    tr.states.push_back(PureState::normalized(next));
  }
  if (worst_phase > 0.1) {
    std::ostringstream msg;
    msg << "coarse grid: max|lambda| * dt reaches " << worst_phase;
    tr.warnings.push_back(msg.str());
  }

  const auto n = static_cast<std::int64_t>(grid.size());
  tr.speeds.assign(grid.size(), 0.0);
  tr.uncertainties.assign(grid.size(), 0.0);
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    tr.speeds[i] = instantaneous_speed(tr.states[i], tr.spectra[i]);
    tr.uncertainties[i] = energy_uncertainty(tr.states[i], tr.spectra[i]);
  }
  (void)jobs;
  return tr;
}

double finite_difference_speed(const Trajectory& traj, std::size_t k, std::size_t stride) {
  if (stride == 0 || k + stride >= traj.states.size())
    throw Error(ErrorCode::IndexOutOfRange, "finite difference needs index k + stride on the grid");
  const Vector& a = traj.states[k].amplitudes();
  const Vector& b = traj.states[k + stride].amplitudes();
  const Matrix diff = a * a.adjoint() - b * b.adjoint();
  return diff.norm() / (traj.times[k + stride] - traj.times[k]);
}

double qubit_closed_form(Complex alpha, Complex beta, double lambda, double gamma, double t) {
  const double a2 = std::norm(alpha);
  const double b2 = std::norm(beta);
  if (std::abs(a2 + b2 - 1.0) > kDefaultTol.norm) throw Error(ErrorCode::NotNormalized, "|alpha|^2 + |beta|^2 != 1");
  return 2.0 * (2.0 * a2 * b2) * (1.0 - std::cos((lambda - gamma) * t));
}

}  // namespace cohspeed
