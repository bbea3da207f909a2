#pragma once

#include <optional>

#include "cohspeed/linalg.hpp"

namespace cohspeed {

/// Tr sqrt(rho) sqrt(sigma), clamped to [0, 1].
double affinity(const DensityMatrix& rho, const DensityMatrix& sigma);
double affinity_from_sqrt(const Matrix& sqrt_rho, const Matrix& sqrt_sigma);

/// Hellinger distance Tr(sqrt(rho) - sqrt(sigma))^2 = 2(1 - affinity).
double hellinger(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 1 - affinity^2.
double d_affinity_half(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// arccos sqrt(F), in [0, pi/2].
double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Bures angle between pure states, computed from the orthogonal component
/// so that small angles keep full relative precision.
double bures_angle(const PureState& a, const PureState& b);

struct QslBounds {
  /// Mandelstam-Tamm time angle / dH; absent when dH = 0.
  std::optional<double> mt_time;
  /// Margolus-Levitin time angle / <H - lambda_min>; absent when that mean is 0.
  std::optional<double> ml_time;
  double bures_angle = 0.0;
  /// <H> - lambda_min on the initial state.
  double mean_energy = 0.0;
  double energy_stddev = 0.0;
};

QslBounds qsl_bounds(const PureState& psi0, const SpectralHamiltonian& h, const PureState& psi1);

/// <psi|H|psi> and the standard deviation of H on psi.
double energy_mean(const PureState& psi, const SpectralHamiltonian& h);
double energy_stddev(const PureState& psi, const SpectralHamiltonian& h);

}  // namespace cohspeed
