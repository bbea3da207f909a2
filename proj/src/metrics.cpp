#include "cohspeed/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cohspeed {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "states have different dimensions");
}

}  // namespace

double affinity_from_sqrt(const Matrix& sqrt_rho, const Matrix& sqrt_sigma) {
  // Tr(A B) for Hermitian A, B is sum_ij A_ij conj(B_ij).
  const double a = (sqrt_rho.array() * sqrt_sigma.conjugate().array()).sum().real();
  return std::clamp(a, 0.0, 1.0);
}

double affinity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return affinity_from_sqrt(matrix_sqrt_psd(rho), matrix_sqrt_psd(sigma));
}

double hellinger(const DensityMatrix& rho, const DensityMatrix& sigma) { return 2.0 * (1.0 - affinity(rho, sigma)); }

double d_affinity_half(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double a = affinity(rho, sigma);
  return 1.0 - a * a;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const Matrix s = matrix_sqrt_psd(rho);
  Matrix inner = s * sigma.matrix() * s;
  inner = 0.5 * (inner + inner.adjoint());
  const double root_trace = psd_sqrt(inner).trace().real();
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::acos(std::clamp(std::sqrt(fidelity(rho, sigma)), 0.0, 1.0));
}

double bures_angle(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "states have different dimensions");
  const Complex overlap = a.amplitudes().dot(b.amplitudes());
  const double orth = (b.amplitudes() - overlap * a.amplitudes()).norm();
  return std::atan2(orth, std::abs(overlap));
}

double energy_mean(const PureState& psi, const SpectralHamiltonian& h) {
  if (psi.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian dimensions differ");
  const Vector c = h.eigenvectors.adjoint() * psi.amplitudes();
  return c.cwiseAbs2().dot(h.eigenvalues);
}

double energy_stddev(const PureState& psi, const SpectralHamiltonian& h) {
  if (psi.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian dimensions differ");
  // Centered second moment avoids <H^2> - <H>^2 cancellation.
  const Vector c = h.eigenvectors.adjoint() * psi.amplitudes();
  const RealVector p = c.cwiseAbs2();
  const double mean = p.dot(h.eigenvalues);
  const double var = p.dot((h.eigenvalues.array() - mean).square().matrix());
  return std::sqrt(std::max(var, 0.0));
}

QslBounds qsl_bounds(const PureState& psi0, const SpectralHamiltonian& h, const PureState& psi1) {
  QslBounds out;
  out.bures_angle = bures_angle(psi0, psi1);
  out.mean_energy = energy_mean(psi0, h) - h.eigenvalues.minCoeff();
  out.energy_stddev = energy_stddev(psi0, h);
  // Below this scale the bound is treated as undefined (stationary or ground state).
  const double zero = 1e-12 * std::max(1.0, h.eigenvalues.cwiseAbs().maxCoeff());
  if (out.energy_stddev > zero) out.mt_time = out.bures_angle / out.energy_stddev;
  if (out.mean_energy > zero) out.ml_time = out.bures_angle / out.mean_energy;
  return out;
}

}  // namespace cohspeed
