#include "cohspeed/coherence.hpp"

#include <algorithm>
#include <cmath>

namespace cohspeed {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, "state and decomposition dimensions differ");
}

}  // namespace

RealVector block_affinity_weights(const Matrix& sqrt_rho, const OrthogonalDecomposition& p) {
  require_same_dim(sqrt_rho.rows(), p.dim());
  RealVector w(static_cast<Eigen::Index>(p.size()));
  for (std::size_t m = 0; m < p.size(); ++m) {
    const Matrix& pm = p.projectors()[m];
    // P sqrt(rho) P is Hermitian, so Tr[(.)^2] is its squared Frobenius norm.
    w[static_cast<Eigen::Index>(m)] = (pm * sqrt_rho * pm).squaredNorm();
  }
  return w;
}

double c_half_from_sqrt(const Matrix& sqrt_rho, const OrthogonalDecomposition& p) {
  const double v = 1.0 - block_affinity_weights(sqrt_rho, p).sum();
  return std::max(v, 0.0);
}

double c_half(const DensityMatrix& rho, const OrthogonalDecomposition& p) {
  require_same_dim(rho.dim(), p.dim());
  return c_half_from_sqrt(matrix_sqrt_psd(rho), p);
}

DensityMatrix closest_incoherent(const DensityMatrix& rho, const OrthogonalDecomposition& p, const Tolerances& tol) {
  require_same_dim(rho.dim(), p.dim());
  const Matrix s = matrix_sqrt_psd(rho, tol);
  const RealVector w = block_affinity_weights(s, p);
  Matrix sigma = Matrix::Zero(rho.dim(), rho.dim());
  double total = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    if (w[static_cast<Eigen::Index>(m)] < tol.psd) continue;
    const Matrix& pm = p.projectors()[m];
    const Matrix block = pm * s * pm;
    sigma += block * block;
    total += w[static_cast<Eigen::Index>(m)];
  }
  if (!(total > 0.0)) throw Error(ErrorCode::DegenerateInput, "all block weights vanish");
  sigma /= total;
  return DensityMatrix::trusted(0.5 * (sigma + sigma.adjoint()));
}

DensityMatrix dephase(const DensityMatrix& rho, const OrthogonalDecomposition& p) {
  require_same_dim(rho.dim(), p.dim());
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& pm : p.projectors()) out += pm * rho.matrix() * pm;
  return DensityMatrix::trusted(std::move(out));
}

double c_l1(const DensityMatrix& rho, const Matrix& basis) {
  require_same_dim(rho.dim(), basis.rows());
  const Matrix r = basis.adjoint() * rho.matrix() * basis;
  return r.cwiseAbs().sum() - r.diagonal().cwiseAbs().sum();
}

RealVector coherence_vector(const PureState& psi, const SpectralHamiltonian& h) {
  require_same_dim(psi.dim(), h.dim());
  const auto& ps = h.projectors.projectors();
  RealVector r(static_cast<Eigen::Index>(ps.size()));
  for (std::size_t m = 0; m < ps.size(); ++m) r[static_cast<Eigen::Index>(m)] = (ps[m] * psi.amplitudes()).squaredNorm();
  return r;
}

bool is_maximally_coherent(const PureState& psi, const OrthogonalDecomposition& p, double tol) {
  require_same_dim(psi.dim(), p.dim());
  const double target = 1.0 / std::sqrt(static_cast<double>(p.size()));
  return std::all_of(p.projectors().begin(), p.projectors().end(), [&](const Matrix& pm) {
    return std::abs((pm * psi.amplitudes()).norm() - target) <= tol;
  });
}

bool is_refinement(const OrthogonalDecomposition& q, const OrthogonalDecomposition& p, double tol) {
  if (q.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "decompositions act on different spaces");
  std::vector<bool> used(q.size(), false);
  for (const auto& pm : p.projectors()) {
    Matrix covered = Matrix::Zero(p.dim(), p.dim());
    for (std::size_t n = 0; n < q.size(); ++n) {
      const Matrix& qn = q.projectors()[n];
      if ((pm * qn - qn).norm() <= tol) {
        covered += qn;
        used[n] = true;
      }
    }
    if ((covered - pm).norm() > tol) return false;
  }
  return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

}  // namespace cohspeed
