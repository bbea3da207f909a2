#pragma once

// Dense complex linear algebra for small Hilbert spaces (d <= 16).
//
// Conventions:
//   * hbar = 1; energies and times are dimensionless.
//   * Composite index for A (x) E is a * d_E + e, i.e. the first factor is
//     the slow (outer) index. tensor() and partial_trace() both follow it.

#include <cstdint>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cohspeed/error.hpp"

namespace cohspeed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Tolerances {
  double herm = 1e-9;
  double orth = 1e-9;
  double trace = 1e-9;
  double norm = 1e-9;
  double recon = 1e-10;
  double psd = 1e-10;
  double degen = 1e-9;
};

inline constexpr Tolerances kDefaultTol{};

/// Positive semidefinite, unit-trace, Hermitian matrix. Construction
/// validates; use `trusted` only for results of trace- and
/// positivity-preserving operations on already valid states.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, const Tolerances& tol = kDefaultTol);

  static DensityMatrix trusted(Matrix m);

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double purity() const;

 private:
  struct TrustedTag {};
  DensityMatrix(Matrix m, TrustedTag) : m_(std::move(m)) {}
  Matrix m_;
};

class PureState {
 public:
  explicit PureState(Vector amplitudes, const Tolerances& tol = kDefaultTol);

  /// Normalizes `v`; throws NotNormalized for a zero vector.
  static PureState normalized(const Vector& v);

  const Vector& amplitudes() const noexcept { return a_; }
  Eigen::Index dim() const noexcept { return a_.size(); }
  DensityMatrix density() const;

 private:
  Vector a_;
};

/// Mutually orthogonal projectors summing to the identity.
class OrthogonalDecomposition {
 public:
  explicit OrthogonalDecomposition(std::vector<Matrix> projectors,
                                   const Tolerances& tol = kDefaultTol);

  /// Rank-1 projectors onto the columns of a unitary.
  static OrthogonalDecomposition from_basis(const Matrix& basis);

  /// Groups consecutive columns of `basis`: block m spans `block_dims[m]` columns.
  static OrthogonalDecomposition from_blocks(const Matrix& basis, std::span<const int> block_dims);

  const std::vector<Matrix>& projectors() const noexcept { return projectors_; }
  const std::vector<int>& block_dims() const noexcept { return block_dims_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  Eigen::Index dim() const noexcept { return projectors_.front().rows(); }

 private:
  std::vector<Matrix> projectors_;
  std::vector<int> block_dims_;
};

/// H = sum_m level_m P_m with levels strictly ascending.
/// `eigenvalues`/`eigenvectors` are the raw ascending decomposition;
/// `level_of[i]` is the level index of eigenvalue i.
struct SpectralHamiltonian {
  RealVector eigenvalues;
  Matrix eigenvectors;
  std::vector<double> levels;
  std::vector<int> level_of;
  OrthogonalDecomposition projectors;

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }
  std::size_t level_count() const noexcept { return levels.size(); }
  Matrix matrix() const;
};

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns are eigenvectors
};

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kDefaultTol.herm);
bool is_unitary(const Matrix& m, double tol = kDefaultTol.orth);

EigenDecomposition hermitian_eig(const Matrix& h, const Tolerances& tol = kDefaultTol);

/// Square root of a PSD Hermitian matrix. Eigenvalues at or below the
/// solver's roundoff floor (8 eps d max|lambda|) are set to zero; eigenvalues
/// below -tol.psd raise NotPSD.
Matrix psd_sqrt(const Matrix& m, const Tolerances& tol = kDefaultTol);
Matrix matrix_sqrt_psd(const DensityMatrix& rho, const Tolerances& tol = kDefaultTol);

/// e^{-iHt}.
Matrix unitary_exp(const SpectralHamiltonian& h, double t);

Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

enum class Subsystem { System, Environment };

/// Traces out `traced` from a state on C^{d_sys} (x) C^{d_env}.
DensityMatrix partial_trace(const DensityMatrix& rho, int d_sys, int d_env, Subsystem traced);

/// Groups eigenvalues whose consecutive gaps are <= tol_degen into levels.
SpectralHamiltonian spectral_projectors(const Matrix& h, double tol_degen = kDefaultTol.degen);

/// Builds a SpectralHamiltonian from an explicit spectrum and basis.
SpectralHamiltonian spectral_from(std::span<const double> eigenvalues, const Matrix& basis,
                                  double tol_degen = kDefaultTol.degen);

// Seeded generators. Every call owns its engine; equal seeds give equal output.
PureState haar_random_state(int d, std::uint64_t seed);
DensityMatrix random_density(int d, int rank, std::uint64_t seed);
Matrix haar_random_unitary(int d, std::uint64_t seed);
Matrix random_hermitian(int d, std::uint64_t seed);

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace cohspeed
