#include "cohspeed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace cohspeed {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::TooManyLevels: return "TooManyLevels";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::SingleLevel: return "SingleLevel";
    case ErrorCode::TooManyKraus: return "TooManyKraus";
    case ErrorCode::IncompleteKraus: return "IncompleteKraus";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::WindowTooWide: return "WindowTooWide";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m * m.adjoint() - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

// ---------------------------------------------------------------------------
// Value types

DensityMatrix::DensityMatrix(Matrix m, const Tolerances& tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw Error(ErrorCode::DimensionMismatch, "density matrix must be square and non-empty");
  if (!m_.allFinite()) throw Error(ErrorCode::NotHermitian, "density matrix has non-finite entries");
  if (!is_hermitian(m_, tol.herm)) throw Error(ErrorCode::NotHermitian, "density matrix is not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0)) > tol.trace)
    throw Error(ErrorCode::NotNormalized, "density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.psd)
    throw Error(ErrorCode::NotPSD, "density matrix has a negative eigenvalue " +
                                       std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::trusted(Matrix m) { return DensityMatrix(std::move(m), TrustedTag{}); }

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

PureState::PureState(Vector amplitudes, const Tolerances& tol) : a_(std::move(amplitudes)) {
  if (a_.size() == 0) throw Error(ErrorCode::DimensionMismatch, "empty state vector");
  if (std::abs(a_.norm() - 1.0) > tol.norm) throw Error(ErrorCode::NotNormalized, "state vector is not unit norm");
}

PureState PureState::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::NotNormalized, "cannot normalize a zero vector");
  return PureState(v / n);
}

DensityMatrix PureState::density() const { return DensityMatrix::trusted(a_ * a_.adjoint()); }

OrthogonalDecomposition::OrthogonalDecomposition(std::vector<Matrix> projectors, const Tolerances& tol)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw Error(ErrorCode::DimensionMismatch, "empty decomposition");
  const auto d = projectors_.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  block_dims_.reserve(projectors_.size());
  for (std::size_t m = 0; m < projectors_.size(); ++m) {
    const Matrix& p = projectors_[m];
    if (p.rows() != d || p.cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "projectors must share one square dimension");
    if (!is_hermitian(p, tol.herm) || max_abs(p * p - p) > tol.orth)
      throw Error(ErrorCode::DegenerateInput, "element " + std::to_string(m) + " is not a projector");
    const int rank = static_cast<int>(std::lround(p.trace().real()));
    if (rank < 1) throw Error(ErrorCode::DegenerateInput, "zero projector in decomposition");
    block_dims_.push_back(rank);
    for (std::size_t n = 0; n < m; ++n)
      if (max_abs(p * projectors_[n]) > tol.orth)
        throw Error(ErrorCode::DegenerateInput, "projectors are not mutually orthogonal");
    sum += p;
  }
  if (max_abs(sum - Matrix::Identity(d, d)) > tol.orth)
    throw Error(ErrorCode::DegenerateInput, "projectors do not sum to the identity");
}

OrthogonalDecomposition OrthogonalDecomposition::from_basis(const Matrix& basis) {
  std::vector<int> ones(static_cast<std::size_t>(basis.cols()), 1);
  return from_blocks(basis, ones);
}

OrthogonalDecomposition OrthogonalDecomposition::from_blocks(const Matrix& basis,
                                                             std::span<const int> block_dims) {
  if (!is_unitary(basis)) throw Error(ErrorCode::DegenerateInput, "basis is not unitary");
  std::vector<Matrix> ps;
  Eigen::Index col = 0;
  for (int k : block_dims) {
    if (k < 1 || col + k > basis.cols()) throw Error(ErrorCode::DimensionMismatch, "block sizes do not fit basis");
    const auto cols = basis.middleCols(col, k);
    ps.emplace_back(cols * cols.adjoint());
    col += k;
  }
  if (col != basis.cols()) throw Error(ErrorCode::DimensionMismatch, "block sizes do not cover basis");
  return OrthogonalDecomposition(std::move(ps));
}

Matrix SpectralHamiltonian::matrix() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

// ---------------------------------------------------------------------------
// Spectral functions

EigenDecomposition hermitian_eig(const Matrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols() || h.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  if (!is_hermitian(h, tol.herm)) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix psd_sqrt(const Matrix& m, const Tolerances& tol) {
  const auto eig = hermitian_eig(m, tol);
  RealVector roots(eig.values.size());
  // Eigenvalues within the solver's roundoff of zero are zero; their square
  // roots would otherwise inject noise of order sqrt(eps).
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(m.rows()) *
                       std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double v = eig.values[i];
    if (v < -tol.psd) throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(v) + " below -tol_psd");
    roots[i] = v <= floor ? 0.0 : std::sqrt(v);
  }
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix matrix_sqrt_psd(const DensityMatrix& rho, const Tolerances& tol) { return psd_sqrt(rho.matrix(), tol); }

Matrix unitary_exp(const SpectralHamiltonian& h, double t) {
  Vector phases(h.dim());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, -h.eigenvalues[i] * t);
  return h.eigenvectors * phases.asDiagonal() * h.eigenvectors.adjoint();
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int d_sys, int d_env, Subsystem traced) {
  if (d_sys < 1 || d_env < 1 || rho.dim() != static_cast<Eigen::Index>(d_sys) * d_env)
    throw Error(ErrorCode::DimensionMismatch, "subsystem dimensions do not match state dimension");
  const Matrix& m = rho.matrix();
  if (traced == Subsystem::Environment) {
    Matrix out = Matrix::Zero(d_sys, d_sys);
    for (int a = 0; a < d_sys; ++a)
      for (int b = 0; b < d_sys; ++b)
        for (int e = 0; e < d_env; ++e) out(a, b) += m(a * d_env + e, b * d_env + e);
    return DensityMatrix::trusted(std::move(out));
  }
  Matrix out = Matrix::Zero(d_env, d_env);
  for (int e = 0; e < d_env; ++e)
    for (int f = 0; f < d_env; ++f)
      for (int a = 0; a < d_sys; ++a) out(e, f) += m(a * d_env + e, a * d_env + f);
  return DensityMatrix::trusted(std::move(out));
}

namespace {

SpectralHamiltonian group_levels(RealVector values, Matrix vectors, double tol_degen) {
  const auto d = values.size();
  std::vector<double> levels;
  std::vector<int> level_of(static_cast<std::size_t>(d));
  std::vector<int> dims;
  Eigen::Index start = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i + 1 == d || values[i + 1] - values[i] > tol_degen) {
      const auto n = i - start + 1;
      levels.push_back(values.segment(start, n).mean());
      dims.push_back(static_cast<int>(n));
      for (auto k = start; k <= i; ++k) level_of[static_cast<std::size_t>(k)] = static_cast<int>(levels.size() - 1);
      start = i + 1;
    }
  }
  auto projectors = OrthogonalDecomposition::from_blocks(vectors, dims);
  return SpectralHamiltonian{std::move(values), std::move(vectors), std::move(levels), std::move(level_of),
                             std::move(projectors)};
}

}  // namespace

SpectralHamiltonian spectral_projectors(const Matrix& h, double tol_degen) {
  auto eig = hermitian_eig(h);
  return group_levels(std::move(eig.values), std::move(eig.vectors), tol_degen);
}

SpectralHamiltonian spectral_from(std::span<const double> eigenvalues, const Matrix& basis, double tol_degen) {
  const auto d = static_cast<Eigen::Index>(eigenvalues.size());
  if (basis.rows() != d || basis.cols() != d)
    throw Error(ErrorCode::DimensionMismatch, "spectrum length does not match basis");
  if (!is_unitary(basis)) throw Error(ErrorCode::DegenerateInput, "basis is not unitary");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return eigenvalues[static_cast<std::size_t>(a)] < eigenvalues[static_cast<std::size_t>(b)]; });
  RealVector values(d);
  Matrix vectors(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    values[i] = eigenvalues[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    vectors.col(i) = basis.col(order[static_cast<std::size_t>(i)]);
  }
  return group_levels(std::move(values), std::move(vectors), tol_degen);
}

// ---------------------------------------------------------------------------
// Random ensembles

namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n01(rng);
      const double im = n01(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

PureState haar_random_state(int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  return PureState::normalized(ginibre(d, 1, seed).col(0));
}

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  if (rank < 1 || rank > d) throw Error(ErrorCode::BadRank, "rank must lie in [1, d]");
  const Matrix g = ginibre(d, rank, seed);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::trusted(std::move(rho));
}

Matrix haar_random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  const Matrix g = ginibre(d, d, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

Matrix random_hermitian(int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  const Matrix g = ginibre(d, d, seed);
  return 0.5 * (g + g.adjoint());
}

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    carry_ += (sum_ - t) + x;
  else
    carry_ += (x - t) + sum_;
  sum_ = t;
}

}  // namespace cohspeed
