#include "cohspeed/channels.hpp"

#include <cmath>
#include <numbers>

#include "cohspeed/avgdist.hpp"
#include "cohspeed/coherence.hpp"
#include "cohspeed/metrics.hpp"

namespace cohspeed {

double KrausChannel::completeness_residual() const {
  if (operators.empty()) return 1.0;
  Matrix sum = Matrix::Zero(dim_in(), dim_in());
  for (const auto& k : operators) sum += k.adjoint() * k;
  return max_abs(sum - Matrix::Identity(dim_in(), dim_in()));
}

void KrausChannel::validate(double tol) const {
  if (operators.empty()) throw Error(ErrorCode::IncompleteKraus, "channel has no Kraus operators");
  for (const auto& k : operators)
    if (k.rows() != dim_out() || k.cols() != dim_in())
      throw Error(ErrorCode::DimensionMismatch, "Kraus operators have inconsistent shapes");
  if (completeness_residual() > tol)
    throw Error(ErrorCode::IncompleteKraus, "sum_j K_j^dag K_j differs from the identity");
}

DensityMatrix apply_kraus(const KrausChannel& channel, const DensityMatrix& rho) {
  channel.validate();
  if (rho.dim() != channel.dim_in()) throw Error(ErrorCode::DimensionMismatch, "state does not match channel input");
  Matrix out = Matrix::Zero(channel.dim_out(), channel.dim_out());
  for (const auto& k : channel.operators) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::trusted(0.5 * (out + out.adjoint()));
}

KrausChannel dephasing_channel(const Matrix& basis) {
  KrausChannel ch{{}, "dephasing"};
  for (Eigen::Index i = 0; i < basis.cols(); ++i) ch.operators.emplace_back(basis.col(i) * basis.col(i).adjoint());
  return ch;
}

KrausChannel identity_channel(int d) { return {{Matrix::Identity(d, d)}, "identity"}; }

KrausChannel unitary_channel(const Matrix& u) { return {{u}, "unitary"}; }

KrausChannel amplitude_damping_channel(double gamma) {
  Matrix k0 = Matrix::Zero(2, 2);
  Matrix k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return {{k0, k1}, "amplitude-damping"};
}

KrausChannel orthogonalizing_qutrit_channel() {
  const double r = 1.0 / std::numbers::sqrt2;
  std::vector<Matrix> ks(4, Matrix::Zero(3, 3));
  ks[0](1, 0) = r;
  ks[1](2, 0) = r;
  ks[2](1, 1) = 1.0;
  ks[3](2, 2) = 1.0;
  return {std::move(ks), "orthogonalizing-qutrit"};
}

// ---------------------------------------------------------------------------
// Dilations

DensityMatrix StinespringDilation::embed(const DensityMatrix& rho) const {
  if (rho.dim() != sys_dim) throw Error(ErrorCode::DimensionMismatch, "state does not match the system dimension");
  return DensityMatrix::trusted(tensor(rho.matrix(), Matrix(env_state * env_state.adjoint())));
}

StinespringDilation dilation_from_unitary(const Matrix& u, int sys_dim, int env_dim, double duration,
                                          double tol_degen) {
  if (sys_dim < 1 || env_dim < 1 || u.rows() != static_cast<Eigen::Index>(sys_dim) * env_dim)
    throw Error(ErrorCode::DimensionMismatch, "unitary does not act on system (x) environment");
  if (!is_unitary(u)) throw Error(ErrorCode::DegenerateInput, "dilation operator is not unitary");
  if (!(duration > 0.0)) throw Error(ErrorCode::DegenerateInput, "duration must be positive");
  // U is normal, so its complex Schur form is diagonal and the Schur vectors
  // form an orthonormal eigenbasis even inside degenerate eigenspaces.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& tri = schur.matrixT();
  std::vector<double> energies(static_cast<std::size_t>(u.rows()));
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    double phase = std::arg(tri(k, k));
    if (phase <= -std::numbers::pi) phase = std::numbers::pi;
    energies[static_cast<std::size_t>(k)] = -phase / duration;
  }
  StinespringDilation d{spectral_from(energies, schur.matrixU(), tol_degen), sys_dim, env_dim,
                        Vector::Unit(env_dim, 0), duration};
  return d;
}

StinespringDilation dilate(const KrausChannel& channel, int env_dim) {
  channel.validate();
  if (channel.dim_in() != channel.dim_out())
    throw Error(ErrorCode::DimensionMismatch, "dilation needs a channel from a space to itself");
  const auto n_kraus = static_cast<int>(channel.operators.size());
  if (env_dim == 0) env_dim = n_kraus;
  if (n_kraus > env_dim) throw Error(ErrorCode::TooManyKraus, "more Kraus operators than environment levels");
  const auto d = static_cast<int>(channel.dim_in());
  const Eigen::Index total = static_cast<Eigen::Index>(d) * env_dim;

  Matrix u = Matrix::Zero(total, total);
  std::vector<bool> filled(static_cast<std::size_t>(total), false);
  for (int i = 0; i < d; ++i) {
    Vector col = Vector::Zero(total);
    for (int j = 0; j < n_kraus; ++j)
      for (int a = 0; a < d; ++a) col[a * env_dim + j] = channel.operators[static_cast<std::size_t>(j)](a, i);
    u.col(static_cast<Eigen::Index>(i) * env_dim) = col;
    filled[static_cast<std::size_t>(i) * static_cast<std::size_t>(env_dim)] = true;
  }

  // Complete the isometry with Gram-Schmidt on standard basis candidates.
  std::vector<Eigen::Index> basis_cols;
  for (Eigen::Index c = 0; c < total; ++c)
    if (filled[static_cast<std::size_t>(c)]) basis_cols.push_back(c);
  Eigen::Index next_slot = 0;
  for (Eigen::Index cand = 0; cand < total && static_cast<Eigen::Index>(basis_cols.size()) < total; ++cand) {
    Vector v = Vector::Unit(total, cand);
    for (int pass = 0; pass < 2; ++pass)
      for (auto c : basis_cols) v -= u.col(c).dot(v) * u.col(c);
    const double n = v.norm();
    if (n < 1e-8) continue;
    while (filled[static_cast<std::size_t>(next_slot)]) ++next_slot;
    u.col(next_slot) = v / n;
    filled[static_cast<std::size_t>(next_slot)] = true;
    basis_cols.push_back(next_slot);
  }
  return dilation_from_unitary(u, d, env_dim);
}

namespace {

Matrix channel_output(const StinespringDilation& dl, const Matrix& u, const DensityMatrix& rho) {
  const DensityMatrix joint = dl.embed(rho);
  Matrix evolved = u * joint.matrix() * u.adjoint();
  evolved = 0.5 * (evolved + evolved.adjoint());
  return partial_trace(DensityMatrix::trusted(std::move(evolved)), dl.sys_dim, dl.env_dim, Subsystem::Environment)
      .matrix();
}

struct ChannelDistanceTerm {
  const StinespringDilation& dl;
  const DensityMatrix& rho;
  const Matrix& sqrt_rho;

  double operator()(std::span<const int> s) const {
    const Matrix u = permuted_propagator(dl.total_hamiltonian, s, dl.duration);
    return 2.0 * (1.0 - affinity_from_sqrt(sqrt_rho, psd_sqrt(channel_output(dl, u, rho))));
  }
};

double channel_rhs(const StinespringDilation& dl, const DensityMatrix& rho) {
  const auto& h = dl.total_hamiltonian;
  if (h.level_count() < 2) return 0.0;
  return 2.0 * (1.0 - b_coefficient(h.levels, dl.duration)) * c_half(dl.embed(rho), h.projectors);
}

}  // namespace

DensityMatrix apply_dilation(const StinespringDilation& dilation, const DensityMatrix& rho) {
  return DensityMatrix::trusted(channel_output(dilation, dilation.unitary(), rho));
}

DensityMatrix permuted_channel_apply(const StinespringDilation& dilation, std::span<const int> s,
                                     const DensityMatrix& rho) {
  return DensityMatrix::trusted(
      channel_output(dilation, permuted_propagator(dilation.total_hamiltonian, s, dilation.duration), rho));
}

ChannelBound channel_average_bound(const StinespringDilation& dilation, const DensityMatrix& rho, std::size_t cap,
                                   int jobs) {
  require_within_cap(dilation.total_hamiltonian.level_count(), cap);
  const Matrix sqrt_rho = matrix_sqrt_psd(rho);
  ChannelBound b;
  b.lhs = permutation_average(dilation.total_hamiltonian.level_count(), ChannelDistanceTerm{dilation, rho, sqrt_rho},
                              jobs);
  b.rhs = channel_rhs(dilation, rho);
  return b;
}

ChannelBound channel_average_bound_serial(const StinespringDilation& dilation, const DensityMatrix& rho,
                                          std::size_t cap) {
  require_within_cap(dilation.total_hamiltonian.level_count(), cap);
  const Matrix sqrt_rho = matrix_sqrt_psd(rho);
  ChannelBound b;
  b.lhs = permutation_average_serial(dilation.total_hamiltonian.level_count(),
                                     ChannelDistanceTerm{dilation, rho, sqrt_rho});
  b.rhs = channel_rhs(dilation, rho);
  return b;
}

bool is_unitary_channel(const KrausChannel& channel, double tol) {
  channel.validate();
  if (channel.dim_in() != channel.dim_out()) return false;
  const auto n = channel.dim_in() * channel.dim_out();
  Matrix choi = Matrix::Zero(n, n);
  for (const auto& k : channel.operators) {
    const Vector v = k.reshaped();
    choi += v * v.adjoint();
  }
  const auto eig = hermitian_eig(choi);
  const double top = eig.values.maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values[i] > tol * top) ++rank;
  return rank == 1;
}

EqualityGapReport equality_gap_analysis(const KrausChannel& channel, const PureState& psi, double tol) {
  const DensityMatrix rho = psi.density();
  const DensityMatrix out = apply_kraus(channel, rho);
  const StinespringDilation dl = dilate(channel);
  const DensityMatrix joint = dl.embed(rho);
  const Matrix u = dl.unitary();
  Matrix evolved = u * joint.matrix() * u.adjoint();
  evolved = 0.5 * (evolved + evolved.adjoint());

  EqualityGapReport r;
  r.system_distance = hellinger(out, rho);
  r.dilated_distance = hellinger(DensityMatrix::trusted(std::move(evolved)), joint);
  r.gap = r.dilated_distance - r.system_distance;
  r.witness = psi.amplitudes().dot(out.matrix() * psi.amplitudes()).real();
  r.unitary_channel = is_unitary_channel(channel);
  r.equality_admissible = r.unitary_channel || std::abs(r.witness) <= tol;
  return r;
}

}  // namespace cohspeed
