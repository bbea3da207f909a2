#pragma once

// Channels in operator-sum and Stinespring form.
//
// A dilation stores a Hamiltonian H on system (x) environment with
// U = e^{-iHT}. Permuting H's level energies over its eigenspaces gives the
// channel family Phi_s(rho) = Tr_E(e^{-iH_s T} rho (x) |e0><e0| e^{iH_s T}).

#include <string>
#include <vector>

#include "cohspeed/linalg.hpp"
#include "cohspeed/permutation_average.hpp"

namespace cohspeed {

struct KrausChannel {
  std::vector<Matrix> operators;  // each d_out x d_in
  std::string label;

  Eigen::Index dim_in() const { return operators.front().cols(); }
  Eigen::Index dim_out() const { return operators.front().rows(); }

  /// max |sum_j K_j^dag K_j - I|.
  double completeness_residual() const;
  /// Throws DimensionMismatch or IncompleteKraus.
  void validate(double tol = kDefaultTol.recon) const;
};

DensityMatrix apply_kraus(const KrausChannel& channel, const DensityMatrix& rho);

/// Kraus channel with rank-1 projectors onto the basis columns.
KrausChannel dephasing_channel(const Matrix& basis);
KrausChannel identity_channel(int d);
KrausChannel unitary_channel(const Matrix& u);
KrausChannel amplitude_damping_channel(double gamma);

/// K0 = |1><0|/sqrt2, K1 = |2><0|/sqrt2, K2 = |1><1|, K3 = |2><2| on C^3:
/// sends |0> to a state orthogonal to it while being nonunitary.
KrausChannel orthogonalizing_qutrit_channel();

struct StinespringDilation {
  SpectralHamiltonian total_hamiltonian;
  int sys_dim = 0;
  int env_dim = 0;
  Vector env_state;  // unit vector in C^{env_dim}
  double duration = 1.0;

  Matrix unitary() const { return unitary_exp(total_hamiltonian, duration); }
  /// rho (x) |e0><e0|.
  DensityMatrix embed(const DensityMatrix& rho) const;
};

/// Hamiltonian from the principal logarithm of U (eigenphases in (-pi, pi]),
/// so that U = e^{-iH duration}.
StinespringDilation dilation_from_unitary(const Matrix& u, int sys_dim, int env_dim, double duration = 1.0,
                                          double tol_degen = kDefaultTol.degen);

/// Isometry V|psi> = sum_j K_j|psi> (x) |j>, completed to a unitary on the
/// orthogonal complement by Gram-Schmidt. env_dim = 0 picks the Kraus count.
StinespringDilation dilate(const KrausChannel& channel, int env_dim = 0);

DensityMatrix apply_dilation(const StinespringDilation& dilation, const DensityMatrix& rho);

DensityMatrix permuted_channel_apply(const StinespringDilation& dilation, std::span<const int> s,
                                     const DensityMatrix& rho);

struct ChannelBound {
  double lhs = 0.0;  // (1/M!) sum_s D(Phi_s(rho), rho)
  double rhs = 0.0;  // 2 (1 - B(T)) C(rho (x) |e0><e0|) over total-H eigenspaces
};

/// Permutation-averaged channel distance and its coherence bound.
/// Throws TooManyLevels when the total Hamiltonian has more than `cap` levels.
ChannelBound channel_average_bound(const StinespringDilation& dilation, const DensityMatrix& rho,
                                   std::size_t cap = kBruteForceCap, int jobs = 0);
ChannelBound channel_average_bound_serial(const StinespringDilation& dilation, const DensityMatrix& rho,
                                          std::size_t cap = kBruteForceCap);

struct EqualityGapReport {
  double system_distance = 0.0;    // D(Phi(rho), rho)
  double dilated_distance = 0.0;   // D(U rho(x)e0 U^dag, rho(x)e0)
  double gap = 0.0;                // dilated - system, >= 0 by data processing
  double witness = 0.0;            // <psi|Phi(rho)|psi>
  bool unitary_channel = false;
  /// Identity-permutation equality is possible only for unitary channels or a zero witness.
  bool equality_admissible = false;
};

/// Identity-permutation equality analysis for a pure input |psi>.
EqualityGapReport equality_gap_analysis(const KrausChannel& channel, const PureState& psi, double tol = 1e-9);

/// True iff the Choi matrix has rank one (the channel is a unitary conjugation).
bool is_unitary_channel(const KrausChannel& channel, double tol = 1e-9);

}  // namespace cohspeed
