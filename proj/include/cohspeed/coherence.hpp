#pragma once

// Coherence relative to an orthogonal decomposition {P_m}.
//
// The 1/2-affinity coherence is
//     C(rho) = 1 - sum_m Tr[(P_m sqrt(rho) P_m)^2],
// zero exactly on block-diagonal ("incoherent") states and equal to the
// smallest 1 - [Tr sqrt(rho) sqrt(sigma)]^2 over incoherent sigma.

#include "cohspeed/linalg.hpp"

namespace cohspeed {

/// Per-block weights Tr[(P_m sqrt(rho) P_m)^2]; they sum to 1 - C(rho).
RealVector block_affinity_weights(const Matrix& sqrt_rho, const OrthogonalDecomposition& p);

double c_half(const DensityMatrix& rho, const OrthogonalDecomposition& p);

/// Same measure when sqrt(rho) is already at hand.
double c_half_from_sqrt(const Matrix& sqrt_rho, const OrthogonalDecomposition& p);

/// The incoherent state attaining the minimum 1/2-affinity distance.
/// Blocks with weight below tol.psd are dropped.
DensityMatrix closest_incoherent(const DensityMatrix& rho, const OrthogonalDecomposition& p,
                                 const Tolerances& tol = kDefaultTol);

/// sum_m P_m rho P_m.
DensityMatrix dephase(const DensityMatrix& rho, const OrthogonalDecomposition& p);

/// l1 coherence: sum of |rho_ij| over i != j in the given orthonormal basis.
double c_l1(const DensityMatrix& rho, const Matrix& basis);

/// Populations ||P_m psi||^2 over the distinct levels of `h`.
RealVector coherence_vector(const PureState& psi, const SpectralHamiltonian& h);

/// True iff ||P_m psi|| = 1/sqrt(M) for every block.
bool is_maximally_coherent(const PureState& psi, const OrthogonalDecomposition& p, double tol = 1e-9);

/// True iff every projector of `p` is a sum of projectors of `q` (q refines p).
bool is_refinement(const OrthogonalDecomposition& q, const OrthogonalDecomposition& p, double tol = 1e-8);

}  // namespace cohspeed
