#pragma once

// Average quantum distance over the level-permutation orbit of a Hamiltonian.
//
// For H = sum_i lambda_i P_i (M distinct levels) the orbit is
// { H_s = sum_i lambda_i P_{s(i)} : s in S_M } and
//     Sbar_t(rho) = (1/M!) sum_s D(rho, e^{-i H_s t} rho e^{i H_s t})
// with D the Hellinger distance. It equals 2 (1 - B(t)) C(rho), where
// B(t) = 2/(M(M-1)) sum_{m<n} cos((lambda_m - lambda_n) t) and C is the
// 1/2-affinity coherence w.r.t. {P_i}. A(t) is the same average over a
// nondegenerate spectrum.

#include <optional>
#include <span>
#include <utility>

#include "cohspeed/linalg.hpp"
#include "cohspeed/permutation_average.hpp"

namespace cohspeed {

/// H_s: level i's energy is attached to projector s(i).
SpectralHamiltonian permuted_hamiltonian(const SpectralHamiltonian& h, std::span<const int> s);

/// e^{-i H_s t} without rebuilding a SpectralHamiltonian.
Matrix permuted_propagator(const SpectralHamiltonian& h, std::span<const int> s, double t);

/// Exhaustive average; throws TooManyLevels when M > cap.
double avg_distance_bruteforce(const DensityMatrix& rho, const SpectralHamiltonian& h, double t,
                               std::size_t cap = kBruteForceCap, int jobs = 0);

/// Single-threaded reference for avg_distance_bruteforce.
double avg_distance_bruteforce_serial(const DensityMatrix& rho, const SpectralHamiltonian& h, double t,
                                      std::size_t cap = kBruteForceCap);

/// A(t) over d pairwise-distinct eigenvalues; throws DegenerateSpectrum otherwise.
double a_coefficient(std::span<const double> eigenvalues, double t, double tol_degen = kDefaultTol.degen);

/// B(t) over M >= 2 distinct levels; throws SingleLevel for M = 1.
double b_coefficient(std::span<const double> levels, double t);

struct AvgDistanceResult {
  double t = 0.0;
  std::optional<double> brute_force;
  double closed_form = 0.0;
  double coefficient = 1.0;  // B(t); equals A(t) for nondegenerate H
  double coherence = 0.0;
};

/// 2 (1 - B(t)) C(rho); the brute-force value is attached when M <= cap.
/// A single-level Hamiltonian yields coefficient 1 and distance 0.
AvgDistanceResult avg_distance_closed(const DensityMatrix& rho, const SpectralHamiltonian& h, double t,
                                      std::size_t cap = kBruteForceCap, int jobs = 0);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = A(t); rhs = d/(d-1) (|<phi_0|phi_t>|^2 - 1/d) for the maximally
/// coherent state with the given phases, evolved explicitly.
IdentitySides benchmark_overlap_check(std::span<const double> eigenvalues, std::span<const double> phases,
                                      double t);

/// lhs = Sbar_t(rho) (brute force when possible); rhs = 4 (1 - A(t)) / (d - 1) * C_l1(rho).
/// lhs <= rhs is not guaranteed: block-diagonal states such as three weighted
/// |+><+| blocks in d = 6 give lhs = 1.25 rhs.
IdentitySides l1_upper_bound_check(const DensityMatrix& rho, const SpectralHamiltonian& h, double t);

}  // namespace cohspeed
