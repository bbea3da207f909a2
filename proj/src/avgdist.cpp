#include "cohspeed/avgdist.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cohspeed/coherence.hpp"
#include "cohspeed/metrics.hpp"

namespace cohspeed {

// ---------------------------------------------------------------------------
// Permutation helpers

std::uint64_t factorial(std::size_t m) {
  if (m > 20) throw Error(ErrorCode::TooManyLevels, "factorial overflows 64 bits");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= m; ++k) f *= k;
  return f;
}

Permutation unrank_permutation(std::size_t m, std::uint64_t rank) {
  if (rank >= factorial(m)) throw Error(ErrorCode::BadPermutation, "rank out of range");
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  Permutation s;
  s.reserve(m);
  for (std::size_t k = m; k > 0; --k) {
    const std::uint64_t block = factorial(k - 1);
    const auto idx = static_cast<std::size_t>(rank / block);
    rank %= block;
    s.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return s;
}

bool is_permutation_of(std::span<const int> s, std::size_t m) {
  if (s.size() != m) return false;
  std::vector<bool> seen(m, false);
  for (int v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= m || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

void require_within_cap(std::size_t m, std::size_t cap) {
  if (m > cap)
    throw Error(ErrorCode::TooManyLevels,
                std::to_string(m) + " levels exceed the brute-force cap of " + std::to_string(cap));
}

// ---------------------------------------------------------------------------

namespace {

void require_permutation(const SpectralHamiltonian& h, std::span<const int> s) {
  if (!is_permutation_of(s, h.level_count()))
    throw Error(ErrorCode::BadPermutation, "not a permutation of the " + std::to_string(h.level_count()) + " levels");
}

void require_dims(const DensityMatrix& rho, const SpectralHamiltonian& h) {
  if (rho.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian dimensions differ");
}

double cosine_average(std::span<const double> values, double t) {
  const std::size_t n = values.size();
  CompensatedSum acc;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = m + 1; k < n; ++k) acc.add(std::cos((values[m] - values[k]) * t));
  return 2.0 * acc.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

struct DistanceTerm {
  const DensityMatrix& rho;
  const Matrix& sqrt_rho;
  const SpectralHamiltonian& h;
  double t;

  double operator()(std::span<const int> s) const {
    const Matrix u = permuted_propagator(h, s, t);
    Matrix evolved = u * rho.matrix() * u.adjoint();
    evolved = 0.5 * (evolved + evolved.adjoint());
    return 2.0 * (1.0 - affinity_from_sqrt(sqrt_rho, psd_sqrt(evolved)));
  }
};

}  // namespace

SpectralHamiltonian permuted_hamiltonian(const SpectralHamiltonian& h, std::span<const int> s) {
  require_permutation(h, s);
  std::vector<int> inverse(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) inverse[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
  std::vector<double> values(static_cast<std::size_t>(h.dim()));
  for (std::size_t k = 0; k < values.size(); ++k)
    values[k] = h.levels[static_cast<std::size_t>(inverse[static_cast<std::size_t>(h.level_of[k])])];
  return spectral_from(values, h.eigenvectors);
}

Matrix permuted_propagator(const SpectralHamiltonian& h, std::span<const int> s, double t) {
  require_permutation(h, s);
  const auto& ps = h.projectors.projectors();
  Matrix u = Matrix::Zero(h.dim(), h.dim());
  for (std::size_t i = 0; i < s.size(); ++i)
    u += std::polar(1.0, -h.levels[i] * t) * ps[static_cast<std::size_t>(s[i])];
  return u;
}

double avg_distance_bruteforce(const DensityMatrix& rho, const SpectralHamiltonian& h, double t, std::size_t cap,
                               int jobs) {
  require_dims(rho, h);
  require_within_cap(h.level_count(), cap);
  const Matrix sqrt_rho = matrix_sqrt_psd(rho);
  return permutation_average(h.level_count(), DistanceTerm{rho, sqrt_rho, h, t}, jobs);
}

double avg_distance_bruteforce_serial(const DensityMatrix& rho, const SpectralHamiltonian& h, double t,
                                      std::size_t cap) {
  require_dims(rho, h);
  require_within_cap(h.level_count(), cap);
  const Matrix sqrt_rho = matrix_sqrt_psd(rho);
  return permutation_average_serial(h.level_count(), DistanceTerm{rho, sqrt_rho, h, t});
}

double a_coefficient(std::span<const double> eigenvalues, double t, double tol_degen) {
  if (eigenvalues.size() < 2) throw Error(ErrorCode::SingleLevel, "A(t) needs at least two eigenvalues");
  for (std::size_t m = 0; m < eigenvalues.size(); ++m)
    for (std::size_t k = m + 1; k < eigenvalues.size(); ++k)
      if (std::abs(eigenvalues[m] - eigenvalues[k]) <= tol_degen)
        throw Error(ErrorCode::DegenerateSpectrum, "A(t) requires pairwise distinct eigenvalues");
  return cosine_average(eigenvalues, t);
}

double b_coefficient(std::span<const double> levels, double t) {
  if (levels.size() < 2) throw Error(ErrorCode::SingleLevel, "trivial Hamiltonian: average distance is identically 0");
  return cosine_average(levels, t);
}

AvgDistanceResult avg_distance_closed(const DensityMatrix& rho, const SpectralHamiltonian& h, double t,
                                      std::size_t cap, int jobs) {
  require_dims(rho, h);
  AvgDistanceResult r;
  r.t = t;
  r.coherence = c_half(rho, h.projectors);
  r.coefficient = h.level_count() < 2 ? 1.0 : b_coefficient(h.levels, t);
  r.closed_form = 2.0 * (1.0 - r.coefficient) * r.coherence;
  if (h.level_count() <= cap) r.brute_force = avg_distance_bruteforce(rho, h, t, cap, jobs);
  return r;
}

IdentitySides benchmark_overlap_check(std::span<const double> eigenvalues, std::span<const double> phases, double t) {
  const auto d = static_cast<Eigen::Index>(eigenvalues.size());
  if (phases.size() != eigenvalues.size())
    throw Error(ErrorCode::DimensionMismatch, "one phase per eigenvalue is required");
  IdentitySides out;
  out.lhs = a_coefficient(eigenvalues, t);
  Vector phi0(d);
  Vector phit(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    phi0[j] = std::polar(1.0 / std::sqrt(static_cast<double>(d)), phases[static_cast<std::size_t>(j)]);
    phit[j] = std::polar(1.0, -eigenvalues[static_cast<std::size_t>(j)] * t) * phi0[j];
  }
  const double overlap2 = std::norm(phi0.dot(phit));
  const double dd = static_cast<double>(d);
  out.rhs = dd / (dd - 1.0) * (overlap2 - 1.0 / dd);
  return out;
}

IdentitySides l1_upper_bound_check(const DensityMatrix& rho, const SpectralHamiltonian& h, double t) {
  require_dims(rho, h);
  if (h.level_count() != static_cast<std::size_t>(h.dim()))
    throw Error(ErrorCode::DegenerateSpectrum, "the l1 bound is stated for nondegenerate Hamiltonians");
  const double a = a_coefficient(h.levels, t);
  const auto r = avg_distance_closed(rho, h, t);
  IdentitySides out;
  out.lhs = r.brute_force.value_or(r.closed_form);
  out.rhs = 4.0 * (1.0 - a) / static_cast<double>(h.dim() - 1) * c_l1(rho, h.eigenvectors);
  return out;
}

}  // namespace cohspeed
