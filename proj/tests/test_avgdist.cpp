#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "cohspeed/avgdist.hpp"
#include "cohspeed/coherence.hpp"
#include "oracle.hpp"

using namespace cohspeed;

namespace {

SpectralHamiltonian diag_hamiltonian(const std::vector<double>& lam, const Matrix& basis) {
  return spectral_from(lam, basis);
}

std::vector<double> random_levels(oracle::Rng& rng, int m) {
  std::vector<double> l;
  while (static_cast<int>(l.size()) < m) {
    const double x = rng.uniform(-3.0, 3.0);
    bool far = true;
    for (double y : l) far = far && std::abs(x - y) > 0.05;
    if (far) l.push_back(x);
  }
  std::sort(l.begin(), l.end());
  return l;
}

}  // namespace

TEST_CASE("permutation unranking enumerates S_M in lexicographic order") {
  for (std::size_t m = 1; m <= 5; ++m) {
    std::set<Permutation> seen;
    Permutation prev;
    for (std::uint64_t r = 0; r < factorial(m); ++r) {
      const Permutation s = unrank_permutation(m, r);
      CHECK(is_permutation_of(s, m));
      if (r > 0) CHECK(prev < s);
      prev = s;
      seen.insert(s);
    }
    CHECK(seen.size() == factorial(m));
  }
  CHECK_THROWS_AS(require_within_cap(9, kBruteForceCap), Error);
  CHECK_NOTHROW(require_within_cap(8, kBruteForceCap));
}

TEST_CASE("brute force matches the Heap's-algorithm oracle") {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = rng.integer(2, 4);
    const Matrix basis = rng.unitary(d);
    const auto lam = random_levels(rng, d);
    const auto h = diag_hamiltonian(lam, basis);
    const Matrix rho = rng.density(d, rng.integer(1, d));
    const double t = rng.uniform(0.0, 5.0);
    std::vector<int> groups(static_cast<std::size_t>(d));
    std::iota(groups.begin(), groups.end(), 0);
    const double expected = oracle::avg_distance(rho, lam, oracle::block_projectors(basis, groups), t);
    CHECK(std::abs(avg_distance_bruteforce(DensityMatrix{rho}, h, t) - expected) < 1e-9);
  }
}

TEST_CASE("parallel and serial kernels agree bit for bit across job counts") {
  oracle::Rng rng(42);
  const Matrix basis = rng.unitary(6);
  const auto h = diag_hamiltonian(random_levels(rng, 6), basis);
  const DensityMatrix rho{rng.density(6, 3)};
  const double a = avg_distance_bruteforce(rho, h, 0.7, kBruteForceCap, 1);
  const double b = avg_distance_bruteforce(rho, h, 0.7, kBruteForceCap, 3);
  const double s = avg_distance_bruteforce_serial(rho, h, 0.7);
  CHECK(a == b);
  CHECK(std::abs(a - s) < 1e-13);
}

TEST_CASE("closed form equals brute force, nondegenerate and degenerate") {
  oracle::Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = rng.integer(2, 5);
    const int m = rng.integer(2, d);
    auto lev = random_levels(rng, m);
    std::vector<double> lam(lev);
    while (static_cast<int>(lam.size()) < d) lam.push_back(lev[static_cast<std::size_t>(rng.integer(0, m - 1))]);
    const auto h = spectral_from(lam, rng.unitary(d));
    REQUIRE(static_cast<int>(h.level_count()) == m);
    const DensityMatrix rho{rng.density(d, rng.integer(1, d))};
    const double t = rng.uniform(0.0, 6.0);
    const auto r = avg_distance_closed(rho, h, t);
    REQUIRE(r.brute_force.has_value());
    CHECK(std::abs(*r.brute_force - r.closed_form) < 1e-9);
    CHECK(std::abs(r.coefficient - oracle::cosine_average(h.levels, t)) < 1e-14);
  }
}

TEST_CASE("coefficients and edge cases") {
  const std::vector<double> lam{0.0, 1.0};
  CHECK(a_coefficient(lam, 0.0) == doctest::Approx(1.0));
  CHECK(a_coefficient(lam, std::numbers::pi) == doctest::Approx(-1.0));
  const std::vector<double> dup{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(a_coefficient(dup, 0.3), Error);
  const std::vector<double> one{2.0};
  CHECK_THROWS_AS(a_coefficient(one, 0.3), Error);
  CHECK_THROWS_AS(b_coefficient(one, 0.3), Error);

  const auto flat = spectral_projectors(Matrix::Identity(3, 3));
  const auto r = avg_distance_closed(random_density(3, 3, 1), flat, 1.0);
  CHECK(r.coefficient == 1.0);
  CHECK(r.closed_form == 0.0);
}

TEST_CASE("qubit sweep of |+> follows 1 - cos t") {
  Vector plus(2);
  plus << 1.0, 1.0;
  const DensityMatrix rho = PureState::normalized(plus).density();
  const auto h = spectral_from(std::vector<double>{0.0, 1.0}, Matrix::Identity(2, 2));
  for (int k = 0; k <= 200; ++k) {
    const double t = k * std::numbers::pi / 100.0;
    const auto r = avg_distance_closed(rho, h, t);
    CHECK(std::abs(r.closed_form - (1.0 - std::cos(t))) < 1e-12);
    CHECK(std::abs(*r.brute_force - (1.0 - std::cos(t))) < 1e-12);
  }
}

TEST_CASE("permuted Hamiltonian keeps the level set") {
  oracle::Rng rng(44);
  const std::vector<double> lam{-1.0, -1.0, 0.5, 2.0};
  const auto h = spectral_from(lam, rng.unitary(4));
  const Permutation s{2, 0, 1};
  const auto hs = permuted_hamiltonian(h, s);
  CHECK(hs.levels == h.levels);
  CHECK(max_abs(unitary_exp(hs, 0.8) - permuted_propagator(h, s, 0.8)) < 1e-12);
  // Equal-rank blocks keep the full multiset.
  const auto eq = spectral_from(std::vector<double>{0.0, 0.0, 1.0, 1.0}, rng.unitary(4));
  const Permutation swap{1, 0};
  const auto es = permuted_hamiltonian(eq, swap);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(es.eigenvalues[i] == doctest::Approx(eq.eigenvalues[i]));
  CHECK_THROWS_AS(permuted_hamiltonian(h, Permutation{0, 0, 1}), Error);
}

TEST_CASE("coefficient is state independent") {
  oracle::Rng rng(45);
  const auto h = spectral_from(std::vector<double>{0.0, 0.7, 1.9}, rng.unitary(3));
  const DensityMatrix a{rng.density(3, 1)};
  const DensityMatrix b{rng.density(3, 3)};
  const double t = 1.3;
  const double ka = 1.0 - avg_distance_bruteforce(a, h, t) / (2.0 * c_half(a, h.projectors));
  const double kb = 1.0 - avg_distance_bruteforce(b, h, t) / (2.0 * c_half(b, h.projectors));
  CHECK(std::abs(ka - kb) < 1e-9);
}

TEST_CASE("maximally coherent states maximize the average distance") {
  oracle::Rng rng(46);
  const Matrix basis = rng.unitary(4);
  const auto h = spectral_from(std::vector<double>{0.0, 0.4, 1.1, 2.3}, basis);
  const double t = 0.9;
  const Vector phi = basis * Vector::Ones(4) / 2.0;
  const double top = avg_distance_bruteforce(PureState{phi}.density(), h, t);
  for (int trial = 0; trial < 50; ++trial)
    CHECK(avg_distance_bruteforce(DensityMatrix{rng.density(4, rng.integer(1, 4))}, h, t) <= top + 1e-12);
}

TEST_CASE("benchmark overlap identity and l1 bound on Ginibre draws") {
  oracle::Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = rng.integer(2, 6);
    const auto lam = random_levels(rng, d);
    std::vector<double> phases(static_cast<std::size_t>(d));
    for (auto& p : phases) p = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const auto sides = benchmark_overlap_check(lam, phases, rng.uniform(0.0, 10.0));
    CHECK(std::abs(sides.lhs - sides.rhs) < 1e-10);

    const auto h = spectral_from(lam, rng.unitary(d));
    const auto l1 = l1_upper_bound_check(DensityMatrix{rng.density(d, rng.integer(1, d))}, h, rng.uniform(0.0, 5.0));
    CHECK(l1.lhs <= l1.rhs + 1e-10);
  }
}

TEST_CASE("l1 bound fails for block-structured states") {
  Matrix rho = Matrix::Zero(6, 6);
  for (int b = 0; b < 3; ++b) rho.block(2 * b, 2 * b, 2, 2).setConstant(1.0 / 6.0);
  const std::vector<double> lam{0.0, 1.0, 2.5, 3.1, 4.7, 6.0};
  const auto h = spectral_from(lam, Matrix::Identity(6, 6));
  const double t = 1.3;
  const auto l1 = l1_upper_bound_check(DensityMatrix{rho}, h, t);
  // Sbar = 2(1 - A) / 2 and the l1 expression = 4(1 - A) / 5.
  const double a = a_coefficient(lam, t);
  CHECK(l1.lhs == doctest::Approx(1.0 - a).epsilon(1e-12));
  CHECK(l1.rhs == doctest::Approx(0.8 * (1.0 - a)).epsilon(1e-12));
  CHECK(l1.lhs > l1.rhs);
}
