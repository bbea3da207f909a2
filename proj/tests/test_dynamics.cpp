#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cohspeed/dynamics.hpp"
#include "cohspeed/metrics.hpp"
#include "oracle.hpp"

using namespace cohspeed;

TEST_CASE("speed identity on random and degenerate Hamiltonians") {
  oracle::Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = rng.integer(2, 8);
    Matrix h = rng.hermitian(d);
    if (trial % 2 == 1) {
      Eigen::VectorXd lam(d);
      for (int i = 0; i < d; ++i) lam[i] = std::floor(rng.uniform(0.0, 3.0));
      const Matrix q = rng.unitary(d);
      h = q * lam.cast<Complex>().asDiagonal() * q.adjoint();
    }
    const auto sh = spectral_projectors(h);
    const PureState psi{rng.state(d)};
    CHECK(std::abs(instantaneous_speed(psi, sh) - std::sqrt(2.0) * energy_uncertainty(psi, sh)) < 1e-10);
  }
}

TEST_CASE("speed matrix is symmetric with zero trace") {
  oracle::Rng rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = speed_matrix(spectral_projectors(rng.hermitian(rng.integer(2, 6))));
    CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.trace() == 0.0);
  }
}

TEST_CASE("eigenstates have zero speed") {
  oracle::Rng rng(63);
  const auto sh = spectral_projectors(rng.hermitian(4));
  const PureState e{Vector(sh.eigenvectors.col(2))};
  CHECK(instantaneous_speed(e, sh) < 1e-7);
}

TEST_CASE("evolution under a constant Hamiltonian matches the oracle") {
  oracle::Rng rng(64);
  const Matrix h = rng.hermitian(3);
  const Vector v0 = rng.state(3);
  const auto tr = evolve(PureState{v0}, constant_path(h, uniform_grid(0.0, 2.0, 400)));
  const Vector expected = oracle::propagator(h, 2.0) * v0;
  CHECK((tr.states.back().amplitudes() - expected).norm() < 1e-10);
  CHECK(tr.speeds.size() == tr.times.size());
  for (std::size_t k = 0; k < tr.speeds.size(); ++k)
    CHECK(std::abs(tr.speeds[k] - std::sqrt(2.0) * tr.uncertainties[k]) < 1e-10);
}

TEST_CASE("grid coarseness guard") {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 10.0;
  const PureState psi{Vector::Unit(2, 0)};
  CHECK_THROWS_AS(evolve(psi, constant_path(h, uniform_grid(0.0, 1.0, 5))), Error);
  const auto tr = evolve(psi, constant_path(h, uniform_grid(0.0, 1.0, 50)));
  CHECK_FALSE(tr.warnings.empty());
  const auto fine = evolve(psi, constant_path(h, uniform_grid(0.0, 1.0, 1000)));
  CHECK(fine.warnings.empty());
}

TEST_CASE("default grid respects the phase target") {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 4.0;
  const auto g = default_grid([h](double) { return h; }, 0.0, 1.0);
  CHECK((g[1] - g[0]) * 4.0 <= 0.01 + 1e-15);
  CHECK(g.back() == doctest::Approx(1.0));
}

TEST_CASE("finite differences are second order for constant H") {
  oracle::Rng rng(65);
  const Matrix h = rng.hermitian(3);
  const PureState psi{rng.state(3)};
  const auto tr = evolve(psi, constant_path(h, uniform_grid(0.0, 0.1, 400)));
  const double v = tr.speeds[0];
  const double e1 = std::abs(finite_difference_speed(tr, 0, 40) - v);
  const double e2 = std::abs(finite_difference_speed(tr, 0, 20) - v);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK_THROWS_AS(finite_difference_speed(tr, 399, 2), Error);
}

TEST_CASE("qubit closed form and orthogonality time") {
  oracle::Rng rng(66);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector v = rng.state(2);
    const double l0 = rng.uniform(-2.0, 2.0);
    const double l1 = rng.uniform(-2.0, 2.0);
    const double t = rng.uniform(0.0, 6.0);
    Matrix u = Matrix::Zero(2, 2);
    u(0, 0) = std::exp(Complex(0.0, -l0 * t));
    u(1, 1) = std::exp(Complex(0.0, -l1 * t));
    const Matrix rho = v * v.adjoint();
    const double direct = oracle::hellinger(rho, u * rho * u.adjoint());
    CHECK(std::abs(qubit_closed_form(v[0], v[1], l0, l1, t) - direct) < 1e-7);
  }
  CHECK(qubit_closed_form(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0, 1.0, std::numbers::pi) ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(qubit_closed_form(1.0, 1.0, 0.0, 1.0, 1.0), Error);
}

TEST_CASE("linear path interpolates its endpoints") {
  const Matrix a = Matrix::Identity(2, 2);
  const Matrix b = -Matrix::Identity(2, 2);
  const auto p = linear_path(a, b, 0.0, 2.0, uniform_grid(0.0, 2.0, 4));
  CHECK(max_abs(p.sampler(1.0)) < 1e-15);
  CHECK(max_abs(p.sampler(2.0) - b) < 1e-15);
}
