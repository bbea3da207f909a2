#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cohspeed/linalg.hpp"
#include "oracle.hpp"

using namespace cohspeed;

TEST_CASE("density matrix validation") {
  Matrix m = Matrix::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(DensityMatrix{m});
  CHECK(DensityMatrix{m}.purity() == doctest::Approx(0.5));

  Matrix not_herm = m;
  not_herm(0, 1) = 0.1;
  try {
    DensityMatrix bad{not_herm};
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }

  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  try {
    DensityMatrix bad{neg};
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }

  try {
    DensityMatrix bad{Matrix(Matrix::Identity(2, 2))};
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
}

TEST_CASE("pure state normalization") {
  Vector v(2);
  v << 3.0, Complex(0.0, 4.0);
  const PureState p = PureState::normalized(v);
  CHECK(p.amplitudes().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(PureState{v}, Error);
  CHECK_THROWS_AS(PureState::normalized(Vector::Zero(3)), Error);
}

TEST_CASE("psd_sqrt agrees with SVD and Denman-Beavers oracles") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = rng.integer(2, 6);
    const int rank = rng.integer(1, d);
    const Matrix rho = rng.density(d, rank);
    const Matrix s = psd_sqrt(rho);
    CHECK(max_abs(s * s - rho) < 1e-12);
    CHECK(max_abs(s - oracle::sqrt_psd(rho)) < 1e-7);
    if (rank == d) CHECK(max_abs(s - oracle::sqrt_db(rho)) < 1e-8);
  }
}

TEST_CASE("unitary_exp agrees with scaled Taylor exponential") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = rng.integer(2, 6);
    const Matrix h = rng.hermitian(d);
    const double t = rng.uniform(-3.0, 3.0);
    const Matrix u = unitary_exp(spectral_projectors(h), t);
    CHECK(is_unitary(u));
    CHECK(max_abs(u - oracle::propagator(h, t)) < 1e-11);
  }
}

TEST_CASE("spectral projectors group degenerate levels") {
  oracle::Rng rng(13);
  const Matrix q = rng.unitary(5);
  Eigen::VectorXd lam(5);
  lam << -1.0, -1.0, 0.5, 2.0, 2.0;
  const Matrix h = q * lam.cast<Complex>().asDiagonal() * q.adjoint();
  const auto sh = spectral_projectors(h);
  REQUIRE(sh.level_count() == 3);
  CHECK(sh.levels[0] == doctest::Approx(-1.0));
  CHECK(sh.levels[1] == doctest::Approx(0.5));
  CHECK(sh.levels[2] == doctest::Approx(2.0));
  CHECK(sh.projectors.block_dims() == std::vector<int>{2, 1, 2});
  CHECK(max_abs(sh.matrix() - h) < 1e-12);
  Matrix sum = Matrix::Zero(5, 5);
  for (const auto& p : sh.projectors.projectors()) {
    CHECK(max_abs(p * p - p) < 1e-12);
    sum += p;
  }
  CHECK(max_abs(sum - Matrix::Identity(5, 5)) < 1e-12);
}

TEST_CASE("orthogonal decomposition rejects overlapping projectors") {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(OrthogonalDecomposition({p0, p1}), Error);
  Matrix p2 = Matrix::Zero(2, 2);
  p2(1, 1) = 1.0;
  CHECK_NOTHROW(OrthogonalDecomposition({p0, p2}));
}

TEST_CASE("partial trace matches explicit index loop") {
  oracle::Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int ds = rng.integer(2, 3);
    const int de = rng.integer(2, 3);
    const Matrix rho = rng.density(ds * de, ds * de);
    const auto red = partial_trace(DensityMatrix{rho}, ds, de, Subsystem::Environment);
    CHECK(max_abs(red.matrix() - oracle::trace_env(rho, ds, de)) < 1e-13);
  }
  const Matrix a = random_density(2, 2, 1).matrix();
  const Matrix b = random_density(3, 1, 2).matrix();
  const DensityMatrix ab{tensor(a, b)};
  CHECK(max_abs(partial_trace(ab, 2, 3, Subsystem::Environment).matrix() - a) < 1e-13);
  CHECK(max_abs(partial_trace(ab, 2, 3, Subsystem::System).matrix() - b) < 1e-13);
}

TEST_CASE("seeded generators are deterministic") {
  CHECK(max_abs(haar_random_unitary(4, 9) - haar_random_unitary(4, 9)) == 0.0);
  CHECK(is_unitary(haar_random_unitary(5, 3)));
  CHECK(max_abs(random_density(3, 2, 5).matrix() - random_density(3, 2, 5).matrix()) == 0.0);
  CHECK(max_abs(random_density(3, 2, 5).matrix() - random_density(3, 2, 6).matrix()) > 0.0);
  CHECK(is_hermitian(random_hermitian(4, 1)));
  CHECK(haar_random_state(6, 4).amplitudes().norm() == doctest::Approx(1.0));
}

TEST_CASE("compensated sum recovers small terms") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));
}
