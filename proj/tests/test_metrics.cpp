#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cohspeed/metrics.hpp"
#include "oracle.hpp"

using namespace cohspeed;

TEST_CASE("hellinger against the oracle, symmetry and zero distance") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const int d = rng.integer(2, 6);
    const Matrix a = rng.density(d, rng.integer(1, d));
    const Matrix b = rng.density(d, rng.integer(1, d));
    const DensityMatrix ra{a};
    const DensityMatrix rb{b};
    CHECK(std::abs(hellinger(ra, rb) - oracle::hellinger(a, b)) < 1e-9);
    CHECK(std::abs(hellinger(ra, rb) - hellinger(rb, ra)) < 1e-12);
    CHECK(hellinger(ra, ra) < 1e-12);
    CHECK(hellinger(ra, rb) >= 0.0);
    CHECK(hellinger(ra, rb) <= 2.0);
  }
}

TEST_CASE("orthogonal pure states sit at maximal distance") {
  Vector e0 = Vector::Unit(3, 0);
  Vector e2 = Vector::Unit(3, 2);
  const auto a = PureState{e0}.density();
  const auto b = PureState{e2}.density();
  CHECK(hellinger(a, b) == doctest::Approx(2.0));
  CHECK(fidelity(a, b) == doctest::Approx(0.0));
  CHECK(bures_angle(a, b) == doctest::Approx(std::numbers::pi / 2));
  CHECK(bures_angle(PureState{e0}, PureState{e2}) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("fidelity of pure states is the squared overlap") {
  oracle::Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = rng.integer(2, 6);
    const PureState a{rng.state(d)};
    const PureState b{rng.state(d)};
    const double ov = std::norm(a.amplitudes().dot(b.amplitudes()));
    CHECK(std::abs(fidelity(a.density(), b.density()) - ov) < 1e-9);
    CHECK(std::abs(bures_angle(a, b) - std::acos(std::sqrt(ov))) < 1e-7);
    CHECK(std::abs(bures_angle(a.density(), b.density()) - bures_angle(a, b)) < 1e-6);
  }
}

TEST_CASE("pure-state Bures angle keeps small-angle precision") {
  Vector a(2);
  a << 1.0, 0.0;
  const double th = 1e-9;
  Vector b(2);
  b << std::cos(th), std::sin(th);
  CHECK(bures_angle(PureState{a}, PureState{b}) == doctest::Approx(th).epsilon(1e-9));
}

TEST_CASE("data processing under partial trace") {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix x = rng.density(4, rng.integer(1, 4));
    const Matrix y = rng.density(4, rng.integer(1, 4));
    const double outer = hellinger(DensityMatrix{x}, DensityMatrix{y});
    const double inner = hellinger(partial_trace(DensityMatrix{x}, 2, 2, Subsystem::Environment),
                                   partial_trace(DensityMatrix{y}, 2, 2, Subsystem::Environment));
    CHECK(inner <= outer + 1e-10);
  }
}

TEST_CASE("qsl bounds on the qubit orthogonalization") {
  Vector plus(2);
  plus << 1.0, 1.0;
  const PureState psi0 = PureState::normalized(plus);
  Eigen::VectorXd lam(2);
  lam << 0.0, 1.0;
  const auto h = spectral_projectors(Matrix(lam.cast<Complex>().asDiagonal()));
  Vector minus(2);
  minus << 1.0, -1.0;
  const auto q = qsl_bounds(psi0, h, PureState::normalized(minus));
  REQUIRE(q.mt_time.has_value());
  REQUIRE(q.ml_time.has_value());
  CHECK(q.bures_angle == doctest::Approx(std::numbers::pi / 2));
  CHECK(q.energy_stddev == doctest::Approx(0.5));
  CHECK(q.mean_energy == doctest::Approx(0.5));
  CHECK(*q.mt_time == doctest::Approx(std::numbers::pi));
  CHECK(*q.ml_time == doctest::Approx(std::numbers::pi));
}

TEST_CASE("qsl bounds are absent for an eigenstate") {
  const PureState e1{Vector::Unit(2, 1)};
  Eigen::VectorXd lam(2);
  lam << 0.0, 1.0;
  const auto h = spectral_projectors(Matrix(lam.cast<Complex>().asDiagonal()));
  const auto q = qsl_bounds(e1, h, e1);
  CHECK_FALSE(q.mt_time.has_value());
  CHECK(q.ml_time.has_value());
  const auto ground = qsl_bounds(PureState{Vector::Unit(2, 0)}, h, PureState{Vector::Unit(2, 0)});
  CHECK_FALSE(ground.ml_time.has_value());
}
