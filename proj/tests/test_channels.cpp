#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "cohspeed/avgdist.hpp"
#include "cohspeed/channels.hpp"
#include "cohspeed/metrics.hpp"
#include "oracle.hpp"

using namespace cohspeed;

namespace {

KrausChannel random_channel(oracle::Rng& rng, int d, int n_kraus) {
  // Columns of a Haar isometry C^d -> C^d (x) C^n give the Kraus operators.
  const Matrix u = rng.unitary(d * n_kraus);
  KrausChannel ch{{}, "random"};
  for (int j = 0; j < n_kraus; ++j) {
    Matrix k(d, d);
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < d; ++i) k(a, i) = u(a * n_kraus + j, i);
    ch.operators.push_back(k);
  }
  return ch;
}

}  // namespace

TEST_CASE("built-in channels are complete and trace preserving") {
  oracle::Rng rng(51);
  const std::vector<KrausChannel> chans{dephasing_channel(rng.unitary(3)), identity_channel(3),
                                        unitary_channel(rng.unitary(3)), orthogonalizing_qutrit_channel(),
                                        random_channel(rng, 3, 2)};
  for (const auto& ch : chans) {
    CHECK(ch.completeness_residual() < 1e-12);
    for (int trial = 0; trial < 10; ++trial) {
      const auto out = apply_kraus(ch, DensityMatrix{rng.density(3, rng.integer(1, 3))});
      CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);
      CHECK(is_hermitian(out.matrix()));
      CHECK(hermitian_eig(out.matrix()).values.minCoeff() > -1e-10);
    }
  }
  CHECK(amplitude_damping_channel(0.3).completeness_residual() < 1e-12);
}

TEST_CASE("incomplete Kraus sets are rejected") {
  KrausChannel bad{{Matrix::Identity(2, 2) * 0.5}, "half"};
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(apply_kraus(bad, random_density(2, 2, 1)), Error);
}

TEST_CASE("dilation reproduces the channel") {
  oracle::Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = rng.integer(2, 3);
    const int n = rng.integer(1, 3);
    const auto ch = random_channel(rng, d, n);
    const auto dl = dilate(ch);
    CHECK(is_unitary(dl.unitary()));
    for (int k = 0; k < 5; ++k) {
      const DensityMatrix rho{rng.density(d, rng.integer(1, d))};
      CHECK(max_abs(apply_dilation(dl, rho).matrix() - apply_kraus(ch, rho).matrix()) < 1e-10);
      // Oracle: exponentiate the recovered Hamiltonian directly and trace out.
      const Matrix u = oracle::propagator(dl.total_hamiltonian.matrix(), dl.duration);
      const Matrix joint = dl.embed(rho).matrix();
      const Matrix out = oracle::trace_env(u * joint * u.adjoint(), d, dl.env_dim);
      CHECK(max_abs(out - apply_kraus(ch, rho).matrix()) < 1e-9);
    }
  }
  CHECK_THROWS_AS(dilate(orthogonalizing_qutrit_channel(), 2), Error);
}

TEST_CASE("identity permutation term equals the channel distance") {
  oracle::Rng rng(53);
  const auto ch = random_channel(rng, 2, 2);
  const auto dl = dilate(ch);
  const DensityMatrix rho{rng.density(2, 2)};
  Permutation id(dl.total_hamiltonian.level_count());
  std::iota(id.begin(), id.end(), 0);
  const auto via_perm = permuted_channel_apply(dl, id, rho);
  CHECK(std::abs(hellinger(via_perm, rho) - hellinger(apply_kraus(ch, rho), rho)) < 1e-10);
}

TEST_CASE("data processing holds for every permutation") {
  oracle::Rng rng(54);
  const auto dl = dilate(random_channel(rng, 2, 2));
  const DensityMatrix rho{rng.density(2, 2)};
  const DensityMatrix joint = dl.embed(rho);
  Permutation s(dl.total_hamiltonian.level_count());
  std::iota(s.begin(), s.end(), 0);
  do {
    const Matrix u = permuted_propagator(dl.total_hamiltonian, s, dl.duration);
    Matrix ev = u * joint.matrix() * u.adjoint();
    const double outer = hellinger(DensityMatrix::trusted(0.5 * (ev + ev.adjoint())), joint);
    CHECK(hellinger(permuted_channel_apply(dl, s, rho), rho) <= outer + 1e-10);
  } while (std::next_permutation(s.begin(), s.end()));
}

TEST_CASE("channel bound holds and serial matches parallel") {
  oracle::Rng rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    const auto dl = dilate(random_channel(rng, 2, 2));
    const DensityMatrix rho{rng.density(2, rng.integer(1, 2))};
    const auto b = channel_average_bound(dl, rho);
    const auto s = channel_average_bound_serial(dl, rho);
    CHECK(b.lhs <= b.rhs + 1e-9);
    CHECK(std::abs(b.lhs - s.lhs) < 1e-13);
    CHECK(b.rhs == s.rhs);
  }
}

TEST_CASE("orthogonalizing qutrit channel") {
  const auto ch = orthogonalizing_qutrit_channel();
  CHECK(ch.completeness_residual() <= 4 * std::numeric_limits<double>::epsilon());
  const PureState e0{Vector::Unit(3, 0)};
  const auto out = apply_kraus(ch, e0.density());
  Matrix expected = Matrix::Zero(3, 3);
  expected(1, 1) = 0.5;
  expected(2, 2) = 0.5;
  CHECK(max_abs(out.matrix() - expected) < 1e-15);
  const auto rep = equality_gap_analysis(ch, e0);
  CHECK(std::abs(rep.witness) < 1e-14);
  CHECK_FALSE(rep.unitary_channel);
  CHECK(rep.equality_admissible);
  CHECK(rep.gap >= -1e-10);
}

TEST_CASE("unitary channel detection") {
  oracle::Rng rng(56);
  CHECK(is_unitary_channel(unitary_channel(rng.unitary(3))));
  CHECK_FALSE(is_unitary_channel(dephasing_channel(Matrix::Identity(2, 2))));
  CHECK_FALSE(is_unitary_channel(amplitude_damping_channel(0.2)));
}
