#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qms/channels.hpp"
#include "qms/geometry.hpp"
#include "qms/random.hpp"
#include "support.hpp"

using namespace qms;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("dephasing damps off-diagonals and fixes diagonals") {
  const auto plus = DensityMatrix::fromPure(PureState::plus(1));

  // gamma*tau = ln 2 halves the coherence: 0.5 -> 0.25
  DephasingChannel half({2}, 0, std::log(2.0), 1.0);
  const auto damped = half.apply(plus);
  CHECK(damped.matrix()(0, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(damped.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));

  // gamma = 0 is the identity map
  DephasingChannel none({2}, 0, 0.0, 1.0);
  CHECK((none.apply(plus).matrix() - plus.matrix()).cwiseAbs().maxCoeff() == 0.0);

  // diagonal states are fixed points
  auto rng = make_rng(21, 0);
  Matrix diag = Matrix::Zero(4, 4);
  diag(0, 0) = 0.1; diag(1, 1) = 0.4; diag(2, 2) = 0.2; diag(3, 3) = 0.3;
  const auto rho_diag = DensityMatrix::fromMatrix(diag);
  DephasingChannel strong({4}, 0, 3.0, 2.0);
  CHECK((strong.apply(rho_diag).matrix() - diag).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dephasing equals the convex form eta*rho + (1-eta)*diag(rho)") {
  auto rng = make_rng(22, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const auto rho = random_density_matrix(5, rng);
    DephasingChannel ch({5}, 0, 0.8, 0.9);
    const double eta = ch.eta();
    Matrix expected = eta * rho.matrix();
    for (int i = 0; i < 5; ++i)
      expected(i, i) += (1 - eta) * rho.matrix()(i, i);
    CHECK((ch.apply(rho).matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("dephasing on one factor leaves the other untouched") {
  auto rng = make_rng(23, 0);
  const auto a = random_density_matrix(3, rng);
  const auto b = random_density_matrix(4, rng);
  const auto ab = tensor(a, b);
  DephasingChannel ch({3, 4}, 0, 1.0, 1.0);
  const auto out = ch.apply(ab);
  // marginal of the untouched factor is preserved
  CHECK((partial_trace(out, {1}, {3, 4}).matrix() - b.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  // sensing-diagonal blocks are intact
  for (int s = 0; s < 3; ++s)
    CHECK((out.matrix().block(4 * s, 4 * s, 4, 4) -
           ab.matrix().block(4 * s, 4 * s, 4, 4))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("complete positivity spot-check via channel (x) identity") {
  auto rng = make_rng(24, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density_matrix(8, rng); // 4 (x) 2 bipartite
    DephasingChannel ch({4, 2}, 0, 1.3, 0.8);
    // DensityMatrix construction validates PSD; must not throw
    CHECK_NOTHROW(ch.apply(rho));
  }
}

TEST_CASE("oracle unitary") {
  SchemeConfig cfg;
  cfg.n = 2; cfg.omega = kPi; cfg.tau = 1.0;
  const OracleUnitary u = sensing_oracle(1, cfg);

  // diagonal states commute with the diagonal oracle
  const auto mixed = DensityMatrix::maximallyMixed(2);
  CHECK((u.apply(mixed).matrix() - mixed.matrix()).cwiseAbs().maxCoeff() < 1e-15);

  // omega*tau = pi flips |+> to |->
  const auto plus = DensityMatrix::fromPure(PureState::plus(1));
  const auto flipped = u.apply(plus);
  CHECK(flipped.matrix()(0, 1).real() == doctest::Approx(-0.5).epsilon(1e-12));

  // unitarity and spectrum preservation on random states
  const Matrix um = u.toMatrix();
  CHECK((um.adjoint() * um - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  auto rng = make_rng(25, 0);
  SchemeConfig big; big.n = 6; big.omega = 0.7; big.tau = 1.3;
  const OracleUnitary u6 = sensing_oracle(4, big);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density_matrix(6, rng);
    const auto evolved = u6.apply(rho);
    const auto e1 = EigenDecomposition::of(rho);
    const auto e2 = EigenDecomposition::of(evolved);
    CHECK((e1.eigenvalues - e2.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("interrogation step reductions") {
  auto rng = make_rng(26, 0);
  SchemeConfig cfg;
  cfg.n = 4; cfg.omega = 1.1; cfg.tau = 0.6; cfg.gamma = 0.0;
  const auto rho = random_density_matrix(4, rng);

  // gamma = 0 reduces to the oracle alone
  const auto step0 = interrogation_step(2, cfg, rho);
  CHECK((step0.matrix() - sensing_oracle(2, cfg).apply(rho).matrix())
            .cwiseAbs().maxCoeff() < 1e-15);

  // omega = 0 reduces to dephasing alone
  SchemeConfig cfg2 = cfg;
  cfg2.omega = 0.0; cfg2.gamma = 0.7;
  const auto step1 = interrogation_step(2, cfg2, rho);
  CHECK((step1.matrix() - sensing_dephasing(cfg2).apply(rho).matrix())
            .cwiseAbs().maxCoeff() < 1e-15);

  // trace preservation
  SchemeConfig cfg3 = cfg;
  cfg3.gamma = 0.4;
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = random_density_matrix(4, rng);
    CHECK(std::abs(interrogation_step(3, cfg3, r).matrix().trace().real() - 1.0)
          < 1e-12);
  }

  // both maps are diagonal in the same basis, so the order is irrelevant
  Matrix forward = rho.matrix();
  sensing_oracle(2, cfg3).conjugateInPlace(forward);
  sensing_dephasing(cfg3).applyInPlace(forward);
  Matrix reversed = rho.matrix();
  sensing_dephasing(cfg3).applyInPlace(reversed);
  sensing_oracle(2, cfg3).conjugateInPlace(reversed);
  CHECK((forward - reversed).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("derivative propagation") {
  SchemeConfig cfg;
  cfg.n = 3; cfg.omega = 1.2; cfg.tau = 0.8; cfg.gamma = 0.5;
  const auto rho0 = DensityMatrix::fromPure(PureState::uniform(3));

  SUBCASE("first step formula at drho = 0") {
    const Matrix zero = Matrix::Zero(3, 3);
    auto [r1, d1] = step_with_derivative(2, cfg, rho0, zero);
    Matrix expected = rho0.matrix();
    sensing_oracle(2, cfg).conjugateInPlace(expected);
    expected = cplx(0, -cfg.tau) *
               sensing_projector_commutator(2, cfg.factor_dims(), expected);
    sensing_dephasing(cfg).applyInPlace(expected);
    CHECK((d1 - expected).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("three steps agree with central finite differences") {
    auto run3 = [&](double omega) {
      SchemeConfig c = cfg;
      c.omega = omega;
      DensityMatrix r = rho0;
      Matrix d = Matrix::Zero(3, 3);
      for (int k = 0; k < 3; ++k) {
        auto [rn, dn] = step_with_derivative(2, c, r, d);
        r = rn; d = dn;
      }
      return std::pair{r, d};
    };
    const auto [r, d] = run3(cfg.omega);
    const double eps = 1e-5 * std::max(1.0, std::abs(cfg.omega));
    const Matrix fd = (run3(cfg.omega + eps).first.matrix() -
                       run3(cfg.omega - eps).first.matrix()) /
                      (2 * eps);
    const double rel =
        (fd - d).cwiseAbs().maxCoeff() / d.cwiseAbs().maxCoeff();
    CHECK(rel < 1e-6);
  }

  SUBCASE("strong dephasing kills off-diagonal derivative components") {
    SchemeConfig hard = cfg;
    hard.gamma = 500.0;
    auto [r1, d1] = step_with_derivative(2, hard, rho0, Matrix::Zero(3, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(std::abs(d1(i, j)) < 1e-12);
  }
}

TEST_CASE("Bures distance is contractive under channels") {
  auto rng = make_rng(27, 0);
  SUBCASE("dephasing") {
    DephasingChannel ch({5}, 0, 0.9, 0.7);
    for (int trial = 0; trial < 20; ++trial) {
      const auto rho = random_density_matrix(5, rng);
      const auto sigma = random_density_matrix(5, rng);
      CHECK(bures_angle(ch.apply(rho), ch.apply(sigma)) <=
            bures_angle(rho, sigma) + 1e-10);
    }
  }
  SUBCASE("random Kraus channels") {
    for (int trial = 0; trial < 10; ++trial) {
      const KrausChannel ch(test::random_kraus(4, 3, rng));
      const auto rho = random_density_matrix(4, rng);
      const auto sigma = random_density_matrix(4, rng);
      CHECK(bures_angle(ch.apply(rho), ch.apply(sigma)) <=
            bures_angle(rho, sigma) + 1e-10);
    }
  }
}

TEST_CASE("KrausChannel validates completeness") {
  std::vector<Matrix> bad{0.5 * Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(KrausChannel{bad}, ValidationError);
}
