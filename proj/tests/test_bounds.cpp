#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qms/bounds.hpp"
#include "qms/protocol.hpp"

using namespace qms;
using namespace qms::bounds;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("cramer_rao") {
  const double t = 7.3;
  CHECK(cramer_rao(t * t) == doctest::Approx(1.0 / t).epsilon(1e-14));
  const double gamma = 0.4;
  CHECK(cramer_rao(t / (2 * gamma)) ==
        doctest::Approx(std::sqrt(2 * gamma / t)).epsilon(1e-14));
  CHECK(cramer_rao(1.0) == 1.0);
  CHECK_THROWS_AS(cramer_rao(0.0), ValidationError);
  CHECK_THROWS_AS(cramer_rao(-1.0), ValidationError);
}

TEST_CASE("dephasing_qfi_bound") {
  // e^{-1}/(1 - e^{-1}) * 10
  const double expected = std::exp(-1.0) / (1 - std::exp(-1.0)) * 10;
  CHECK(dephasing_qfi_bound(10, 1.0, 0.5) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(dephasing_qfi_bound(10, 1.0, 0.5) ==
        doctest::Approx(5.81977).epsilon(1e-5));
  CHECK(dephasing_qfi_bound(0, 1.0, 0.5) == 0.0);
  CHECK_THROWS_AS(dephasing_qfi_bound(10, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(dephasing_qfi_bound(10, 0.0, 0.5), ValidationError);

  // tau -> 0 with T = M*tau fixed approaches T/(2*gamma) from below
  const double big_t = 4.0, gamma = 0.7;
  const double envelope = fundamental_dephasing_bound(big_t, gamma);
  double prev = 0;
  for (int m : {1, 2, 4, 16, 256, 65536}) {
    const double f = dephasing_qfi_bound(m, big_t / m, gamma);
    CHECK(f <= envelope + 1e-12);
    CHECK(f >= prev - 1e-12); // monotone in the splitting
    prev = f;
  }
  CHECK(prev == doctest::Approx(envelope).epsilon(1e-4));
}

TEST_CASE("fundamental_dephasing_bound") {
  CHECK(fundamental_dephasing_bound(10.0, 0.5) == doctest::Approx(10.0));
  CHECK(fundamental_dephasing_bound(5.0, 0.5) <
        fundamental_dephasing_bound(6.0, 0.5));
  CHECK_THROWS_AS(fundamental_dephasing_bound(0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(fundamental_dephasing_bound(1.0, 0.0), ValidationError);
}

TEST_CASE("query-count lower bounds") {
  CHECK(noiseless_query_bound(100, kPi) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(noiseless_query_bound(1, 2.0) == doctest::Approx(kPi / 8).epsilon(1e-12));
  CHECK_THROWS_AS(noiseless_query_bound(0, 1.0), ValidationError);
  CHECK_THROWS_AS(noiseless_query_bound(4, 0.0), ValidationError);

  CHECK(dephasing_query_bound(8, kPi, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // linear in N and gamma
  CHECK(dephasing_query_bound(16, 1.2, 0.3) ==
        doctest::Approx(2 * dephasing_query_bound(8, 1.2, 0.3)).epsilon(1e-12));
  CHECK(dephasing_query_bound(8, 1.2, 0.6) ==
        doctest::Approx(2 * dephasing_query_bound(8, 1.2, 0.3)).epsilon(1e-12));

  CHECK(temme_bound(8, kPi, 1.0) ==
        doctest::Approx(16.0 / (1 + 4 * kPi * kPi)).epsilon(1e-12));
  CHECK(temme_bound(8, kPi, 1.0) == doctest::Approx(0.39524).epsilon(1e-4));
  CHECK(temme_bound(8, 1.0, 1e-12) < 1e-10);
  CHECK(temme_bound(8, 1.0, 1e12) < 1e-10);

  // the dephasing bound dominates on a log grid: pi^2 (g^2 + 4 w^2) >= 16 w^2
  for (double g = 1e-3; g <= 1e3 + 1e-9; g *= 10)
    for (double w = 1e-3; w <= 1e3 + 1e-9; w *= 10)
      CHECK(dephasing_query_bound(5, w, g) >= temme_bound(5, w, g) - 1e-15);
}

TEST_CASE("noiseless Grover meets its own bound") {
  // N = 4 succeeds exactly at T = 1 query, above the bound pi/(4*pi)*2 = 0.5
  CHECK(discrete_grover(4, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(1.0 >= noiseless_query_bound(4, kPi));
}

TEST_CASE("distance_lower_bound") {
  CHECK(distance_lower_bound(4) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(distance_lower_bound(2) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK_THROWS_AS(distance_lower_bound(1), ValidationError);

  // Nπ/4 <= T*sqrt(N)*ω forces T >= (π/4ω)*sqrt(N), checked on a grid
  for (int n : {2, 4, 16, 100})
    for (double w : {0.5, 1.0, kPi}) {
      const double t_min = noiseless_query_bound(n, w);
      CHECK(time_way_distance_bound(t_min, n, w) >=
            distance_lower_bound(n) - 1e-12);
      CHECK(time_way_distance_bound(0.99 * t_min, n, w) <
            distance_lower_bound(n));
    }
}

TEST_CASE("frequency_way_distance_bound") {
  CHECK(frequency_way_distance_bound(1.0, 1.0, 0.5, true) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(frequency_way_distance_bound(1.0, 1.0, 0.5, false, 6) ==
        doctest::Approx(3.0).epsilon(1e-14));
  // scales as sqrt(T)
  CHECK(frequency_way_distance_bound(4.0, 1.0, 0.5, true) ==
        doctest::Approx(2 * frequency_way_distance_bound(1.0, 1.0, 0.5, true))
            .epsilon(1e-14));
  CHECK_THROWS_AS(frequency_way_distance_bound(1.0, 1.0, 0.0, true),
                  ValidationError);

  // generic linear-QFI hook reproduces the dephasing case at rate 1/(2*gamma)
  const double g = 0.3, t = 2.5, w = 1.1;
  CHECK(linear_qfi_distance_bound(t, w, 1 / (2 * g)) ==
        doctest::Approx(frequency_way_distance_bound(t, w, g, true))
            .epsilon(1e-12));
}

TEST_CASE("crossover_scan") {
  std::vector<int> ns{2, 4, 8, 16, 32, 64, 128, 256};
  const double w = 1.0, g = 0.2;
  const auto rows = crossover_scan(ns, w, g);
  REQUIRE(rows.size() == ns.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == ns[i]);
    CHECK(rows[i].noiseless >= 0);
    CHECK(rows[i].dephasing >= 0);
    CHECK(rows[i].temme >= 0);
    if (i > 0) {
      CHECK(rows[i].noiseless > rows[i - 1].noiseless);
      CHECK(rows[i].dephasing > rows[i - 1].dephasing);
      // linear/linear: the dephasing/temme ratio is constant in N
      CHECK(rows[i].dephasing / rows[i].temme ==
            doctest::Approx(rows[0].dephasing / rows[0].temme).epsilon(1e-12));
    }
  }
  // the linear-in-N dephasing bound overtakes the sqrt(N) noiseless bound at
  // N* = (2 omega / (pi gamma))^2; verify the crossover lands there
  const double n_star = std::pow(2 * w / (kPi * g), 2);
  for (const auto& row : rows) {
    if (row.n > n_star * 1.05) CHECK(row.dephasing > row.noiseless);
    if (row.n < n_star * 0.95) CHECK(row.dephasing < row.noiseless);
  }
}

TEST_CASE("bounds are pure functions (bit-identical repeats)") {
  CHECK(dephasing_qfi_bound(7, 0.8, 0.3) == dephasing_qfi_bound(7, 0.8, 0.3));
  CHECK(temme_bound(13, 2.2, 0.9) == temme_bound(13, 2.2, 0.9));
  CHECK(frequency_way_distance_bound(3.3, 1.7, 0.2, false, 9) ==
        frequency_way_distance_bound(3.3, 1.7, 0.2, false, 9));
}

TEST_CASE("BoundReport::measure") {
  BoundReport r;
  r.bound_name = "demo";
  r.bound_value = 1.0;
  r.measure(2.0, BoundReport::Direction::LowerBound);
  REQUIRE(r.satisfied.has_value());
  CHECK(*r.satisfied);
  CHECK(*r.margin == doctest::Approx(1.0));

  BoundReport u;
  u.bound_value = 1.0;
  u.measure(2.0, BoundReport::Direction::UpperBound);
  CHECK_FALSE(*u.satisfied);

  // slack: measurements within 1e-9 of the bound count as satisfied
  BoundReport s;
  s.bound_value = 1.0;
  s.measure(1.0 - 5e-10, BoundReport::Direction::LowerBound);
  CHECK(*s.satisfied);
}
