#include "linesol/eos.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "linesol/numerics.hpp"

using namespace linesol::eos;

TEST_CASE("PressureLaw validation") {
  CHECK_NOTHROW(PressureLaw::make({1.0, 1.4, 2.0}));
  CHECK_NOTHROW(PressureLaw::make({2.0}, {0.5}));
  CHECK_THROWS_AS(PressureLaw::make({}), std::invalid_argument);
  CHECK_THROWS_AS(PressureLaw::make({0.9}), std::invalid_argument);
  CHECK_THROWS_AS(PressureLaw::make({1.4, 1.4}), std::invalid_argument);
  CHECK_THROWS_AS(PressureLaw::make({2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PressureLaw::make({1.0, 2.0}, {1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PressureLaw::make({2.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PressureLaw::make({2.0}, {-1.0}), std::invalid_argument);

  auto defaulted = PressureLaw::make({1.0, 3.0});
  CHECK(defaulted.weights.size() == 2);
  CHECK(defaulted.weights[0] == 1.0);
  CHECK(defaulted.weights[1] == 1.0);
}

TEST_CASE("pressure_tilde closed forms") {
  auto two_term = PressureLaw::make({1.0, 2.0});
  // rho + rho^2 at rho = 2 -> 6.
  CHECK(pressure_tilde(two_term, 2.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(pressure_tilde(two_term, 0.0) == 0.0);

  auto weighted = PressureLaw::make({1.4, 2.0}, {2.0, 0.5});
  const double rho = 1.7;
  CHECK(pressure_tilde(weighted, rho) ==
        doctest::Approx(2.0 * std::pow(rho, 1.4) + 0.5 * rho * rho)
            .epsilon(1e-15));
  CHECK_THROWS_AS(pressure_tilde(two_term, -0.1), std::invalid_argument);
}

TEST_CASE("pressure factorizes exactly through exp(S)") {
  auto law = PressureLaw::make({1.4, 2.0}, {1.0, 0.5});
  for (double rho : {0.3, 1.0, 2.7}) {
    for (double S : {-1.0, 0.0, 0.8}) {
      CHECK(pressure(law, rho, S) ==
            std::exp(S) * pressure_tilde(law, rho));
    }
  }
  // S = 0 reduces to the entropy-free factor bit-for-bit.
  CHECK(pressure(law, 1.3, 0.0) == pressure_tilde(law, 1.3));
}

TEST_CASE("dpressure_drho matches finite differences and stays positive") {
  auto law = PressureLaw::make({1.0, 1.4, 2.0}, {0.7, 1.2, 0.4});
  for (double rho : {0.2, 0.9, 1.6, 3.1}) {
    const double fd = linesol::numerics::central_diff(
        [&](double r) { return pressure_tilde(law, r); }, rho, 1e-5, 1);
    CHECK(dpressure_tilde_drho(law, rho) ==
          doctest::Approx(fd).epsilon(1e-8));
    CHECK(dpressure_tilde_drho(law, rho) > 0.0);
    CHECK(dpressure_drho(law, rho, 0.7) ==
          doctest::Approx(std::exp(0.7) * dpressure_tilde_drho(law, rho))
              .epsilon(1e-15));
  }
  // At the vacuum edge only a linear term can contribute slope.
  CHECK(dpressure_tilde_drho(PressureLaw::make({1.0, 2.0}), 0.0) == 1.0);
  CHECK(dpressure_tilde_drho(PressureLaw::make({1.4}), 0.0) == 0.0);
}

TEST_CASE("pressure_tilde is strictly monotone for positive density") {
  auto law = PressureLaw::make({1.0, 2.5}, {0.3, 2.0});
  double prev = pressure_tilde(law, 0.0);
  for (int i = 1; i <= 40; ++i) {
    const double cur = pressure_tilde(law, 0.1 * i);
    CHECK(cur > prev);
    prev = cur;
  }
}
