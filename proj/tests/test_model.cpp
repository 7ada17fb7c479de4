#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gatom/model.hpp"

using namespace gatom;

namespace {
const AtomParams kParams{.omega = 120.0, .v = 1.3};  // Gamma = 1.69
}

TEST_CASE("coupling amplitude and decay rate convert both ways") {
  CHECK(kParams.gamma() == doctest::Approx(1.69).epsilon(1e-15));
  const AtomParams from_rate = AtomParams::from_gamma(1.69, 120.0);
  CHECK(from_rate.v == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(from_rate.omega == 120.0);
}

TEST_CASE("parameter validation rejects non-physical fields") {
  CHECK_THROWS_AS(AtomParams{}.validate(), std::invalid_argument);
  CHECK_THROWS_AS((AtomParams{.omega = -2.0, .v = 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((AtomParams{.omega = 2.0, .v = 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(AtomParams::from_gamma(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("geometry invariants: ordered legs starting at the origin") {
  CHECK_THROWS_AS(AtomGeometry({0.5, 1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(AtomGeometry({0.0, 1.0, 1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(AtomGeometry({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(AtomGeometry::two_point_phase(0.0, kParams), std::invalid_argument);
  CHECK_THROWS_AS(AtomGeometry::equally_spaced(0, 1.0, kParams), std::invalid_argument);

  const AtomGeometry geom = AtomGeometry::two_point_phase(2.0 * pi / 3.0, kParams);
  CHECK(geom.legs() == 2);
  CHECK(geom.phase(0) == 0.0);
  CHECK(geom.phase(1) == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-15));

  const AtomGeometry chain = AtomGeometry::equally_spaced(4, 0.7, kParams);
  CHECK(chain.legs() == 4);
  CHECK(chain.phase(3) == doctest::Approx(2.1).epsilon(1e-14));
}

TEST_CASE("two-leg rates at the reference phases") {
  const double gamma = kParams.gamma();
  struct Row {
    double beta1, shift, decay;
  };
  // (beta1, Lamb shift, decay): 0 -> (0, Gamma); pi/2 -> (Gamma/4, Gamma/2);
  // 2 pi/3 -> (sqrt(3) Gamma/8, Gamma/4); pi -> (0, 0).
  const Row table[] = {
      {0.0, 0.0, gamma},
      {0.5 * pi, 0.25 * gamma, 0.5 * gamma},
      {2.0 * pi / 3.0, std::sqrt(3.0) / 8.0 * gamma, 0.25 * gamma},
      {pi, 0.0, 0.0},
  };
  for (const auto& row : table) {
    CAPTURE(row.beta1);
    const EffectiveRates rates = effective_rates_two_point(row.beta1, kParams);
    CHECK(std::abs(rates.lamb_shift() - row.shift) < 1e-14 * gamma);
    CHECK(std::abs(rates.decay() - row.decay) < 1e-14 * gamma);
  }
}

TEST_CASE("n-leg rate sum reduces to the two-leg form at n = 2") {
  for (const double beta1 : {0.3, 1.2, 0.5 * pi, 2.0 * pi / 3.0, 2.9}) {
    CAPTURE(beta1);
    const AtomGeometry geom = AtomGeometry::two_point_phase(beta1, kParams);
    const EffectiveRates from_sum = effective_rates_n_point(geom, kParams);
    const EffectiveRates direct = effective_rates_two_point(beta1, kParams);
    CHECK(std::abs(from_sum.rate - direct.rate) < 1e-14 * kParams.gamma());
  }
}

TEST_CASE("a single leg recovers the bare rate regardless of spacing input") {
  const EffectiveRates rates = equal_spacing_rates(1, 2.2, kParams);
  CHECK(rates.rate == complexd(kParams.gamma(), 0.0));
  const AtomGeometry geom = AtomGeometry::equally_spaced(1, 0.0, kParams);
  const EffectiveRates from_sum = effective_rates_n_point(geom, kParams);
  CHECK(std::abs(from_sum.rate - rates.rate) < 1e-15 * kParams.gamma());
}

TEST_CASE("equal-spacing closed form matches the explicit double sum") {
  for (const int n : {2, 3, 5, 8}) {
    for (const double beta : {0.3, 1.1, 0.5 * pi, 2.5}) {
      CAPTURE(n);
      CAPTURE(beta);
      const AtomGeometry geom = AtomGeometry::equally_spaced(n, beta, kParams);
      const EffectiveRates from_sum = effective_rates_n_point(geom, kParams);
      const EffectiveRates closed = equal_spacing_rates(n, beta, kParams);
      CHECK(std::abs(from_sum.rate - closed.rate) < 1e-13 * kParams.gamma());
    }
  }
}

TEST_CASE("decay stays non-negative through interference zeros") {
  // n beta / 2 = pi is a perfect cancellation of the leg sum.
  const EffectiveRates rates = equal_spacing_rates(4, 0.5 * pi, kParams);
  CHECK(rates.decay() >= 0.0);
  CHECK(rates.decay() < 1e-30);
  const AtomGeometry geom = AtomGeometry::equally_spaced(4, 0.5 * pi, kParams);
  CHECK(effective_rates_n_point(geom, kParams).decay() >= 0.0);
}

TEST_CASE("alternating-phase chain: exact parity branch") {
  const double gamma = kParams.gamma();
  // Odd n couples at Gamma/n^2 bit-exactly, even n decouples bit-exactly.
  CHECK(equal_spacing_rates(3, pi, kParams).rate == complexd(gamma / 9.0, 0.0));
  CHECK(equal_spacing_rates(5, pi, kParams).rate == complexd(gamma / 25.0, 0.0));
  CHECK(equal_spacing_rates(4, pi, kParams).rate == complexd(0.0, 0.0));
  CHECK(equal_spacing_rates(6, pi, kParams).rate == complexd(0.0, 0.0));
  CHECK(equal_spacing_rates(2, 0.0, kParams).rate == complexd(gamma, 0.0));
}
