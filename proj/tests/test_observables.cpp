#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gatom/model.hpp"
#include "gatom/observables.hpp"
#include "gatom/smatrix.hpp"

using namespace gatom;

namespace {

const AtomParams kParams{.omega = 9.4, .v = 1.1};

// Index of the grid point nearest to value; axis must bracket it.
int nearest_index(const GridAxis& axis, double value) {
  return static_cast<int>(std::lround((value - axis.lo) / axis.step()));
}

}  // namespace

TEST_CASE("grid axes are inclusive and argmax ties are deterministic") {
  const GridAxis axis{-6.0, 6.0, 601};
  CHECK(axis.step() == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(axis.at(0) == -6.0);
  CHECK(axis.at(600) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(axis.at(300) == doctest::Approx(0.0).epsilon(1e-14));

  const GridAxis single{2.5, 2.5, 1};
  CHECK(single.step() == 0.0);
  CHECK(single.at(0) == 2.5);

  FieldMap flat;
  flat.axis1 = GridAxis{0.0, 1.0, 2};
  flat.axis2 = GridAxis{0.0, 2.0, 3};
  flat.values.assign(6, complexd{0.5, -0.5});
  CHECK(argmax_abs2(flat) == std::pair<int, int>{0, 0});
  flat.values[4] = complexd{0.5, 0.6};  // row 1, column 1
  CHECK(argmax_abs2(flat) == std::pair<int, int>{1, 1});
  CHECK(flat.abs2(1, 1) == doctest::Approx(std::norm(complexd{0.5, 0.6})));

  FieldMap empty;
  CHECK_THROWS_AS(argmax_abs2(empty), std::invalid_argument);
}

TEST_CASE("spatial maps sample the output amplitudes in scaled coordinates") {
  const EffectiveRates rates = effective_rates_two_point(0.8, kParams);
  const TwoPhotonPair pair{.k1 = kParams.omega + 0.9, .p1 = kParams.omega + 0.25};
  const GridAxis axis1{-2.0, 3.0, 5};
  const GridAxis axis2{-1.0, 2.5, 7};
  const SpatialMaps maps = spatial_maps(pair, rates, kParams, axis1, axis2);
  const double gamma = kParams.gamma();

  CHECK(maps.transmitted.meta.quantity == "transmitted");
  CHECK(maps.reflected.meta.quantity == "reflected");
  CHECK(maps.mixed.meta.quantity == "mixed");
  for (const FieldMap* map : {&maps.transmitted, &maps.reflected, &maps.mixed}) {
    CHECK(map->meta.delta1 == pair.delta());
    CHECK(map->meta.delta_e1 == doctest::Approx(pair.e_total() - 2.0 * kParams.omega));
    CHECK(map->meta.decay == rates.decay());
    CHECK(map->meta.shift == rates.lamb_shift());
    CHECK(map->values.size() == 35);
  }

  for (int i = 0; i < axis1.count; ++i) {
    for (int j = 0; j < axis2.count; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      const double x1 = axis1.at(i) / gamma;
      const double x2 = axis2.at(j) / gamma;
      const double x_c = 0.5 * (x1 + x2);
      const double x = x1 - x2;
      CHECK(maps.transmitted.at(i, j) == transmitted_map(pair, x_c, x, rates, kParams));
      CHECK(maps.reflected.at(i, j) == reflected_map(pair, x_c, x, rates, kParams));
      CHECK(maps.mixed.at(i, j) == mixed_map(pair, x_c, x, rates, kParams));
    }
  }

  CHECK_THROWS_AS(spatial_maps(pair, rates, kParams, GridAxis{0.0, 1.0, 0}, axis2),
                  std::invalid_argument);
  CHECK_THROWS_AS(spatial_maps(pair, rates, kParams, GridAxis{1.0, 0.0, 4}, axis2),
                  std::invalid_argument);
}

TEST_CASE("spatial maps inherit the pair exchange symmetries") {
  const EffectiveRates rates = effective_rates_two_point(0.8, kParams);
  const TwoPhotonPair pair{.k1 = kParams.omega + 0.9, .p1 = kParams.omega + 0.25};
  const GridAxis axis{-4.0, 4.0, 17};
  const SpatialMaps maps = spatial_maps(pair, rates, kParams, axis, axis);

  double max_mixed_gap = 0.0;
  for (int i = 0; i < axis.count; ++i) {
    for (int j = 0; j < axis.count; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      const double scale_t = 1.0 + std::abs(maps.transmitted.at(i, j));
      CHECK(std::abs(maps.transmitted.at(i, j) - maps.transmitted.at(j, i)) <=
            1e-12 * scale_t);
      const double scale_r = 1.0 + std::abs(maps.reflected.at(i, j));
      CHECK(std::abs(maps.reflected.at(i, j) - maps.reflected.at(j, i)) <= 1e-12 * scale_r);
      // The mixed amplitude describes distinguishable arms, so only its
      // modulus survives the exchange.
      CHECK(std::abs(std::abs(maps.mixed.at(i, j)) - std::abs(maps.mixed.at(j, i))) <=
            1e-12 * (1.0 + std::abs(maps.mixed.at(i, j))));
      max_mixed_gap =
          std::max(max_mixed_gap, std::abs(maps.mixed.at(i, j) - maps.mixed.at(j, i)));
    }
  }
  CHECK(max_mixed_gap > 1e-3);  // the complex values genuinely differ
}

TEST_CASE("resonant input: reflected diagonal vanishes, transmitted peaks on it") {
  for (const double beta1 : {0.0, pi / 2.0, 2.0 * pi / 3.0}) {
    CAPTURE(beta1);
    const EffectiveRates rates = effective_rates_two_point(beta1, kParams);
    const double resonant_k = kParams.omega + rates.lamb_shift();
    const TwoPhotonPair pair{.k1 = resonant_k, .p1 = resonant_k};
    const GridAxis axis{-10.0, 10.0, 41};
    const SpatialMaps maps = spatial_maps(pair, rates, kParams, axis, axis);

    for (int i = 0; i < axis.count; ++i) {
      CAPTURE(i);
      CHECK(std::abs(maps.reflected.at(i, i)) < 1e-12);
    }
    const auto [ti, tj] = argmax_abs2(maps.transmitted);
    CHECK(ti == tj);
  }
}

TEST_CASE("momentum map holds the kernel in scaled units") {
  const EffectiveRates rates = effective_rates_two_point(pi / 2.0, kParams);
  const double gamma = kParams.gamma();
  const double de1 = 2.0 * gamma;
  const GridAxis axis1{-6.0, 6.0, 9};
  const GridAxis axis2{-5.0, 5.0, 11};
  const FieldMap map = momentum_bound_map(de1, rates, kParams, axis1, axis2);

  CHECK(map.meta.quantity == "bound_momentum");
  CHECK(map.meta.delta_e1 == de1);
  CHECK(map.meta.decay == rates.decay());
  const double half_gamma = 0.5 * gamma;
  for (int i = 0; i < axis1.count; ++i) {
    for (int j = 0; j < axis2.count; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      const complexd expected = half_gamma * bound_kernel(de1, axis1.at(i) * half_gamma,
                                                          axis2.at(j) * half_gamma, rates);
      CHECK(map.at(i, j) == expected);
    }
  }
}

TEST_CASE("peak report: four symmetric peaks off resonance, one at resonance") {
  const EffectiveRates rates = effective_rates_two_point(pi / 2.0, kParams);
  const double gamma = kParams.gamma();

  SUBCASE("detuned input") {
    const PeakReport report = peak_positions(2.0 * gamma, rates, kParams);
    REQUIRE(report.positions.size() == 4);
    REQUIRE(report.heights.size() == 4);
    const double pos = (gamma - rates.lamb_shift()) / (0.5 * gamma);  // = 1.5 here
    CHECK(pos == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(report.positions[0] == std::pair{pos, pos});
    CHECK(report.positions[1] == std::pair{pos, -pos});
    CHECK(report.positions[2] == std::pair{-pos, pos});
    CHECK(report.positions[3] == std::pair{-pos, -pos});
    for (const double height : report.heights) CHECK(height == report.heights[0]);
    CHECK(report.width == rates.decay());
  }

  SUBCASE("resonant input collapses to the centre") {
    const double de1 = 2.0 * rates.lamb_shift();
    const PeakReport report = peak_positions(de1, rates, kParams);
    REQUIRE(report.positions.size() == 1);
    CHECK(report.positions[0] == std::pair{0.0, 0.0});
    // B(de1 = 2 Delta_L, 0, 0) = -32/(pi Gamma), so the scaled height is
    // (16/pi)^2 independent of Gamma.
    CHECK(report.heights[0] ==
          doctest::Approx(256.0 / (pi * pi)).epsilon(1e-12));
    CHECK(report.width == rates.decay());
  }
}

TEST_CASE("grid argmax corroborates the analytic peaks only for narrow lines") {
  const double gamma = kParams.gamma();
  const GridAxis axis{-6.0, 6.0, 601};

  SUBCASE("narrow line: argmax lands on the reported peak") {
    const EffectiveRates rates = effective_rates_two_point(0.85 * pi, kParams);
    const double de1 = 2.0 * gamma;
    const FieldMap map = momentum_bound_map(de1, rates, kParams, axis, axis);
    const PeakReport report = peak_positions(de1, rates, kParams);
    const auto [i, j] = argmax_abs2(map);
    int best = axis.count;
    for (const auto& [p1, p2] : report.positions) {
      const int di = std::abs(i - nearest_index(axis, p1));
      const int dj = std::abs(j - nearest_index(axis, p2));
      best = std::min(best, std::max(di, dj));
    }
    CHECK(best <= 1);
  }

  SUBCASE("broad line: the true maximum sits inside the reported positions") {
    // The reported positions are the real parts of the kernel poles. The
    // |B|^2 maximum over real detunings solves 4 Delta^2 = s^2 - decay^2
    // with s = de1 - 2 shift, which moves inward by ~decay^2/(4s); for a
    // natural-width line that is many grid cells, so the argmax check above
    // cannot hold there and the shifted position is asserted instead.
    const EffectiveRates rates = effective_rates_two_point(0.0, kParams);
    const double de1 = 2.0 * gamma;
    const FieldMap map = momentum_bound_map(de1, rates, kParams, axis, axis);
    const auto [i, j] = argmax_abs2(map);
    const double s = de1 - 2.0 * rates.lamb_shift();
    const double shifted =
        0.5 * std::sqrt(s * s - rates.decay() * rates.decay()) / (0.5 * gamma);
    CHECK(std::min(std::abs(i - nearest_index(axis, shifted)),
                   std::abs(i - nearest_index(axis, -shifted))) <= 1);
    CHECK(std::min(std::abs(j - nearest_index(axis, shifted)),
                   std::abs(j - nearest_index(axis, -shifted))) <= 1);
    const int claimed = nearest_index(axis, (0.5 * de1 - rates.lamb_shift()) / (0.5 * gamma));
    CHECK(std::abs(std::abs(i - 300) - std::abs(claimed - 300)) > 1);
  }

  SUBCASE("resonant input: argmax at the exact centre") {
    const EffectiveRates rates = effective_rates_two_point(pi / 2.0, kParams);
    const double de1 = 2.0 * rates.lamb_shift();
    const FieldMap map = momentum_bound_map(de1, rates, kParams, axis, axis);
    CHECK(argmax_abs2(map) == std::pair<int, int>{300, 300});
  }
}

TEST_CASE("leg-count scaling follows the rate law and flags decoupling") {
  const double gamma = kParams.gamma();
  const std::array<int, 5> odd = {1, 3, 5, 7, 9};
  const std::vector<NScalingRow> rows = n_scaling(odd, pi, 0.0, kParams);
  REQUIRE(rows.size() == odd.size());
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    CAPTURE(rows[idx].legs);
    const double legs = rows[idx].legs;
    CHECK(rows[idx].decay == gamma / (legs * legs));
    CHECK(rows[idx].shift == 0.0);
    CHECK_FALSE(rows[idx].decoupled);
    // Peak height (Gamma/2)^2 |B|^2 = (8 n^2/pi)^2: pure n^4 growth.
    CHECK(rows[idx].height / rows[0].height ==
          doctest::Approx(legs * legs * legs * legs).epsilon(1e-12));
  }

  const std::array<int, 2> even = {2, 4};
  for (const NScalingRow& row : n_scaling(even, pi, 0.0, kParams)) {
    CAPTURE(row.legs);
    CHECK(row.decoupled);
    CHECK(row.decay == 0.0);
    CHECK(row.height == 0.0);
  }
}
