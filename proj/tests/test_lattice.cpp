#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gatom/lattice.hpp"
#include "gatom/model.hpp"
#include "gatom/single_photon.hpp"

using namespace gatom;

namespace {

// Two-level atom at the band centre with total emission rate gamma_lat:
// one leg of strength sqrt(J gamma_lat) gives rate = gamma_lat at q = pi/2.
LatticeConfig single_leg_config(double gamma_lat) {
  LatticeConfig config;
  config.sites = 600;
  config.hopping = 1.0;
  config.atom_frequency = 0.0;
  config.legs = {{360, std::sqrt(gamma_lat)}};
  config.packet_center = 210.0;
  config.packet_sigma = 40.0;
  config.packet_momentum = pi / 2.0;
  config.time_step = 0.05;
  config.duration = 140.0;
  return config;
}

}  // namespace

TEST_CASE("configuration validation rejects unusable set-ups") {
  const LatticeConfig good = single_leg_config(0.2);
  CHECK_NOTHROW(good.validate());

  auto broken = [&](auto&& mutate) {
    LatticeConfig config = good;
    mutate(config);
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  };
  broken([](LatticeConfig& c) { c.sites = 12; });
  broken([](LatticeConfig& c) { c.hopping = 0.0; });
  broken([](LatticeConfig& c) { c.legs.clear(); });
  broken([](LatticeConfig& c) { c.legs[0].site = -3; });
  broken([](LatticeConfig& c) { c.legs[0].site = 40; });   // outside middle 60%
  broken([](LatticeConfig& c) { c.legs[0].site = 590; });
  broken([](LatticeConfig& c) { c.legs[0].strength = 0.0; });
  broken([](LatticeConfig& c) { c.packet_sigma = 8.0; });
  broken([](LatticeConfig& c) { c.packet_momentum = 0.0; });
  broken([](LatticeConfig& c) { c.packet_momentum = 3.2; });
  broken([](LatticeConfig& c) { c.packet_center = -1.0; });
  broken([](LatticeConfig& c) { c.time_step = 0.0; });
  broken([](LatticeConfig& c) { c.duration = 0.0; });
  broken([](LatticeConfig& c) { c.duration = 200.0; });    // wall echo window
  broken([](LatticeConfig& c) { c.analysis_buffer = 0; });
}

TEST_CASE("complex rate at the band centre matches the continuum rate forms") {
  const double coupling = 0.35;

  SUBCASE("single leg: pure decay g^2 / J") {
    LatticeConfig config = single_leg_config(1.0);
    config.legs = {{360, coupling}};
    const complexd rate = lattice_complex_rate(pi / 2.0, config);
    CHECK(rate.real() == doctest::Approx(coupling * coupling).epsilon(1e-14));
    CHECK(std::abs(rate.imag()) <= 1e-16);
  }

  SUBCASE("two legs map to the two-point rate with beta = q d") {
    LatticeConfig config = single_leg_config(1.0);
    for (const int spacing : {1, 2, 3}) {
      CAPTURE(spacing);
      config.legs = {{360, coupling}, {360 + spacing, coupling}};
      const complexd rate = lattice_complex_rate(pi / 2.0, config);
      // Total emission Gamma_lat = 4 g^2 / J; leg phase beta = (pi/2) d.
      const AtomParams continuum = AtomParams::from_gamma(4.0 * coupling * coupling, 9.4);
      const complexd expected =
          effective_rates_two_point(pi / 2.0 * spacing, continuum).rate;
      CHECK(std::abs(rate - expected) <= 1e-14 * std::abs(expected));
    }
  }

  SUBCASE("half-wavelength spacing decouples the atom") {
    LatticeConfig config = single_leg_config(1.0);
    config.legs = {{360, coupling}, {362, coupling}};
    const complexd rate = lattice_complex_rate(pi / 2.0, config);
    CHECK(std::abs(rate) <= 1e-15 * coupling * coupling);
  }

  SUBCASE("band edge rejected") {
    const LatticeConfig config = single_leg_config(0.2);
    CHECK_THROWS_AS(lattice_complex_rate(0.0, config), std::domain_error);
  }
}

TEST_CASE("plane-wave reflection carries the continuum resonance structure") {
  SUBCASE("single resonant leg reflects completely") {
    const LatticeConfig config = single_leg_config(0.2);
    CHECK(std::norm(lattice_reflection(pi / 2.0, config)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("quarter-wave pair at the bare band centre reflects half") {
    // beta = pi/2 gives shift Gamma/4 and decay Gamma/2, so at zero detuning
    // R = (Gamma/2)^2 / (4 (Gamma/4)^2 + (Gamma/2)^2) = 1/2 for any Gamma.
    LatticeConfig config = single_leg_config(1.0);
    config.legs = {{360, 0.35}, {361, 0.35}};
    CHECK(std::norm(lattice_reflection(pi / 2.0, config)) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("tuning the atom to the shifted line restores full reflection") {
    LatticeConfig config = single_leg_config(1.0);
    config.legs = {{360, 0.35}, {361, 0.35}};
    const complexd rate = lattice_complex_rate(pi / 2.0, config);
    config.atom_frequency = -EffectiveRates{rate}.lamb_shift();
    CHECK(std::norm(lattice_reflection(pi / 2.0, config)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("packet-averaged prediction follows the resonance line") {
  LatticeConfig config = single_leg_config(0.2);
  config.packet_sigma = 100.0;

  const double on_peak = predicted_reflection(config);
  CHECK(on_peak > 0.9);
  CHECK(on_peak < 1.0);

  // Moving the atom off the carrier line walks down the Lorentzian flank.
  config.atom_frequency = -0.3;
  const double flank = predicted_reflection(config);
  config.atom_frequency = -0.8;
  const double tail = predicted_reflection(config);
  CHECK(on_peak > flank);
  CHECK(flank > tail);
  // Far flank: the average barely smears the Lorentzian, R = g^2/(4 d^2 + g^2).
  CHECK(tail == doctest::Approx(0.04 / 2.60).epsilon(1e-3));

  // Decoupled two-leg geometry: only the far packet wings reflect.
  LatticeConfig dark = single_leg_config(1.0);
  dark.packet_sigma = 35.0;
  dark.legs = {{360, 0.35}, {362, 0.35}};
  CHECK(predicted_reflection(dark) < 1e-4);
}

TEST_CASE("single-photon packet run conserves norm and matches the prediction") {
  const LatticeConfig config = single_leg_config(0.2);
  const SingleRunResult run = evolve_single(config);

  CHECK(run.norm_drift < 1e-8);
  CHECK(run.near_atom + run.atom_excited < 0.02);  // packet has cleared the legs
  const double budget = run.transmitted + run.reflected + run.near_atom + run.atom_excited;
  CHECK(budget == doctest::Approx(1.0).epsilon(1e-8));

  const double predicted = predicted_reflection(config);
  CHECK(std::abs(run.reflected - predicted) <= 0.02 * predicted);
  CHECK(std::abs(run.transmitted - (1.0 - predicted)) <= 0.03);

  CHECK(run.site_abs2.size() == static_cast<std::size_t>(config.sites));
  const double site_total =
      std::accumulate(run.site_abs2.begin(), run.site_abs2.end(), 0.0);
  CHECK(site_total == doctest::Approx(1.0 - run.atom_excited).epsilon(1e-8));
}

TEST_CASE("two-photon packet run keeps its books and suppresses the reflected diagonal") {
  LatticeConfig config;
  config.sites = 120;
  config.hopping = 1.0;
  config.atom_frequency = 0.0;
  config.legs = {{72, std::sqrt(0.4)}};
  config.packet_center = 36.0;
  config.packet_sigma = 12.0;
  config.packet_momentum = pi / 2.0;
  config.time_step = 0.02;
  config.duration = 28.0;

  const PairRunResult run = evolve_pair(config);
  CHECK(run.norm_drift < 1e-8);
  const double budget = run.both_transmitted + run.both_reflected + run.split +
                        run.near_atom + run.atom_excited;
  CHECK(budget == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(run.both_transmitted > 0.0);
  CHECK(run.both_reflected > 0.0);
  CHECK(run.split > 0.0);

  // Reflection happens only through the atom, which cannot hold two photons:
  // the reflected quadrant must be depleted on its diagonal.
  CHECK(run.diagonal_suppression > 0.5);
  CHECK(run.diagonal_suppression <= 1.0);

  double profile_total = 0.0;
  for (const double p : run.relative_profile) {
    CHECK(p >= 0.0);
    profile_total += p;
  }
  CHECK(profile_total <= run.both_transmitted + 1e-12);
}

TEST_CASE("decay-length fit recovers a synthetic exponential") {
  std::vector<double> profile(40);
  const double length = 6.5;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    profile[i] = 3.7 * std::exp(-static_cast<double>(i) / length);
  }
  CHECK(fit_decay_length(profile, 2, 30) == doctest::Approx(length).epsilon(1e-9));

  CHECK_THROWS_AS(fit_decay_length(profile, 2, 60), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay_length(profile, 5, 6), std::invalid_argument);

  std::vector<double> rising(20, 0.0);
  for (std::size_t i = 0; i < rising.size(); ++i) rising[i] = std::exp(0.2 * i);
  CHECK_THROWS_AS(fit_decay_length(rising, 2, 18), std::domain_error);

  const std::vector<double> sparse(20, 0.0);
  CHECK_THROWS_AS(fit_decay_length(sparse, 2, 18), std::domain_error);
}
