#include "gatom/two_photon.hpp"

#include <cmath>
#include <stdexcept>

#include "gatom/single_photon.hpp"

namespace gatom {
namespace {

constexpr complexd kImag{0.0, 1.0};

void require_two_legs(const AtomGeometry& geom) {
  if (geom.legs() != 2) {
    throw std::invalid_argument("two-leg eigendata requires a geometry with exactly 2 legs");
  }
}

double markov_decay(const AtomGeometry& geom, const AtomParams& params) {
  if (geom.legs() == 2) return effective_rates_two_point(geom.phase(1), params).decay();
  return effective_rates_n_point(geom, params).decay();
}

// Complex momenta of the localized pair: the leading photon carries
// E/2 + i decay/2, the trailing one the conjugate.
struct PairMomenta {
  complexd lead;
  complexd trail;
};

PairMomenta pair_momenta(double e_total, double decay) {
  return {complexd{0.5 * e_total, 0.5 * decay}, complexd{0.5 * e_total, -0.5 * decay}};
}

}  // namespace

BetheCoefficients bethe_ratios(const TwoPhotonPair& pair, const AtomGeometry& geom,
                               const AtomParams& params) {
  require_two_legs(geom);
  const double k = pair.k1;
  const double p = pair.p1;
  const double xi1 = geom.point(1);
  const SinglePhotonAmplitudes amp_k = amplitudes_exact(k, geom, params);
  const SinglePhotonAmplitudes amp_p = amplitudes_exact(p, geom, params);

  const double decay = effective_rates_two_point(geom.phase(1), params).decay();
  // (k - p - i decay)/(k - p + i decay); decay == 0 is the 0/0 free limit.
  const complexd exchange =
      decay == 0.0 ? complexd{1.0, 0.0}
                   : (complexd{k - p, -decay}) / (complexd{k - p, decay});

  // Both-inside coefficients from the one-sided matching at the first leg,
  // unknowns x = A4/A1, y = B4/A1:
  //   (i Delta_k - a) x - a e^{i k xi1} y = i Delta_k (A2/A1)
  //   (i Delta_p - a) y - a e^{i p xi1} x = i Delta_p (B2/B1)(B1/A1),  a = V^2/4.
  const double quarter = 0.25 * params.gamma();
  const complexd m11 = kImag * (k - params.omega) - quarter;
  const complexd m22 = kImag * (p - params.omega) - quarter;
  const complexd m12 = -quarter * std::exp(kImag * (k * xi1));
  const complexd m21 = -quarter * std::exp(kImag * (p * xi1));
  const complexd r1 = kImag * (k - params.omega) * amp_p.inside;
  const complexd r2 = kImag * (p - params.omega) * amp_k.inside / exchange;
  const complexd det = m11 * m22 - m12 * m21;
  if (det == complexd{0.0, 0.0}) {
    throw std::domain_error("degenerate both-inside matching (decoupled resonant pair)");
  }
  const complexd a4 = (r1 * m22 - m12 * r2) / det;
  const complexd b4_over_a1 = (m11 * r2 - m21 * r1) / det;

  BetheCoefficients out;
  out.a_ratio = {complexd{1.0, 0.0}, amp_p.inside,          amp_p.t_e, a4,
                 amp_p.t_e * amp_k.inside, amp_p.t_e * amp_k.t_e};
  out.b_ratio = {complexd{1.0, 0.0}, amp_k.inside,          amp_k.t_e, b4_over_a1 * exchange,
                 amp_k.t_e * amp_p.inside, amp_k.t_e * amp_p.t_e};
  out.a1_over_b1 = exchange;
  return out;
}

BetheCoefficients bethe_ratios_n(const TwoPhotonPair& pair, const AtomGeometry& geom,
                                 const AtomParams& params) {
  const int n = geom.legs();
  const std::vector<complexd> slab_k =
      slab_amplitudes(complexd{pair.k1, 0.0}, geom, params);
  const std::vector<complexd> slab_p =
      slab_amplitudes(complexd{pair.p1, 0.0}, geom, params);
  const complexd t_k = slab_k.back();
  const complexd t_p = slab_p.back();

  const double decay = effective_rates_n_point(geom, params).decay();
  const complexd exchange =
      decay == 0.0 ? complexd{1.0, 0.0}
                   : (complexd{pair.k1 - pair.p1, -decay}) / (complexd{pair.k1 - pair.p1, decay});

  BetheCoefficients out;
  out.a_ratio.reserve(static_cast<std::size_t>(2 * n + 1));
  out.b_ratio.reserve(static_cast<std::size_t>(2 * n + 1));
  // Regions 1..n+1: the k photon is still left of every leg while the p (or k,
  // for the B family) photon advances slab cell by slab cell.
  for (int cell = 0; cell <= n; ++cell) {
    out.a_ratio.push_back(slab_p[static_cast<std::size_t>(cell)]);
    out.b_ratio.push_back(slab_k[static_cast<std::size_t>(cell)]);
  }
  // Regions n+2..2n+1: the first photon has fully transmitted, the second
  // crosses the slab behind it.
  for (int cell = 1; cell <= n; ++cell) {
    out.a_ratio.push_back(t_p * slab_k[static_cast<std::size_t>(cell)]);
    out.b_ratio.push_back(t_k * slab_p[static_cast<std::size_t>(cell)]);
  }
  out.a1_over_b1 = exchange;
  return out;
}

BoundRegionCoefficients bound_region_coefficients(double e_total, const AtomGeometry& geom,
                                                  const AtomParams& params) {
  require_two_legs(geom);
  const double decay = markov_decay(geom, params);
  if (!(decay > 0.0)) throw std::domain_error("no bound state at decoupling point");
  const PairMomenta q = pair_momenta(e_total, decay);
  const std::vector<complexd> lead = slab_amplitudes(q.lead, geom, params);
  const std::vector<complexd> trail = slab_amplitudes(q.trail, geom, params);
  // Both-inside coefficient from the one-sided matching at the first leg.
  const complexd dr = q.trail - params.omega + kImag * 0.25 * params.gamma();
  const complexd t4 = lead[1] * (q.trail - params.omega) / dr;

  BoundRegionCoefficients out;
  out.t = {complexd{1.0, 0.0}, lead[1], lead[2], t4, lead[2] * trail[1], lead[2] * trail[2]};
  return out;
}

BoundRegionCoefficients bound_region_coefficients_n(double e_total, const AtomGeometry& geom,
                                                    const AtomParams& params) {
  const int n = geom.legs();
  const double decay = markov_decay(geom, params);
  if (!(decay > 0.0)) throw std::domain_error("no bound state at decoupling point");
  const PairMomenta q = pair_momenta(e_total, decay);
  const std::vector<complexd> lead = slab_amplitudes(q.lead, geom, params);
  const std::vector<complexd> trail = slab_amplitudes(q.trail, geom, params);

  BoundRegionCoefficients out;
  out.t.reserve(static_cast<std::size_t>(2 * n + 1));
  for (int cell = 0; cell <= n; ++cell) out.t.push_back(lead[static_cast<std::size_t>(cell)]);
  for (int cell = 1; cell <= n; ++cell) {
    out.t.push_back(lead[static_cast<std::size_t>(n)] * trail[static_cast<std::size_t>(cell)]);
  }
  return out;
}

complexd bound_transmission_markov(double delta_e, const EffectiveRates& rates) {
  const double decay = rates.decay();
  if (decay == 0.0) return complexd{1.0, 0.0};
  const double detuned = delta_e - 2.0 * rates.lamb_shift();
  return complexd{detuned, -2.0 * decay} / complexd{detuned, 2.0 * decay};
}

complexd bound_transmission_n_exact(double e_total, const AtomGeometry& geom,
                                    const AtomParams& params) {
  const double decay = markov_decay(geom, params);
  if (!(decay > 0.0)) throw std::domain_error("no bound state at decoupling point");
  const PairMomenta q = pair_momenta(e_total, decay);
  return slab_transmission(q.lead, geom, params) * slab_transmission(q.trail, geom, params);
}

complexd bound_wavefunction(double e_total, double x_c, double x, const EffectiveRates& rates) {
  const double decay = rates.decay();
  if (!(decay > 0.0)) throw std::domain_error("no bound state at decoupling point");
  const double amplitude = std::sqrt(decay / (4.0 * pi));
  return amplitude * std::exp(complexd{-0.5 * decay * std::abs(x), e_total * x_c});
}

complexd sym_basis(const TwoPhotonPair& pair, double x1, double x2) {
  const complexd direct = std::exp(kImag * (pair.k1 * x1 + pair.p1 * x2));
  const complexd exchanged = std::exp(kImag * (pair.k1 * x2 + pair.p1 * x1));
  return (direct + exchanged) / (2.0 * std::sqrt(2.0) * pi);
}

complexd antisym_basis(const TwoPhotonPair& pair, double x1, double x2) {
  const double sign = (x1 > x2) ? 1.0 : (x1 < x2 ? -1.0 : 0.0);
  if (sign == 0.0) return complexd{0.0, 0.0};
  const complexd direct = std::exp(kImag * (pair.k1 * x1 + pair.p1 * x2));
  const complexd exchanged = std::exp(kImag * (pair.k1 * x2 + pair.p1 * x1));
  return sign * (direct - exchanged) / (2.0 * std::sqrt(2.0) * pi);
}

InStateWeights scattering_in_state(const TwoPhotonPair& pair, const EffectiveRates& rates) {
  InStateWeights out;
  double k = pair.k1;
  double p = pair.p1;
  if (k > p) {
    std::swap(k, p);
    out.swapped = true;
  }
  const double two_delta = k - p;  // <= 0 once ordered
  const double decay = rates.decay();
  const double norm = std::hypot(two_delta, decay);
  if (norm == 0.0) {
    out.sym = complexd{1.0, 0.0};
    out.antisym = complexd{0.0, 0.0};
    return out;
  }
  out.sym = complexd{two_delta / norm, 0.0};
  out.antisym = complexd{0.0, decay / norm};
  return out;
}

complexd e_f_amplitude(double x, const TwoPhotonPair& pair, const AtomGeometry& geom,
                       const AtomParams& params, const BetheCoefficients& coeffs) {
  require_two_legs(geom);
  if (coeffs.regions() != 6) {
    throw std::invalid_argument("two-leg atomic amplitude needs 6-region coefficients");
  }
  const double k = pair.k1;
  const double p = pair.p1;
  const double xi1 = geom.point(1);
  const complexd b1 = 1.0 / coeffs.a1_over_b1;
  const auto coef_a = [&](int region) { return coeffs.a_ratio[static_cast<std::size_t>(region - 1)]; };
  const auto coef_b = [&](int region) {
    return coeffs.b_ratio[static_cast<std::size_t>(region - 1)] * b1;
  };
  const complexd den_k = complexd{k - params.omega, 0.25 * params.gamma()};
  const complexd den_p = complexd{p - params.omega, 0.25 * params.gamma()};
  const double scale = params.v / std::sqrt(2.0);
  const complexd phase_k_leg = std::exp(kImag * (k * xi1));
  const complexd phase_p_leg = std::exp(kImag * (p * xi1));
  const complexd wave_k = std::exp(kImag * (k * x));
  const complexd wave_p = std::exp(kImag * (p * x));

  // In every region the e^{i k x} term rides the p-photon denominator and
  // vice versa: the k plane wave is the photon still in flight.
  const auto left = [&] {
    return scale * ((coef_a(1) + coef_a(2) * phase_p_leg) / den_p * wave_k +
                    (coef_b(1) + coef_b(2) * phase_k_leg) / den_k * wave_p);
  };
  const auto middle = [&] {
    return scale * ((coef_b(2) + coef_a(4) * phase_p_leg) / den_p * wave_k +
                    (coef_a(2) + coef_b(4) * phase_k_leg) / den_k * wave_p);
  };
  const auto right = [&] {
    return scale * ((coef_b(3) + coef_b(5) * phase_p_leg) / den_p * wave_k +
                    (coef_a(3) + coef_a(5) * phase_k_leg) / den_k * wave_p);
  };

  if (x < 0.0) return left();
  if (x == 0.0) return 0.5 * (left() + middle());
  if (x < xi1) return middle();
  if (x == xi1) return 0.5 * (middle() + right());
  return right();
}

complexd e_b_amplitude(double x, double e_total, const AtomGeometry& geom,
                       const AtomParams& params, const BoundRegionCoefficients& coeffs) {
  require_two_legs(geom);
  if (coeffs.regions() != 6) {
    throw std::invalid_argument("two-leg atomic amplitude needs 6-region coefficients");
  }
  const double decay = markov_decay(geom, params);
  if (!(decay > 0.0)) throw std::domain_error("no bound state at decoupling point");
  const double xi1 = geom.point(1);
  const PairMomenta q = pair_momenta(e_total, decay);
  const complexd quarter{0.0, 0.25 * params.gamma()};
  const complexd den_lead = q.lead - params.omega + quarter;
  const complexd den_trail = q.trail - params.omega + quarter;
  const complexd lead_leg = std::exp(kImag * (q.lead * xi1));
  const complexd trail_leg = std::exp(kImag * (q.trail * xi1));
  const double scale = params.v / std::sqrt(2.0);
  const auto coef = [&](int region) { return coeffs.t[static_cast<std::size_t>(region - 1)]; };

  const auto left = [&] {
    return scale * std::exp(kImag * (q.trail * x)) * (coef(1) + coef(2) * lead_leg) / den_lead;
  };
  const auto middle = [&] {
    return scale * (coef(2) * std::exp(kImag * (q.lead * x)) / den_trail +
                    coef(4) * lead_leg * std::exp(kImag * (q.trail * x)) / den_lead);
  };
  const auto right = [&] {
    return scale * std::exp(kImag * (q.lead * x)) * (coef(3) + coef(5) * trail_leg) / den_trail;
  };

  if (x < 0.0) return left();
  if (x == 0.0) return 0.5 * (left() + middle());
  if (x < xi1) return middle();
  if (x == xi1) return 0.5 * (middle() + right());
  return right();
}

complexd e_f_outer_n(double x, const TwoPhotonPair& pair, const AtomGeometry& geom,
                     const AtomParams& params, const BetheCoefficients& coeffs) {
  const int n = geom.legs();
  if (coeffs.regions() != 2 * n + 1) {
    throw std::invalid_argument("coefficient count does not match the geometry");
  }
  const double k = pair.k1;
  const double p = pair.p1;
  const double last = geom.point(n - 1);
  const complexd b1 = 1.0 / coeffs.a1_over_b1;
  const complexd half_width{0.0, 0.5 * params.gamma() / static_cast<double>(n)};
  const complexd den_k = k - params.omega + half_width;
  const complexd den_p = p - params.omega + half_width;
  const double scale = params.v / std::sqrt(2.0);

  if (x < 0.0) {
    complexd sum_a{0.0, 0.0};
    complexd sum_b{0.0, 0.0};
    for (int j = 1; j <= n; ++j) {
      const double leg = geom.point(j - 1);
      sum_a += coeffs.a_ratio[static_cast<std::size_t>(j - 1)] * std::exp(kImag * (p * leg));
      sum_b += coeffs.b_ratio[static_cast<std::size_t>(j - 1)] * b1 * std::exp(kImag * (k * leg));
    }
    return scale * (sum_a / den_p * std::exp(kImag * (k * x)) +
                    sum_b / den_k * std::exp(kImag * (p * x)));
  }
  if (x > last) {
    complexd sum_a{0.0, 0.0};
    complexd sum_b{0.0, 0.0};
    for (int j = 1; j <= n; ++j) {
      const double leg = geom.point(j - 1);
      sum_a += coeffs.a_ratio[static_cast<std::size_t>(j + n - 1)] * std::exp(kImag * (k * leg));
      sum_b +=
          coeffs.b_ratio[static_cast<std::size_t>(j + n - 1)] * b1 * std::exp(kImag * (p * leg));
    }
    return scale * (sum_a / den_k * std::exp(kImag * (p * x)) +
                    sum_b / den_p * std::exp(kImag * (k * x)));
  }
  throw std::domain_error("amplitude defined only outside the leg span");
}

complexd e_b_outer_n(double x, double e_total, const AtomGeometry& geom,
                     const AtomParams& params, const BoundRegionCoefficients& coeffs) {
  const int n = geom.legs();
  if (coeffs.regions() != 2 * n + 1) {
    throw std::invalid_argument("coefficient count does not match the geometry");
  }
  const double decay = markov_decay(geom, params);
  if (!(decay > 0.0)) throw std::domain_error("no bound state at decoupling point");
  const double last = geom.point(n - 1);
  const PairMomenta q = pair_momenta(e_total, decay);
  const double detuned = e_total - 2.0 * params.omega;
  const double width = params.gamma() / static_cast<double>(n);
  const double scale = std::sqrt(2.0) * params.v;

  if (x < 0.0) {
    complexd sum{0.0, 0.0};
    for (int j = 1; j <= n; ++j) {
      sum += coeffs.t[static_cast<std::size_t>(j - 1)] *
             std::exp(kImag * (q.lead * geom.point(j - 1)));
    }
    return scale * std::exp(kImag * (q.trail * x)) * sum / complexd{detuned, decay + width};
  }
  if (x > last) {
    complexd sum{0.0, 0.0};
    for (int j = 1; j <= n; ++j) {
      sum += coeffs.t[static_cast<std::size_t>(j + n - 1)] *
             std::exp(kImag * (q.trail * geom.point(j - 1)));
    }
    return scale * std::exp(kImag * (q.lead * x)) * sum / complexd{detuned, width - decay};
  }
  throw std::domain_error("amplitude defined only outside the leg span");
}

}  // namespace gatom
