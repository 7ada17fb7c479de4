#include "gatom/single_photon.hpp"

#include <cmath>
#include <stdexcept>

namespace gatom {

namespace {

constexpr complexd kImag{0.0, 1.0};

void require_two_legs(const AtomGeometry& geom) {
  if (geom.legs() != 2) throw std::invalid_argument("two-leg formula needs exactly 2 legs");
}

}  // namespace

SinglePhotonAmplitudes amplitudes_from_leg_phase(double delta_k, double leg_phase,
                                                 const AtomParams& params) {
  const double gamma = params.gamma();
  const complexd up = 1.0 + std::exp(complexd(0.0, leg_phase));
  const complexd down = 1.0 + std::exp(complexd(0.0, -leg_phase));
  const complexd den = 4.0 * delta_k + kImag * gamma * up;
  SinglePhotonAmplitudes out;
  out.t_e = (4.0 * delta_k - kImag * gamma * down) / den;
  out.inside = 4.0 * delta_k / den;
  out.excite = 2.0 * params.v * up / den;
  out.t_bar = 0.5 * (out.t_e + 1.0);
  out.r_bar = 0.5 * (out.t_e - 1.0);
  return out;
}

SinglePhotonAmplitudes amplitudes_exact(double k, const AtomGeometry& geom,
                                        const AtomParams& params) {
  require_two_legs(geom);
  return amplitudes_from_leg_phase(k - params.omega, k * geom.point(1), params);
}

SinglePhotonAmplitudes amplitudes_markov(double delta_k, double beta1,
                                         const AtomParams& params) {
  return amplitudes_from_leg_phase(delta_k, beta1, params);
}

complexd markov_transmission(double delta_k, const EffectiveRates& rates) {
  return (2.0 * delta_k - kImag * std::conj(rates.rate)) /
         (2.0 * delta_k + kImag * rates.rate);
}

complexd transmission_n_point(double k, const AtomGeometry& geom, const AtomParams& params) {
  return markov_transmission(k - params.omega, effective_rates_n_point(geom, params));
}

std::vector<complexd> slab_amplitudes(complexd q, const AtomGeometry& geom,
                                      const AtomParams& params) {
  const int n = geom.legs();
  const double per_pair = params.gamma() / (n * static_cast<double>(n));
  complexd leg_sum = 0.0;   // S1
  complexd pair_sum = 0.0;  // Sx
  for (int j = 0; j < n; ++j) {
    leg_sum += std::exp(kImag * q * geom.point(j));
    for (int i = 0; i < j; ++i)
      pair_sum += std::exp(kImag * q * (geom.point(j) - geom.point(i)));
  }
  const complexd radiated =
      per_pair * leg_sum / (kImag * (q - params.omega) - per_pair * (pair_sum + 0.5 * n));
  std::vector<complexd> u(static_cast<std::size_t>(n) + 1);
  u[0] = 1.0;
  for (int j = 0; j < n; ++j)
    u[static_cast<std::size_t>(j) + 1] =
        u[static_cast<std::size_t>(j)] + radiated * std::exp(-kImag * q * geom.point(j));
  return u;
}

complexd slab_transmission(complexd q, const AtomGeometry& geom, const AtomParams& params) {
  return slab_amplitudes(q, geom, params).back();
}

double reflection_lorentzian(double delta_k, double beta1, const AtomParams& params) {
  const double gamma = params.gamma();
  const double open = gamma * (1.0 + std::cos(beta1));
  const double shifted = 4.0 * delta_k - gamma * std::sin(beta1);
  return open * open / (shifted * shifted + open * open);
}

std::vector<double> reflection_sweep(std::span<const double> delta_k,
                                     std::span<const double> beta1, SinglePhotonMode mode,
                                     const AtomParams& params) {
  std::vector<double> table;
  table.reserve(delta_k.size() * beta1.size());
  for (const double dk : delta_k) {
    for (const double b : beta1) {
      // Exact mode accumulates the detuning-dependent phase (1 + Delta/Omega) b.
      const double phase = (mode == SinglePhotonMode::kExact)
                               ? (1.0 + dk / params.omega) * b
                               : b;
      table.push_back(amplitudes_from_leg_phase(dk, phase, params).reflection());
    }
  }
  return table;
}

}  // namespace gatom
