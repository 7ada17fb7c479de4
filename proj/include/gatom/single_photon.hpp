#pragma once

#include <span>
#include <vector>

#include "gatom/model.hpp"

// Single-photon scattering. Only the even combination of right/left movers
// couples to the atom, so the whole problem reduces to one transmission
// amplitude t_e in the even-mode space; the odd mode passes through freely.
// Measurable right/left coefficients follow as t_bar = (t_e + 1)/2 and
// r_bar = (t_e - 1)/2.
namespace gatom {

struct SinglePhotonAmplitudes {
  complexd t_e;     // even-mode transmission
  complexd inside;  // amplitude between the two legs
  complexd excite;  // atomic excitation amplitude
  complexd t_bar;   // transmission of an incident right mover
  complexd r_bar;   // reflection of an incident right mover

  double reflection() const { return std::norm(r_bar); }
  double transmission() const { return std::norm(t_bar); }
};

// Common two-leg kernel at accumulated leg phase b = k * xi_1:
//   t_e = [4 Delta_k - i Gamma (1 + e^{-ib})] / [4 Delta_k + i Gamma (1 + e^{ib})],
// plus the inside and excited amplitudes over the same denominator. The exact
// solution uses b = k xi_1; the Markov approximation freezes b = beta_1.
SinglePhotonAmplitudes amplitudes_from_leg_phase(double delta_k, double leg_phase,
                                                 const AtomParams& params);

// Exact two-leg solution at momentum k (geometry must have 2 legs); valid
// arbitrarily far from the Markov regime.
SinglePhotonAmplitudes amplitudes_exact(double k, const AtomGeometry& geom,
                                        const AtomParams& params);

// Markov two-leg amplitudes at detuning Delta_k = k - Omega.
SinglePhotonAmplitudes amplitudes_markov(double delta_k, double beta1,
                                         const AtomParams& params);

// Markov even-mode transmission from the effective rates alone:
//   t = (2 Delta_k - i conj(rate)) / (2 Delta_k + i rate).
// The same form covers two legs (rate = Gamma_e) and n legs (rate = Gamma_A);
// the numerator mirrors the denominator, so |t| == 1 identically.
complexd markov_transmission(double delta_k, const EffectiveRates& rates);

// Markov n-leg even-mode transmission at momentum k.
complexd transmission_n_point(double k, const AtomGeometry& geom, const AtomParams& params);

// Piecewise plane-wave amplitudes of one even-mode photon crossing all legs:
// u[0] = 1 incident, u[j] between legs j-1 and j, u[n] transmitted. Every leg
// radiates the same forward amplitude c with its local phase, so
// u_{j+1} = u_j + c e^{-i q xi_j} with
//   c = P S1 / (i (q - Omega) - P (Sx + n/2)),  P = V^2/n^2,
//   S1 = sum_j e^{i q xi_j},  Sx = sum_{i<j} e^{i q (xi_j - xi_i)}.
// Valid at complex momentum q; the two-photon bound family evaluates it at
// q = E/2 +- i*decay/2. At real q with Markov phases, u[n] reduces to
// transmission_n_point through |S1|^2 = n + Sx + conj(Sx).
std::vector<complexd> slab_amplitudes(complexd q, const AtomGeometry& geom,
                                      const AtomParams& params);
complexd slab_transmission(complexd q, const AtomGeometry& geom, const AtomParams& params);

// Closed-form Markov reflection probability for two legs,
//   R = Gamma^2 (1+cos b)^2 / [ (4 Delta_k - Gamma sin b)^2 + Gamma^2 (1+cos b)^2 ].
// Retained as an independent oracle; production code computes |r_bar|^2.
double reflection_lorentzian(double delta_k, double beta1, const AtomParams& params);

// Row-major |r_bar|^2 over the grid: rows sweep delta_k, columns beta1.
enum class SinglePhotonMode { kExact, kMarkov };
std::vector<double> reflection_sweep(std::span<const double> delta_k,
                                     std::span<const double> beta1, SinglePhotonMode mode,
                                     const AtomParams& params);

}  // namespace gatom
