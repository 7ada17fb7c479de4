#pragma once

#include <vector>

#include "gatom/model.hpp"

// Two-excitation eigendata in the even-mode space: plane-wave (Bethe-type)
// region coefficients, the exponentially localized pair family, the atomic
// amplitudes attached to both, and their n-leg generalizations. Everything
// here is per-eigenstate; S-matrix assembly lives in smatrix.hpp.
namespace gatom {

struct TwoPhotonPair {
  double k1 = 0.0;
  double p1 = 0.0;

  double e_total() const { return k1 + p1; }
  double delta() const { return 0.5 * (k1 - p1); }
};

// Plane-wave region coefficients normalized to region 1. Entry [l-1] holds
// region l; for two legs there are 6 regions (region 4 is the both-inside
// wedge), for n legs the 2n+1 regions that a transmission path crosses.
struct BetheCoefficients {
  std::vector<complexd> a_ratio;  // A_l / A_1, [0] == 1
  std::vector<complexd> b_ratio;  // B_l / B_1, [0] == 1
  complexd a1_over_b1;            // exchange ratio, unimodular

  int regions() const { return static_cast<int>(a_ratio.size()); }
};

// Exact region ratios for two legs. The outer-region ratios compose from the
// single-photon slab amplitudes at k and p; the both-inside region follows
// from the one-sided matching at the first leg (the two-term region ansatz
// does not close the both-inside wedge by itself, so that matching defines
// it). a1_over_b1 uses the Markov decay: (k - p - i decay)/(k - p + i decay).
BetheCoefficients bethe_ratios(const TwoPhotonPair& pair, const AtomGeometry& geom,
                               const AtomParams& params);

// n-leg ratios over the 2n+1 transmission-path regions; the last ratio equals
// the product of the two single-photon transmissions.
BetheCoefficients bethe_ratios_n(const TwoPhotonPair& pair, const AtomGeometry& geom,
                                 const AtomParams& params);

// Region coefficients of the localized-pair family, t[0] == 1. These are the
// slab amplitudes evaluated at the complex momenta E/2 + i decay/2 (leading
// photon) and E/2 - i decay/2 (trailing photon): t[l] for the first n regions
// tracks the leading photon crossing the legs, after which the trailing
// photon crosses with the leading one already transmitted.
struct BoundRegionCoefficients {
  std::vector<complexd> t;

  int regions() const { return static_cast<int>(t.size()); }
};

BoundRegionCoefficients bound_region_coefficients(double e_total, const AtomGeometry& geom,
                                                  const AtomParams& params);
BoundRegionCoefficients bound_region_coefficients_n(double e_total, const AtomGeometry& geom,
                                                    const AtomParams& params);

// Markov pair transmission from rates alone, with delta_e = E - 2 Omega:
//   t_B = (delta_e - 2 shift - 2 i decay) / (delta_e + ... ), a pure phase.
complexd bound_transmission_markov(double delta_e, const EffectiveRates& rates);

// Exact n-leg pair transmission: product of the slab transmissions at the two
// complex momenta. Equals the two-leg region-6 coefficient at n = 2 and tends
// to the Markov form as decay * span -> 0.
complexd bound_transmission_n_exact(double e_total, const AtomGeometry& geom,
                                    const AtomParams& params);

// Free-space localized-pair profile in centre/relative coordinates,
//   sqrt(decay / 4 pi) e^{i E x_c - decay |x| / 2}.
// Throws std::domain_error at a decoupling point (decay == 0).
complexd bound_wavefunction(double e_total, double x_c, double x, const EffectiveRates& rates);

// Symmetric / antisymmetric plane-wave pair basis,
//   S = (e^{i(k x1 + p x2)} + e^{i(k x2 + p x1)}) / (2 sqrt(2) pi),
//   A = sgn(x1 - x2) (e^{i(k x1 + p x2)} - e^{i(k x2 + p x1)}) / (2 sqrt(2) pi).
// Both are symmetric under photon exchange; sgn(0) == 0.
complexd sym_basis(const TwoPhotonPair& pair, double x1, double x2);
complexd antisym_basis(const TwoPhotonPair& pair, double x1, double x2);

// Weights of the incoming scattering combination (2 Delta |S> + i decay |A>)
// normalized to unit modulus, for the momentum-ordered pair (k <= p, so
// Delta <= 0). `swapped` records whether the inputs had to be reordered;
// the antisymmetric weight refers to the ordered pair's basis.
struct InStateWeights {
  complexd sym;
  complexd antisym;
  bool swapped = false;
};

InStateWeights scattering_in_state(const TwoPhotonPair& pair, const EffectiveRates& rates);

// Atomic amplitude attached to the plane-wave family, piecewise across the
// two-leg regions; a coupling point evaluates as the mean of one-sided limits.
complexd e_f_amplitude(double x, const TwoPhotonPair& pair, const AtomGeometry& geom,
                       const AtomParams& params, const BetheCoefficients& coeffs);

// Atomic amplitude attached to the localized-pair family (two legs).
complexd e_b_amplitude(double x, double e_total, const AtomGeometry& geom,
                       const AtomParams& params, const BoundRegionCoefficients& coeffs);

// n-leg atomic amplitudes outside the leg span (x < 0 or x beyond the last
// leg); the interior forms are not part of the n-leg solution set.
complexd e_f_outer_n(double x, const TwoPhotonPair& pair, const AtomGeometry& geom,
                     const AtomParams& params, const BetheCoefficients& coeffs);
complexd e_b_outer_n(double x, double e_total, const AtomGeometry& geom,
                     const AtomParams& params, const BoundRegionCoefficients& coeffs);

}  // namespace gatom
