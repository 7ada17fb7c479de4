#pragma once

#include <array>

#include "gatom/model.hpp"
#include "gatom/two_photon.hpp"

// Assembled two-photon S-matrix in the Markov regime: the energy-conserving
// bound kernel, the e-mode and directed (right/left) matrix elements, and the
// real-space output maps for a right-moving incident pair. Delta functions are
// never discretized; elements carry the smooth coefficients that multiply the
// forward / exchange / energy-shell delta structure.
namespace gatom {

// Kernel multiplying delta(E1 - E2) in the e-mode element,
//   B = 16 i decay^2 Sigma / (pi [4 Delta1^2 - Sigma^2][4 Delta2^2 - Sigma^2]),
// Sigma = delta_e1 + i * rate (complex rate, so Im Sigma > 0 away from
// decoupling). delta_e1 = E1 - 2 Omega. Returns 0 at a decoupling point.
complexd bound_kernel(double delta_e1, double delta1, double delta2, const EffectiveRates& rates);

struct SMatrixElementEE {
  complexd forward_coeff;   // weights delta(k1-k2) delta(p1-p2)
  complexd exchange_coeff;  // weights delta(k1-p2) delta(k2-p1); equals forward
  complexd bound;           // weights delta(E1 - E2)
};

SMatrixElementEE element_ee(const TwoPhotonPair& pair_in, const TwoPhotonPair& pair_out,
                            const EffectiveRates& rates, const AtomParams& params);

// Directed elements for an incident right-moving pair. `first_coeff` and
// `second_coeff` multiply the two momentum-pairing delta products (equal for
// the both-transmitted and both-reflected channels); `bound` carries the
// quarter-weight kernel.
struct DirectedElement {
  complexd first_coeff;
  complexd second_coeff;
  complexd bound;
};

DirectedElement rr_element(const TwoPhotonPair& pair_in, const TwoPhotonPair& pair_out,
                           const EffectiveRates& rates, const AtomParams& params);
DirectedElement ll_element(const TwoPhotonPair& pair_in, const TwoPhotonPair& pair_out,
                           const EffectiveRates& rates, const AtomParams& params);
DirectedElement rl_element(const TwoPhotonPair& pair_in, const TwoPhotonPair& pair_out,
                           const EffectiveRates& rates, const AtomParams& params);

// Even/odd content of a directed photon pair. Weights are real amplitudes on
// the normalized (|ee>, |eo>_sym, |eo>_antisym, |oo>) components; each
// channel row is a unit vector and the three rows are mutually orthogonal.
enum class PairChannel { kRR, kLL, kRL };

struct ModePairDecomposition {
  double ee = 0.0;
  double eo_sym = 0.0;
  double eo_antisym = 0.0;
  double oo = 0.0;
};

ModePairDecomposition mode_decompose(PairChannel channel);
// Inverse change of basis: amplitudes back on (RR, LL, RL). Exact round trip.
std::array<double, 3> mode_recompose(const ModePairDecomposition& parts);

// One table for the bound-channel weights multiplying
// decay^2/(4 Delta1^2 - Sigma^2) in the real-space maps: the e-mode map
// carries 4, each directed map 1 (the R-mode projection quarter), the mixed
// map 2. The unit tests tie e_mode/4 == directed against the map values.
struct BoundChannelWeights {
  double e_mode;
  double directed;
  double mixed;
};
inline constexpr BoundChannelWeights kBoundWeights{4.0, 1.0, 2.0};

// Real-space output maps in centre/relative coordinates (x_c, x) for the
// incident symmetric pair (k1, p1). transmitted/reflected decay in |x| with
// rate Re(rate)/2; the mixed map decays in |x_c| at the full rate.
complexd output_realspace_e(const TwoPhotonPair& pair_in, double x_c, double x,
                            const EffectiveRates& rates, const AtomParams& params);
complexd transmitted_map(const TwoPhotonPair& pair_in, double x_c, double x,
                         const EffectiveRates& rates, const AtomParams& params);
complexd reflected_map(const TwoPhotonPair& pair_in, double x_c, double x,
                       const EffectiveRates& rates, const AtomParams& params);
complexd mixed_map(const TwoPhotonPair& pair_in, double x_c, double x,
                   const EffectiveRates& rates, const AtomParams& params);

// Closed forms at the resonant input k1 = p1 = Omega + shift (so Delta1 = 0
// and delta_e1 = 2 shift): the plane-wave part of the transmitted map
// vanishes and each bound part collapses to decay^2 e^{i Sigma |.|}/Sigma^2
// with Sigma = 2 shift + i rate.
complexd transmitted_map_resonant(double x_c, double x, const EffectiveRates& rates,
                                  const AtomParams& params);
complexd reflected_map_resonant(double x_c, double x, const EffectiveRates& rates,
                                const AtomParams& params);
complexd mixed_map_resonant(double x_c, double x, const EffectiveRates& rates,
                            const AtomParams& params);

// Independent reconstruction of bound_kernel from the eigenstate projectors:
// the two discrete scattering-state terms, the principal-value line integral
// over relative momentum, and the localized-pair projector. total() matches
// bound_kernel to quadrature accuracy; the three parts are reported
// separately so tests can probe each.
struct KernelDecomposition {
  complexd secular;
  complexd quartet;
  complexd bound_line;
  complexd total() const { return secular + quartet + bound_line; }
};

// Preconditions: decay > 0; delta1, delta2 nonzero with distinct magnitudes
// (simple poles), both well inside half_width. Defaults resolve the kernel to
// ~1e-8 relative for order-one rates.
KernelDecomposition bound_kernel_decomposed(double delta_e1, double delta1, double delta2,
                                            const EffectiveRates& rates,
                                            double half_width = 900.0, int panels = 4500,
                                            int order = 16);

}  // namespace gatom
