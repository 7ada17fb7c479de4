#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gatom/model.hpp"
#include "gatom/smatrix.hpp"

// Grid-level observables in the paper-facing unit system: positions as
// x_bar = x * Gamma, relative momenta as Delta_bar = Delta / (Gamma/2), and
// the momentum kernel as B_bar = (Gamma/2) B.
namespace gatom {

// Inclusive uniform axis; at(0) == lo, at(count-1) ~= hi.
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;

  double step() const { return count > 1 ? (hi - lo) / (count - 1) : 0.0; }
  double at(int i) const { return lo + step() * i; }
};

struct MapMeta {
  std::string quantity;
  double delta1 = 0.0;    // relative detuning of the incident pair
  double delta_e1 = 0.0;  // E1 - 2 Omega
  double decay = 0.0;
  double shift = 0.0;
};

// Row-major complex samples over axis1 x axis2 (axis1 index slow).
struct FieldMap {
  GridAxis axis1;
  GridAxis axis2;
  std::vector<complexd> values;
  MapMeta meta;

  const complexd& at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(axis2.count) +
                  static_cast<std::size_t>(j)];
  }
  double abs2(int i, int j) const { return std::norm(at(i, j)); }
};

struct SpatialMaps {
  FieldMap transmitted;
  FieldMap reflected;
  FieldMap mixed;
};

// Output-state amplitudes over photon positions (x_bar_1, x_bar_2); the
// evaluators convert to centre/relative coordinates internally.
SpatialMaps spatial_maps(const TwoPhotonPair& pair_in, const EffectiveRates& rates,
                         const AtomParams& params, const GridAxis& axis1, const GridAxis& axis2);

// Energy-shell kernel in paper units over (Delta_bar_1, Delta_bar_2); values
// hold B_bar, so abs2() is the plotted distribution.
FieldMap momentum_bound_map(double delta_e1, const EffectiveRates& rates,
                            const AtomParams& params, const GridAxis& axis1,
                            const GridAxis& axis2);

// Analytic peak geometry of |B|^2: positions at
// Delta_1 = Delta_2 = +-(delta_e1/2 - shift), heights from the kernel, width
// set by the decay rate. The resonant input collapses the four sign
// combinations to the single central peak.
struct PeakReport {
  std::vector<std::pair<double, double>> positions;  // Delta_bar units
  std::vector<double> heights;                       // |B_bar|^2
  double width = 0.0;                                // decay rate, absolute units
};

PeakReport peak_positions(double delta_e1, const EffectiveRates& rates, const AtomParams& params);

// Grid argmax of abs2 over a FieldMap; ties resolve to the lowest row-major
// index so results are deterministic.
std::pair<int, int> argmax_abs2(const FieldMap& map);

// Peak height and width against the number of legs at fixed nearest-neighbour
// phase. Equal-spacing rates; height is |B_bar|^2 at the analytic peak.
// Decoupled rows (even leg count at phase pi) are flagged, not dropped.
struct NScalingRow {
  int legs = 0;
  double decay = 0.0;
  double shift = 0.0;
  double height = 0.0;
  bool decoupled = false;
};

std::vector<NScalingRow> n_scaling(std::span<const int> leg_counts, double beta, double delta_e1,
                                   const AtomParams& params);

}  // namespace gatom
