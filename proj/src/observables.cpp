#include "gatom/observables.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace gatom {
namespace {

void require_axis(const GridAxis& axis) {
  if (axis.count < 1) throw std::invalid_argument("grid axis needs at least one sample");
  if (axis.count > 1 && !(axis.hi > axis.lo))
    throw std::invalid_argument("grid axis needs hi > lo");
}

FieldMap make_map(const GridAxis& axis1, const GridAxis& axis2, MapMeta meta) {
  require_axis(axis1);
  require_axis(axis2);
  FieldMap map;
  map.axis1 = axis1;
  map.axis2 = axis2;
  map.meta = std::move(meta);
  map.values.resize(static_cast<std::size_t>(axis1.count) * static_cast<std::size_t>(axis2.count));
  return map;
}

template <typename Eval>
void fill_map(FieldMap& map, Eval&& eval) {
  std::size_t cursor = 0;
  for (int i = 0; i < map.axis1.count; ++i) {
    const double a = map.axis1.at(i);
    for (int j = 0; j < map.axis2.count; ++j, ++cursor) {
      map.values[cursor] = eval(a, map.axis2.at(j));
    }
  }
}

}  // namespace

SpatialMaps spatial_maps(const TwoPhotonPair& pair_in, const EffectiveRates& rates,
                         const AtomParams& params, const GridAxis& axis1, const GridAxis& axis2) {
  const double gamma = params.gamma();
  MapMeta meta;
  meta.delta1 = pair_in.delta();
  meta.delta_e1 = pair_in.e_total() - 2.0 * params.omega;
  meta.decay = rates.decay();
  meta.shift = rates.lamb_shift();

  SpatialMaps maps;
  meta.quantity = "transmitted";
  maps.transmitted = make_map(axis1, axis2, meta);
  meta.quantity = "reflected";
  maps.reflected = make_map(axis1, axis2, meta);
  meta.quantity = "mixed";
  maps.mixed = make_map(axis1, axis2, meta);

  fill_map(maps.transmitted, [&](double xb1, double xb2) {
    const double x1 = xb1 / gamma;
    const double x2 = xb2 / gamma;
    return transmitted_map(pair_in, 0.5 * (x1 + x2), x1 - x2, rates, params);
  });
  fill_map(maps.reflected, [&](double xb1, double xb2) {
    const double x1 = xb1 / gamma;
    const double x2 = xb2 / gamma;
    return reflected_map(pair_in, 0.5 * (x1 + x2), x1 - x2, rates, params);
  });
  fill_map(maps.mixed, [&](double xb1, double xb2) {
    const double x1 = xb1 / gamma;
    const double x2 = xb2 / gamma;
    return mixed_map(pair_in, 0.5 * (x1 + x2), x1 - x2, rates, params);
  });
  return maps;
}

FieldMap momentum_bound_map(double delta_e1, const EffectiveRates& rates,
                            const AtomParams& params, const GridAxis& axis1,
                            const GridAxis& axis2) {
  const double half_gamma = 0.5 * params.gamma();
  MapMeta meta;
  meta.quantity = "bound_momentum";
  meta.delta_e1 = delta_e1;
  meta.decay = rates.decay();
  meta.shift = rates.lamb_shift();

  FieldMap map = make_map(axis1, axis2, meta);
  fill_map(map, [&](double db1, double db2) {
    return half_gamma * bound_kernel(delta_e1, db1 * half_gamma, db2 * half_gamma, rates);
  });
  return map;
}

PeakReport peak_positions(double delta_e1, const EffectiveRates& rates,
                          const AtomParams& params) {
  const double half_gamma = 0.5 * params.gamma();
  const double offset = 0.5 * delta_e1 - rates.lamb_shift();

  PeakReport report;
  report.width = rates.decay();
  if (offset == 0.0) {
    report.positions.emplace_back(0.0, 0.0);
  } else {
    const double pos = offset / half_gamma;
    report.positions.emplace_back(pos, pos);
    report.positions.emplace_back(pos, -pos);
    report.positions.emplace_back(-pos, pos);
    report.positions.emplace_back(-pos, -pos);
  }
  report.heights.reserve(report.positions.size());
  for (const auto& [db1, db2] : report.positions) {
    const complexd value =
        half_gamma * bound_kernel(delta_e1, db1 * half_gamma, db2 * half_gamma, rates);
    report.heights.push_back(std::norm(value));
  }
  return report;
}

std::pair<int, int> argmax_abs2(const FieldMap& map) {
  if (map.values.empty()) throw std::invalid_argument("argmax of an empty map");
  std::size_t best = 0;
  double best_value = map.abs2(0, 0);
  for (std::size_t flat = 1; flat < map.values.size(); ++flat) {
    const double value = std::norm(map.values[flat]);
    if (value > best_value) {
      best = flat;
      best_value = value;
    }
  }
  const int cols = map.axis2.count;
  return {static_cast<int>(best) / cols, static_cast<int>(best) % cols};
}

std::vector<NScalingRow> n_scaling(std::span<const int> leg_counts, double beta, double delta_e1,
                                   const AtomParams& params) {
  const double half_gamma = 0.5 * params.gamma();
  std::vector<NScalingRow> rows;
  rows.reserve(leg_counts.size());
  for (int legs : leg_counts) {
    const EffectiveRates rates = equal_spacing_rates(legs, beta, params);
    NScalingRow row;
    row.legs = legs;
    row.decay = rates.decay();
    row.shift = rates.lamb_shift();
    row.decoupled = rates.decay() == 0.0;
    if (!row.decoupled) {
      const double peak = 0.5 * delta_e1 - rates.lamb_shift();
      row.height = std::norm(half_gamma * bound_kernel(delta_e1, peak, peak, rates));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gatom
