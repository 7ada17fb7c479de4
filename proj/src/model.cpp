#include "gatom/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace gatom {

AtomParams AtomParams::from_gamma(double gamma, double omega) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  AtomParams p{omega, std::sqrt(gamma)};
  p.validate();
  return p;
}

void AtomParams::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (!(v > 0.0)) throw std::invalid_argument("coupling v must be positive");
}

AtomGeometry::AtomGeometry(std::vector<double> points, double k0)
    : points_(std::move(points)), k0_(k0) {
  if (points_.empty()) throw std::invalid_argument("geometry needs at least one leg");
  if (points_.front() != 0.0) throw std::invalid_argument("first leg must sit at x = 0");
  for (std::size_t j = 1; j < points_.size(); ++j) {
    if (!(points_[j] > points_[j - 1]))
      throw std::invalid_argument("leg positions must be strictly increasing");
  }
  if (!(k0_ > 0.0)) throw std::invalid_argument("k0 must be positive");
}

AtomGeometry AtomGeometry::two_point_phase(double beta1, const AtomParams& params) {
  params.validate();
  if (!(beta1 >= 0.0)) throw std::invalid_argument("beta1 must be >= 0");
  return AtomGeometry({0.0, beta1 / params.omega}, params.omega);
}

AtomGeometry AtomGeometry::equally_spaced(int n, double beta, const AtomParams& params) {
  params.validate();
  if (n < 1) throw std::invalid_argument("need at least one leg");
  if (n > 1 && !(beta > 0.0)) throw std::invalid_argument("beta must be positive for n > 1");
  const double spacing = (n > 1) ? beta / params.omega : 0.0;
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) pts[static_cast<std::size_t>(j)] = j * spacing;
  return AtomGeometry(std::move(pts), params.omega);
}

EffectiveRates effective_rates_two_point(double beta1, const AtomParams& params) {
  const double gamma = params.gamma();
  const complexd phase = std::exp(complexd(0.0, beta1));
  return {0.5 * gamma * (1.0 + phase)};
}

EffectiveRates effective_rates_n_point(const AtomGeometry& geom, const AtomParams& params) {
  const int n = geom.legs();
  const double per_leg = params.gamma() / (n * static_cast<double>(n));
  complexd leg_sum = 0.0;   // sum_j e^{i beta_j}
  complexd pair_sum = 0.0;  // sum_{i<j} e^{i(beta_j - beta_i)}
  for (int j = 0; j < n; ++j) {
    const double bj = geom.phase(j);
    leg_sum += std::exp(complexd(0.0, bj));
    for (int i = 0; i < j; ++i)
      pair_sum += std::exp(complexd(0.0, bj - geom.phase(i)));
  }
  const double decay = per_leg * std::norm(leg_sum);
  const double shift2 = 2.0 * per_leg * pair_sum.imag();
  return {complexd(decay, shift2)};
}

EffectiveRates equal_spacing_rates(int n, double beta, const AtomParams& params) {
  if (n < 1) throw std::invalid_argument("need at least one leg");
  const double gamma = params.gamma();
  if (n == 1) return {complexd(gamma, 0.0)};
  if (beta == 0.0) return {complexd(gamma, 0.0)};  // all legs in phase
  if (beta == pi) {
    // Alternating-sign legs: exact cancellation for even n.
    const double decay = (n % 2 == 0) ? 0.0 : gamma / (n * static_cast<double>(n));
    return {complexd(decay, 0.0)};
  }
  const double nn = n * static_cast<double>(n);
  const double sh = std::sin(0.5 * beta);
  const double snh = std::sin(0.5 * n * beta);
  const double decay = gamma / nn * (snh * snh) / (sh * sh);
  const double shift = gamma / (4.0 * nn) * (n * std::sin(beta) - std::sin(n * beta)) / (sh * sh);
  return {complexd(decay, 2.0 * shift)};
}

}  // namespace gatom
