#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "gatom/model.hpp"

// Fixed-order Gauss-Legendre panels plus a principal-value integrator based on
// residue subtraction. Deliberately small: the integrands in this project are
// smooth once poles are removed, so composite fixed-order rules converge fast
// and keep results bit-reproducible (no adaptive refinement order to vary).
namespace gatom {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum == 2
};

// Nodes by Newton iteration on the Legendre recurrence; accurate to ~1e-15.
GaussRule gauss_legendre(int order);

// Composite rule: `panels` equal subintervals of [a, b].
template <class F>
auto integrate_panels(F&& f, double a, double b, const GaussRule& rule, int panels)
    -> decltype(f(0.0)) {
  using result_t = decltype(f(0.0));
  result_t total{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    result_t acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * acc;
  }
  return total;
}

// Composite rule with geometrically graded panel widths, finest near `a`.
// Useful for slowly decaying tails where equal panels waste nodes.
template <class F>
auto integrate_graded(F&& f, double a, double b, const GaussRule& rule, int panels, double ratio)
    -> decltype(f(0.0)) {
  using result_t = decltype(f(0.0));
  result_t total{};
  // First width w solves w (ratio^panels - 1)/(ratio - 1) == b - a.
  const double scale = (ratio == 1.0)
                           ? (b - a) / panels
                           : (b - a) * (ratio - 1.0) / (std::pow(ratio, panels) - 1.0);
  double left = a;
  double width = scale;
  for (int p = 0; p < panels; ++p) {
    const double mid = left + 0.5 * width;
    result_t acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    total += 0.5 * width * acc;
    left += width;
    width *= ratio;
  }
  return total;
}

struct PoleTerm {
  double position = 0.0;  // simple pole on the real axis
  complexd residue;
};

// Principal value of integral_{-L}^{L} f(x) dx where f has the given simple
// real poles, all strictly inside (-L, L). The pole terms are subtracted
// pointwise (leaving a smooth integrand) and their principal values are added
// back in closed form: PV integral of r/(x - p) over [-L, L] = r ln|(L-p)/(L+p)|.
template <class F>
complexd pv_integrate(F&& f, std::span<const PoleTerm> poles, double half_width,
                      const GaussRule& rule, int panels) {
  auto regular = [&](double x) {
    complexd value = f(x);
    for (const auto& pole : poles) value -= pole.residue / (x - pole.position);
    return value;
  };
  complexd total = integrate_panels(regular, -half_width, half_width, rule, panels);
  for (const auto& pole : poles)
    total += pole.residue *
             std::log(std::abs((half_width - pole.position) / (half_width + pole.position)));
  return total;
}

}  // namespace gatom
